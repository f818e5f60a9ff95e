use std::collections::HashSet;

use serde::Serialize;

use super::{PermGroup, Permutation};
use crate::caps::Caps;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClassData {
    /// Least member by image list.
    pub rep: Permutation,
    pub order: u64,
    pub size: u64,
}

/// Base-image keys of the conjugacy class of `x` in `g`; each key determines an element.
pub fn class_keys(g: &PermGroup, x: &Permutation, caps: &Caps) -> Result<HashSet<Vec<u32>>> {
    let chain = g.chain();
    let mut keys = HashSet::new();
    keys.insert(chain.base_images(x));
    let mut frontier = vec![x.clone()];
    let invs: Vec<Permutation> = g.generators().iter().map(|s| s.inverse()).collect();
    while let Some(y) = frontier.pop() {
        for (s, s_inv) in g.generators().iter().zip(&invs) {
            let z = s_inv.then(&y).then(s);
            if keys.insert(chain.base_images(&z)) {
                caps.check_class_size(keys.len() as u64)?;
                frontier.push(z);
            }
        }
    }
    Ok(keys)
}

/// One record per conjugacy class of elements of prime order, sorted by (order, size, rep).
pub fn prime_order_class_reps(g: &PermGroup, caps: &Caps) -> Result<Vec<ConjClassData>> {
    caps.check_group_order(g.order_u128())?;
    let chain = g.chain();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut failure = None;
    chain.for_each_element(|x| {
        if failure.is_some() {
            return;
        }
        let Some(p) = x.prime_order() else { return };
        if seen.contains(&chain.base_images(x)) {
            return;
        }
        match class_keys(g, x, caps) {
            Ok(keys) => {
                let rep = keys
                    .iter()
                    .map(|k| chain.element_from_base_images(k).expect("key from group"))
                    .min()
                    .expect("non-empty class");
                out.push(ConjClassData {
                    rep,
                    order: p,
                    size: keys.len() as u64,
                });
                seen.extend(keys);
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    out.sort_by(|a, b| (a.order, a.size, &a.rep).cmp(&(b.order, b.size, &b.rep)));
    Ok(out)
}
