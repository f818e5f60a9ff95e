use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::ratio;
use crate::caps::Caps;
use crate::error::{Result, SaxlError};
use crate::perm::{class_keys, PermGroup};

/// A conjugacy class of `G` of prime-order elements that meets `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMeet {
    pub order: u64,
    /// `|x^G|`
    pub class_size: u64,
    /// `|x^G ∩ H|`
    pub meet: u64,
}

struct HClass {
    order: u64,
    size: u64,
    g_class: usize,
}

struct Meets {
    g_classes: Vec<ClassMeet>,
    h_classes: Vec<HClass>,
}

fn class_meets(g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<Meets> {
    if !h.is_subgroup_of(g) {
        return Err(SaxlError::NotSubgroup(
            "point stabiliser is not inside the group".into(),
        ));
    }
    caps.check_group_order(h.order_u128())?;
    let mut g_keys: Vec<HashSet<Vec<u32>>> = Vec::new();
    let mut g_classes: Vec<ClassMeet> = Vec::new();
    let mut h_classes = Vec::new();
    let mut h_seen: HashSet<Vec<u32>> = HashSet::new();
    for y in h.elements() {
        let Some(order) = y.prime_order() else { continue };
        if h_seen.contains(&h.chain().base_images(&y)) {
            continue;
        }
        let h_class = class_keys(h, &y, caps)?;
        let size = h_class.len() as u64;
        h_seen.extend(h_class);
        let key = g.chain().base_images(&y);
        let g_class = match g_keys.iter().position(|k| k.contains(&key)) {
            Some(i) => i,
            None => {
                let keys = class_keys(g, &y, caps)?;
                g_classes.push(ClassMeet {
                    order,
                    class_size: keys.len() as u64,
                    meet: 0,
                });
                g_keys.push(keys);
                g_keys.len() - 1
            }
        };
        g_classes[g_class].meet += size;
        h_classes.push(HClass { order, size, g_class });
    }
    Ok(Meets { g_classes, h_classes })
}

/// `Σ |x^G ∩ H|^2 / |x^G|` over classes of prime-order elements, with the classes used.
pub fn q_hat(g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<(BigRational, Vec<ClassMeet>)> {
    let meets = class_meets(g, h, caps)?;
    let mut total = BigRational::zero();
    for c in &meets.g_classes {
        total += ratio(c.meet as u128 * c.meet as u128, c.class_size as u128);
    }
    let mut classes = meets.g_classes;
    classes.sort_by_key(|c| (c.order, c.class_size, c.meet));
    Ok((total, classes))
}

/// Like [`q_hat`] but `H`-classes are merged whenever their elements have the same prime
/// order and the same `G`-class size, without deciding `G`-conjugacy.
pub fn q_tilde(g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<BigRational> {
    let meets = class_meets(g, h, caps)?;
    let mut groups: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for c in &meets.h_classes {
        let m = meets.g_classes[c.g_class].class_size;
        *groups.entry((c.order, m)).or_default() += c.size;
    }
    let mut total = BigRational::zero();
    for ((_, m), s) in groups {
        total += ratio(s as u128 * s as u128, m as u128);
    }
    Ok(total)
}
