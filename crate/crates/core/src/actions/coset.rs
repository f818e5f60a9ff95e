use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::{ActionFamily, LabelledAction, OmegaPoint, SourcePair};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};
use crate::perm::{PermGroup, Permutation};

/// `G` acting by right multiplication on the right cosets of `H`.
///
/// Cosets are numbered in breadth-first order from `H` itself. A coset `Hx` is keyed by
/// the least base-image tuple among its elements, so keys are exact.
pub fn coset_action(name: &str, g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<LabelledAction> {
    if !h.is_subgroup_of(g) {
        return Err(SaxlError::NotSubgroup(format!(
            "{name}: subgroup generators are not in the group"
        )));
    }
    let index = (g.order() / h.order()).to_u128().unwrap_or(u128::MAX);
    if index > caps.points as u128 {
        return Err(SaxlError::cap("point", caps.points as u128, index));
    }
    caps.check_group_order(h.order_u128())?;

    let base = g.chain().base();
    let h_base_images: Vec<Vec<u32>> = h
        .elements()
        .iter()
        .map(|e| base.iter().map(|&b| e.image(b)).collect())
        .collect();
    let key = |x: &Permutation| -> Vec<u32> {
        h_base_images
            .iter()
            .map(|hb| hb.iter().map(|&y| x.image(y)).collect::<Vec<u32>>())
            .min()
            .expect("subgroup is non-empty")
    };

    let mut reps = vec![Permutation::identity(g.degree())];
    let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
    lookup.insert(key(&reps[0]), 0);
    let mut tables: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (k, s) in g.generators().iter().enumerate() {
            let y = reps[i].then(s);
            let ky = key(&y);
            let next = lookup.len() as u32;
            let j = *lookup.entry(ky).or_insert_with(|| {
                reps.push(y);
                next
            });
            tables[k].push(j);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u128, index);

    let gens: Vec<Permutation> = tables.into_iter().map(Permutation::from_images_unchecked).collect();
    let n = reps.len();
    let mut faithful = true;
    let group = match PermGroup::with_known_order(n, gens.clone(), &g.order()) {
        Ok(grp) => grp,
        Err(SaxlError::OrderMismatch { .. }) => {
            faithful = false;
            PermGroup::new(n, gens)?
        }
        Err(e) => return Err(e),
    };
    let labels = (0..n as u32).map(OmegaPoint::Coset).collect();
    let mut action = LabelledAction::new(
        name.to_string(),
        ActionFamily::Coset { name: name.to_string() },
        group,
        labels,
    );
    if faithful {
        action = action.with_source(SourcePair {
            group: g.clone(),
            subgroup: h.clone(),
        });
    } else {
        let kernel = g.order() / action.group().order();
        action.push_warning(format!("action is not faithful: kernel of order {kernel}"));
    }
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        PermGroup::new(
            n,
            vec![
                Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap(),
                Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s4_on_cosets_of_point_stabiliser() {
        let g = sym(4);
        let h = g.point_stabiliser(0).unwrap();
        let a = coset_action("S4/S3", &g, &h, &Caps::default()).unwrap();
        assert_eq!(a.degree(), 4);
        assert_eq!(a.group().order_u128(), 24);
        assert!(a.source().is_some());
    }

    #[test]
    fn kernel_is_reported() {
        // S4 on the cosets of D8 has the Klein four-group as kernel.
        let g = sym(4);
        let d8 = PermGroup::new(
            4,
            vec![
                Permutation::parse_cycles(4, "(1,2,3,4)").unwrap(),
                Permutation::parse_cycles(4, "(1,3)").unwrap(),
            ],
        )
        .unwrap();
        let a = coset_action("S4/D8", &g, &d8, &Caps::default()).unwrap();
        assert_eq!(a.degree(), 3);
        assert_eq!(a.group().order_u128(), 6);
        assert!(a.source().is_none());
        assert_eq!(a.warnings().len(), 1);
    }

    #[test]
    fn whole_group_gives_one_point() {
        let g = sym(3);
        let a = coset_action("S3/S3", &g, &g, &Caps::default()).unwrap();
        assert_eq!(a.degree(), 1);
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = PermGroup::new(3, vec![Permutation::parse_cycles(3, "(1,2,3)").unwrap()]).unwrap();
        let h = PermGroup::new(3, vec![Permutation::parse_cycles(3, "(1,2)").unwrap()]).unwrap();
        assert!(matches!(
            coset_action("bad", &g, &h, &Caps::default()),
            Err(SaxlError::NotSubgroup(_))
        ));
    }
}
