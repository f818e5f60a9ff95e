use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{PermGroup, Permutation};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};

/// How to pick a subgroup out of a group.
#[derive(Clone, Debug)]
pub enum SubgroupSpec {
    /// The subgroup generated by the given elements, which must lie in the group.
    Closure(Vec<Permutation>),
    /// A Sylow subgroup for the given prime.
    Sylow(u64),
    /// The normaliser of the given group.
    Normaliser(PermGroup),
    /// A two-generated subgroup of the given order, generated by elements of the given
    /// orders, optionally with a prescribed multiset of element orders.
    Search {
        order: u64,
        generator_orders: [u64; 2],
        order_profile: Option<BTreeMap<u64, u64>>,
    },
}

/// Histogram of element orders.
pub fn order_profile(g: &PermGroup) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    g.chain().for_each_element(|x| {
        *out.entry(x.order_u64().unwrap_or(0)).or_insert(0) += 1;
    });
    out
}

/// Find a subgroup of `g`. Every choice is the least witness with respect to the
/// image-list order on elements, so results are deterministic.
pub fn find_subgroup(g: &PermGroup, spec: &SubgroupSpec, caps: &Caps) -> Result<PermGroup> {
    match spec {
        SubgroupSpec::Closure(elts) => {
            for x in elts {
                if !g.contains(x) {
                    return Err(SaxlError::NotSubgroup(format!("{x} is not in the group")));
                }
            }
            PermGroup::new(g.degree(), elts.clone())
        }
        SubgroupSpec::Sylow(p) => sylow(g, *p, caps),
        SubgroupSpec::Normaliser(k) => normaliser(g, k, caps),
        SubgroupSpec::Search {
            order,
            generator_orders,
            order_profile: profile,
        } => search(g, *order, *generator_orders, profile.as_ref(), caps),
    }
}

fn sorted_elements(g: &PermGroup, caps: &Caps) -> Result<Vec<Permutation>> {
    caps.check_group_order(g.order_u128())?;
    Ok(g.elements_sorted())
}

fn normalises(x: &Permutation, k: &PermGroup) -> bool {
    k.generators().iter().all(|y| k.contains(&y.conjugate_by(x)))
}

fn normaliser(g: &PermGroup, k: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    if k.degree() != g.degree() {
        return Err(SaxlError::DegreeMismatch {
            expected: g.degree(),
            found: k.degree(),
        });
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(g.degree());
    for x in sorted_elements(g, caps)? {
        if current.contains(&x) || !normalises(&x, k) {
            continue;
        }
        gens.push(x);
        current = PermGroup::new(g.degree(), gens.clone())?;
    }
    Ok(current)
}

fn p_part(mut n: u128, p: u128) -> u128 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn sylow(g: &PermGroup, p: u64, caps: &Caps) -> Result<PermGroup> {
    if !crate::gf::is_prime(p) {
        return Err(SaxlError::Precondition(format!("{p} is not prime")));
    }
    let target = p_part(g.order_u128(), p as u128);
    let elements = sorted_elements(g, caps)?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(g.degree());
    // Each pass adjoins the least p-element normalising the current p-subgroup.
    while current.order_u128() < target {
        let next = elements.iter().find(|x| {
            x.order_u64().is_some_and(|o| o > 1 && is_power_of(o, p)) && !current.contains(x) && normalises(x, &current)
        });
        let Some(x) = next else {
            return Err(SaxlError::NotFound(format!("no p-element extends the {p}-subgroup")));
        };
        gens.push(x.clone());
        current = PermGroup::new(g.degree(), gens.clone())?;
    }
    Ok(current)
}

fn search(
    g: &PermGroup,
    order: u64,
    gen_orders: [u64; 2],
    profile: Option<&BTreeMap<u64, u64>>,
    caps: &Caps,
) -> Result<PermGroup> {
    let elements = sorted_elements(g, caps)?;
    let of_order = |o: u64| -> Vec<&Permutation> { elements.iter().filter(|x| x.order_u64() == Some(o)).collect() };
    let first = of_order(gen_orders[0]);
    let second = of_order(gen_orders[1]);
    for a in &first {
        for b in &second {
            let cand = PermGroup::new(g.degree(), vec![(*a).clone(), (*b).clone()])?;
            if cand.order().to_u64() != Some(order) {
                continue;
            }
            if let Some(want) = profile {
                if order_profile(&cand) != *want {
                    continue;
                }
            }
            return Ok(cand);
        }
    }
    Err(SaxlError::NotFound(format!(
        "no subgroup of order {order} generated by elements of orders {gen_orders:?}"
    )))
}
