use std::collections::HashMap;

use super::{ActionFamily, LabelledAction, OmegaPoint};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};
use crate::perm::{PermGroup, Permutation};

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn natural_generators(n: usize, alternating: bool) -> Result<Vec<Permutation>> {
    let cycle = |pts: Vec<u32>| Permutation::from_cycles(n, &[pts]);
    if !alternating {
        if n < 2 {
            return Ok(Vec::new());
        }
        return Ok(vec![cycle((0..n as u32).collect())?, cycle(vec![0, 1])?]);
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let long: Vec<u32> = if n % 2 == 1 {
        (0..n as u32).collect()
    } else {
        (1..n as u32).collect()
    };
    Ok(vec![cycle(vec![0, 1, 2])?, cycle(long)?])
}

/// `S_n` or `A_n` on the `k`-subsets of `{0, .., n-1}`, subsets in lexicographic order.
pub fn ksubset_action(n: usize, k: usize, alternating: bool, caps: &Caps) -> Result<LabelledAction> {
    if k == 0 || k >= n {
        return Err(SaxlError::Precondition(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let size = binomial(n, k);
    if size > caps.points as u128 {
        return Err(SaxlError::cap("point", caps.points as u128, size));
    }
    let natural = PermGroup::new(n, natural_generators(n, alternating)?)?;

    let mut subsets: Vec<Vec<u32>> = Vec::with_capacity(size as usize);
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        subsets.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] as usize == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let index: HashMap<&[u32], u32> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i as u32))
        .collect();

    let gens = natural
        .generators()
        .iter()
        .map(|g| {
            let images = subsets
                .iter()
                .map(|s| {
                    let mut t: Vec<u32> = s.iter().map(|&x| g.image(x)).collect();
                    t.sort_unstable();
                    index[t.as_slice()]
                })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let group = PermGroup::with_known_order(subsets.len(), gens, &natural.order())?;
    let name = format!("{}{n} on {k}-subsets", if alternating { "A" } else { "S" });
    let labels = subsets.into_iter().map(OmegaPoint::Subset).collect();
    Ok(LabelledAction::new(
        name,
        ActionFamily::KSubsets { n, k, alternating },
        group,
        labels,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_on_pairs() {
        let a = ksubset_action(5, 2, true, &Caps::default()).unwrap();
        assert_eq!(a.degree(), 10);
        assert_eq!(a.group().order_u128(), 60);
        assert_eq!(a.label(0), &OmegaPoint::Subset(vec![0, 1]));
    }

    #[test]
    fn rejects_bad_k_and_caps() {
        assert!(ksubset_action(5, 0, false, &Caps::default()).is_err());
        assert!(ksubset_action(5, 5, false, &Caps::default()).is_err());
        let caps = Caps {
            points: 10,
            ..Caps::default()
        };
        assert!(ksubset_action(6, 2, false, &caps).unwrap_err().is_cap_exceeded());
    }
}
