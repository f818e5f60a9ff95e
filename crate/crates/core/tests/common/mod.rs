#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use saxl_core::actions::{GroupVariant, ProjectiveLine};
use saxl_core::gf::FqField;
use saxl_core::perm::{find_subgroup, PermGroup, Permutation, SubgroupSpec};
use saxl_core::Caps;

pub fn cyc(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

pub fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|s| cyc(n, s)).collect()).unwrap()
}

pub fn sym(n: usize) -> PermGroup {
    let long: Vec<u32> = (0..n as u32).collect();
    PermGroup::new(
        n,
        vec![
            Permutation::from_cycles(n, &[long]).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ],
    )
    .unwrap()
}

pub fn alt(n: usize) -> PermGroup {
    let long: Vec<u32> = if n % 2 == 1 {
        (0..n as u32).collect()
    } else {
        (1..n as u32).collect()
    };
    PermGroup::new(
        n,
        vec![
            Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(n, &[long]).unwrap(),
        ],
    )
    .unwrap()
}

pub fn m11() -> PermGroup {
    group(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"])
}

/// `PSL(2,q)` or `PGL(2,q)` on the projective line.
pub fn projective(q: u64, variant: GroupVariant) -> PermGroup {
    let line = ProjectiveLine::new(Arc::new(FqField::with_order(q).unwrap()));
    PermGroup::new(line.len(), line.generators(variant)).unwrap()
}

/// `x -> a x + b` on `GF(p)` for a prime `p`, points `0..p`.
pub fn affine_map(p: u32, a: u32, b: u32) -> Permutation {
    Permutation::from_images((0..p).map(|x| (a * x + b) % p).collect()).unwrap()
}

/// `ASL(2,3)` on the 9 points `(x, y) <-> 3x + y`.
pub fn asl23() -> PermGroup {
    let map = |f: &dyn Fn(u32, u32) -> (u32, u32)| {
        let images = (0..9)
            .map(|i| {
                let (x, y) = f(i / 3, i % 3);
                3 * (x % 3) + y % 3
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    PermGroup::new(
        9,
        vec![
            map(&|x, y| (x + 1, y)),
            map(&|x, y| (x, y + 1)),
            map(&|x, y| (x + y, y)),
            map(&|x, y| (x, x + y)),
        ],
    )
    .unwrap()
}

/// `SL(3,3)` on the 13 points of the projective plane over `GF(3)`.
pub fn l33() -> PermGroup {
    let mut points: Vec<[u32; 3]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        points.push(v);
                    }
                }
            }
        }
    }
    let normalise = |v: [u32; 3]| -> [u32; 3] {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = if lead == 1 { 1 } else { 2 };
        [v[0] * inv % 3, v[1] * inv % 3, v[2] * inv % 3]
    };
    let transvection = |i: usize, j: usize| {
        let images = points
            .iter()
            .map(|v| {
                let mut w = *v;
                w[i] = (w[i] + w[j]) % 3;
                points.iter().position(|&p| p == normalise(w)).unwrap() as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    PermGroup::new(
        13,
        vec![
            transvection(0, 1),
            transvection(1, 0),
            transvection(1, 2),
            transvection(2, 1),
        ],
    )
    .unwrap()
}

pub fn profile(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

pub fn s4_profile() -> BTreeMap<u64, u64> {
    profile(&[(1, 1), (2, 9), (3, 8), (4, 6)])
}

pub fn klein_search() -> SubgroupSpec {
    SubgroupSpec::Search {
        order: 4,
        generator_orders: [2, 2],
        order_profile: Some(profile(&[(1, 1), (2, 3)])),
    }
}

/// The normaliser in `g` of the least Klein four-subgroup of `inner`.
pub fn klein_normaliser(g: &PermGroup, inner: &PermGroup) -> PermGroup {
    let caps = Caps::default();
    let v4 = find_subgroup(inner, &klein_search(), &caps).unwrap();
    find_subgroup(g, &SubgroupSpec::Normaliser(v4), &caps).unwrap()
}

/// Every table group with the subgroup it acts on, derived from scratch.
pub fn table_fixtures() -> Vec<(&'static str, PermGroup, PermGroup)> {
    let caps = Caps::default();
    let mut out = Vec::new();

    let agl17 = PermGroup::new(7, vec![affine_map(7, 1, 1), affine_map(7, 3, 0)]).unwrap();
    out.push(("S7_AGL17", sym(7), agl17));

    out.push(("A9_ASL23", alt(9), asl23()));

    let m = m11();
    let p = find_subgroup(&m, &SubgroupSpec::Sylow(2), &caps).unwrap();
    let q8 = find_subgroup(
        &p,
        &SubgroupSpec::Search {
            order: 8,
            generator_orders: [4, 4],
            order_profile: Some(profile(&[(1, 1), (2, 1), (4, 6)])),
        },
        &caps,
    )
    .unwrap();
    let n = find_subgroup(&m, &SubgroupSpec::Normaliser(q8), &caps).unwrap();
    out.push(("M11_2S4", m, n));

    let l17 = projective(17, GroupVariant::Psl2);
    let s4 = find_subgroup(
        &l17,
        &SubgroupSpec::Search {
            order: 24,
            generator_orders: [4, 3],
            order_profile: Some(s4_profile()),
        },
        &caps,
    )
    .unwrap();
    out.push(("L2_17_S4", l17, s4));

    for q in [13u64, 11] {
        let pgl = projective(q, GroupVariant::Pgl2);
        let psl = projective(q, GroupVariant::Psl2);
        let h = klein_normaliser(&pgl, &psl);
        out.push((if q == 13 { "L2_13_2_S4" } else { "L2_11_2_S4" }, pgl, h));
    }

    let l3 = l33();
    let p13 = find_subgroup(&l3, &SubgroupSpec::Sylow(13), &caps).unwrap();
    let frob = find_subgroup(&l3, &SubgroupSpec::Normaliser(p13), &caps).unwrap();
    out.push(("L3_3_GL1_27", l3.clone(), frob));
    let o33 = klein_normaliser(&l3, &l3);
    out.push(("L3_3_O3_3", l3, o33));

    out
}
