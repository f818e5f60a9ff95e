use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Permutation, StabChain};
use crate::error::{Result, SaxlError};

/// A permutation group given by generators, with a complete stabiliser chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let chain = StabChain::build(degree, &generators, &[], None)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    /// Trust `order` as an upper bound for the group generated; see [`StabChain::build`].
    pub fn with_known_order(degree: usize, generators: Vec<Permutation>, order: &BigUint) -> Result<Self> {
        let chain = StabChain::build(degree, &generators, &[], Some(order))?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub(crate) fn from_parts(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        PermGroup {
            degree,
            generators,
            chain,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u128(&self) -> u128 {
        self.order().to_u128().unwrap_or(u128::MAX)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// A chain for the same group whose base starts with `prefix`.
    pub fn chain_with_base(&self, prefix: &[u32]) -> Result<StabChain> {
        StabChain::build(self.degree, &self.generators, prefix, Some(&self.order()))
    }

    /// Orbit of `pt` in breadth-first order.
    pub fn orbit(&self, pt: u32) -> Vec<u32> {
        orbit_under(&self.generators, self.degree, pt)
    }

    /// All orbits, each in breadth-first order, sorted by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_under(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn point_stabiliser(&self, pt: u32) -> Result<PermGroup> {
        self.pointwise_stabiliser(&[pt])
    }

    pub fn pointwise_stabiliser(&self, points: &[u32]) -> Result<PermGroup> {
        let mut prefix: Vec<u32> = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let chain = self.chain_with_base(&prefix)?;
        let sub = chain.subchain(prefix.len());
        let gens = if prefix.len() < chain.depth() {
            chain.strong_generators(prefix.len()).to_vec()
        } else {
            Vec::new()
        };
        Ok(PermGroup::from_parts(self.degree, gens, sub))
    }

    /// Conjugate subgroup `g^-1 self g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup> {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::with_known_order(self.degree, gens, &self.order())
    }

    /// Every element, in chain order.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.chain.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Every element, sorted by image list.
    pub fn elements_sorted(&self) -> Vec<Permutation> {
        let mut out = self.elements();
        out.sort();
        out
    }

    /// Whether a transitive group is primitive, by minimal-block computation.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(SaxlError::Precondition("primitivity needs a transitive group".into()));
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        let stab = self.point_stabiliser(0)?;
        for orbit in stab.orbits() {
            let rep = orbit[0];
            if rep == 0 {
                continue;
            }
            if minimal_block(&self.generators, self.degree, 0, rep).len() < self.degree {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], degree: usize, pt: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[pt as usize] = true;
    let mut orbit = vec![pt];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

pub(crate) fn orbits_under(gens: &[Permutation], degree: usize) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree as u32 {
        if seen[start as usize] {
            continue;
        }
        let orbit = orbit_under(gens, degree, start);
        for &x in &orbit {
            seen[x as usize] = true;
        }
        out.push(orbit);
    }
    out
}

/// Points of the smallest block containing `a` and `b`.
fn minimal_block(gens: &[Permutation], degree: usize, a: u32, b: u32) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut queue = vec![(a, b)];
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[rb as usize] = ra;
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let rx = find(&mut parent, g.image(x));
            let ry = find(&mut parent, g.image(y));
            if rx != ry {
                let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                parent[hi as usize] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let root = find(&mut parent, a);
    (0..degree as u32).filter(|&x| find(&mut parent, x) == root).collect()
}
