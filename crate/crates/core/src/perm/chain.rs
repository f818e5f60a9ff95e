//! Stabiliser chains built by deterministic Schreier–Sims.
//!
//! Each level stores a Schreier vector rather than explicit coset
//! representatives, so memory stays linear in the degree per level.

use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;
use crate::error::{Result, SaxlError};

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    gens: Vec<Permutation>,
    gen_invs: Vec<Permutation>,
    orbit: Vec<u32>,
    /// For `x` in the orbit, the index of the generator whose image reached `x`.
    schreier: Vec<u32>,
    /// Per orbit position, how many generators have had their Schreier generator sifted.
    done: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut schreier = vec![NOT_IN_ORBIT; degree];
        schreier[base_point as usize] = ROOT;
        Level {
            base_point,
            gens: Vec::new(),
            gen_invs: Vec::new(),
            orbit: vec![base_point],
            schreier,
            done: vec![0],
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.gen_invs.push(g.inverse());
        self.gens.push(g);
        self.extend_orbit();
    }

    /// Grow the orbit with the current generators; existing tree edges are kept.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for (k, g) in self.gens.iter().enumerate() {
                let y = g.image(x);
                if self.schreier[y as usize] == NOT_IN_ORBIT {
                    self.schreier[y as usize] = k as u32;
                    self.orbit.push(y);
                    self.done.push(0);
                }
            }
            i += 1;
        }
    }

    #[inline]
    fn contains(&self, x: u32) -> bool {
        self.schreier[x as usize] != NOT_IN_ORBIT
    }

    /// The coset representative `u` with `base_point^u = x`.
    fn transversal(&self, x: u32) -> Permutation {
        let degree = self.schreier.len();
        let mut word = Vec::new();
        let mut y = x;
        while y != self.base_point {
            let k = self.schreier[y as usize] as usize;
            word.push(k);
            y = self.gen_invs[k].image(y);
        }
        let mut u = Permutation::identity(degree);
        for &k in word.iter().rev() {
            u = u.then(&self.gens[k]);
        }
        u
    }

    /// `pt^(u_x^-1)` where `u_x` is the representative for `x`.
    fn trace_inverse(&self, x: u32, pt: u32) -> u32 {
        let mut y = x;
        let mut p = pt;
        while y != self.base_point {
            let inv = &self.gen_invs[self.schreier[y as usize] as usize];
            y = inv.image(y);
            p = inv.image(p);
        }
        p
    }
}

/// A base and strong generating set with Schreier vectors at every level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Run Schreier–Sims on `gens`.
    ///
    /// `base_prefix` points become the first base points in that order; further base
    /// points are the least points moved by the sifting residues. When `known_order`
    /// is given and the generators lie in a group of exactly that order, the run stops
    /// as soon as the chain reaches it; if it never does, an order mismatch is reported.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        base_prefix: &[u32],
        known_order: Option<&BigUint>,
    ) -> Result<StabChain> {
        for g in gens {
            if g.degree() != degree {
                return Err(SaxlError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in base_prefix {
            if b as usize >= degree {
                return Err(SaxlError::Precondition(format!(
                    "base point {b} out of range for degree {degree}"
                )));
            }
            if chain.levels.iter().any(|l| l.base_point == b) {
                continue;
            }
            chain.levels.push(Level::new(degree, b));
        }
        let mut gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.dedup();
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base_point) == l.base_point) {
                let b = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.gens.push(g.clone());
                level.gen_invs.push(g.inverse());
                if g.image(level.base_point) != level.base_point {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.extend_orbit();
        }
        if known_order.is_some_and(|n| chain.order() == *n) {
            return Ok(chain);
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.find_unsifted(i as usize) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.first_moved().expect("residue is non-identity");
                        chain.levels.push(Level::new(degree, b));
                    }
                    for l in (i as usize + 1)..=j {
                        chain.levels[l].push_gen(h.clone());
                    }
                    if let Some(n) = known_order {
                        let current = chain.order();
                        if current == *n {
                            return Ok(chain);
                        }
                        if current > *n {
                            return Err(SaxlError::OrderMismatch {
                                expected: n.to_string(),
                                found: format!(">= {current}"),
                            });
                        }
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        if let Some(n) = known_order {
            let found = chain.order();
            if found != *n {
                return Err(SaxlError::OrderMismatch {
                    expected: n.to_string(),
                    found: found.to_string(),
                });
            }
        }
        Ok(chain)
    }

    /// First Schreier generator at level `i` that does not sift through the levels below.
    fn find_unsifted(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut oi = 0;
        while oi < self.levels[i].orbit.len() {
            let level = &self.levels[i];
            let ngens = level.gens.len() as u32;
            if level.done[oi] >= ngens {
                oi += 1;
                continue;
            }
            let beta = level.orbit[oi];
            let u = level.transversal(beta);
            let start = level.done[oi];
            for k in start..ngens {
                self.levels[i].done[oi] = k + 1;
                let level = &self.levels[i];
                let s = &level.gens[k as usize];
                let img = s.image(beta);
                if level.schreier[img as usize] == k && img != level.base_point {
                    // tree edge: Schreier generator is trivial
                    continue;
                }
                let h = u.then(s);
                let (res, j) = self.strip(h, i);
                if j < self.levels.len() || !res.is_identity() {
                    return Some((res, j));
                }
            }
            oi += 1;
        }
        None
    }

    /// Sift `g` starting at level `from`. Returns the residue and the level where sifting
    /// stopped (`levels.len()` when it passed every level).
    pub fn strip(&self, g: Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g;
        let mut buf = Vec::with_capacity(self.degree);
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let mut y = g.image(level.base_point);
            if !level.contains(y) {
                return (g, l);
            }
            while y != level.base_point {
                let inv = &level.gen_invs[level.schreier[y as usize] as usize];
                g.then_in_place(inv, &mut buf);
                y = inv.image(y);
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_from(&self, level: usize) -> BigUint {
        self.levels[level..]
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }

    pub fn base_images(&self, g: &Permutation) -> Vec<u32> {
        self.levels.iter().map(|l| g.image(l.base_point)).collect()
    }

    pub fn base_point(&self, level: usize) -> u32 {
        self.levels[level].base_point
    }

    pub fn fundamental_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn in_fundamental_orbit(&self, level: usize, x: u32) -> bool {
        self.levels[level].contains(x)
    }

    pub fn strong_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].gens
    }

    /// Coset representative `u` at `level` with `base_point^u = x`.
    pub fn transversal(&self, level: usize, x: u32) -> Option<Permutation> {
        let l = &self.levels[level];
        l.contains(x).then(|| l.transversal(x))
    }

    /// `pt^(u^-1)` for the level representative `u` sending the base point to `x`.
    pub fn trace_inverse(&self, level: usize, x: u32, pt: u32) -> Option<u32> {
        let l = &self.levels[level];
        l.contains(x).then(|| l.trace_inverse(x, pt))
    }

    /// The chain of the stabiliser of the first `level` base points.
    pub fn subchain(&self, level: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[level..].to_vec(),
        }
    }

    /// The unique element with the given base images, if any.
    pub fn element_from_base_images(&self, images: &[u32]) -> Option<Permutation> {
        if images.len() != self.levels.len() {
            return None;
        }
        let mut target = images.to_vec();
        let mut factors = Vec::with_capacity(self.levels.len());
        for (i, level) in self.levels.iter().enumerate() {
            let beta = target[i];
            if !level.contains(beta) {
                return None;
            }
            for t in target.iter_mut().skip(i + 1) {
                *t = level.trace_inverse(beta, *t);
            }
            factors.push(level.transversal(beta));
        }
        let mut g = Permutation::identity(self.degree);
        for u in factors.iter().rev() {
            g = g.then(u);
        }
        Some(g)
    }

    /// Explicit coset representatives for every level, in orbit order.
    pub fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.levels
            .iter()
            .map(|l| l.orbit.iter().map(|&x| l.transversal(x)).collect())
            .collect()
    }

    /// Visit every element once. Elements are `u_k * ... * u_0` with `u_i` a level-`i`
    /// representative; the visiting order is fixed by the chain.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let transversals = self.transversals();
        let k = transversals.len();
        if k == 0 {
            f(&Permutation::identity(self.degree));
            return;
        }
        fn rec<F: FnMut(&Permutation)>(level: usize, ts: &[Vec<Permutation>], acc: &Permutation, f: &mut F) {
            for u in &ts[level] {
                let next = acc.then(u);
                if level == 0 {
                    f(&next);
                } else {
                    rec(level - 1, ts, &next, f);
                }
            }
        }
        rec(k - 1, &transversals, &Permutation::identity(self.degree), &mut f);
    }
}
