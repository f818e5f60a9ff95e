//! Bases of size two for a transitive action: regular suborbits, the non-base
//! probability, Saxl graphs, the common-neighbour property and cliques.

mod bitset;
mod clique;
mod graph;
mod probability;
mod report;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::LabelledAction;
use crate::error::{Result, SaxlError};
use crate::perm::{orbits_under, PermGroup, Permutation, StabChain};

pub use bitset::BitSet;
pub use clique::{clique_lower, max_clique_and_coclique, BaseRelation, CliqueLower, ExactCliques};
pub use graph::SaxlGraph;
pub use probability::{q_hat, q_tilde, ClassMeet};
pub use report::{analyze, AnalysisOptions, AnalysisReport, Ratio};

/// `G_{a,b} = 1`, decided from the order of the pointwise stabiliser.
pub fn is_base_pair(action: &LabelledAction, a: u32, b: u32) -> Result<bool> {
    let n = action.degree() as u32;
    if a >= n || b >= n {
        return Err(SaxlError::Precondition(format!("points must lie below {n}")));
    }
    if a == b {
        return Ok(false);
    }
    Ok(action.group().pointwise_stabiliser(&[a, b])?.order().is_one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Suborbit {
    /// Least point of the suborbit.
    pub rep: u32,
    pub len: usize,
    pub regular: bool,
}

/// Suborbit data for a transitive action, relative to the point 0.
pub struct SaxlEngine<'a> {
    action: &'a LabelledAction,
    /// Chain with base starting at 0, used to move any point to 0.
    chain: StabChain,
    stabiliser: PermGroup,
    stab_order: u128,
    suborbit_of: Vec<u32>,
    suborbits: Vec<Suborbit>,
}

impl<'a> SaxlEngine<'a> {
    pub fn new(action: &'a LabelledAction) -> Result<Self> {
        let g = action.group();
        let n = action.degree();
        if !g.is_transitive() {
            return Err(SaxlError::Precondition("the action is not transitive".into()));
        }
        let chain = g.chain_with_base(&[0])?;
        let stab_gens = if chain.depth() > 1 {
            chain.strong_generators(1).to_vec()
        } else {
            Vec::new()
        };
        let stabiliser = PermGroup::from_parts(n, stab_gens, chain.subchain(1.min(chain.depth())));
        let stab_order = stabiliser
            .order()
            .to_u128()
            .ok_or_else(|| SaxlError::Unsupported("stabiliser order too large".into()))?;
        let mut suborbit_of = vec![0u32; n];
        let mut suborbits = Vec::new();
        for (k, orbit) in orbits_under(stabiliser.generators(), n).into_iter().enumerate() {
            for &x in &orbit {
                suborbit_of[x as usize] = k as u32;
            }
            let rep = orbit[0];
            suborbits.push(Suborbit {
                rep,
                len: orbit.len(),
                regular: rep != 0 && orbit.len() as u128 == stab_order,
            });
        }
        Ok(SaxlEngine {
            action,
            chain,
            stabiliser,
            stab_order,
            suborbit_of,
            suborbits,
        })
    }

    pub fn action(&self) -> &LabelledAction {
        self.action
    }

    pub fn degree(&self) -> usize {
        self.action.degree()
    }

    /// The point stabiliser `H = G_0`.
    pub fn stabiliser(&self) -> &PermGroup {
        &self.stabiliser
    }

    pub fn stabiliser_order(&self) -> u128 {
        self.stab_order
    }

    /// Orbits of `G_0`, sorted by least point; the first is `{0}`.
    pub fn suborbits(&self) -> &[Suborbit] {
        &self.suborbits
    }

    pub fn suborbit_of(&self, x: u32) -> usize {
        self.suborbit_of[x as usize] as usize
    }

    /// Number of regular suborbits.
    pub fn regular_count(&self) -> usize {
        self.suborbits.iter().filter(|s| s.regular).count()
    }

    /// Points `b` with `{0, b}` a base, increasing.
    pub fn neighbours_of_zero(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&b| self.suborbits[self.suborbit_of(b)].regular)
            .collect()
    }

    /// Element `u` with `0^u = a`.
    pub fn transversal(&self, a: u32) -> Permutation {
        self.chain.transversal(0, a).expect("transitive")
    }

    /// `b^(u^-1)` where `0^u = a`; `{a, b}` is a base iff `{0, moved}` is.
    pub fn move_to_zero(&self, a: u32, b: u32) -> u32 {
        self.chain.trace_inverse(0, a, b).expect("transitive")
    }

    /// Generators of `G_a`.
    pub fn stabiliser_generators_of(&self, a: u32) -> Vec<Permutation> {
        if a == 0 {
            return self.stabiliser.generators().to_vec();
        }
        let u = self.transversal(a);
        self.stabiliser
            .generators()
            .iter()
            .map(|x| x.conjugate_by(&u))
            .collect()
    }

    /// Points in regular `G_a`-orbits, as a membership vector.
    pub fn regular_points_of(&self, a: u32) -> Vec<bool> {
        let n = self.degree();
        let mut out = vec![false; n];
        for orbit in orbits_under(&self.stabiliser_generators_of(a), n) {
            if orbit[0] != a && orbit.len() as u128 == self.stab_order && !orbit.contains(&a) {
                for x in orbit {
                    out[x as usize] = true;
                }
            }
        }
        out
    }

    pub fn is_base_pair(&self, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let b0 = self.move_to_zero(a, b);
        self.suborbits[self.suborbit_of(b0)].regular
    }

    /// `1 - r|H|/n`.
    pub fn q_exact(&self) -> BigRational {
        let n = self.degree() as u128;
        let hit = self.regular_count() as u128 * self.stab_order;
        BigRational::one() - BigRational::new(BigInt::from(hit), BigInt::from(n))
    }

    /// Check the common-neighbour property: every point other than 0 shares a neighbour
    /// with 0 in the Saxl graph. One suborbit representative per suborbit is enough.
    pub fn check_star(&self) -> StarCheck {
        let zero_nbrs = self.neighbours_of_zero();
        let reps: Vec<u32> = self.suborbits.iter().skip(1).map(|s| s.rep).collect();
        let witnesses: Vec<StarWitness> = reps
            .par_iter()
            .map(|&beta| {
                let regular = self.regular_points_of(beta);
                let common = zero_nbrs.iter().copied().find(|&g| regular[g as usize]);
                StarWitness { rep: beta, common }
            })
            .collect();
        StarCheck {
            holds: witnesses.iter().all(|w| w.common.is_some()),
            witnesses,
        }
    }

    /// Largest number of points fixed by a non-identity element of `H`; such a fixed
    /// set is a coclique of the Saxl graph containing 0.
    pub fn largest_fixed_set(&self, element_limit: u128) -> Option<Vec<u32>> {
        let h = &self.stabiliser;
        let candidates: Vec<Permutation> = if self.stab_order <= element_limit {
            h.elements()
        } else {
            h.generators().to_vec()
        };
        candidates
            .into_iter()
            .filter(|x| !x.is_identity())
            .map(|x| x.fixed_points())
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub rep: u32,
    /// Least common neighbour of 0 and `rep`.
    pub common: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub holds: bool,
    pub witnesses: Vec<StarWitness>,
}

/// `max { m : Q < 1/m }`, or an open-ended value when `Q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TValue {
    Finite(u64),
    /// Every pair of distinct points is a base; reported as `t >= n`.
    AtLeast(u64),
}

pub fn t_value(q: &BigRational, degree: u64) -> Result<TValue> {
    if q.is_zero() {
        return Ok(TValue::AtLeast(degree));
    }
    if *q < BigRational::zero() || *q >= BigRational::one() {
        return Err(SaxlError::Precondition(format!("need 0 <= Q < 1, got {q}")));
    }
    // Q = a/b: m a < b  <=>  m <= (b - 1) / a
    let a = q.numer();
    let b = q.denom();
    let m = (b - BigInt::one()) / a;
    m.to_u64()
        .map(TValue::Finite)
        .ok_or_else(|| SaxlError::Unsupported("t(G) out of range".into()))
}

/// `B (A/B)^c`.
pub fn lemma_calc_bound(a: &BigRational, b: &BigRational, c: u32) -> Result<BigRational> {
    if b.is_zero() {
        return Err(SaxlError::Precondition("B must be non-zero".into()));
    }
    let ratio = a / b;
    Ok(b * num_traits::pow(ratio, c as usize))
}

/// `4|H|^2 <= 3|G|`.
pub fn size_inequality(group_order: &BigUint, stab_order: &BigUint) -> bool {
    BigUint::from(4u32) * stab_order * stab_order <= BigUint::from(3u32) * group_order
}

pub(crate) fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
