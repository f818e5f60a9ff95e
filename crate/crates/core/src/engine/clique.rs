use serde::Serialize;

use super::{BitSet, SaxlEngine, SaxlGraph};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};

/// A symmetric "forms a base" relation on `0..n` preserved by a transitive group, so that
/// every clique can be moved to one containing 0.
pub trait BaseRelation: Sync {
    fn vertex_count(&self) -> usize;

    fn adjacent(&self, a: u32, b: u32) -> bool;

    /// Neighbours of 0, increasing.
    fn neighbours_of_zero(&self) -> Vec<u32> {
        (1..self.vertex_count() as u32)
            .filter(|&b| self.adjacent(0, b))
            .collect()
    }
}

impl BaseRelation for SaxlEngine<'_> {
    fn vertex_count(&self) -> usize {
        self.degree()
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.is_base_pair(a, b)
    }

    fn neighbours_of_zero(&self) -> Vec<u32> {
        SaxlEngine::neighbours_of_zero(self)
    }
}

impl BaseRelation for SaxlGraph {
    fn vertex_count(&self) -> usize {
        SaxlGraph::vertex_count(self)
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        SaxlGraph::adjacent(self, a, b)
    }

    fn neighbours_of_zero(&self) -> Vec<u32> {
        self.neighbours(0).iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CliqueLower {
    /// Pairwise bases, containing 0, increasing.
    Found { clique: Vec<u32> },
    /// The search was exhaustive: no clique of the target size exists.
    Absent,
    /// The node budget ran out first.
    Inconclusive { nodes: u64 },
}

impl CliqueLower {
    pub fn found(&self) -> Option<&[u32]> {
        match self {
            CliqueLower::Found { clique } => Some(clique),
            _ => None,
        }
    }
}

/// Look for a clique of size `target` through 0 by depth-first extension in point order.
/// The first branch is the greedy clique, so small targets finish immediately.
pub fn clique_lower<R: BaseRelation + ?Sized>(rel: &R, target: usize, node_budget: Option<u64>) -> Result<CliqueLower> {
    if target < 2 {
        return Err(SaxlError::Precondition("clique target must be at least 2".into()));
    }
    if rel.vertex_count() == 0 {
        return Ok(CliqueLower::Absent);
    }
    struct Dfs<'r, R: ?Sized> {
        rel: &'r R,
        target: usize,
        budget: Option<u64>,
        nodes: u64,
        clique: Vec<u32>,
    }
    impl<R: BaseRelation + ?Sized> Dfs<'_, R> {
        // Some(true) found, Some(false) exhausted, None out of budget
        fn extend(&mut self, cands: &[u32]) -> Option<bool> {
            if self.clique.len() >= self.target {
                return Some(true);
            }
            for (i, &v) in cands.iter().enumerate() {
                if self.clique.len() + cands.len() - i < self.target {
                    return Some(false);
                }
                self.nodes += 1;
                if self.budget.is_some_and(|b| self.nodes > b) {
                    return None;
                }
                let next: Vec<u32> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| self.rel.adjacent(v, w))
                    .collect();
                self.clique.push(v);
                match self.extend(&next) {
                    Some(false) => {}
                    other => return other,
                }
                self.clique.pop();
            }
            Some(false)
        }
    }
    let mut dfs = Dfs {
        rel,
        target,
        budget: node_budget,
        nodes: 0,
        clique: vec![0],
    };
    let cands = rel.neighbours_of_zero();
    Ok(match dfs.extend(&cands) {
        Some(true) => {
            let mut clique = dfs.clique;
            clique.sort_unstable();
            CliqueLower::Found { clique }
        }
        Some(false) => CliqueLower::Absent,
        None => CliqueLower::Inconclusive { nodes: dfs.nodes },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCliques {
    pub clique_number: usize,
    pub clique: Vec<u32>,
    pub independence_number: usize,
    pub coclique: Vec<u32>,
}

/// Exact clique and independence numbers by colour-bounded branch and bound, searching
/// only sets through 0. `coclique_seed` is a known independent set containing 0.
pub fn max_clique_and_coclique(
    graph: &SaxlGraph,
    coclique_seed: Option<Vec<u32>>,
    caps: &Caps,
) -> Result<ExactCliques> {
    let n = graph.vertex_count();
    caps.check_exact(n)?;
    if n == 0 {
        return Ok(ExactCliques {
            clique_number: 0,
            clique: Vec::new(),
            independence_number: 0,
            coclique: Vec::new(),
        });
    }
    let rows = graph.rows();
    let clique = with_zero(max_clique_within(rows, rows[0].clone(), Vec::new()));

    let mut others = BitSet::from_indices(n, 1..n as u32).difference(&rows[0]);
    others.remove(0);
    let complement: Vec<BitSet> = (0..n as u32)
        .map(|v| {
            let mut r = others.difference(&rows[v as usize]);
            r.remove(v);
            r
        })
        .collect();
    let seed = match coclique_seed {
        Some(s) => {
            if !s.contains(&0) || s.iter().any(|&a| s.iter().any(|&b| a != b && graph.adjacent(a, b))) {
                return Err(SaxlError::Precondition(
                    "coclique seed is not independent through 0".into(),
                ));
            }
            s.into_iter().filter(|&v| v != 0).collect()
        }
        None => Vec::new(),
    };
    let coclique = with_zero(max_clique_within(&complement, others, seed));
    Ok(ExactCliques {
        clique_number: clique.len(),
        clique,
        independence_number: coclique.len(),
        coclique,
    })
}

fn with_zero(mut set: Vec<u32>) -> Vec<u32> {
    set.push(0);
    set.sort_unstable();
    set
}

/// Largest clique inside `cands`, starting from the incumbent `seed`.
fn max_clique_within(rows: &[BitSet], cands: BitSet, seed: Vec<u32>) -> Vec<u32> {
    struct Search<'r> {
        rows: &'r [BitSet],
        best: Vec<u32>,
        current: Vec<u32>,
    }
    impl Search<'_> {
        fn expand(&mut self, mut p: BitSet) {
            let (order, bounds) = colour_classes(self.rows, &p);
            for i in (0..order.len()).rev() {
                if self.current.len() + bounds[i] <= self.best.len() {
                    return;
                }
                let v = order[i];
                self.current.push(v);
                let next = p.intersection(&self.rows[v as usize]);
                if next.is_empty() {
                    if self.current.len() > self.best.len() {
                        self.best = self.current.clone();
                    }
                } else {
                    self.expand(next);
                }
                self.current.pop();
                p.remove(v);
            }
        }
    }
    let mut search = Search {
        rows,
        best: seed,
        current: Vec::new(),
    };
    search.expand(cands);
    search.best
}

/// Greedy colouring in point order; returns vertices by colour with their colour numbers.
fn colour_classes(rows: &[BitSet], p: &BitSet) -> (Vec<u32>, Vec<usize>) {
    let mut uncoloured = p.clone();
    let mut order = Vec::with_capacity(p.count());
    let mut bounds = Vec::with_capacity(p.count());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        loop {
            let Some(v) = q.iter().next() else { break };
            q.remove(v);
            q = q.difference(&rows[v as usize]);
            uncoloured.remove(v);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}
