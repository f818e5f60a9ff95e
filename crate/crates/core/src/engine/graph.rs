use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::{BitSet, SaxlEngine};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};

/// The graph on the points in which two points are adjacent when they form a base.
#[derive(Clone, Debug)]
pub struct SaxlGraph {
    rows: Vec<BitSet>,
}

impl SaxlGraph {
    /// Rows are images of the neighbourhood of 0 under coset representatives.
    pub fn build(engine: &SaxlEngine<'_>, caps: &Caps) -> Result<Self> {
        let n = engine.degree();
        caps.check_graph(n)?;
        let zero = engine.neighbours_of_zero();
        let rows: Vec<BitSet> = (0..n as u32)
            .into_par_iter()
            .map(|a| {
                let u = engine.transversal(a);
                BitSet::from_indices(n, zero.iter().map(|&b| u.image(b)))
            })
            .collect();
        let graph = SaxlGraph { rows };
        let expected = engine.regular_count() * engine.stabiliser_order() as usize;
        if graph.valency() != Some(expected) {
            return Err(SaxlError::Precondition(format!(
                "Saxl graph is not regular of valency {expected}"
            )));
        }
        Ok(graph)
    }

    /// Rows from the regular orbits of every point stabiliser, computed point by point.
    /// Slower than [`SaxlGraph::build`]; kept as an independent check.
    pub fn build_by_stabilisers(engine: &SaxlEngine<'_>, caps: &Caps) -> Result<Self> {
        let n = engine.degree();
        caps.check_graph(n)?;
        let rows = (0..n as u32)
            .into_par_iter()
            .map(|a| {
                let regular = engine.regular_points_of(a);
                BitSet::from_indices(n, (0..n as u32).filter(|&b| regular[b as usize]))
            })
            .collect();
        Ok(SaxlGraph { rows })
    }

    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        SaxlGraph { rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn neighbours(&self, a: u32) -> &BitSet {
        &self.rows[a as usize]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.rows[a as usize].contains(b)
    }

    /// Common valency, if every vertex has the same.
    pub fn valency(&self) -> Option<usize> {
        let first = self.rows.first().map_or(0, BitSet::count);
        self.rows.iter().all(|r| r.count() == first).then_some(first)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u as u32).map(move |v| (u as u32, v)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(u, v)| self.adjacent(v, u))
            && self.rows.iter().enumerate().all(|(u, r)| !r.contains(u as u32))
    }

    /// Proportion of ordered pairs of points that are not bases.
    pub fn non_base_proportion(&self) -> BigRational {
        let n = self.vertex_count() as u128;
        let ordered_bases = 2 * self.edge_count() as u128;
        BigRational::one() - BigRational::new(BigInt::from(ordered_bases), BigInt::from(n * n))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}
