use serde::{Deserialize, Serialize};

use crate::error::{Result, SaxlError};

/// Resource limits. Exceeding any of them is an explicit error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest permutation degree an action may have.
    pub points: usize,
    /// Largest group order that may be enumerated element by element.
    pub group_order: u64,
    /// Largest conjugacy class that may be materialised.
    pub class_size: u64,
    /// Largest number of vertices for which a full Saxl graph is built.
    pub graph_vertices: usize,
    /// Largest number of vertices for exact clique and independence numbers.
    pub exact_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            points: 100_000,
            group_order: 10_000_000,
            class_size: 2_000_000,
            graph_vertices: 20_000,
            exact_vertices: 2_000,
        }
    }
}

impl Caps {
    pub fn check_points(&self, n: usize) -> Result<()> {
        if n > self.points {
            return Err(SaxlError::cap("point", self.points as u128, n as u128));
        }
        Ok(())
    }

    pub fn check_group_order(&self, order: u128) -> Result<()> {
        if order > self.group_order as u128 {
            return Err(SaxlError::cap("group order", self.group_order as u128, order));
        }
        Ok(())
    }

    pub fn check_class_size(&self, size: u64) -> Result<()> {
        if size > self.class_size {
            return Err(SaxlError::cap("class size", self.class_size, size));
        }
        Ok(())
    }

    pub fn check_graph(&self, n: usize) -> Result<()> {
        if n > self.graph_vertices {
            return Err(SaxlError::cap("graph vertex", self.graph_vertices as u128, n as u128));
        }
        Ok(())
    }

    pub fn check_exact(&self, n: usize) -> Result<()> {
        if n > self.exact_vertices {
            return Err(SaxlError::cap(
                "exact search vertex",
                self.exact_vertices as u128,
                n as u128,
            ));
        }
        Ok(())
    }
}
