//! Concrete transitive actions with labelled points.

mod catalogue;
mod coset;
mod expectations;
mod ksubset;
mod psl2;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf::{FqElem, FqField};
use crate::perm::PermGroup;

pub use catalogue::{bundled_catalogue, find_entry, load_catalogue, parse_catalogue, CatalogueEntry};
pub use coset::coset_action;
pub use expectations::{bundled_table_rows, load_table_rows, parse_table_rows, TableRow};
pub use ksubset::ksubset_action;
pub use psl2::{
    mat_apply, psl2_c2_action, psl2_c3_action, psl2_order, GroupVariant, Mat2, ProjectiveLine, UnitaryPlane,
};

/// A point of the projective line over `GF(q)`: `<e1 + b e2>` or `<e2>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProjPoint {
    Affine(FqElem),
    Infinity,
}

/// A point of the unitary model: the pair `{<u>, <v>}`, or the pair
/// `{<u + b v>, <u - b^-q v>}` labelled by the smaller of `b` and `-b^-q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitaryPoint {
    Alpha,
    Omega(FqElem),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OmegaPoint {
    /// A `k`-subset, 0-based and sorted.
    Subset(Vec<u32>),
    /// A right coset, numbered in discovery order from the subgroup itself.
    Coset(u32),
    /// An unordered pair of projective points, smaller first.
    ProjPair(ProjPoint, ProjPoint),
    Unitary(UnitaryPoint),
}

/// Which construction produced an action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionFamily {
    KSubsets { n: usize, k: usize, alternating: bool },
    Coset { name: String },
    Psl2C2 { q: u64, variant: GroupVariant },
    Psl2C3 { q: u64, variant: GroupVariant },
}

/// The group of a faithful action in which the point stabiliser is a given subgroup,
/// kept alongside a coset action so class computations can run in the smaller degree.
#[derive(Clone, Debug)]
pub struct SourcePair {
    pub group: PermGroup,
    pub subgroup: PermGroup,
}

/// A transitive permutation group together with a label for every point.
#[derive(Clone, Debug)]
pub struct LabelledAction {
    name: String,
    family: ActionFamily,
    group: PermGroup,
    labels: Vec<OmegaPoint>,
    index: HashMap<OmegaPoint, u32>,
    field: Option<Arc<FqField>>,
    source: Option<SourcePair>,
    warnings: Vec<String>,
}

impl LabelledAction {
    pub(crate) fn new(name: String, family: ActionFamily, group: PermGroup, labels: Vec<OmegaPoint>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        LabelledAction {
            name,
            family,
            group,
            labels,
            index,
            field: None,
            source: None,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn with_field(mut self, field: Arc<FqField>) -> Self {
        self.field = Some(field);
        self
    }

    pub(crate) fn with_source(mut self, source: SourcePair) -> Self {
        self.source = Some(source);
        self
    }

    pub(crate) fn push_warning(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &ActionFamily {
        &self.family
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[OmegaPoint] {
        &self.labels
    }

    pub fn label(&self, i: u32) -> &OmegaPoint {
        &self.labels[i as usize]
    }

    pub fn index_of(&self, label: &OmegaPoint) -> Option<u32> {
        self.index.get(label).copied()
    }

    /// The field of definition for the projective and unitary families: `GF(q)` for pairs
    /// of projective points, `GF(q^2)` for the unitary model.
    pub fn field(&self) -> Option<&Arc<FqField>> {
        self.field.as_ref()
    }

    pub fn source(&self) -> Option<&SourcePair> {
        self.source.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}
