use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use saxl_core::actions::{
    bundled_catalogue, find_entry, ksubset_action, load_catalogue, psl2_c2_action, psl2_c3_action, GroupVariant,
    LabelledAction,
};
use saxl_core::{Caps, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Psl2Family {
    /// Pairs of projective points.
    C2,
    /// Orthogonal pairs of non-degenerate points of the unitary plane.
    C3,
}

/// Exactly one way of building a transitive action.
#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("action").required(true).args(["catalogue", "psl2", "ksubsets"])))]
pub struct ActionArgs {
    /// Catalogue entry id; the action is on the cosets of its subgroup.
    #[arg(long)]
    pub catalogue: Option<String>,

    /// Catalogue file to use instead of the bundled one.
    #[arg(long, value_name = "PATH")]
    pub catalogue_file: Option<PathBuf>,

    #[arg(long, value_enum, requires = "q")]
    pub psl2: Option<Psl2Family>,

    /// Field order for --psl2.
    #[arg(long)]
    pub q: Option<u64>,

    /// psl, pgl, psigma, pgamma or deltaphi:J.
    #[arg(long, default_value = "psl")]
    pub variant: String,

    /// Symmetric group of degree N on K-subsets.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub ksubsets: Option<Vec<usize>>,

    /// Use the alternating group with --ksubsets.
    #[arg(long, requires = "ksubsets")]
    pub alternating: bool,
}

impl ActionArgs {
    pub fn build(&self, caps: &Caps) -> Result<LabelledAction> {
        if let Some(id) = &self.catalogue {
            let entries = match &self.catalogue_file {
                Some(path) => load_catalogue(path)?,
                None => bundled_catalogue()?,
            };
            return find_entry(entries, id)?.action(caps);
        }
        if let Some(family) = self.psl2 {
            let q = self.q.expect("clap enforces --q");
            let variant = GroupVariant::parse(&self.variant)?;
            return match family {
                Psl2Family::C2 => psl2_c2_action(q, variant, caps),
                Psl2Family::C3 => psl2_c3_action(q, variant, caps),
            };
        }
        let nk = self.ksubsets.as_ref().expect("clap enforces one action");
        ksubset_action(nk[0], nk[1], self.alternating, caps)
    }
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Largest action degree.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_points: Option<u64>,

    /// Largest group order enumerated element by element.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_group_order: Option<u64>,

    /// Largest Saxl graph built in full.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_graph: Option<u64>,

    /// Largest graph for exact clique and independence numbers.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_exact: Option<u64>,
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(v) = self.max_points {
            caps.points = v as usize;
        }
        if let Some(v) = self.max_group_order {
            caps.group_order = v;
        }
        if let Some(v) = self.max_graph {
            caps.graph_vertices = v as usize;
        }
        if let Some(v) = self.max_exact {
            caps.exact_vertices = v as usize;
        }
        caps
    }
}
