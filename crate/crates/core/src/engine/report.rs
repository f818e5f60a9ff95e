use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{
    clique_lower, max_clique_and_coclique, q_hat, q_tilde, size_inequality, t_value, ClassMeet, CliqueLower,
    ExactCliques, SaxlEngine, SaxlGraph, StarCheck, TValue,
};
use crate::actions::{ActionFamily, LabelledAction};
use crate::caps::Caps;
use crate::error::Result;

pub const REPORT_SCHEMA: u32 = 1;

/// Exact rational serialised as `{"num": .., "den": ..}`; integers that do not fit in 64
/// bits become decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ratio(pub BigRational);

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ratio", 2)?;
        match (self.0.numer().to_i64(), self.0.denom().to_i64()) {
            (Some(n), Some(d)) => {
                st.serialize_field("num", &n)?;
                st.serialize_field("den", &d)?;
            }
            _ => {
                st.serialize_field("num", &self.0.numer().to_string())?;
                st.serialize_field("den", &self.0.denom().to_string())?;
            }
        }
        st.end()
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn big_number<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Recompute `Q` from the full graph built point by point.
    pub cross_check: bool,
    pub class_bounds: bool,
    pub star: bool,
    pub clique_target: Option<usize>,
    pub clique_budget: Option<u64>,
    pub exact_cliques: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            cross_check: true,
            class_bounds: true,
            star: true,
            clique_target: None,
            clique_budget: Some(10_000_000),
            exact_cliques: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueTarget {
    pub target: usize,
    #[serde(flatten)]
    pub result: CliqueLower,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub family: ActionFamily,
    pub degree: usize,
    #[serde(serialize_with = "big_number")]
    pub group_order: BigUint,
    #[serde(serialize_with = "big_number")]
    pub stabiliser_order: BigUint,
    /// Suborbit lengths, ordered by least point.
    pub suborbit_lengths: Vec<usize>,
    pub regular_count: usize,
    pub base_two: bool,
    pub q_exact: Ratio,
    pub q_pair_count: Option<Ratio>,
    pub q_hat: Option<Ratio>,
    pub q_tilde: Option<Ratio>,
    pub prime_classes: Option<Vec<ClassMeet>>,
    pub t_value: Option<TValue>,
    pub size_inequality: bool,
    pub star: Option<StarCheck>,
    pub clique_lower: Option<CliqueTarget>,
    pub exact: Option<ExactCliques>,
    pub warnings: Vec<String>,
}

pub fn analyze(action: &LabelledAction, opts: &AnalysisOptions, caps: &Caps) -> Result<AnalysisReport> {
    let engine = SaxlEngine::new(action)?;
    let n = engine.degree();
    let group_order = action.group().order();
    let stab_order = engine.stabiliser().order();
    let r = engine.regular_count();
    let q = engine.q_exact();
    let mut warnings = action.warnings().to_vec();

    let q_pair_count = if opts.cross_check {
        let q2 = SaxlGraph::build_by_stabilisers(&engine, caps)?.non_base_proportion();
        if q2 != q {
            warnings.push(format!("pair count gives Q = {q2}, suborbits give {q}"));
        }
        Some(Ratio(q2))
    } else {
        None
    };

    let (q_hat_value, q_tilde_value, prime_classes) = if opts.class_bounds {
        let (g, h) = match action.source() {
            Some(src) => (&src.group, &src.subgroup),
            None => (action.group(), engine.stabiliser()),
        };
        let (qh, classes) = q_hat(g, h, caps)?;
        let qt = q_tilde(g, h, caps)?;
        (Some(Ratio(qh)), Some(Ratio(qt)), Some(classes))
    } else {
        (None, None, None)
    };

    let t = if r > 0 {
        Some(t_value(&q, n as u64)?)
    } else {
        warnings.push("no regular suborbit: the base size exceeds two".into());
        None
    };
    if t == Some(TValue::AtLeast(n as u64)) {
        warnings.push(format!(
            "Q = 0: every pair of distinct points is a base, t is reported as at least {n}"
        ));
    }

    let star = (opts.star && r > 0).then(|| engine.check_star());
    let clique = match opts.clique_target {
        Some(target) => Some(CliqueTarget {
            target,
            result: clique_lower(&engine, target, opts.clique_budget)?,
        }),
        None => None,
    };
    let exact = if opts.exact_cliques {
        caps.check_exact(n)?;
        let graph = SaxlGraph::build(&engine, caps)?;
        let seed = engine.largest_fixed_set(100_000);
        Some(max_clique_and_coclique(&graph, seed, caps)?)
    } else {
        None
    };

    Ok(AnalysisReport {
        schema: REPORT_SCHEMA,
        name: action.name().to_string(),
        family: action.family().clone(),
        degree: n,
        size_inequality: size_inequality(&group_order, &stab_order),
        group_order,
        stabiliser_order: stab_order,
        suborbit_lengths: engine.suborbits().iter().map(|s| s.len).collect(),
        regular_count: r,
        base_two: r > 0,
        q_exact: Ratio(q),
        q_pair_count,
        q_hat: q_hat_value,
        q_tilde: q_tilde_value,
        prime_classes,
        t_value: t,
        star,
        clique_lower: clique,
        exact,
        warnings,
    })
}
