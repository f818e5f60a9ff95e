//! Verification sweeps: each produces one check per case and never stops at the first
//! failure.

use std::path::PathBuf;

use clap::Subcommand;
use rayon::prelude::*;
use serde::Serialize;

use saxl_core::actions::{
    bundled_catalogue, bundled_table_rows, load_catalogue, load_table_rows, psl2_c2_action, psl2_c3_action,
    GroupVariant, LabelledAction,
};
use saxl_core::criteria::{
    c2_base_psigma, c2_common_neighbour_witness, c2_counts, c2_euler_scan, c3_base, c3_common_neighbour_witness,
    c3_euler_scan, c3_regular_count_prime, euler_bound_scan, odd_nonprime_prime_powers, C2Model, C3Model,
};
use saxl_core::engine::{clique_lower, BaseRelation, CliqueLower, SaxlEngine};
use saxl_core::gf::{is_prime, prime_power, FqField};
use saxl_core::{Caps, Result};

#[derive(Subcommand, Debug, Clone)]
pub enum Sweep {
    /// Bundled catalogue entries against the expected (r, Q) table.
    TableRows {
        #[arg(long, value_name = "PATH")]
        rows_file: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        catalogue_file: Option<PathBuf>,
    },
    /// Closed-form base relation on pairs of projective points against the stabiliser oracle.
    C2Oracle {
        #[arg(long, default_value_t = 27)]
        qmax: u64,
    },
    /// Closed-form base relation on the unitary model against the stabiliser oracle.
    C3Oracle {
        #[arg(long, default_value_t = 27)]
        qmax: u64,
    },
    /// Common-neighbour witnesses for every valid input in odd non-prime fields.
    Witnesses {
        #[arg(long, default_value_t = 125)]
        qmax: u64,
    },
    /// Valency and regular-suborbit counts against brute force.
    Counts {
        #[arg(long, default_value_t = 49)]
        qmax: u64,
    },
    /// The common-neighbour property for every base-two action with q up to qmax.
    Star {
        #[arg(long, default_value_t = 27)]
        qmax: u64,
    },
    /// Cliques of a given size for the field-automorphism groups in odd non-prime fields.
    Cliques {
        #[arg(long, default_value_t = 28)]
        qmin: u64,
        #[arg(long, default_value_t = 199)]
        qmax: u64,
        #[arg(long, default_value_t = 5)]
        target: usize,
    },
    /// Totient inequalities.
    Euler {
        #[arg(long, default_value_t = 1_000_000)]
        nmax: u64,
        #[arg(long, default_value_t = 10_000)]
        qmax: u64,
        #[arg(long, default_value_t = 1_000)]
        unitary_qmax: u64,
    },
}

impl Sweep {
    pub fn name(&self) -> &'static str {
        match self {
            Sweep::TableRows { .. } => "table-rows",
            Sweep::C2Oracle { .. } => "c2-oracle",
            Sweep::C3Oracle { .. } => "c3-oracle",
            Sweep::Witnesses { .. } => "witnesses",
            Sweep::Counts { .. } => "counts",
            Sweep::Star { .. } => "star",
            Sweep::Cliques { .. } => "cliques",
            Sweep::Euler { .. } => "euler",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Check::new(name, true, detail),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub sweep: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(sweep: &Sweep, caps: &Caps) -> Result<Summary> {
    let checks = match sweep {
        Sweep::TableRows {
            rows_file,
            catalogue_file,
        } => table_rows(rows_file, catalogue_file, caps)?,
        Sweep::C2Oracle { qmax } => oracle(*qmax, false, caps),
        Sweep::C3Oracle { qmax } => oracle(*qmax, true, caps),
        Sweep::Witnesses { qmax } => witnesses(*qmax),
        Sweep::Counts { qmax } => counts(*qmax, caps),
        Sweep::Star { qmax } => star(*qmax, caps),
        Sweep::Cliques { qmin, qmax, target } => cliques(*qmin, *qmax, *target),
        Sweep::Euler {
            nmax,
            qmax,
            unitary_qmax,
        } => euler(*nmax, *qmax, *unitary_qmax),
    };
    Ok(Summary {
        schema: 1,
        sweep: sweep.name(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn table_rows(rows_file: &Option<PathBuf>, catalogue_file: &Option<PathBuf>, caps: &Caps) -> Result<Vec<Check>> {
    let rows = match rows_file {
        Some(p) => load_table_rows(p)?,
        None => bundled_table_rows()?,
    };
    let entries = match catalogue_file {
        Some(p) => load_catalogue(p)?,
        None => bundled_catalogue()?,
    };
    Ok(rows
        .iter()
        .map(|row| {
            let result = (|| -> Result<(bool, String)> {
                let entry = entries
                    .iter()
                    .find(|e| e.id == row.id)
                    .ok_or_else(|| saxl_core::SaxlError::UnknownCatalogueId(row.id.clone()))?;
                let action = entry.action(caps)?;
                let engine = SaxlEngine::new(&action)?;
                let (r, q) = (engine.regular_count(), engine.q_exact());
                let want = row.q_value()?;
                let detail = format!("r = {r}, Q = {q}; expected r = {}, Q = {want}", row.regular);
                Ok((r == row.regular && q == want, detail))
            })();
            match result {
                Ok((ok, detail)) => Check::new(&row.id, ok, detail),
                Err(e) => Check::new(&row.id, false, e.to_string()),
            }
        })
        .collect())
}

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

/// Every supported group between `PSL(2,q)` and `PΓL(2,q)`.
fn variants(q: u64) -> Vec<GroupVariant> {
    let (p, f) = prime_power(q).expect("prime power");
    let mut out = vec![GroupVariant::Psl2];
    if p != 2 {
        out.push(GroupVariant::Pgl2);
    }
    if f > 1 {
        out.push(GroupVariant::PSigmaL2);
        if p != 2 {
            out.push(GroupVariant::PGammaL2);
        }
    }
    out.extend((1..f).map(GroupVariant::DeltaPhi).filter(|v| v.check(p, f).is_ok()));
    out
}

fn compare_all_pairs<R: BaseRelation>(model: &R, action: &LabelledAction) -> Result<String> {
    let engine = SaxlEngine::new(action)?;
    let n = action.degree() as u32;
    let bad: Vec<(u32, u32)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let engine = &engine;
            (0..n)
                .filter(move |&b| model.adjacent(a, b) != engine.is_base_pair(a, b))
                .map(move |b| (a, b))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} ordered pairs agree", n as u64 * n as u64))
    } else {
        Err(saxl_core::SaxlError::Precondition(format!(
            "{} disagreements, first at {:?}",
            bad.len(),
            bad[0]
        )))
    }
}

fn oracle(qmax: u64, unitary: bool, caps: &Caps) -> Vec<Check> {
    let mut checks = Vec::new();
    for q in prime_powers(4, qmax) {
        for variant in variants(q) {
            let name = format!("q={q} {variant}");
            let result = if unitary {
                if matches!(variant, GroupVariant::DeltaPhi(_)) {
                    continue;
                }
                C3Model::new(q, variant).and_then(|m| compare_all_pairs(&m, &psl2_c3_action(q, variant, caps)?))
            } else {
                C2Model::new(q, variant).and_then(|m| compare_all_pairs(&m, &psl2_c2_action(q, variant, caps)?))
            };
            checks.push(Check::from_result(name, result));
        }
    }
    checks
}

fn witnesses(qmax: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (q, _) in odd_nonprime_prime_powers(8, qmax + 1) {
        let result = (|| -> Result<String> {
            let model = C2Model::new(q, GroupVariant::PSigmaL2)?;
            let fq = model.field();
            let alpha = (
                saxl_core::actions::ProjPoint::Affine(fq.zero()),
                saxl_core::actions::ProjPoint::Infinity,
            );
            let pair = |b, c| {
                let (x, y) = (
                    saxl_core::actions::ProjPoint::Affine(b),
                    saxl_core::actions::ProjPoint::Affine(c),
                );
                (x.min(y), x.max(y))
            };
            let mut n = 0u64;
            for b in fq.nonzero() {
                for c in fq.nonzero().filter(|&c| c != b) {
                    if !c2_base_psigma(fq, b, c)? {
                        continue;
                    }
                    let w = c2_common_neighbour_witness(fq, b, c)?;
                    let gamma = pair(w.gamma.0, w.gamma.1);
                    if !(model.is_base(alpha, gamma) && model.is_base(pair(b, c), gamma)) {
                        return Err(saxl_core::SaxlError::Precondition(format!(
                            "witness for ({b:?}, {c:?}) fails"
                        )));
                    }
                    n += 1;
                }
            }
            Ok(format!("{n} inputs"))
        })();
        checks.push(Check::from_result(format!("C2 q={q}"), result));

        let result = (|| -> Result<String> {
            use saxl_core::actions::UnitaryPoint;
            let model = C3Model::new(q, GroupVariant::PSigmaL2)?;
            let plane = model.plane();
            let mut n = 0u64;
            for &pt in model.labels() {
                let UnitaryPoint::Omega(b) = pt else { continue };
                if !c3_base(plane, GroupVariant::PSigmaL2, b)? {
                    continue;
                }
                let w = c3_common_neighbour_witness(plane, b)?;
                let gamma = UnitaryPoint::Omega(plane.canonical(w.c));
                if !(model.is_base(UnitaryPoint::Alpha, gamma)? && model.is_base(pt, gamma)?) {
                    return Err(saxl_core::SaxlError::Precondition(format!("witness for {b:?} fails")));
                }
                n += 1;
            }
            Ok(format!("{n} inputs"))
        })();
        checks.push(Check::from_result(format!("C3 q={q}"), result));
    }
    checks
}

fn counts(qmax: u64, caps: &Caps) -> Vec<Check> {
    let mut checks = Vec::new();
    for (q, _) in odd_nonprime_prime_powers(8, qmax + 1) {
        let result = (|| -> Result<(bool, String)> {
            let (valency, r) = c2_counts(&FqField::with_order(q)?)?;
            let action = psl2_c2_action(q, GroupVariant::PSigmaL2, caps)?;
            let engine = SaxlEngine::new(&action)?;
            let got = (engine.neighbours_of_zero().len() as u64, engine.regular_count() as u64);
            Ok((
                got == (valency, r),
                format!("brute force {got:?}, formula {:?}", (valency, r)),
            ))
        })();
        checks.push(match result {
            Ok((ok, detail)) => Check::new(format!("C2 q={q}"), ok, detail),
            Err(e) => Check::new(format!("C2 q={q}"), false, e.to_string()),
        });
    }
    for q in (5..=qmax).filter(|&q| is_prime(q)) {
        let result = (|| -> Result<(bool, String)> {
            let want = c3_regular_count_prime(q)?;
            let action = psl2_c3_action(q, GroupVariant::Psl2, caps)?;
            let got = SaxlEngine::new(&action)?.regular_count() as u64;
            Ok((got == want, format!("brute force {got}, formula {want}")))
        })();
        checks.push(match result {
            Ok((ok, detail)) => Check::new(format!("C3 q={q}"), ok, detail),
            Err(e) => Check::new(format!("C3 q={q}"), false, e.to_string()),
        });
    }
    checks
}

fn star(qmax: u64, caps: &Caps) -> Vec<Check> {
    let mut checks = Vec::new();
    for q in prime_powers(4, qmax) {
        for variant in variants(q) {
            for (family, build) in [
                (
                    "C2",
                    psl2_c2_action as fn(u64, GroupVariant, &Caps) -> Result<LabelledAction>,
                ),
                ("C3", psl2_c3_action),
            ] {
                let result = (|| -> Result<Option<(bool, String)>> {
                    let action = build(q, variant, caps)?;
                    let engine = SaxlEngine::new(&action)?;
                    if engine.regular_count() == 0 {
                        return Ok(None);
                    }
                    let star = engine.check_star();
                    let missing = star.witnesses.iter().filter(|w| w.common.is_none()).count();
                    Ok(Some((
                        star.holds,
                        format!("{} representatives, {missing} without a witness", star.witnesses.len()),
                    )))
                })();
                let name = format!("{family} q={q} {variant}");
                match result {
                    Ok(None) => {}
                    Ok(Some((ok, detail))) => checks.push(Check::new(name, ok, detail)),
                    Err(e) => checks.push(Check::new(name, false, e.to_string())),
                }
            }
        }
    }
    checks
}

fn cliques(qmin: u64, qmax: u64, target: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for (q, _) in odd_nonprime_prime_powers(qmin.saturating_sub(1), qmax + 1) {
        let c2 = C2Model::new(q, GroupVariant::PSigmaL2).and_then(|m| clique_lower(&m, target, None));
        let c3 = C3Model::new(q, GroupVariant::PSigmaL2).and_then(|m| clique_lower(&m, target, None));
        for (family, outcome) in [("C2", c2), ("C3", c3)] {
            let name = format!("{family} q={q}");
            checks.push(match outcome {
                Ok(CliqueLower::Found { clique }) => Check::new(name, true, format!("clique {clique:?}")),
                Ok(other) => Check::new(name, false, format!("{other:?}")),
                Err(e) => Check::new(name, false, e.to_string()),
            });
        }
    }
    checks
}

fn euler(nmax: u64, qmax: u64, unitary_qmax: u64) -> Vec<Check> {
    let scans = [
        (format!("totient bound, 3 <= n <= {nmax}"), euler_bound_scan(nmax)),
        (format!("phi(q-1) >= 4f, 27 < q < {qmax}"), c2_euler_scan(qmax)),
        (
            format!("phi(q^2-1) >= 4f(q+1), 27 < q < {unitary_qmax}"),
            c3_euler_scan(unitary_qmax),
        ),
    ];
    scans
        .into_iter()
        .map(|(name, scan)| {
            let detail = if scan.passed() {
                format!("{} values", scan.checked)
            } else {
                format!(
                    "{} failures, first {:?}",
                    scan.failures.len(),
                    &scan.failures[..scan.failures.len().min(5)]
                )
            };
            Check::new(name, scan.passed(), detail)
        })
        .collect()
}
