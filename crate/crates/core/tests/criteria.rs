use std::sync::Arc;

use saxl_core::actions::{
    psl2_c2_action, psl2_c3_action, GroupVariant, OmegaPoint, ProjPoint, UnitaryPlane, UnitaryPoint,
};
use saxl_core::criteria::{
    c2_base_psigma, c2_base_psigma_fast, c2_common_neighbour_witness, c2_counts, c3_base, c3_clique,
    c3_common_neighbour_witness, c3_regular_count_prime, C2Model, C3Model,
};
use saxl_core::engine::{is_base_pair, SaxlEngine, SaxlGraph};
use saxl_core::gf::{FqElem, FqField};
use saxl_core::Caps;

fn c2_variants(q: u64) -> Vec<GroupVariant> {
    let fq = FqField::with_order(q).unwrap();
    let mut out = vec![GroupVariant::Psl2, GroupVariant::Pgl2];
    if fq.f() > 1 {
        out.push(GroupVariant::PSigmaL2);
        out.push(GroupVariant::PGammaL2);
    }
    for j in 0..fq.f() {
        if GroupVariant::DeltaPhi(j).check(fq.p(), fq.f()).is_ok() {
            out.push(GroupVariant::DeltaPhi(j));
        }
    }
    out
}

#[test]
fn c2_model_matches_oracle_on_all_pairs() {
    let caps = Caps::default();
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 49] {
        for variant in c2_variants(q) {
            let action = psl2_c2_action(q, variant, &caps).unwrap();
            let model = C2Model::new(q, variant).unwrap();
            let labels: Vec<OmegaPoint> = model
                .labels()
                .iter()
                .map(|&(a, b)| OmegaPoint::ProjPair(a, b))
                .collect();
            assert_eq!(labels, action.labels(), "q={q} {variant}");
            let engine = SaxlEngine::new(&action).unwrap();
            let n = action.degree() as u32;
            let mut bad = 0;
            for a in 0..n {
                for b in 0..n {
                    let x = model.labels()[a as usize];
                    let y = model.labels()[b as usize];
                    if model.is_base(x, y) != engine.is_base_pair(a, b) {
                        bad += 1;
                    }
                }
            }
            assert_eq!(bad, 0, "q={q} {variant}");
        }
    }
}

#[test]
fn psigma_criterion_matches_oracle() {
    let caps = Caps::default();
    for q in [9u64, 13, 25, 27] {
        let action = psl2_c2_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
        let model = C2Model::new(q, GroupVariant::PSigmaL2).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        let n = action.degree() as u32;
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (model.labels()[a as usize], model.labels()[b as usize]);
                assert_eq!(
                    model.is_base_psigma(x, y).unwrap(),
                    engine.is_base_pair(a, b),
                    "q={q} {x:?} {y:?}"
                );
            }
        }
        let fq = model.field();
        for b in fq.nonzero() {
            for c in fq.nonzero().filter(|&c| c != b) {
                assert_eq!(
                    c2_base_psigma(fq, b, c).unwrap(),
                    c2_base_psigma_fast(fq, b, c).unwrap()
                );
            }
        }
    }
}

#[test]
fn psigma_criterion_rejects_even_q() {
    let fq = FqField::with_order(8).unwrap();
    assert!(c2_base_psigma(&fq, FqElem::ONE, fq.primitive()).is_err());
}

#[test]
fn c3_model_matches_oracle_on_all_pairs() {
    let caps = Caps::default();
    for q in [4u64, 5, 7, 8, 9, 11, 13, 17, 19, 23, 25, 27, 29, 49] {
        let fq = FqField::with_order(q).unwrap();
        let mut variants = vec![GroupVariant::Psl2, GroupVariant::Pgl2];
        if fq.f() > 1 {
            variants.extend([GroupVariant::PSigmaL2, GroupVariant::PGammaL2]);
        }
        for variant in variants {
            let action = psl2_c3_action(q, variant, &caps).unwrap();
            let model = C3Model::new(q, variant).unwrap();
            let labels: Vec<OmegaPoint> = model.labels().iter().map(|&u| OmegaPoint::Unitary(u)).collect();
            assert_eq!(labels, action.labels(), "q={q} {variant}");
            let engine = SaxlEngine::new(&action).unwrap();
            let n = action.degree() as u32;
            for a in 0..n {
                for b in 0..n {
                    let (x, y) = (model.labels()[a as usize], model.labels()[b as usize]);
                    assert_eq!(
                        model.is_base(x, y).unwrap(),
                        engine.is_base_pair(a, b),
                        "q={q} {variant} {x:?} {y:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn c3_psigma_example_needs_q_125() {
    // the smallest field with a non-square label failing the field-automorphism condition
    let caps = Caps::default();
    let plane = UnitaryPlane::new(Arc::new(FqField::new(5, 6).unwrap()), 125);
    let b = plane.canonical(FqElem::from_log(31));
    assert!(plane.is_label(b));
    assert!(!plane.field().is_square(b).unwrap());
    assert!(c3_base(&plane, GroupVariant::Psl2, b).unwrap());
    assert!(!c3_base(&plane, GroupVariant::PSigmaL2, b).unwrap());
    assert!(c3_base(&plane, GroupVariant::Pgl2, b).is_err());

    let action = psl2_c3_action(125, GroupVariant::PSigmaL2, &caps).unwrap();
    let alpha = action.index_of(&OmegaPoint::Unitary(UnitaryPoint::Alpha)).unwrap();
    let beta = action.index_of(&OmegaPoint::Unitary(UnitaryPoint::Omega(b))).unwrap();
    assert!(!is_base_pair(&action, alpha, beta).unwrap());

    for q in [9u64, 27] {
        let model = C3Model::new(q, GroupVariant::PSigmaL2).unwrap();
        let plane = model.plane();
        for &pt in model.labels() {
            let UnitaryPoint::Omega(b) = pt else { continue };
            assert_eq!(
                c3_base(plane, GroupVariant::Psl2, b).unwrap(),
                c3_base(plane, GroupVariant::PSigmaL2, b).unwrap(),
                "q={q}"
            );
        }
    }
}

#[test]
fn c2_witnesses_are_common_neighbours() {
    let caps = Caps::default();
    for q in [9u64, 25, 27] {
        let action = psl2_c2_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        let model = C2Model::new(q, GroupVariant::PSigmaL2).unwrap();
        let fq = model.field();
        let idx = |x: FqElem, y: FqElem| {
            let pts = [ProjPoint::Affine(x), ProjPoint::Affine(y)];
            let (lo, hi) = (pts[0].min(pts[1]), pts[0].max(pts[1]));
            action.index_of(&OmegaPoint::ProjPair(lo, hi)).unwrap()
        };
        let alpha = action
            .index_of(&OmegaPoint::ProjPair(
                ProjPoint::Affine(FqElem::ZERO),
                ProjPoint::Infinity,
            ))
            .unwrap();
        let mut checked = 0;
        for b in fq.nonzero() {
            for c in fq.nonzero().filter(|&c| c != b) {
                if !c2_base_psigma(fq, b, c).unwrap() {
                    continue;
                }
                let w = c2_common_neighbour_witness(fq, b, c).unwrap();
                let gamma = idx(w.gamma.0, w.gamma.1);
                assert!(engine.is_base_pair(alpha, gamma));
                assert!(engine.is_base_pair(idx(b, c), gamma));
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn c3_witnesses_are_common_neighbours() {
    let caps = Caps::default();
    for q in [9u64, 25, 27] {
        let action = psl2_c3_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        let model = C3Model::new(q, GroupVariant::PSigmaL2).unwrap();
        let plane = model.plane();
        let alpha = action.index_of(&OmegaPoint::Unitary(UnitaryPoint::Alpha)).unwrap();
        for &pt in model.labels() {
            let UnitaryPoint::Omega(b) = pt else { continue };
            if !c3_base(plane, GroupVariant::PSigmaL2, b).unwrap() {
                continue;
            }
            let w = c3_common_neighbour_witness(plane, b).unwrap();
            let gamma = action
                .index_of(&OmegaPoint::Unitary(UnitaryPoint::Omega(plane.canonical(w.c))))
                .unwrap();
            let beta = action.index_of(&OmegaPoint::Unitary(pt)).unwrap();
            assert!(engine.is_base_pair(alpha, gamma));
            assert!(engine.is_base_pair(beta, gamma), "q={q} b={b:?}");
        }
    }
}

#[test]
fn c2_counts_match_brute_force() {
    let caps = Caps::default();
    for q in [9u64, 25, 27, 49] {
        let fq = FqField::with_order(q).unwrap();
        let (valency, regular) = c2_counts(&fq).unwrap();
        let action = psl2_c2_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        assert_eq!(engine.neighbours_of_zero().len() as u64, valency, "q={q}");
        assert_eq!(engine.regular_count() as u64, regular, "q={q}");
    }
}

#[test]
fn prime_field_pairs_have_extra_neighbours() {
    let caps = Caps::default();
    let q = 13u64;
    let fq = FqField::with_order(q).unwrap();
    assert!(c2_counts(&fq).is_err());
    let m = fq.count_nonsquare_nonsubfield().unwrap();
    assert_eq!(m, 6);
    let action = psl2_c2_action(q, GroupVariant::Psl2, &caps).unwrap();
    let engine = SaxlEngine::new(&action).unwrap();
    let valency = engine.neighbours_of_zero().len() as u64;
    assert_eq!(valency, m * (q - 1) / 2 + 2 * (q - 1));
    assert_eq!(valency, 60);
}

#[test]
fn c3_regular_counts_for_primes() {
    let caps = Caps::default();
    for q in [5u64, 7, 11, 13, 17, 19] {
        let action = psl2_c3_action(q, GroupVariant::Psl2, &caps).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        assert_eq!(
            engine.regular_count() as u64,
            c3_regular_count_prime(q).unwrap(),
            "q={q}"
        );
    }
    assert!(c3_regular_count_prime(9).is_err());
}

#[test]
fn clique_constructions_reach_half_of_q_minus_one() {
    let caps = Caps::default();
    for q in [9u64, 13, 25] {
        let action = psl2_c3_action(q, GroupVariant::Psl2, &caps).unwrap();
        let engine = SaxlEngine::new(&action).unwrap();
        let graph = SaxlGraph::build(&engine, &caps).unwrap();
        let model = C3Model::new(q, GroupVariant::Psl2).unwrap();
        let b = model.field().primitive();
        let b = if model.plane().is_label(b) {
            b
        } else {
            model.field().lambda_pow(3)
        };
        let clique = c3_clique(&model, b).unwrap();
        assert!(clique.len() as u64 >= (q - 1) / 2, "q={q}: {}", clique.len());
        let ids: Vec<u32> = clique
            .iter()
            .map(|&u| action.index_of(&OmegaPoint::Unitary(u)).unwrap())
            .collect();
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i + 1..] {
                assert!(graph.adjacent(x, y));
            }
        }
    }
}

#[test]
fn psigma_graph_is_a_subgraph_for_variants_meeting_pgl_in_psl() {
    let caps = Caps::default();
    for q in [9u64, 25] {
        let sub = {
            let action = psl2_c2_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
            SaxlGraph::build(&SaxlEngine::new(&action).unwrap(), &caps).unwrap()
        };
        let unitary_sub = {
            let action = psl2_c3_action(q, GroupVariant::PSigmaL2, &caps).unwrap();
            SaxlGraph::build(&SaxlEngine::new(&action).unwrap(), &caps).unwrap()
        };
        let fq = FqField::with_order(q).unwrap();
        for variant in c2_variants(q).into_iter().filter(|v| v.meets_pgl_in_psl(fq.p())) {
            let action = psl2_c2_action(q, variant, &caps).unwrap();
            let graph = SaxlGraph::build(&SaxlEngine::new(&action).unwrap(), &caps).unwrap();
            assert!(sub.edges().all(|(u, v)| graph.adjacent(u, v)), "q={q} {variant}");
            let action = psl2_c3_action(q, variant, &caps).unwrap();
            let graph = SaxlGraph::build(&SaxlEngine::new(&action).unwrap(), &caps).unwrap();
            assert!(
                unitary_sub.edges().all(|(u, v)| graph.adjacent(u, v)),
                "q={q} {variant} unitary"
            );
        }
    }
}
