use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use proptest::prelude::*;
use saxl_core::actions::{ksubset_action, psl2_c2_action, psl2_c3_action, GroupVariant};
use saxl_core::engine::{t_value, BitSet, SaxlEngine, SaxlGraph, TValue};
use saxl_core::gf::{FqElem, FqField};
use saxl_core::perm::{PermGroup, Permutation};
use saxl_core::Caps;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let mut seen = HashSet::from([Permutation::identity(n)]);
    let mut queue = vec![Permutation::identity(n)];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

const FIELDS: [u64; 10] = [2, 3, 4, 5, 8, 9, 25, 27, 49, 64];

proptest! {
    #[test]
    fn composition_acts_left_to_right(p in perm(7), q in perm(7), r in perm(7)) {
        let pq = p.compose(&q).unwrap();
        for i in 0..7 {
            prop_assert_eq!(pq.image(i), q.image(p.image(i)));
        }
        prop_assert_eq!(pq.then(&r), p.then(&q.then(&r)));
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.conjugate_by(&q.then(&r)), p.conjugate_by(&q).conjugate_by(&r));
        prop_assert_eq!(p.conjugate_by(&q), q.inverse().then(&p).then(&q));
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(9)) {
        let cycles = p.cycles();
        prop_assert_eq!(Permutation::from_cycles(9, &cycles).unwrap(), p.clone());
        let order = p.order_u64().unwrap();
        prop_assert!(p.pow(order).is_identity());
    }

    #[test]
    fn stabiliser_chain_matches_closure(
        n in 2usize..7,
        seeds in proptest::collection::vec(any::<proptest::sample::Index>(), 1..4),
    ) {
        // derive generators from indices so the degree can vary
        let all: Vec<Permutation> = closure(n, &[
            Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ]).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let gens: Vec<Permutation> = seeds.iter().map(|i| i.get(&all).clone()).collect();
        let group = PermGroup::new(n, gens.clone()).unwrap();
        let elements = closure(n, &gens);
        prop_assert_eq!(group.order_u128(), elements.len() as u128);
        for x in &all {
            prop_assert_eq!(group.contains(x), elements.contains(x));
        }
        let listed: HashSet<Permutation> = group.elements().into_iter().collect();
        prop_assert_eq!(listed, elements);
    }

    #[test]
    fn field_axioms(qi in 0..FIELDS.len(), a in 0usize..4096, b in 0usize..4096, c in 0usize..4096) {
        let fq = FqField::with_order(FIELDS[qi]).unwrap();
        let q = fq.q() as usize;
        let (a, b, c) = (FqElem::from_index(a % q), FqElem::from_index(b % q), FqElem::from_index(c % q));
        prop_assert_eq!(fq.add(a, fq.add(b, c)), fq.add(fq.add(a, b), c));
        prop_assert_eq!(fq.mul(a, fq.mul(b, c)), fq.mul(fq.mul(a, b), c));
        prop_assert_eq!(fq.mul(a, fq.add(b, c)), fq.add(fq.mul(a, b), fq.mul(a, c)));
        prop_assert_eq!(fq.add(a, fq.neg(a)), FqElem::ZERO);
        prop_assert_eq!(fq.sub(a, b), fq.add(a, fq.neg(b)));
        if !a.is_zero() {
            prop_assert_eq!(fq.mul(a, fq.inv(a).unwrap()), FqElem::ONE);
        }
        let frob = |x| fq.frobenius(x, 1);
        prop_assert_eq!(frob(fq.add(a, b)), fq.add(frob(a), frob(b)));
        prop_assert_eq!(frob(fq.mul(a, b)), fq.mul(frob(a), frob(b)));
        prop_assert_eq!(fq.frobenius(a, fq.f()), a);
    }

    #[test]
    fn t_value_is_the_largest_admissible_m(num in 1i64..500, extra in 1i64..500) {
        let q = BigRational::new(num.into(), (num + extra).into());
        let TValue::Finite(m) = t_value(&q, 1).unwrap() else { panic!() };
        let m = BigRational::from_integer((m as i64).into());
        let one = BigRational::from_integer(1.into());
        prop_assert!(&m * &q < one);
        prop_assert!((m + &one) * q >= one);
    }

    #[test]
    fn bitset_matches_btreeset(
        xs in proptest::collection::btree_set(0u32..200, 0..60),
        ys in proptest::collection::btree_set(0u32..200, 0..60),
    ) {
        let a = BitSet::from_indices(200, xs.iter().copied());
        let b = BitSet::from_indices(200, ys.iter().copied());
        prop_assert_eq!(a.count(), xs.len());
        prop_assert_eq!(a.iter().collect::<Vec<_>>(), xs.iter().copied().collect::<Vec<_>>());
        let meet: Vec<u32> = xs.intersection(&ys).copied().collect();
        prop_assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), meet.clone());
        prop_assert_eq!(a.intersects(&b), !meet.is_empty());
        let diff: Vec<u32> = xs.difference(&ys).copied().collect();
        prop_assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), diff);
    }
}

fn small_actions() -> Vec<saxl_core::actions::LabelledAction> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for (n, k, alt) in [(5, 2, true), (6, 2, false), (7, 3, true), (6, 3, false)] {
        out.push(ksubset_action(n, k, alt, &caps).unwrap());
    }
    for (q, v) in [
        (7, GroupVariant::Psl2),
        (8, GroupVariant::PGammaL2),
        (9, GroupVariant::DeltaPhi(1)),
    ] {
        out.push(psl2_c2_action(q, v, &caps).unwrap());
        out.push(psl2_c3_action(q, v, &caps).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn base_relation_is_symmetric_and_matches_the_oracle(which in 0usize..10, a in 0u32..1000, b in 0u32..1000) {
        let actions = small_actions();
        let action = &actions[which];
        let n = action.degree() as u32;
        let (a, b) = (a % n, b % n);
        let engine = SaxlEngine::new(action).unwrap();
        prop_assert_eq!(engine.is_base_pair(a, b), engine.is_base_pair(b, a));
        prop_assert_eq!(engine.is_base_pair(a, b), saxl_core::engine::is_base_pair(action, a, b).unwrap());
    }
}

#[test]
fn non_base_proportion_equals_the_suborbit_formula() {
    let caps = Caps::default();
    for action in small_actions() {
        let engine = SaxlEngine::new(&action).unwrap();
        let graph = SaxlGraph::build(&engine, &caps).unwrap();
        assert_eq!(graph.non_base_proportion(), engine.q_exact(), "{}", action.name());
        let h = engine.stabiliser_order() as usize;
        assert_eq!(graph.valency(), Some(engine.regular_count() * h));
        assert_eq!(
            engine.suborbits().iter().map(|s| s.len).sum::<usize>(),
            action.degree(),
            "{}",
            action.name()
        );
    }
}
