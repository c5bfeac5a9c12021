use proptest::prelude::*;

use clonoids::bf_core::{BoolFn, Closure, MinorMap, NamedClass};
use clonoids::clonoid::{member_klik, shared_enumeration};
use clonoids::lattice::all_ideals;
use clonoids::order::{canonical_class, minmin_equiv, minmin_le};
use clonoids::poset::shared_poset;

fn closure_class(c: Closure) -> NamedClass {
    let name = match c {
        Closure::XI => "XI",
        Closure::IX => "IX",
        Closure::M => "M",
        Closure::Mneg => "Mneg",
        Closure::R => "Refl",
    };
    name.parse().unwrap()
}

fn any_fn(max_arity: usize) -> impl Strategy<Value = BoolFn> {
    (1..=max_arity).prop_flat_map(|n| {
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        any::<u64>().prop_map(move |w| BoolFn::from_word(n, w & mask).unwrap())
    })
}

fn sparse_fn(max_arity: usize, max_true: usize) -> impl Strategy<Value = BoolFn> {
    (1..=max_arity).prop_flat_map(move |n| {
        proptest::collection::btree_set(0..1usize << n, 0..=max_true.min(1 << n))
            .prop_map(move |rows| BoolFn::from_indices(n, rows).unwrap())
    })
}

fn any_closure() -> impl Strategy<Value = Closure> {
    prop::sample::select(Closure::ALL.to_vec())
}

fn map_into(source: usize, target: usize) -> impl Strategy<Value = MinorMap> {
    proptest::collection::vec(1..=target, source).prop_map(move |m| MinorMap::new(target, &m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closure_is_extensive_idempotent_and_lands_in_its_class(f in any_fn(5), c in any_closure()) {
        let g = f.closure(c);
        prop_assert!(f.is_minorant_of(&g).unwrap());
        prop_assert_eq!(g.closure(c), g.clone());
        prop_assert!(closure_class(c).member(&g));
    }

    #[test]
    fn closure_is_least(f in any_fn(4), extra in any::<u64>(), c in any_closure()) {
        // Any majorant inside the class dominates the closure.
        let h = BoolFn::from_word(f.arity(), f.word() | extra & ((1u64 << f.rows()) - 1)).unwrap();
        if closure_class(c).member(&h) {
            prop_assert!(f.closure(c).is_minorant_of(&h).unwrap());
        }
    }

    #[test]
    fn closure_is_monotone(f in any_fn(4), extra in any::<u64>(), c in any_closure()) {
        let g = BoolFn::from_word(f.arity(), f.word() | extra & ((1u64 << f.rows()) - 1)).unwrap();
        prop_assert!(f.closure(c).is_minorant_of(&g.closure(c)).unwrap());
    }

    #[test]
    fn inner_negation_swaps_closures(f in any_fn(5), c in any_closure()) {
        let lhs = f.inner_negation().closure(c.inner_negated());
        prop_assert_eq!(lhs, f.closure(c).inner_negation());
    }

    #[test]
    fn order_contains_minorants_and_minors(g in any_fn(3), extra in any::<u64>(), n in 1usize..=4, seed in any::<u64>()) {
        let f = BoolFn::from_word(g.arity(), g.word() & extra).unwrap();
        prop_assert!(minmin_le(&f, &g));
        let picks: Vec<usize> = (0..g.arity()).map(|i| 1 + ((seed >> (8 * i)) as usize % n)).collect();
        let minor = g.minor(&MinorMap::new(n, &picks).unwrap()).unwrap();
        prop_assert!(minmin_le(&minor, &g));
    }

    #[test]
    fn order_is_transitive(f in sparse_fn(3, 3), g in sparse_fn(3, 3), h in sparse_fn(3, 3)) {
        if minmin_le(&f, &g) && minmin_le(&g, &h) {
            prop_assert!(minmin_le(&f, &h));
        }
    }

    #[test]
    fn canonical_class_is_a_class_invariant(
        (f, perm) in sparse_fn(4, 3).prop_flat_map(|f| {
            let n = f.arity();
            (Just(f), Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let g = f.minor(&MinorMap::new(f.arity(), &perm).unwrap()).unwrap();
        prop_assert_eq!(canonical_class(&f).unwrap(), canonical_class(&g).unwrap());
        prop_assert!(minmin_equiv(&f, &g));
        let rep = canonical_class(&f).unwrap().representative().clone();
        prop_assert!(minmin_equiv(&f, &rep));
    }

    #[test]
    fn membership_grows_with_the_ideal(i in any::<usize>(), j in any::<usize>(), k in 2usize..=3, f in any_fn(3)) {
        let p = shared_poset(k, None).unwrap();
        let ideals = all_ideals(&p).unwrap();
        let small = &ideals[i % ideals.len()];
        let large = small.union(&ideals[j % ideals.len()]);
        if member_klik(&f, small) {
            prop_assert!(member_klik(&f, &large));
        }
    }

    #[test]
    fn membership_is_minor_and_minorant_closed(seed in any::<u64>(), f in any_fn(3), extra in any::<u64>(), map in map_into(3, 3)) {
        let p = shared_poset(2, None).unwrap();
        let ideals = all_ideals(&p).unwrap();
        let theta = &ideals[seed as usize % ideals.len()];
        if member_klik(&f, theta) {
            let below = BoolFn::from_word(f.arity(), f.word() & extra).unwrap();
            prop_assert!(member_klik(&below, theta));
            let one_based: Vec<usize> = map.indices()[..f.arity()].iter().map(|i| i + 1).collect();
            let minor = f.minor(&MinorMap::new(3, &one_based).unwrap()).unwrap();
            prop_assert!(member_klik(&minor, theta));
        }
    }
}

#[test]
fn ideals_are_downward_closed() {
    for k in 1..=3 {
        let p = shared_poset(k, None).unwrap();
        for t in all_ideals(&p).unwrap() {
            for (lo, hi) in p.covers() {
                assert!(!t.contains(*hi) || t.contains(*lo), "{t} at k={k}");
            }
        }
    }
}

#[test]
fn inner_negation_permutes_the_enumerated_clonoids() {
    for k in [2, 3] {
        let e = shared_enumeration(k).unwrap();
        let probes = e.probes();
        for c in &e.clonoids {
            let neg = c.descriptor.inner_negated().unwrap();
            let via_probes = probes.of_predicate(|f| c.descriptor.member(&f.inner_negation()));
            assert_eq!(probes.fingerprint(&neg).unwrap(), via_probes, "{}", c.descriptor);
            assert!(e.index_of(&neg).unwrap().is_some(), "{neg} at k={k}");
        }
    }
}
