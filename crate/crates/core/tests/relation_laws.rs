mod common;

use std::collections::BTreeSet;

use common::oracle::{self, Pairs};
use common::random;
use proptest::prelude::*;
use rand::Rng;
use unichaos::relation_algebra::*;

fn pairs(r: &Relation) -> Pairs {
    r.pairs().into_iter().collect()
}

fn from_pairs(r: &Relation, p: &Pairs) -> Relation {
    Relation::new(r.carrier(), p.iter().copied()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_matches_oracle(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let x = Carrier::numbered(n).unwrap();
        let r = random::relation(&mut rng, &x);
        let s = random::relation(&mut rng, &x);
        let rs = r.compose(&s).unwrap();
        prop_assert_eq!(pairs(&rs), oracle::compose(&pairs(&r), &pairs(&s)));
        prop_assert_eq!(pairs(&r.inverse()), oracle::inverse(&pairs(&r)));
        prop_assert_eq!(r.power(3), r.compose(&r).unwrap().compose(&r).unwrap());
    }

    #[test]
    fn composition_is_associative(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let x = Carrier::numbered(n).unwrap();
        let [a, b, c] = [0; 3].map(|_| random::relation(&mut rng, &x));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_reverses_composition(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let x = Carrier::numbered(n).unwrap();
        let a = random::relation(&mut rng, &x);
        let b = random::relation(&mut rng, &x);
        prop_assert_eq!(
            a.compose(&b).unwrap().inverse(),
            b.inverse().compose(&a.inverse()).unwrap()
        );
        prop_assert_eq!(a.inverse().inverse(), a.clone());
    }

    #[test]
    fn equivalences_are_idempotent(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let x = Carrier::numbered(n).unwrap();
        let r = random::relation(&mut rng, &x);
        let e = from_pairs(&r, &oracle::equivalence_closure(n, &pairs(&r)));
        prop_assert!(e.is_equivalence());
        prop_assert_eq!(e.compose(&e).unwrap(), e.clone());
        prop_assert_eq!(e.inverse(), e.clone());
        // a relation is an equivalence exactly when it equals its closure
        prop_assert_eq!(r.is_equivalence(), r == e);
    }

    #[test]
    fn set_operations_match_oracle(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let x = Carrier::numbered(n).unwrap();
        let a = random::relation(&mut rng, &x);
        let b = random::relation(&mut rng, &x);
        let (pa, pb) = (pairs(&a), pairs(&b));
        prop_assert_eq!(pairs(&a.union(&b).unwrap()), pa.union(&pb).copied().collect::<Pairs>());
        prop_assert_eq!(pairs(&a.intersection(&b).unwrap()), pa.intersection(&pb).copied().collect::<Pairs>());
        prop_assert_eq!(a.is_subset(&b).unwrap(), pa.is_subset(&pb));
        prop_assert_eq!(a.is_symmetric(), pa == oracle::inverse(&pa));
        for v in 0..n {
            let section: BTreeSet<usize> = pa.iter().filter(|p| p.0 == v).map(|p| p.1).collect();
            prop_assert_eq!(a.neighborhood(v).unwrap(), section);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_bases_are_hausdorff_uniformities(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let base = metric_base(&random::metric(&mut rng, n));
        prop_assert!(check_base_axioms(&base).all_pass());
        prop_assert!(is_hausdorff_base(&base).unwrap());
    }

    #[test]
    fn separating_entourages_separate(seed: u64, n in 2usize..=8) {
        let mut rng = random::rng(seed);
        let base = metric_base(&random::metric(&mut rng, n));
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for p in 0..n {
            match rng.gen_range(0..3) {
                0 => { a.insert(p); }
                1 => { b.insert(p); }
                _ => {}
            }
        }
        a.insert(0);
        b.remove(&0);
        b.insert(n - 1);
        a.remove(&(n - 1));
        let w = separating_entourage(&a, &b, &base).unwrap();
        prop_assert!(base.generates(&w));
        for &x in &a {
            for &y in &b {
                prop_assert!(!w.contains(x, y));
            }
        }
    }

    #[test]
    fn symmetric_roots_fit_inside(seed: u64, n in 1usize..=8) {
        let mut rng = random::rng(seed);
        let base = metric_base(&random::metric(&mut rng, n));
        let v = base.relations()[rng.gen_range(0..base.relations().len())].clone();
        for k in [RootOrder::Square, RootOrder::Fourth] {
            let u = symmetric_root(&v, &base, k).unwrap();
            prop_assert!(u.is_symmetric());
            prop_assert!(base.generates(&u));
            let composite = pairs(&u);
            let power = (1..k.exponent()).fold(composite.clone(), |acc, _| oracle::compose(&acc, &composite));
            prop_assert!(power.is_subset(&pairs(&v)));
        }
    }
}

#[test]
fn witnesses_for_broken_bases() {
    let x = Carrier::new(["a", "b", "c"]).unwrap();
    let mut holed = Relation::full(&x).pairs();
    holed.retain(|&p| p != (2, 2));
    let holed = Relation::new(&x, holed).unwrap();
    let report = check_base_axioms(&UniformBase::new(&x, vec![Relation::diagonal(&x), holed]).unwrap());
    assert_eq!(report.first_failure(), Some(Axiom::ContainsDiagonal));
    assert_eq!(
        report.result(Axiom::ContainsDiagonal).witness,
        Some(AxiomWitness { relations: vec![1], pair: Some(("c".into(), "c".into())) })
    );

    let one_sided = Relation::diagonal(&x)
        .union(&Relation::from_names(&x, [("a", "b")]).unwrap())
        .unwrap();
    let report = check_base_axioms(&UniformBase::new(&x, vec![one_sided]).unwrap());
    let un4 = report.result(Axiom::Inverses);
    assert!(!un4.pass);
    assert_eq!(un4.witness.as_ref().unwrap().pair, Some(("b".into(), "a".into())));
}
