mod common;

use common::*;
use proptest::prelude::*;
use unichaos::group_actions::{GroupAction, GroupDescription, GroupElement};
use unichaos::shift_spaces::{
    analyze_z_sft, enumerate_periodic, shift_apply, Configuration, ShiftAction, ZSftGraph,
};

/// Lucas numbers L_1..L_10, fixed before the library was written.
const LUCAS: [u64; 10] = [1, 3, 4, 7, 11, 18, 29, 47, 76, 123];

#[test]
fn golden_mean_periodic_counts_are_lucas_numbers() {
    let s = golden_mean();
    for n in 1..=10 {
        assert_eq!(oracle::trace_of_power(&s, n), LUCAS[n - 1], "trace n={n}");
        assert_eq!(oracle::cyclic_words(&s, n) as u64, LUCAS[n - 1], "words n={n}");
        assert_eq!(enumerate_periodic(&s, n).unwrap().len() as u64, LUCAS[n - 1], "library n={n}");
    }
}

#[test]
fn full_shift_counts_are_powers() {
    let s = full_shift_z();
    for n in 1..=8 {
        assert_eq!(enumerate_periodic(&s, n).unwrap().len(), 1 << n);
    }
}

#[test]
fn periodic_points_have_dividing_periods_and_belong() {
    let s = golden_mean();
    for n in 1..=8 {
        for x in enumerate_periodic(&s, n).unwrap() {
            assert_eq!(n % x.period().unwrap(), 0);
            assert!(s.contains(&x));
        }
    }
}

#[test]
fn flip_has_gap_none_and_is_irreducible() {
    let a = analyze_z_sft(&flip()).unwrap();
    assert!(a.strongly_connected && !a.primitive);
    assert_eq!(a.mixing_gap, None);
    assert_eq!(oracle::mixing_gap(&flip()), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn periodic_counts_match_oracles(seed in any::<u64>()) {
        let s = random::z_sft(&mut random::rng(seed));
        for n in 1..=6 {
            let words = oracle::cyclic_words(&s, n);
            prop_assert_eq!(words as u64, oracle::trace_of_power(&s, n));
            match enumerate_periodic(&s, n) {
                Ok(points) => prop_assert_eq!(points.len(), words),
                Err(_) => prop_assert_eq!(words, 0),
            }
        }
    }

    #[test]
    fn block_graph_analysis_matches_cylinder_reachability(seed in any::<u64>()) {
        let s = random::z_sft(&mut random::rng(seed));
        match analyze_z_sft(&s) {
            Ok(a) => {
                prop_assert_eq!(a.states.len(), oracle::state_count(&s));
                prop_assert_eq!(a.strongly_connected, oracle::irreducible(&s));
                let gap = if a.strongly_connected { oracle::mixing_gap(&s) } else { None };
                prop_assert_eq!(a.mixing_gap, gap);
                prop_assert_eq!(a.primitive, gap.is_some());
                for w in &a.witness_paths {
                    prop_assert_eq!(w.path.first(), Some(&w.from));
                    prop_assert_eq!(w.path.last(), Some(&w.to));
                    for step in w.path.windows(2) {
                        prop_assert_eq!(a.matrix[step[0]][step[1]], 1);
                    }
                }
            }
            Err(_) => prop_assert_eq!(oracle::state_count(&s), 0),
        }
    }

    #[test]
    fn realized_periodic_points_satisfy_constraints(seed in any::<u64>(), pos in -3i64..=3, len in 1usize..=4) {
        let mut r = random::rng(seed);
        let s = random::z_sft(&mut r);
        let Ok(g) = ZSftGraph::new(&s) else { return Ok(()) };
        let k = s.alphabet().size();
        let constraints = (0..len as i64).map(|i| (pos + i, (seed as usize >> i) % k)).collect();
        match g.realize_periodic(&constraints, 8) {
            Some(w) => {
                prop_assert!(w.len() <= 8);
                let x = Configuration::periodic_word(&w);
                prop_assert!(s.contains(&x));
                for (&i, &v) in &constraints {
                    prop_assert_eq!(x.eval(&GroupElement::Int(i)), v);
                }
                prop_assert!(g.realizable(&constraints));
            }
            None => {
                let list: Vec<(i64, usize)> = constraints.into_iter().collect();
                prop_assert!(!oracle::periodic_fit(&s, &list, 8));
            }
        }
    }

    #[test]
    fn spliced_points_realize_exactly_the_extendable_patterns(seed in any::<u64>(), pos in -3i64..=3, len in 1usize..=5) {
        let mut r = random::rng(seed);
        let s = random::z_sft(&mut r);
        let Ok(g) = ZSftGraph::new(&s) else { return Ok(()) };
        let k = s.alphabet().size();
        let list: Vec<(i64, usize)> = (0..len as i64).map(|i| (pos + 2 * i, (seed as usize >> (2 * i)) % k)).collect();
        let constraints = list.iter().copied().collect();
        let extendable = oracle::extendable(&s, &list);
        prop_assert_eq!(g.realizable(&constraints), extendable);
        match g.realize_spliced(&constraints) {
            Some(x) => {
                prop_assert!(extendable);
                prop_assert!(s.contains(&x));
                prop_assert!(oracle::windows_allowed(&s, &x, pos - 40, pos + 40));
                for &(i, v) in &list {
                    prop_assert_eq!(x.eval(&GroupElement::Int(i)), v);
                }
            }
            None => prop_assert!(!extendable),
        }
    }

    #[test]
    fn shift_action_is_a_left_action_on_z(word in proptest::collection::vec(0usize..3, 1..6), a in -7i64..7, b in -7i64..7) {
        let z = z();
        let x = Configuration::periodic_word(&word);
        let act = ShiftAction::new(&z);
        let (ga, gb) = (GroupElement::Int(a), GroupElement::Int(b));
        let lhs = act.act(&ga, &act.act(&gb, &x).unwrap()).unwrap();
        let rhs = act.act(&z.op(&ga, &gb), &x).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        for h in -6i64..6 {
            // (gx)(h) = x(g⁻¹h)
            prop_assert_eq!(lhs.eval(&GroupElement::Int(h)), x.eval(&GroupElement::Int(h - a - b)));
        }
    }

    #[test]
    fn shift_action_is_a_left_action_on_free_groups(seed in any::<u64>(), u in "[aAbB]{0,4}", v in "[aAbB]{0,4}") {
        let f2 = std::sync::Arc::new(GroupDescription::free(2).unwrap());
        let s = full_shift_over(GroupDescription::free(2).unwrap());
        let support = f2.first_elements(3);
        let pattern = support.iter().enumerate().map(|(i, g)| (g.clone(), ((seed >> i) & 1) as usize)).collect();
        let x = Configuration::periodic_from_pattern(&f2, &pattern, 0).unwrap();
        prop_assert!(s.contains(&x));
        let g = GroupElement::word_from_str(&u).unwrap();
        let h = GroupElement::word_from_str(&v).unwrap();
        let lhs = shift_apply(&f2, &g, &shift_apply(&f2, &h, &x));
        let rhs = shift_apply(&f2, &f2.op(&g, &h), &x);
        for t in f2.ball(2) {
            prop_assert_eq!(lhs.eval(&t), rhs.eval(&t));
            let back = f2.op(&f2.inverse(&f2.op(&g, &h)), &t);
            prop_assert_eq!(lhs.eval(&t), x.eval(&back));
        }
        for (p, sym) in &pattern {
            prop_assert_eq!(x.eval(p), *sym);
        }
    }
}
