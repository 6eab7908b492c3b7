mod common;

use common::*;
use proptest::prelude::*;
use unichaos::chaos_verdicts::*;
use unichaos::group_actions::GroupElement;
use unichaos::shift_spaces::{is_perfect_at_scale, w_related, Configuration, ProdiscreteEntourage};

fn random_system(seed: u64, scale: usize) -> Option<(unichaos::shift_spaces::SubshiftOfFiniteType, DeskSystem)> {
    let s = random::z_sft(&mut random::rng(seed));
    let p = ScaleParameters::new(scale, 6, 6).unwrap();
    let sys = DeskSystem::Shift(ShiftSystem::new(s.clone(), p).ok()?);
    Some((s, sys))
}

fn ints(range: std::ops::Range<i64>) -> Vec<GroupElement> {
    range.map(GroupElement::Int).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn main_certificates_revalidate_and_deliver(seed: u64, scale in 1usize..=3) {
        let Some((_, sys)) = random_system(seed, scale) else { return Ok(()) };
        let Ok(cert) = construct_sensitivity_main(&sys) else { return Ok(()) };
        let check = revalidate(&cert, &sys).unwrap();
        prop_assert!(check.pass, "{:?}", check.checks);
        if verify_transitivity(&sys).pass && verify_periodic_density(&sys).pass {
            let u = cert.u.build(&sys).unwrap();
            prop_assert!(verify_sensitivity(&sys, &u).unwrap().pass);
        }
    }

    #[test]
    fn mixing_certificates_revalidate_and_deliver(seed: u64, scale in 1usize..=3) {
        let Some((_, sys)) = random_system(seed, scale) else { return Ok(()) };
        let DeskSystem::Shift(s) = &sys else { unreachable!() };
        let [a, b, ..] = s.sample() else { return Ok(()) };
        let (x1, x2) = (PointDoc::Configuration(s.doc(a)), PointDoc::Configuration(s.doc(b)));
        match construct_sensitivity_mixing(&sys, &x1, &x2) {
            Ok(cert) => {
                prop_assert!(revalidate(&cert, &sys).unwrap().pass);
                let u = cert.u.build(&sys).unwrap();
                prop_assert!(verify_sensitivity(&sys, &u).unwrap().pass);
            }
            Err(VerdictError::Hypothesis(_)) => prop_assert!(!verify_mixing(&sys).pass),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn expansive_and_perfect_imply_sensitive(seed: u64, scale in 1usize..=3) {
        let Some((sft, sys)) = random_system(seed, scale) else { return Ok(()) };
        let u = Entourage::Prodiscrete(ProdiscreteEntourage::new([GroupElement::Int(0)]));
        let expansive = verify_expansivity(&sys, &u).unwrap().pass;
        let perfect = is_perfect_at_scale(&sft, scale).unwrap();
        if expansive && perfect {
            prop_assert!(verify_sensitivity(&sys, &u).unwrap().pass);
        }
    }

    #[test]
    fn isolated_points_defeat_every_entourage(seed: u64, scale in 1usize..=2) {
        let Some((_, sys)) = random_system(seed, scale) else { return Ok(()) };
        let r = devaney_verdict(&sys).unwrap();
        if !r.perfect.pass {
            for k in 1..=4 {
                let u = Entourage::Prodiscrete(ProdiscreteEntourage::new(ints(-(k as i64)..k as i64)));
                prop_assert!(!verify_sensitivity(&sys, &u).unwrap().pass);
            }
        }
        prop_assert_eq!(r.devaney_chaotic, r.transitive.pass && r.periodic_dense.pass && r.more_than_one_point);
        if let Some(check) = r.mixing_sft {
            prop_assert!(check.sensitivity_confirmed);
        }
    }

    #[test]
    fn prodiscrete_entourages_are_equivalences(
        words in prop::collection::vec(prop::collection::vec(0usize..2, 1..5), 3),
        a in 0i64..4,
        b in 0i64..4,
    ) {
        let xs: Vec<Configuration> = words.iter().map(|w| Configuration::periodic_word(w)).collect();
        let o1 = ints(-a..a + 1);
        let o2 = ints(b..b + 3);
        let both: Vec<GroupElement> = o1.iter().chain(&o2).cloned().collect();
        for x in &xs {
            prop_assert!(w_related(&o1, x, x));
            for y in &xs {
                prop_assert_eq!(w_related(&both, x, y), w_related(&o1, x, y) && w_related(&o2, x, y));
                prop_assert_eq!(w_related(&o1, x, y), w_related(&o1, y, x));
                if w_related(&both, x, y) {
                    prop_assert!(w_related(&o1, x, y));
                }
                for z in &xs {
                    if w_related(&o1, x, y) && w_related(&o1, y, z) {
                        prop_assert!(w_related(&o1, x, z));
                    }
                }
            }
        }
    }
}

#[test]
fn prodiscrete_roots_collapse() {
    for sys in [shift(full_shift_z(), params()), shift(golden_mean(), params())] {
        let cert = construct_sensitivity_main(&sys).unwrap();
        assert_eq!(cert.u, cert.v);
        assert_eq!(cert.v, cert.w.clone().unwrap());
    }
}
