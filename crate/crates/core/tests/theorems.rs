//! Brute-force checks of the subgroup and brace criteria over small groups,
//! independent of the CLI's mismatch bookkeeping.

use skewbrace::braces::{closed_form_inverse_matches, nu_is_homomorphism, raw_circle_from_family};
use skewbrace::hopf_galois::verify_opposite;
use skewbrace::morphisms::{enumerate_endomorphisms, small_generating_set};
use skewbrace::regular::{fitting_decomposition, fitting_family_checks};
use skewbrace::zoo::{build, sweep_universe, ZooSpec};
use skewbrace::{classify, CheckConfig, Group, GroupMap, RegularFamily, Sign};

fn endos(group: &Group) -> Vec<GroupMap> {
    enumerate_endomorphisms(group, &small_generating_set(group)).unwrap()
}

fn small_universe() -> Vec<Group> {
    ["dihedral:8", "quaternion:8", "dihedral:6", "product(cyclic:2,cyclic:4)", "dihedral:12", "quotient(dihedral:16,3)"]
        .iter()
        .map(|s| build(&s.parse::<ZooSpec>().unwrap()).unwrap())
        .collect()
}

#[test]
fn flag_implications_hold_across_the_sweep() {
    for spec in sweep_universe() {
        let g = build(&spec).unwrap();
        for psi in endos(&g) {
            let f = classify(&g, &psi).unwrap().flags;
            assert!(!f.koch_abelian || f.thm2_b2, "{spec}");
            assert!(!f.thm2_b2 || f.thm2_c, "{spec}");
            assert!(!f.thm2_b2 || f.thm1_d, "{spec}");
            assert!(!f.koch_abelian || (f.twisted_vanishes && f.image_commutator_vanishes), "{spec}");
            assert!(!f.twisted_vanishes || f.thm1_d, "{spec}");
            assert!(!f.image_commutator_vanishes || f.thm2_c, "{spec}");
            if f.idempotent {
                assert_eq!(psi.image(&g).unwrap(), psi.fixed_points(&g).unwrap(), "{spec}");
            }
        }
    }
}

#[test]
fn abelian_groups_satisfy_every_condition() {
    for spec in ["cyclic:6", "product(cyclic:2,cyclic:2,cyclic:2)", "product(cyclic:4,cyclic:4)"] {
        let g = build(&spec.parse().unwrap()).unwrap();
        for psi in endos(&g) {
            let f = classify(&g, &psi).unwrap().flags;
            assert!(f.koch_abelian && f.thm1_d && f.thm2_c && f.thm2_b2, "{spec}");
        }
    }
}

#[test]
fn minus_one_subgroup_normalized_and_bi_skew_agree_with_condition() {
    let cfg = CheckConfig::oracle_default();
    for g in small_universe() {
        for psi in endos(&g) {
            let cond = classify(&g, &psi).unwrap().flags.thm1_d;
            let family = RegularFamily::new(&g, &psi, Sign::Minus).unwrap();
            let brace = raw_circle_from_family(&family);
            assert_eq!(family.oracle_is_subgroup(&cfg).holds, cond, "{} {:?}", g.name(), psi.images());
            assert_eq!(family.oracle_normalized_by_lambda(&cfg).holds, cond);
            assert_eq!(brace.verify_bi_skew(&cfg).holds, cond);
            assert_eq!(brace.verify_skew_brace(&cfg).holds, cond);
            assert!(family.oracle_normalizes_lambda(&cfg).holds);
        }
    }
}

#[test]
fn plus_one_criteria_agree_with_conditions() {
    let cfg = CheckConfig::oracle_default();
    for g in small_universe() {
        for psi in endos(&g) {
            let f = classify(&g, &psi).unwrap().flags;
            let family = RegularFamily::new(&g, &psi, Sign::Plus).unwrap();
            let brace = raw_circle_from_family(&family);
            let subgroup = family.oracle_is_subgroup(&cfg).holds;
            let normalized = family.oracle_normalized_by_lambda(&cfg).holds;
            assert_eq!(subgroup, f.thm2_c, "{} {:?}", g.name(), psi.images());
            assert_eq!(brace.verify_skew_brace(&cfg).holds, f.thm2_c);
            assert_eq!(subgroup && normalized, f.thm2_b2);
            assert_eq!(brace.verify_bi_skew(&cfg).holds, f.thm2_b2);
        }
    }
}

#[test]
fn admitted_families_have_closed_form_inverse_and_homomorphic_nu() {
    let cfg = CheckConfig::oracle_default();
    for g in small_universe() {
        for psi in endos(&g) {
            for eps in Sign::BOTH {
                let family = RegularFamily::new(&g, &psi, eps).unwrap();
                let brace = raw_circle_from_family(&family);
                if !brace.circle_is_group() {
                    continue;
                }
                assert!(closed_form_inverse_matches(&family, &brace));
                assert!(nu_is_homomorphism(&family, &brace, &cfg).holds);
            }
        }
    }
}

#[test]
fn opposite_is_the_centralizer_for_dihedral_eight() {
    let cfg = CheckConfig::oracle_default();
    let g = build(&ZooSpec::Dihedral(8)).unwrap();
    let mut abelian_families = 0;
    for psi in endos(&g) {
        for eps in Sign::BOTH {
            let family = RegularFamily::new(&g, &psi, eps).unwrap();
            let brace = raw_circle_from_family(&family);
            if !brace.circle_is_group() {
                continue;
            }
            let r = verify_opposite(&family, &brace, &cfg).unwrap();
            assert_eq!(r.matches_centralizer, Some(true));
            assert!(r.regular && r.realizes_opposite_brace.holds);
            assert_eq!(r.equals_family, r.family_abelian);
            abelian_families += usize::from(r.family_abelian);
        }
    }
    assert!(abelian_families > 0);
}

#[test]
fn fitting_decomposition_splits_every_endomorphism() {
    for g in small_universe() {
        for psi in endos(&g) {
            let fit = fitting_decomposition(&g, &psi).unwrap();
            assert!(fit.checks.all(), "{} {:?}: {:?}", g.name(), psi.images(), fit.checks);
            assert_eq!(fit.kernel.order() * fit.image.order(), g.order());
            for eps in Sign::BOTH {
                let family = RegularFamily::new(&g, &psi, eps).unwrap();
                if !family.oracle_is_subgroup(&CheckConfig::oracle_default()).holds {
                    continue;
                }
                let fc = fitting_family_checks(&family, &fit).unwrap().unwrap();
                assert!(fc.generates_family && fc.kernel_part_normal);
            }
        }
    }
}

#[test]
fn identity_on_a_nonabelian_group_fails_plus_one() {
    let g = build(&ZooSpec::Dihedral(6)).unwrap();
    let id = GroupMap::identity(&g);
    let f = classify(&g, &id).unwrap().flags;
    assert!(f.thm1_d && !f.thm2_c);
    let family = RegularFamily::new(&g, &id, Sign::Plus).unwrap();
    let v = family.oracle_is_subgroup(&CheckConfig::oracle_default());
    assert!(!v.holds && v.counterexample.is_some());
}
