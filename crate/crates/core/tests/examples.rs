//! The named worked examples and frozen endomorphism counts.

use skewbrace::braces::circle_from_family;
use skewbrace::hopf_galois::{check_g_equivariance, fpf_isomorphism, idempotent_type, special_subgroups};
use skewbrace::morphisms::{enumerate_endomorphisms, small_generating_set};
use skewbrace::ybe::build_solution;
use skewbrace::zoo::{build, lower_central_term, paper_example, ZooSpec, PAPER_EXAMPLES};
use skewbrace::{classify, CheckConfig, RegularFamily, Sign, Variant};

fn end_count(spec: &str) -> usize {
    let g = build(&spec.parse().unwrap()).unwrap();
    enumerate_endomorphisms(&g, &small_generating_set(&g)).unwrap().len()
}

#[test]
fn endomorphism_counts() {
    let expected = [
        ("cyclic:7", 7),
        ("dihedral:6", 10),
        ("dihedral:8", 36),
        ("quaternion:8", 28),
        ("dihedral:10", 26),
        ("product(cyclic:2,cyclic:2)", 16),
        ("product(cyclic:2,cyclic:4)", 32),
        ("product(cyclic:4,cyclic:4)", 256),
        ("product(cyclic:2,cyclic:2,cyclic:2)", 512),
    ];
    for (spec, count) in expected {
        assert_eq!(end_count(spec), count, "{spec}");
    }
}

#[test]
fn lower_central_series_of_d16() {
    let g = build(&ZooSpec::Dihedral(16)).unwrap();
    let orders: Vec<usize> = g.lower_central_series().iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![16, 4, 2, 1]);
    assert_eq!(g.nilpotency_class(), Some(3));
    assert_eq!(lower_central_term(&g, 3).order(), 2);
}

#[test]
fn every_example_satisfies_its_own_condition() {
    for name in PAPER_EXAMPLES {
        let ex = paper_example(name).unwrap();
        let f = classify(&ex.group, &ex.psi).unwrap().flags;
        let holds = match ex.epsilon {
            Sign::Minus => f.thm1_d,
            Sign::Plus => f.thm2_c,
        };
        assert!(holds, "{name}: {f:?}");
    }
}

#[test]
fn separation_witnesses() {
    let flags = |name| {
        let ex = paper_example(name).unwrap();
        classify(&ex.group, &ex.psi).unwrap().flags
    };
    let f = flags("ex-neg-proj");
    assert!(f.thm1_d && !f.koch_abelian);
    let f = flags("ex-pos-class3");
    assert!(f.thm2_b2 && !f.koch_abelian);
    let f = flags("ex-pos-class4");
    assert!(f.thm2_c && !f.thm2_b2);
    let f = flags("ex-pos-class3-fpf-variant");
    assert!(f.image_commutator_vanishes && !f.koch_abelian && f.fpf);
    let f = flags("ex-neg-class3");
    assert!(f.thm1_d && !f.thm2_b2);
}

#[test]
fn product_projection_lattice() {
    let ex = paper_example("ex-neg-proj").unwrap();
    assert_eq!(ex.group.order(), 64);
    let family = RegularFamily::new(&ex.group, &ex.psi, ex.epsilon).unwrap();
    let brace = circle_from_family(&family).unwrap();
    let report = special_subgroups(&family, &brace).unwrap();
    let orders: Vec<(&str, usize)> = report.subgroups.iter().map(|(k, v)| (k.as_str(), v.order)).collect();
    assert_eq!(orders, vec![("LambdaN", 16), ("N0", 8), ("N01", 64), ("N1", 8), ("PN", 16)]);
    assert!(report.pairwise_distinct);
    assert!(report.subgroups.values().all(|s| s.normalized_by_lambda && s.closed && s.contained));
    assert!(report.subgroups["N1"].trivial_action && report.subgroups["PN"].trivial_action);
    assert_eq!(report.sub_hopf_algebras.len(), 5);

    let cfg = CheckConfig::oracle_default();
    let t = idempotent_type(&family, &brace, &cfg).unwrap();
    assert!(t.isomorphism.holds);
    assert_eq!((t.kernel.order, t.image.order), (8, 8));
}

#[test]
fn product_projection_supports_all_four_solutions() {
    let ex = paper_example("ex-neg-proj").unwrap();
    let cfg = CheckConfig::new(16, 20_000, 7);
    for variant in Variant::ALL {
        let s = build_solution(&ex.group, &ex.psi, ex.epsilon, variant).unwrap();
        assert!(s.verify_braid(&cfg).holds, "{variant}");
        assert_eq!(s.is_bijective(), Some(true));
    }
}

#[test]
fn fpf_variant_is_an_isomorphism_but_not_equivariant() {
    let ex = paper_example("ex-pos-class3-fpf-variant").unwrap();
    let cfg = CheckConfig::oracle_default();
    let family = RegularFamily::new(&ex.group, &ex.psi, Sign::Plus).unwrap();
    let brace = circle_from_family(&family).unwrap();
    let iso = fpf_isomorphism(&family, &brace, &cfg).unwrap();
    assert!(iso.bijective && iso.homomorphism.holds);
    assert!(!check_g_equivariance(&family, &iso, &cfg).holds);
}

#[test]
fn fpf_inversion_on_c3_gives_a_constant_alpha() {
    let g = build(&ZooSpec::Cyclic(3)).unwrap();
    let psi = skewbrace::GroupMap::endomorphism(&g, vec![0, 2, 1]).unwrap();
    let cfg = CheckConfig::oracle_default();
    let family = RegularFamily::new(&g, &psi, Sign::Plus).unwrap();
    let brace = circle_from_family(&family).unwrap();
    let iso = fpf_isomorphism(&family, &brace, &cfg).unwrap();
    assert_eq!(iso.alpha, vec![0, 0, 0]);
    assert!(!iso.bijective && iso.homomorphism.holds);
    let minus = RegularFamily::new(&g, &psi, Sign::Minus).unwrap();
    let minus_brace = circle_from_family(&minus).unwrap();
    assert!(fpf_isomorphism(&minus, &minus_brace, &cfg).unwrap().bijective);
}
