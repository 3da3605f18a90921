//! Group-side Hopf-Galois data for a regular family `N`: the opposite
//! subgroup, λ-points and ρ-points, the distinguished subgroups built from
//! `ker ψ` and `Fix ψ`, and the fixed-point-free isomorphism `N ≅ (G,·)`.
//!
//! Subgroups of `N` are described by their labels `{η(1) : η ∈ M}`; the
//! permutation with label `l` is `ν(l)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::braces::SkewBrace;
use crate::check::{check_pairs, CheckConfig, Verdict};
use crate::error::{Error, Result};
use crate::group::{centralizer_in_symmetric, Group, Perm};
use crate::morphisms::{classify, find_isomorphism};
use crate::regular::{ensure_family_condition, RegularFamily};
use crate::sign::Sign;
use crate::zoo::{build, catalogue, ZooSpec};

/// Groups up to this order are named up to isomorphism.
pub const IDENTIFY_CAP: usize = 16;
/// The opposite subgroup is compared with a brute-force centralizer up to
/// this degree.
pub const CENTRALIZER_CAP: usize = 24;

/// First catalogue entry isomorphic to `group`, for orders up to
/// [`IDENTIFY_CAP`]. `None` when too large or not catalogued.
pub fn identify(group: &Group) -> Option<ZooSpec> {
    if group.order() > IDENTIFY_CAP {
        return None;
    }
    catalogue(group.order())
        .into_iter()
        .find(|spec| build(spec).is_ok_and(|candidate| find_isomorphism(&candidate, group).is_some()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupType {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub exponent: usize,
    pub nilpotency_class: Option<usize>,
}

pub fn group_type(group: &Group) -> GroupType {
    GroupType {
        label: identify(group).map(|s| s.to_string()),
        order: group.order(),
        abelian: group.is_abelian(),
        center_order: group.center().order(),
        exponent: group.exponent(),
        nilpotency_class: group.nilpotency_class(),
    }
}

/// Label of `λ(h)·ν(l)·λ(h)⁻¹` if it lies in `N`.
///
/// With `c = ψ(l^ε)` the conjugate is `x ↦ k·c·x·c⁻¹` where
/// `k = h·l·c·h⁻¹·c⁻¹`, and that equals `ν(k)` iff `ψ(k^ε)⁻¹·c` is central.
pub fn lambda_conjugate(family: &RegularFamily<'_>, center: &[bool], h: usize, l: usize) -> Option<usize> {
    let g = family.group();
    let c = family.twist(l);
    let k = g.product(&[h, l, c, g.inv(h), g.inv(c)]);
    center[g.mul(g.inv(family.twist(k)), c)].then_some(k)
}

fn center_bitmap(group: &Group) -> Vec<bool> {
    let z = group.center();
    group.elements().map(|g| z.contains(g)).collect()
}

/// `ν'(g)(h) = h∘g`, the generic element of `N' = C(N)`.
pub fn apply_nu_prime(family: &RegularFamily<'_>, g: usize, h: usize) -> usize {
    family.apply_nu(h, g)
}

pub fn opposite_subgroup(family: &RegularFamily<'_>) -> Result<Vec<Perm>> {
    ensure_family_condition(family.group(), family.psi(), family.epsilon())?;
    let n = family.order();
    (0..n).map(|g| Perm::from_images((0..n).map(|h| apply_nu_prime(family, g, h)).collect())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OppositeReport {
    /// `None` above [`CENTRALIZER_CAP`].
    pub matches_centralizer: Option<bool>,
    pub regular: bool,
    pub normalized_by_lambda: Verdict,
    /// `ν'(g)(h) = h∘g` against the brace table.
    pub realizes_opposite_brace: Verdict,
    pub equals_family: bool,
    pub family_abelian: bool,
}

pub fn verify_opposite(family: &RegularFamily<'_>, brace: &SkewBrace<'_>, cfg: &CheckConfig) -> Result<OppositeReport> {
    let opposite = opposite_subgroup(family)?;
    let grp = family.group();
    let n = family.order();
    let matches_centralizer = if n <= CENTRALIZER_CAP {
        let nu: Vec<Perm> = grp.elements().map(|g| family.nu(g)).collect::<Result<_>>()?;
        let mut brute = centralizer_in_symmetric(n, &nu)?;
        let mut ours = opposite.clone();
        brute.sort_by_key(|a| a.images());
        ours.sort_by_key(|a| a.images());
        Some(brute == ours)
    } else {
        None
    };
    let regular = opposite.iter().enumerate().all(|(g, p)| p.apply(0) == g);
    let in_opposite = |f: &dyn Fn(usize) -> usize| {
        let k = f(0);
        (0..n).all(|x| f(x) == opposite[k].apply(x))
    };
    let normalized_by_lambda = check_pairs(n, n, n, cfg, |g, h| {
        let hi = grp.inv(h);
        in_opposite(&|x| grp.mul(h, opposite[g].apply(grp.mul(hi, x))))
    });
    let realizes_opposite_brace = check_pairs(n, n, n, cfg, |g, h| opposite[g].apply(h) == brace.circle(h, g));
    let equals_family = grp.elements().all(|g| family.contains(&opposite[g]));
    let family_abelian = (0..n).into_par_iter().all(|g| (0..n).all(|h| brace.circle(g, h) == brace.circle(h, g)));
    Ok(OppositeReport {
        matches_centralizer,
        regular,
        normalized_by_lambda,
        realizes_opposite_brace,
        equals_family,
        family_abelian,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSubgroup {
    pub order: usize,
    /// Sorted labels `η(1)`.
    pub elements: Vec<usize>,
    /// Every listed permutation actually lies in `N`.
    pub contained: bool,
    /// Closed under composition in `N`.
    pub closed: bool,
    pub normalized_by_lambda: bool,
    pub trivial_action: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HGReport {
    pub epsilon: Sign,
    pub subgroups: BTreeMap<String, SpecialSubgroup>,
    pub type_of_n: GroupType,
    /// Sub-Hopf algebras given by the normalized subgroups: `K[M]` when
    /// `λ(G)` acts trivially on `M`, `L[M]^G` otherwise.
    pub sub_hopf_algebras: Vec<String>,
    pub pairwise_distinct: bool,
}

fn describe(
    family: &RegularFamily<'_>,
    brace: &SkewBrace<'_>,
    center: &[bool],
    labels: Vec<usize>,
    contained: bool,
) -> SpecialSubgroup {
    let grp = family.group();
    let mut elements = labels;
    elements.sort_unstable();
    elements.dedup();
    let mut member = vec![false; grp.order()];
    elements.iter().for_each(|&l| member[l] = true);
    let closed = member[0] && elements.par_iter().all(|&a| elements.iter().all(|&b| member[brace.circle(a, b)]));
    let normalized_by_lambda = elements
        .par_iter()
        .all(|&l| grp.elements().all(|h| lambda_conjugate(family, center, h, l).is_some_and(|k| member[k])));
    let trivial_action =
        elements.par_iter().all(|&l| grp.elements().all(|h| lambda_conjugate(family, center, h, l) == Some(l)));
    SpecialSubgroup { order: elements.len(), elements, contained, closed, normalized_by_lambda, trivial_action }
}

/// `N0 = λ(ker ψ)`, `Λ_N = λ(G) ∩ N`, `P_N = ρ(G) ∩ N`, and for `ε = -1`
/// also `N1 = ρ(Fix ψ)` and `N01 = N0·N1`.
pub fn special_subgroups(family: &RegularFamily<'_>, brace: &SkewBrace<'_>) -> Result<HGReport> {
    let grp = family.group();
    let psi = family.psi();
    ensure_family_condition(grp, psi, family.epsilon())?;
    let n = grp.order();
    let center = center_bitmap(grp);
    let is_lambda = |g: usize| center[family.twist(g)];
    let is_rho_inverse = |k: usize| (0..n).all(|x| family.apply_nu(k, x) == grp.mul(x, k));

    let kernel: Vec<usize> = psi.kernel(grp)?.elements().to_vec();
    let mut subgroups = BTreeMap::new();
    let n0_contained = kernel.iter().all(|&g| is_lambda(g));
    subgroups.insert("N0".to_string(), describe(family, brace, &center, kernel.clone(), n0_contained));
    let lambda_points: Vec<usize> = grp.elements().filter(|&g| is_lambda(g)).collect();
    subgroups.insert("LambdaN".to_string(), describe(family, brace, &center, lambda_points, true));
    let rho_points: Vec<usize> = (0..n).into_par_iter().filter(|&k| is_rho_inverse(k)).collect();
    subgroups.insert("PN".to_string(), describe(family, brace, &center, rho_points, true));

    if family.epsilon() == Sign::Minus {
        // ρ(g) has label g⁻¹; Fix ψ is closed under inverses.
        let fixed: Vec<usize> = psi.fixed_points(grp)?.elements().to_vec();
        let n1_contained = fixed.iter().all(|&g| is_rho_inverse(g));
        subgroups.insert("N1".to_string(), describe(family, brace, &center, fixed.clone(), n1_contained));
        let mut product: Vec<usize> =
            kernel.iter().flat_map(|&a| fixed.iter().map(move |&b| brace.circle(a, b))).collect();
        product.sort_unstable();
        product.dedup();
        subgroups.insert("N01".to_string(), describe(family, brace, &center, product, n0_contained && n1_contained));
    }

    let sub_hopf_algebras = subgroups
        .iter()
        .filter(|(_, s)| s.contained && s.closed && s.normalized_by_lambda)
        .map(|(name, s)| if s.trivial_action { format!("K[{name}]") } else { format!("L[{name}]^G") })
        .collect();
    let sets: Vec<&Vec<usize>> = subgroups.values().map(|s| &s.elements).collect();
    let pairwise_distinct = sets.iter().enumerate().all(|(i, a)| sets[i + 1..].iter().all(|b| a != b));
    Ok(HGReport {
        epsilon: family.epsilon(),
        subgroups,
        type_of_n: group_type(&brace.circle_group()?),
        sub_hopf_algebras,
        pairwise_distinct,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdempotentType {
    pub kernel: GroupType,
    pub image: GroupType,
    /// `ν(k·i) ↦ (k, i⁻¹)` is an isomorphism `N → ker ψ × ψ(G)`.
    pub isomorphism: Verdict,
}

/// For idempotent `ψ` and `ε = -1`, `N ≅ ker ψ × ψ(G)`. Writing
/// `g = k·i` with `k ∈ ker ψ`, `i = ψ(g)`, the rule `(k,i)∘(k',i') = (k·k', i'·i)`
/// means the second coordinate has to be inverted.
pub fn idempotent_type(family: &RegularFamily<'_>, brace: &SkewBrace<'_>, cfg: &CheckConfig) -> Result<IdempotentType> {
    let grp = family.group();
    let psi = family.psi();
    if !psi.is_idempotent() {
        return Err(Error::Hypothesis("ψ is not idempotent".into()));
    }
    if family.epsilon() != Sign::Minus {
        return Err(Error::Hypothesis("the direct decomposition is stated for epsilon -1".into()));
    }
    ensure_family_condition(grp, psi, Sign::Minus)?;
    let kernel = psi.kernel(grp)?;
    let image = psi.image(grp)?;
    let split = |g: usize| {
        let i = psi.apply(g);
        (grp.mul(g, grp.inv(i)), grp.inv(i))
    };
    let n = grp.order();
    let isomorphism = check_pairs(n, n, n, cfg, |g, h| {
        let ((k1, i1), (k2, i2)) = (split(g), split(h));
        split(brace.circle(g, h)) == (grp.mul(k1, k2), grp.mul(i1, i2))
    });
    let injective = {
        let mut seen = std::collections::HashSet::new();
        grp.elements().all(|g| seen.insert(split(g)))
    };
    let isomorphism =
        if injective && kernel.order() * image.order() == n { isomorphism } else { Verdict::trivially(false) };
    Ok(IdempotentType {
        kernel: group_type(&grp.subgroup_as_group(&kernel)?.0),
        image: group_type(&grp.subgroup_as_group(&image)?.0),
        isomorphism,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpfIsomorphism {
    /// `α(g) = g·ψ(g^ε)`
    pub alpha: Vec<usize>,
    pub bijective: bool,
    /// `α(g∘h) = α(g)·α(h)`
    pub homomorphism: Verdict,
}

/// `α: (G,∘) → (G,·)`, refused unless `ψ` is fixed-point-free with
/// `ψ([[G,ψ],G]) = 1` (`ε = -1`) or `ψ([ψ(G),G]) = 1` (`ε = +1`).
pub fn fpf_isomorphism(family: &RegularFamily<'_>, brace: &SkewBrace<'_>, cfg: &CheckConfig) -> Result<FpfIsomorphism> {
    let grp = family.group();
    let flags = classify(grp, family.psi())?.flags;
    if !flags.fpf {
        return Err(Error::Hypothesis("ψ has a non-trivial fixed point".into()));
    }
    match family.epsilon() {
        Sign::Minus if !flags.twisted_vanishes => return Err(Error::Hypothesis("ψ([[G,ψ],G]) ≠ 1".into())),
        Sign::Plus if !flags.image_commutator_vanishes => return Err(Error::Hypothesis("ψ([ψ(G),G]) ≠ 1".into())),
        _ => {}
    }
    let n = grp.order();
    let alpha: Vec<usize> = grp.elements().map(|g| grp.mul(g, family.twist(g))).collect();
    let mut seen = vec![false; n];
    let bijective = alpha.iter().all(|&a| !std::mem::replace(&mut seen[a], true));
    let homomorphism = check_pairs(n, n, n, cfg, |g, h| alpha[brace.circle(g, h)] == grp.mul(alpha[g], alpha[h]));
    Ok(FpfIsomorphism { alpha, bijective, homomorphism })
}

/// `φ(λ(h)ν(g)λ(h)⁻¹) = λ(h)φ(ν(g))λ(h)⁻¹` for `φ(ν(g)) = λ(α(g))`. Fails at
/// `(g, h)` when the left side is undefined because the conjugate leaves `N`.
pub fn check_g_equivariance(family: &RegularFamily<'_>, iso: &FpfIsomorphism, cfg: &CheckConfig) -> Verdict {
    let grp = family.group();
    let center = center_bitmap(grp);
    let n = grp.order();
    check_pairs(n, n, n, cfg, |g, h| {
        lambda_conjugate(family, &center, h, g).is_some_and(|k| iso.alpha[k] == grp.conj(h, iso.alpha[g]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braces::circle_from_family;
    use crate::group::GroupMap;
    use crate::zoo::paper_example;

    fn zoo(s: &str) -> Group {
        build(&s.parse::<ZooSpec>().unwrap()).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::oracle_default()
    }

    #[test]
    fn identification() {
        let label = |s: &str| identify(&zoo(s)).map(|x| x.to_string());
        assert_eq!(label("heisenberg:2").as_deref(), Some("dihedral:8"));
        assert_eq!(label("product(cyclic:2,cyclic:3)").as_deref(), Some("cyclic:6"));
        assert_eq!(label("quaternion:8").as_deref(), Some("quaternion:8"));
        assert_eq!(label("cyclic:1").as_deref(), Some("cyclic:1"));
        assert_eq!(label("heisenberg:3"), None);
    }

    #[test]
    fn lambda_conjugate_matches_permutations() {
        let ex = paper_example("ex-neg-proj").unwrap();
        let g = &ex.group;
        for eps in Sign::BOTH {
            let f = RegularFamily::new(g, &ex.psi, eps).unwrap();
            let center = center_bitmap(g);
            for h in [1, 9, 37, 63] {
                for l in g.elements() {
                    let conj = g.lambda(h).compose(&f.nu(l).unwrap()).unwrap().compose(&g.lambda(g.inv(h))).unwrap();
                    let expected = f.contains(&conj).then(|| conj.apply(0));
                    assert_eq!(lambda_conjugate(&f, &center, h, l), expected);
                }
            }
        }
    }

    #[test]
    fn opposite_of_classical_and_abelian() {
        let g = zoo("dihedral:8");
        let zero = GroupMap::zero(&g);
        let f = RegularFamily::new(&g, &zero, Sign::Minus).unwrap();
        let nprime = opposite_subgroup(&f).unwrap();
        for x in g.elements() {
            assert_eq!(nprime[x], g.rho(g.inv(x)));
        }
        let b = circle_from_family(&f).unwrap();
        let r = verify_opposite(&f, &b, &cfg()).unwrap();
        assert_eq!(r.matches_centralizer, Some(true));
        assert!(r.regular && r.normalized_by_lambda.holds && r.realizes_opposite_brace.holds);
        assert!(!r.equals_family && !r.family_abelian);

        let z6 = zoo("cyclic:6");
        let psi = GroupMap::endomorphism(&z6, (0..6).map(|x| 5 * x % 6).collect()).unwrap();
        let f = RegularFamily::new(&z6, &psi, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let r = verify_opposite(&f, &b, &cfg()).unwrap();
        assert_eq!(r.matches_centralizer, Some(true));
        assert!(r.equals_family && r.family_abelian);
    }

    #[test]
    fn projection_example_lattice() {
        let ex = paper_example("ex-neg-proj").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let r = special_subgroups(&f, &b).unwrap();
        let order = |k: &str| r.subgroups[k].order;
        assert_eq!((order("N0"), order("N1"), order("N01"), order("LambdaN"), order("PN")), (8, 8, 64, 16, 16));
        assert!(r.pairwise_distinct);
        for s in r.subgroups.values() {
            assert!(s.contained && s.closed && s.normalized_by_lambda);
        }
        assert!(r.subgroups["N1"].trivial_action && r.subgroups["PN"].trivial_action);
        assert!(r.sub_hopf_algebras.contains(&"K[PN]".to_string()));
        assert_eq!(r.sub_hopf_algebras.len(), 5);
    }

    #[test]
    fn centerless_host_identifies_points() {
        let g = zoo("dihedral:6");
        for psi in crate::morphisms::enumerate_endomorphisms(&g, &[1, 3]).unwrap() {
            let f = RegularFamily::new(&g, &psi, Sign::Minus).unwrap();
            let Ok(b) = circle_from_family(&f) else { continue };
            let r = special_subgroups(&f, &b).unwrap();
            assert_eq!(r.subgroups["N0"].elements, r.subgroups["LambdaN"].elements);
            assert_eq!(r.subgroups["N1"].elements, r.subgroups["PN"].elements);
        }
    }

    #[test]
    fn zero_endomorphism_points() {
        let g = zoo("dihedral:8");
        let zero = GroupMap::zero(&g);
        let f = RegularFamily::new(&g, &zero, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let r = special_subgroups(&f, &b).unwrap();
        assert_eq!(r.subgroups["N0"].order, 8);
        // ρ(g) ∈ λ(G) exactly for central g; labels are inverses of Z(G)
        assert_eq!(r.subgroups["PN"].elements, vec![0, 2]);
        assert!(!r.subgroups.contains_key("N1"));
    }

    #[test]
    fn idempotent_decompositions() {
        let ex = paper_example("ex-neg-proj").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let t = idempotent_type(&f, &b, &cfg()).unwrap();
        assert!(t.isomorphism.holds);
        assert_eq!(t.kernel.label.as_deref(), Some("dihedral:8"));
        assert_eq!(t.image.label.as_deref(), Some("dihedral:8"));

        let g = zoo("dihedral:8");
        for (psi, k, i) in [(GroupMap::zero(&g), 8, 1), (GroupMap::identity(&g), 1, 8)] {
            let f = RegularFamily::new(&g, &psi, Sign::Minus).unwrap();
            let b = circle_from_family(&f).unwrap();
            let t = idempotent_type(&f, &b, &cfg()).unwrap();
            assert!(t.isomorphism.holds);
            assert_eq!((t.kernel.order, t.image.order), (k, i));
        }
        let z3 = zoo("cyclic:3");
        let neg = GroupMap::endomorphism(&z3, vec![0, 2, 1]).unwrap();
        let f = RegularFamily::new(&z3, &neg, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        assert!(matches!(idempotent_type(&f, &b, &cfg()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn fpf_on_small_groups() {
        let z3 = zoo("cyclic:3");
        let double = GroupMap::endomorphism(&z3, vec![0, 2, 1]).unwrap();
        let f = RegularFamily::new(&z3, &double, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let iso = fpf_isomorphism(&f, &b, &cfg()).unwrap();
        assert_eq!(iso.alpha, vec![0, 2, 1]);
        assert!(iso.bijective && iso.homomorphism.holds);
        assert!(check_g_equivariance(&f, &iso, &cfg()).holds);

        let g = zoo("dihedral:8");
        let zero = GroupMap::zero(&g);
        let f = RegularFamily::new(&g, &zero, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let iso = fpf_isomorphism(&f, &b, &cfg()).unwrap();
        assert_eq!(iso.alpha, (0..8).collect::<Vec<_>>());

        let id = GroupMap::identity(&g);
        let f = RegularFamily::new(&g, &id, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        assert!(matches!(fpf_isomorphism(&f, &b, &cfg()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn fpf_variant_is_not_equivariant() {
        let ex = paper_example("ex-pos-class3-fpf-variant").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let iso = fpf_isomorphism(&f, &b, &cfg()).unwrap();
        assert!(iso.bijective && iso.homomorphism.holds);
        assert!(!check_g_equivariance(&f, &iso, &cfg()).holds);
    }
}
