//! One `(G, ψ, ε)` through every requested check, with each observed
//! property compared against the condition on `ψ` that predicts it.

use std::collections::BTreeSet;

use serde::Serialize;
use skewbrace::braces::{
    circle_from_family, closed_form_inverse_matches, nu_is_homomorphism, psi_respects_circle, raw_circle_from_family,
};
use skewbrace::group::{Group, GroupMap};
use skewbrace::hopf_galois::{
    check_g_equivariance, fpf_isomorphism, idempotent_type, special_subgroups, verify_opposite, FpfIsomorphism,
    HGReport, IdempotentType, OppositeReport,
};
use skewbrace::regular::{
    fitting_decomposition, fitting_family_checks, FittingChecks, FittingFamilyChecks, OracleReport,
};
use skewbrace::ybe::{build_solution, generic_solution, verify_pairings, PairingReport, SolutionReport};
use skewbrace::{classify, EndoFlags, RegularFamily, Sign, SkewBrace, Variant, Verdict};

use crate::config::{Check, InputError, Settings};

/// Largest order for which the opposite subgroup is materialized.
pub const OPPOSITE_CAP: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    #[serde(flatten)]
    pub report: OracleReport,
    pub fitting: Option<FittingSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FittingSection {
    pub n: usize,
    pub kernel: Vec<usize>,
    pub image: Vec<usize>,
    pub checks: FittingChecks,
    /// Absent when the family is not a subgroup or is too large to close.
    pub family: Option<FittingFamilyChecks>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraceSection {
    pub circle_is_group: bool,
    pub skew_brace: Verdict,
    pub bi_skew_brace: Verdict,
    /// The condition on `ψ` for this `ε` holds, so the family is a subgroup.
    pub admitted: bool,
    pub closed_form_inverse: Option<bool>,
    pub psi_respects_circle: Option<Verdict>,
    pub nu_homomorphism: Option<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct YbeEntry {
    pub variant: Variant,
    pub refused: Option<String>,
    pub report: Option<SolutionReport>,
    /// Closed form against the construction from the brace tables.
    pub matches_generic: Option<Verdict>,
    /// Against the partner variant; recorded on `rG` and `rG1`.
    pub pairing: Option<PairingReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HgSection {
    pub special: Option<HGReport>,
    pub opposite: Option<OppositeReport>,
    pub idempotent: Option<IdempotentType>,
    pub fpf: Option<FpfIsomorphism>,
    pub equivariance: Option<Verdict>,
    pub refused: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub flags: EndoFlags,
    pub oracles: Option<OracleSection>,
    pub brace: Option<BraceSection>,
    pub ybe: Vec<YbeEntry>,
    pub hg: Option<HgSection>,
    pub mismatches: Vec<String>,
}

/// What the conditions on `ψ` predict for a given sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub subgroup: bool,
    pub normalized: bool,
    pub bi_skew: bool,
}

impl Prediction {
    pub fn new(flags: &EndoFlags, epsilon: Sign) -> Self {
        match epsilon {
            Sign::Minus => Prediction { subgroup: flags.thm1_d, normalized: flags.thm1_d, bi_skew: flags.thm1_d },
            Sign::Plus => Prediction { subgroup: flags.thm2_c, normalized: flags.thm2_b2, bi_skew: flags.thm2_b2 },
        }
    }

    pub fn admits(&self, variant: Variant) -> bool {
        if variant.needs_bi_skew() {
            self.bi_skew
        } else {
            self.subgroup
        }
    }
}

struct Mismatches(Vec<String>);

impl Mismatches {
    fn expect(&mut self, what: &str, predicted: bool, observed: bool) {
        if predicted != observed {
            self.0.push(format!("{what}: predicted {predicted}, observed {observed}"));
        }
    }

    fn holds(&mut self, what: &str, observed: bool) {
        self.expect(what, true, observed);
    }
}

pub fn analyze(
    group: &Group,
    psi: &GroupMap,
    epsilon: Sign,
    checks: &BTreeSet<Check>,
    settings: &Settings,
) -> Result<Analysis, InputError> {
    let cfg = &settings.oracle;
    let flags = classify(group, psi)?.flags;
    let predicted = Prediction::new(&flags, epsilon);
    let family = RegularFamily::new(group, psi, epsilon)?;
    let mut m = Mismatches(Vec::new());

    let oracles = if checks.contains(&Check::Oracles) || checks.contains(&Check::Fitting) {
        let report = family.oracles(cfg);
        if checks.contains(&Check::Oracles) {
            m.expect("oracle subgroup", predicted.subgroup, report.is_subgroup.holds);
            m.expect(
                "oracle subgroup and normalized by λ(G)",
                predicted.subgroup && predicted.normalized,
                report.is_subgroup.holds && report.normalized_by_lambda.holds,
            );
            if epsilon == Sign::Minus {
                m.expect("oracle normalized by λ(G)", predicted.normalized, report.normalized_by_lambda.holds);
            }
            m.holds("oracle N normalizes λ(G)", report.normalizes_lambda.holds);
        }
        let fitting = if checks.contains(&Check::Fitting) {
            let fit = fitting_decomposition(group, psi)?;
            m.holds("Fitting decomposition", fit.checks.all());
            let family_checks = if predicted.subgroup { fitting_family_checks(&family, &fit)? } else { None };
            if let Some(fc) = family_checks {
                m.holds("ν(J) and ν(I) generate N", fc.generates_family);
                m.holds("ν(J) normal in N", fc.kernel_part_normal);
            }
            Some(FittingSection {
                n: fit.n,
                kernel: fit.kernel.elements().to_vec(),
                image: fit.image.elements().to_vec(),
                checks: fit.checks,
                family: family_checks,
            })
        } else {
            None
        };
        Some(OracleSection { report, fitting })
    } else {
        None
    };

    let wants_brace = [Check::Brace, Check::Ybe, Check::Hg, Check::Equivariance].iter().any(|c| checks.contains(c));
    let brace: Option<SkewBrace<'_>> =
        if wants_brace && predicted.subgroup { Some(circle_from_family(&family)?) } else { None };

    let brace_section = if checks.contains(&Check::Brace) {
        let raw;
        let tables = match &brace {
            Some(b) => b,
            None => {
                raw = raw_circle_from_family(&family);
                &raw
            }
        };
        let report = tables.verify(cfg);
        m.expect("circle operation is a group", predicted.subgroup, report.circle_is_group);
        m.expect("skew brace axioms", predicted.subgroup, report.skew_brace.holds);
        m.expect("bi-skew brace axioms", predicted.bi_skew, report.bi_skew_brace.holds);
        let (mut closed_form_inverse, mut respects, mut nu_hom) = (None, None, None);
        if let Some(b) = &brace {
            let inv = closed_form_inverse_matches(&family, b);
            let resp = psi_respects_circle(b, psi, cfg)?;
            let hom = nu_is_homomorphism(&family, b, cfg);
            m.holds("closed-form circle inverse", inv);
            m.holds("ψ respects the circle operation", resp.holds);
            m.holds("ν is a homomorphism", hom.holds);
            (closed_form_inverse, respects, nu_hom) = (Some(inv), Some(resp), Some(hom));
        }
        Some(BraceSection {
            circle_is_group: report.circle_is_group,
            skew_brace: report.skew_brace,
            bi_skew_brace: report.bi_skew_brace,
            admitted: predicted.subgroup,
            closed_form_inverse,
            psi_respects_circle: respects,
            nu_homomorphism: nu_hom,
        })
    } else {
        None
    };

    let ybe = if checks.contains(&Check::Ybe) {
        ybe_entries(group, psi, epsilon, brace.as_ref(), &predicted, settings, &mut m)?
    } else {
        Vec::new()
    };

    let hg = if checks.contains(&Check::Hg) || checks.contains(&Check::Equivariance) {
        Some(hg_section(&family, &flags, &predicted, brace.as_ref(), checks, settings, &mut m)?)
    } else {
        None
    };

    Ok(Analysis { flags, oracles, brace: brace_section, ybe, hg, mismatches: m.0 })
}

fn ybe_entries(
    group: &Group,
    psi: &GroupMap,
    epsilon: Sign,
    brace: Option<&SkewBrace<'_>>,
    predicted: &Prediction,
    settings: &Settings,
    m: &mut Mismatches,
) -> Result<Vec<YbeEntry>, InputError> {
    let cfg = &settings.ybe;
    let mut entries = Vec::new();
    for variant in Variant::ALL {
        let name = variant.name();
        let (Some(brace), true) = (brace, predicted.admits(variant)) else {
            let reason = build_solution(group, psi, epsilon, variant)
                .err()
                .map_or_else(|| "hypotheses not met".to_string(), |e| e.to_string());
            entries.push(YbeEntry {
                variant,
                refused: Some(reason),
                report: None,
                matches_generic: None,
                pairing: None,
            });
            continue;
        };
        let solution = build_solution(group, psi, epsilon, variant)?;
        let report = solution.report(cfg);
        m.holds(&format!("{name} braid relation"), report.braid.holds);
        m.holds(&format!("{name} bijective"), report.bijective != Some(false));
        m.holds(&format!("{name} non-degenerate"), report.non_degenerate != Some(false));
        if variant == Variant::RG {
            m.expect(&format!("{name} involutive"), group.is_abelian(), report.involutive.holds);
        }
        let generic = generic_solution(brace, variant)?;
        let matches_generic = solution.agrees_with(&generic, cfg);
        m.holds(&format!("{name} closed form equals brace construction"), matches_generic.holds);
        let partner = variant.partner();
        let pairing = if matches!(variant, Variant::RG | Variant::RG1) && predicted.admits(partner) {
            let other = build_solution(group, psi, epsilon, partner)?;
            let p = verify_pairings(&solution, &other, brace, cfg)?;
            m.holds(&format!("{name} and {} are mutually inverse", partner.name()), p.mutual_inverse.holds);
            m.expect(&format!("{name} equals {}", partner.name()), p.coincidence_criterion, p.literally_equal.holds);
            Some(p)
        } else {
            None
        };
        entries.push(YbeEntry {
            variant,
            refused: None,
            report: Some(report),
            matches_generic: Some(matches_generic),
            pairing,
        });
    }
    Ok(entries)
}

fn hg_section(
    family: &RegularFamily<'_>,
    flags: &EndoFlags,
    predicted: &Prediction,
    brace: Option<&SkewBrace<'_>>,
    checks: &BTreeSet<Check>,
    settings: &Settings,
    m: &mut Mismatches,
) -> Result<HgSection, InputError> {
    let cfg = &settings.oracle;
    let mut out = HgSection {
        special: None,
        opposite: None,
        idempotent: None,
        fpf: None,
        equivariance: None,
        refused: Vec::new(),
    };
    let Some(brace) = brace else {
        out.refused.push("the family is not a subgroup".into());
        return Ok(out);
    };
    let epsilon = family.epsilon();
    if checks.contains(&Check::Hg) {
        let special = special_subgroups(family, brace)?;
        for (name, sub) in &special.subgroups {
            m.holds(&format!("{name} lies in N"), sub.contained);
            m.holds(&format!("{name} is closed"), sub.closed);
            if predicted.normalized {
                m.holds(&format!("{name} normalized by λ(G)"), sub.normalized_by_lambda);
                if name == "N1" || name == "PN" {
                    m.holds(&format!("λ(G) acts trivially on {name}"), sub.trivial_action);
                }
            }
        }
        out.special = Some(special);

        if family.order() <= OPPOSITE_CAP {
            let opp = verify_opposite(family, brace, cfg)?;
            m.holds("N' is the centralizer of N", opp.matches_centralizer != Some(false));
            m.holds("N' is regular", opp.regular);
            m.holds("ν'(g)(h) = h∘g", opp.realizes_opposite_brace.holds);
            if predicted.normalized {
                m.holds("N' normalized by λ(G)", opp.normalized_by_lambda.holds);
            }
            m.expect("N' = N", opp.family_abelian, opp.equals_family);
            out.opposite = Some(opp);
        } else {
            out.refused.push(format!("opposite subgroup skipped above order {OPPOSITE_CAP}"));
        }

        if flags.idempotent {
            match idempotent_type(family, brace, cfg) {
                Ok(t) => {
                    m.holds("N ≅ ker ψ × ψ(G)", t.isomorphism.holds);
                    out.idempotent = Some(t);
                }
                Err(e) => out.refused.push(format!("idempotent decomposition: {e}")),
            }
        }
    }

    if flags.fpf {
        match fpf_isomorphism(family, brace, cfg) {
            Ok(iso) => {
                m.holds("α is bijective", iso.bijective);
                m.holds("α is a homomorphism (G,∘) → (G,·)", iso.homomorphism.holds);
                if checks.contains(&Check::Equivariance) {
                    let v = check_g_equivariance(family, &iso, cfg);
                    let expected = epsilon == Sign::Minus || flags.koch_abelian;
                    m.expect("φ is G-equivariant", expected, v.holds);
                    out.equivariance = Some(v);
                }
                out.fpf = Some(iso);
            }
            Err(e) => out.refused.push(format!("fixed-point-free isomorphism: {e}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewbrace::zoo::{build, ZooSpec};

    fn all() -> BTreeSet<Check> {
        Check::ALL.into_iter().collect()
    }

    #[test]
    fn identity_on_d4_is_clean_for_both_signs() {
        let g = build(&ZooSpec::Dihedral(8)).unwrap();
        let id = GroupMap::identity(&g);
        for eps in Sign::BOTH {
            let a = analyze(&g, &id, eps, &all(), &Settings::default()).unwrap();
            assert!(a.mismatches.is_empty(), "{eps}: {:?}", a.mismatches);
            assert_eq!(a.ybe.len(), 4);
        }
    }

    #[test]
    fn refused_variants_carry_a_reason() {
        // ψ(G) = G nonabelian, so ψ([ψ(G),G]) = [G,G] is not central in S3.
        let g = build(&ZooSpec::Dihedral(6)).unwrap();
        let id = GroupMap::identity(&g);
        let a = analyze(&g, &id, Sign::Plus, &all(), &Settings::default()).unwrap();
        assert!(a.mismatches.is_empty(), "{:?}", a.mismatches);
        assert!(a.ybe.iter().all(|e| e.refused.is_some()));
        assert!(!a.brace.unwrap().skew_brace.holds);
        assert!(!a.hg.unwrap().refused.is_empty());
    }

    #[test]
    fn only_requested_sections_appear() {
        let g = build(&ZooSpec::Cyclic(4)).unwrap();
        let id = GroupMap::identity(&g);
        let checks: BTreeSet<Check> = [Check::Classify].into_iter().collect();
        let a = analyze(&g, &id, Sign::Minus, &checks, &Settings::default()).unwrap();
        assert!(a.oracles.is_none() && a.brace.is_none() && a.hg.is_none() && a.ybe.is_empty());
    }
}
