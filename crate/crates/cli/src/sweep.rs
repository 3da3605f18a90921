use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use skewbrace::group::Group;
use skewbrace::morphisms::{enumerate_endomorphisms, small_generating_set};
use skewbrace::{EndoFlags, Sign};

use crate::analysis::analyze;
use crate::config::{Check, InputError, Settings};

/// Enumeration is refused beyond this many generators.
pub const MAX_GENERATORS: usize = 3;

#[derive(Debug, Clone, Default, Serialize)]
pub struct SignCounts {
    pub subgroup: usize,
    pub normalized_by_lambda: usize,
    pub skew_brace: usize,
    pub bi_skew_brace: usize,
    pub ybe_admitted: usize,
    pub fpf_certified: usize,
    pub equivariant: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub group: String,
    pub order: usize,
    pub generators: Vec<usize>,
    pub endomorphisms: usize,
    pub flags: BTreeMap<&'static str, usize>,
    pub signs: BTreeMap<String, SignCounts>,
    /// One line per disagreement, prefixed by the endomorphism's images.
    pub mismatches: Vec<String>,
}

fn flag_pairs(f: &EndoFlags) -> [(&'static str, bool); 8] {
    [
        ("koch_abelian", f.koch_abelian),
        ("thm1_d", f.thm1_d),
        ("thm2_c", f.thm2_c),
        ("thm2_b2", f.thm2_b2),
        ("fpf", f.fpf),
        ("idempotent", f.idempotent),
        ("twisted_vanishes", f.twisted_vanishes),
        ("image_commutator_vanishes", f.image_commutator_vanishes),
    ]
}

/// Runs the requested checks on every endomorphism of `group` for each sign
/// in `signs` and tallies flags, properties and mismatches.
pub fn enumerate_and_classify(
    group: &Group,
    signs: &[Sign],
    checks: &BTreeSet<Check>,
    settings: &Settings,
) -> Result<Summary, InputError> {
    let generators = small_generating_set(group);
    if generators.len() > MAX_GENERATORS {
        return Err(InputError(format!(
            "enumeration needs {} generators for {}; at most {MAX_GENERATORS} are supported",
            generators.len(),
            group.name()
        )));
    }
    let endos = enumerate_endomorphisms(group, &generators)?;
    let mut flags: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut counts: BTreeMap<String, SignCounts> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for psi in &endos {
        for &eps in signs {
            let a = analyze(group, psi, eps, checks, settings)?;
            if eps == signs[0] {
                for (name, on) in flag_pairs(&a.flags) {
                    *flags.entry(name).or_default() += usize::from(on);
                }
            }
            let c = counts.entry(eps.to_string()).or_default();
            if let Some(o) = &a.oracles {
                c.subgroup += usize::from(o.report.is_subgroup.holds);
                c.normalized_by_lambda += usize::from(o.report.normalized_by_lambda.holds);
            }
            if let Some(b) = &a.brace {
                c.skew_brace += usize::from(b.skew_brace.holds);
                c.bi_skew_brace += usize::from(b.bi_skew_brace.holds);
            }
            c.ybe_admitted += a.ybe.iter().filter(|e| e.refused.is_none()).count();
            if let Some(hg) = &a.hg {
                c.fpf_certified += usize::from(hg.fpf.as_ref().is_some_and(|f| f.bijective && f.homomorphism.holds));
                c.equivariant += usize::from(hg.equivariance.as_ref().is_some_and(|v| v.holds));
            }
            let images = psi.images();
            mismatches.extend(a.mismatches.into_iter().map(|msg| format!("ψ = {images:?}, ε = {eps}: {msg}")));
        }
    }
    Ok(Summary {
        group: group.name().to_string(),
        order: group.order(),
        generators,
        endomorphisms: endos.len(),
        flags,
        signs: counts,
        mismatches,
    })
}
