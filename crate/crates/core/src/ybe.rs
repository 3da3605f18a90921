//! Set-theoretic solutions `r(g, h) = (σ_g(h), τ_h(g))` of the Yang-Baxter
//! equation attached to the braces of a regular family.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::braces::SkewBrace;
use crate::check::{check_pairs, check_triples, CheckConfig, Verdict};
use crate::error::{Error, Result};
use crate::group::{Group, GroupMap};
use crate::morphisms::classify;
use crate::sign::Sign;

/// Solutions on groups above this order are evaluated from the closed form
/// on demand instead of being tabulated.
pub const MATERIALIZE_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    RG,
    RGop,
    RG1,
    RG1op,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::RG, Variant::RGop, Variant::RG1, Variant::RG1op];

    pub fn name(self) -> &'static str {
        match self {
            Variant::RG => "rG",
            Variant::RGop => "rGop",
            Variant::RG1 => "rG1",
            Variant::RG1op => "rG1op",
        }
    }

    /// The variant this one is paired with (its inverse).
    pub fn partner(self) -> Variant {
        match self {
            Variant::RG => Variant::RGop,
            Variant::RGop => Variant::RG,
            Variant::RG1 => Variant::RG1op,
            Variant::RG1op => Variant::RG1,
        }
    }

    /// Whether the variant comes from `(G, ∘, ·)` and so needs a bi-skew brace.
    pub fn needs_bi_skew(self) -> bool {
        matches!(self, Variant::RG1 | Variant::RG1op)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("variant {s:?} (expected rG, rGop, rG1 or rG1op)")))
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone)]
enum Repr<'a> {
    Tables { sigma: Vec<u32>, tau: Vec<u32> },
    Closed { psi: &'a GroupMap, epsilon: Sign },
    Generic { brace: &'a SkewBrace<'a> },
}

#[derive(Debug, Clone)]
pub struct YBSolution<'a> {
    group: &'a Group,
    variant: Variant,
    repr: Repr<'a>,
}

/// Fails unless `(ψ, ε)` satisfies what the closed form of `variant` needs:
/// `ψ([[G,ψ],G]) ≤ Z` for `ε = -1`; `ψ([ψ(G),G]) ≤ Z` for `ε = +1`, plus
/// `ψ([G,G]) ≤ Z` for the `rG1` pair.
pub fn ensure_hypotheses(group: &Group, psi: &GroupMap, epsilon: Sign, variant: Variant) -> Result<()> {
    let flags = classify(group, psi)?.flags;
    let fail = |what: &str| Err(Error::Hypothesis(format!("{variant} with epsilon {epsilon} needs {what}")));
    match epsilon {
        Sign::Minus if !flags.thm1_d => fail("ψ([[G,ψ],G]) ≤ Z(G)"),
        Sign::Plus if !flags.thm2_c => fail("ψ([ψ(G),G]) ≤ Z(G)"),
        Sign::Plus if variant.needs_bi_skew() && !flags.thm2_b2 => fail("ψ([G,G]) ≤ Z(G)"),
        _ => Ok(()),
    }
}

fn closed_form(group: &Group, psi: &GroupMap, epsilon: Sign, variant: Variant, g: usize, h: usize) -> (usize, usize) {
    let p = |x: usize| psi.apply(x);
    let i = |x: usize| group.inv(x);
    let m = |xs: &[usize]| group.product(xs);
    let (gi, hi) = (i(g), i(h));
    match (epsilon, variant) {
        (Sign::Minus, Variant::RG) => {
            (m(&[p(gi), h, p(g)]), m(&[p(m(&[gi, h])), hi, p(g), g, p(gi), h, p(m(&[hi, g]))]))
        }
        (Sign::Minus, Variant::RGop) => (m(&[g, p(gi), h, p(g), gi]), m(&[p(h), g, p(hi)])),
        (Sign::Minus, Variant::RG1) => (m(&[p(g), h, p(gi)]), m(&[p(g), hi, p(gi), g, h])),
        (Sign::Minus, Variant::RG1op) => (m(&[g, h, p(hi), gi, p(h)]), m(&[p(hi), g, p(h)])),
        (Sign::Plus, Variant::RG) => {
            (m(&[p(g), h, p(gi)]), m(&[p(m(&[hi, g])), hi, p(gi), g, p(g), h, p(m(&[gi, h]))]))
        }
        (Sign::Plus, Variant::RGop) => (m(&[g, p(g), h, p(gi), gi]), m(&[p(m(&[g, hi, gi])), g, p(m(&[g, h, gi]))])),
        (Sign::Plus, Variant::RG1) => (m(&[p(gi), h, p(g)]), m(&[p(gi), hi, p(g), g, h])),
        (Sign::Plus, Variant::RG1op) => (m(&[g, h, p(h), gi, p(hi)]), m(&[p(h), g, p(hi)])),
    }
}

fn generic_form(brace: &SkewBrace<'_>, variant: Variant, g: usize, h: usize) -> (usize, usize) {
    let d = brace.dot();
    let c = |a: usize, b: usize| brace.circle(a, b);
    let bar = |a: usize| brace.circle_inverse(a).expect("circle is a group");
    let gh_circle = c(g, h);
    let gh_dot = d.mul(g, h);
    match variant {
        Variant::RG => {
            let s = d.mul(d.inv(g), gh_circle);
            (s, c(bar(s), gh_circle))
        }
        Variant::RGop => {
            let s = d.mul(gh_circle, d.inv(g));
            (s, c(bar(s), gh_circle))
        }
        Variant::RG1 => {
            let s = c(bar(g), gh_dot);
            (s, d.mul(d.inv(s), gh_dot))
        }
        Variant::RG1op => {
            let s = c(gh_dot, bar(g));
            (s, d.mul(d.inv(s), gh_dot))
        }
    }
}

fn tabulate(n: usize, eval: impl Fn(usize, usize) -> (usize, usize) + Sync) -> Repr<'static> {
    let pairs: Vec<(usize, usize)> = (0..n * n).into_par_iter().map(|gh| eval(gh / n, gh % n)).collect();
    let mut sigma = vec![0u32; n * n];
    let mut tau = vec![0u32; n * n];
    for (gh, &(s, t)) in pairs.iter().enumerate() {
        let (g, h) = (gh / n, gh % n);
        sigma[g * n + h] = s as u32;
        tau[h * n + g] = t as u32;
    }
    Repr::Tables { sigma, tau }
}

/// The closed-form solution for `(G, ψ, ε)`, refused when its hypotheses fail.
pub fn build_solution<'a>(
    group: &'a Group,
    psi: &'a GroupMap,
    epsilon: Sign,
    variant: Variant,
) -> Result<YBSolution<'a>> {
    ensure_hypotheses(group, psi, epsilon, variant)?;
    let n = group.order();
    let repr = if n <= MATERIALIZE_CAP {
        tabulate(n, |g, h| closed_form(group, psi, epsilon, variant, g, h))
    } else {
        Repr::Closed { psi, epsilon }
    };
    Ok(YBSolution { group, variant, repr })
}

/// The solution computed from the `∘` table and `∘`-inverses alone.
pub fn generic_solution<'a>(brace: &'a SkewBrace<'a>, variant: Variant) -> Result<YBSolution<'a>> {
    if !brace.circle_is_group() {
        return Err(Error::NotAGroup("circle operation".into()));
    }
    Ok(YBSolution { group: brace.dot(), variant, repr: Repr::Generic { brace } })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub variant: Variant,
    pub braid: Verdict,
    /// `None` above [`MATERIALIZE_CAP`].
    pub bijective: Option<bool>,
    pub non_degenerate: Option<bool>,
    pub involutive: Verdict,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SolutionExport {
    Tables { order: usize, variant: Variant, sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>> },
    Closed { order: usize, variant: Variant, closed_form: ClosedFormParams },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormParams {
    pub epsilon: Sign,
    pub psi: Vec<usize>,
}

impl<'a> YBSolution<'a> {
    /// A solution given directly by its `σ` and `τ` tables
    /// (`sigma[g][h] = σ_g(h)`, `tau[h][g] = τ_h(g)`).
    pub fn from_tables(group: &'a Group, variant: Variant, sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if sigma.len() != n * n || tau.len() != n * n {
            return Err(Error::InvalidTable(format!("sigma and tau need {} entries each", n * n)));
        }
        if let Some(&bad) = sigma.iter().chain(&tau).find(|&&x| x >= n) {
            return Err(Error::OutOfRange { id: bad, order: n });
        }
        let to32 = |v: Vec<usize>| v.into_iter().map(|x| x as u32).collect();
        Ok(YBSolution { group, variant, repr: Repr::Tables { sigma: to32(sigma), tau: to32(tau) } })
    }

    pub fn group(&self) -> &'a Group {
        self.group
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.repr, Repr::Tables { .. })
    }

    /// The `σ` and `τ` tables, computing them if necessary.
    pub fn tables(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.group.order();
        let mut sigma = vec![0; n * n];
        let mut tau = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                let (s, t) = self.eval(g, h);
                sigma[g * n + h] = s;
                tau[h * n + g] = t;
            }
        }
        (sigma, tau)
    }

    /// `r(g, h)`.
    #[inline]
    pub fn eval(&self, g: usize, h: usize) -> (usize, usize) {
        let n = self.group.order();
        match &self.repr {
            Repr::Tables { sigma, tau } => (sigma[g * n + h] as usize, tau[h * n + g] as usize),
            Repr::Closed { psi, epsilon } => closed_form(self.group, psi, *epsilon, self.variant, g, h),
            Repr::Generic { brace } => generic_form(brace, self.variant, g, h),
        }
    }

    /// `(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r)`.
    pub fn verify_braid(&self, cfg: &CheckConfig) -> Verdict {
        check_triples(self.group.order(), cfg, |x, y, z| {
            let (a, b) = self.eval(x, y);
            let (c, d) = self.eval(b, z);
            let (e, f) = self.eval(a, c);
            let left = (e, f, d);
            let (p, q) = self.eval(y, z);
            let (s, t) = self.eval(x, p);
            let (u, v) = self.eval(t, q);
            left == (s, u, v)
        })
    }

    /// `r` is a bijection of `G × G`. `None` above [`MATERIALIZE_CAP`].
    pub fn is_bijective(&self) -> Option<bool> {
        let n = self.group.order();
        if n > MATERIALIZE_CAP {
            return None;
        }
        let mut seen = vec![false; n * n];
        Some((0..n).all(|g| {
            (0..n).all(|h| {
                let (s, t) = self.eval(g, h);
                !std::mem::replace(&mut seen[s * n + t], true)
            })
        }))
    }

    /// Every `σ_x` and every `τ_x` is a bijection. `None` above
    /// [`MATERIALIZE_CAP`].
    pub fn is_non_degenerate(&self) -> Option<bool> {
        let n = self.group.order();
        if n > MATERIALIZE_CAP {
            return None;
        }
        let bijective = |f: &dyn Fn(usize) -> usize| {
            let mut seen = vec![false; n];
            (0..n).all(|y| !std::mem::replace(&mut seen[f(y)], true))
        };
        Some((0..n).into_par_iter().all(|x| bijective(&|h| self.eval(x, h).0) && bijective(&|g| self.eval(g, x).1)))
    }

    /// `r² = id`.
    pub fn verify_involutive(&self, cfg: &CheckConfig) -> Verdict {
        let n = self.group.order();
        check_pairs(n, n, n, cfg, |g, h| {
            let (s, t) = self.eval(g, h);
            self.eval(s, t) == (g, h)
        })
    }

    pub fn report(&self, cfg: &CheckConfig) -> SolutionReport {
        SolutionReport {
            variant: self.variant,
            braid: self.verify_braid(cfg),
            bijective: self.is_bijective(),
            non_degenerate: self.is_non_degenerate(),
            involutive: self.verify_involutive(cfg),
        }
    }

    /// Agreement with another solution on every pair.
    pub fn agrees_with(&self, other: &YBSolution<'_>, cfg: &CheckConfig) -> Verdict {
        let n = self.group.order();
        check_pairs(n, n, n, cfg, |g, h| self.eval(g, h) == other.eval(g, h))
    }

    pub fn export(&self) -> SolutionExport {
        let n = self.group.order();
        if let Repr::Closed { psi, epsilon } = &self.repr {
            return SolutionExport::Closed {
                order: n,
                variant: self.variant,
                closed_form: ClosedFormParams { epsilon: *epsilon, psi: psi.images() },
            };
        }
        let (sigma, tau) = self.tables();
        let rows = |v: Vec<usize>| v.chunks(n).map(<[usize]>::to_vec).collect();
        SolutionExport::Tables { order: n, variant: self.variant, sigma: rows(sigma), tau: rows(tau) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub first: Variant,
    pub second: Variant,
    /// `r2∘r1 = id` and `r1∘r2 = id`.
    pub mutual_inverse: Verdict,
    pub literally_equal: Verdict,
    /// The predicted condition for equality: `(G,·)` abelian for the `rG`
    /// pair, `(G,∘)` abelian for the `rG1` pair.
    pub coincidence_criterion: bool,
}

/// Compares two solutions from the same brace.
pub fn verify_pairings(
    s1: &YBSolution<'_>,
    s2: &YBSolution<'_>,
    brace: &SkewBrace<'_>,
    cfg: &CheckConfig,
) -> Result<PairingReport> {
    let n = s1.group.order();
    if s2.group.order() != n || brace.order() != n {
        return Err(Error::HostMismatch);
    }
    let mutual_inverse = check_pairs(n, n, n, cfg, |g, h| {
        let (a, b) = s1.eval(g, h);
        let (c, d) = s2.eval(g, h);
        s2.eval(a, b) == (g, h) && s1.eval(c, d) == (g, h)
    });
    let coincidence_criterion = if s1.variant.needs_bi_skew() {
        (0..n).into_par_iter().all(|g| (0..n).all(|h| brace.circle(g, h) == brace.circle(h, g)))
    } else {
        s1.group.is_abelian()
    };
    Ok(PairingReport {
        first: s1.variant,
        second: s2.variant,
        mutual_inverse,
        literally_equal: s1.agrees_with(s2, cfg),
        coincidence_criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braces::circle_from_family;
    use crate::regular::RegularFamily;
    use crate::zoo::{build, paper_example, ZooSpec};

    fn zoo(s: &str) -> Group {
        build(&s.parse::<ZooSpec>().unwrap()).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::ybe_default()
    }

    #[test]
    fn variant_names_roundtrip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
            assert_eq!(v.partner().partner(), v);
        }
        assert!("rG2".parse::<Variant>().is_err());
    }

    #[test]
    fn zero_endomorphism_gives_conjugation_solution() {
        let g = zoo("dihedral:8");
        let zero = GroupMap::zero(&g);
        for eps in Sign::BOTH {
            let s = build_solution(&g, &zero, eps, Variant::RG).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(s.eval(x, y), (y, g.product(&[g.inv(y), x, y])));
                }
            }
        }
    }

    #[test]
    fn identity_endomorphism_rg1() {
        let g = zoo("dihedral:8");
        let id = GroupMap::identity(&g);
        let s = build_solution(&g, &id, Sign::Minus, Variant::RG1).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let xi = g.inv(x);
                assert_eq!(s.eval(x, y), (g.product(&[x, y, xi]), g.product(&[x, g.inv(y), xi, x, y])));
            }
        }
    }

    #[test]
    fn hypotheses_are_enforced() {
        let d16 = zoo("dihedral:16");
        let id = GroupMap::identity(&d16);
        assert!(matches!(build_solution(&d16, &id, Sign::Plus, Variant::RG), Err(Error::Hypothesis(_))));
        assert!(build_solution(&d16, &id, Sign::Minus, Variant::RG1).is_ok());
        let ex = paper_example("ex-pos-class4").unwrap();
        assert!(build_solution(&ex.group, &ex.psi, Sign::Plus, Variant::RG).is_ok());
        assert!(matches!(build_solution(&ex.group, &ex.psi, Sign::Plus, Variant::RG1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn closed_forms_match_generic_and_satisfy_braid() {
        for (s, eps) in [
            ("dihedral:8", Sign::Minus),
            ("dihedral:8", Sign::Plus),
            ("quaternion:8", Sign::Plus),
            ("dihedral:16", Sign::Minus),
            ("cyclic:6", Sign::Plus),
        ] {
            let g = zoo(s);
            let endos =
                crate::morphisms::enumerate_endomorphisms(&g, &crate::morphisms::small_generating_set(&g)).unwrap();
            for psi in &endos {
                let Ok(fam) = RegularFamily::new(&g, psi, eps) else { continue };
                let Ok(brace) = circle_from_family(&fam) else { continue };
                for v in Variant::ALL {
                    let Ok(sol) = build_solution(&g, psi, eps, v) else { continue };
                    let generic = generic_solution(&brace, v).unwrap();
                    assert!(sol.agrees_with(&generic, &cfg()).holds, "{s} {eps} {v} {:?}", psi.images());
                    let r = sol.report(&cfg());
                    assert!(r.braid.holds && r.bijective == Some(true) && r.non_degenerate == Some(true), "{s} {v}");
                    if v == Variant::RG {
                        assert_eq!(r.involutive.holds, g.is_abelian(), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn mutated_sigma_breaks_braid() {
        let ex = paper_example("ex-neg-proj").unwrap();
        let g = zoo("dihedral:8");
        let id = GroupMap::identity(&g);
        let sol = build_solution(&g, &id, Sign::Minus, Variant::RG).unwrap();
        assert!(sol.verify_braid(&cfg()).holds);
        let (mut sigma, tau) = sol.tables();
        sigma.swap(3 * 8 + 1, 3 * 8 + 2);
        let bad = YBSolution::from_tables(&g, Variant::RG, sigma, tau).unwrap();
        assert!(!bad.verify_braid(&cfg()).holds);
        // large groups are sampled
        let sol = build_solution(&ex.group, &ex.psi, Sign::Minus, Variant::RG1op).unwrap();
        let v = sol.verify_braid(&cfg());
        assert!(v.holds && v.is_sampled());
    }

    #[test]
    fn pairings() {
        let g = zoo("dihedral:8");
        let zero = GroupMap::zero(&g);
        let fam = RegularFamily::new(&g, &zero, Sign::Minus).unwrap();
        let brace = circle_from_family(&fam).unwrap();
        let a = build_solution(&g, &zero, Sign::Minus, Variant::RG1).unwrap();
        let b = build_solution(&g, &zero, Sign::Minus, Variant::RG1op).unwrap();
        let r = verify_pairings(&a, &b, &brace, &cfg()).unwrap();
        assert!(r.mutual_inverse.holds);
        assert!(!r.coincidence_criterion && !r.literally_equal.holds);

        let z4 = zoo("cyclic:4");
        let double = GroupMap::endomorphism(&z4, vec![0, 2, 0, 2]).unwrap();
        let fam = RegularFamily::new(&z4, &double, Sign::Plus).unwrap();
        let brace = circle_from_family(&fam).unwrap();
        let a = build_solution(&z4, &double, Sign::Plus, Variant::RG).unwrap();
        let b = build_solution(&z4, &double, Sign::Plus, Variant::RGop).unwrap();
        let r = verify_pairings(&a, &b, &brace, &cfg()).unwrap();
        assert!(r.mutual_inverse.holds && r.coincidence_criterion && r.literally_equal.holds);
        assert!(a.verify_involutive(&cfg()).holds);
    }

    #[test]
    fn export_shapes() {
        let g = zoo("cyclic:2");
        let zero = GroupMap::zero(&g);
        let sol = build_solution(&g, &zero, Sign::Plus, Variant::RG).unwrap();
        match sol.export() {
            SolutionExport::Tables { order, sigma, tau, .. } => {
                assert_eq!(order, 2);
                assert_eq!(sigma, vec![vec![0, 1], vec![0, 1]]);
                assert_eq!(tau, vec![vec![0, 1], vec![0, 1]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let ex = paper_example("ex-pos-class4").unwrap();
        let sol = build_solution(&ex.group, &ex.psi, Sign::Plus, Variant::RG).unwrap();
        assert!(!sol.is_materialized());
        assert!(matches!(sol.export(), SolutionExport::Closed { order: 4096, .. }));
    }
}
