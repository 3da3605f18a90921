//! Skew braces `(G, ·, ∘)`. The `∘` table is stored raw so that damaged
//! tables can still be fed to the axiom checks.

use std::borrow::Cow;

use rayon::prelude::*;
use serde::Serialize;

use crate::check::{check_pairs, check_triples, CheckConfig, Verdict};
use crate::error::{Error, Result};
use crate::group::{Group, GroupMap};
use crate::regular::{ensure_family_condition, RegularFamily};
use crate::sign::Sign;

const NO_INVERSE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct SkewBrace<'a> {
    dot: Cow<'a, Group>,
    circle: Vec<u32>,
    circle_inv: Vec<u32>,
    circle_is_group: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraceReport {
    pub circle_is_group: bool,
    pub skew_brace: Verdict,
    pub bi_skew_brace: Verdict,
}

impl<'a> SkewBrace<'a> {
    /// Wraps a `∘` table over `dot`. Group axioms for `∘` are checked and
    /// recorded, not enforced.
    pub fn from_tables(dot: Cow<'a, Group>, circle: Vec<usize>) -> Result<Self> {
        let n = dot.order();
        if circle.len() != n * n {
            return Err(Error::InvalidTable(format!("circle table needs {} entries, found {}", n * n, circle.len())));
        }
        if let Some(&bad) = circle.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfRange { id: bad, order: n });
        }
        let circle_is_group = Group::from_table("circle", n, circle.clone()).is_ok();
        let circle: Vec<u32> = circle.into_iter().map(|x| x as u32).collect();
        let circle_inv = (0..n)
            .into_par_iter()
            .map(|g| {
                (0..n).find(|&h| circle[g * n + h] == 0 && circle[h * n + g] == 0).map_or(NO_INVERSE, |h| h as u32)
            })
            .collect();
        Ok(SkewBrace { dot, circle, circle_inv, circle_is_group })
    }

    /// The trivial brace `∘ = ·`.
    pub fn trivial(dot: &'a Group) -> Self {
        let n = dot.order();
        let circle = (0..n * n).map(|gh| dot.mul(gh / n, gh % n)).collect();
        SkewBrace::from_tables(Cow::Borrowed(dot), circle).expect("group table is valid")
    }

    pub fn dot(&self) -> &Group {
        &self.dot
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    #[inline]
    pub fn circle(&self, g: usize, h: usize) -> usize {
        self.circle[g * self.order() + h] as usize
    }

    pub fn circle_is_group(&self) -> bool {
        self.circle_is_group
    }

    /// `ḡ`, found by searching the table.
    pub fn circle_inverse(&self, g: usize) -> Result<usize> {
        self.dot.check_id(g)?;
        match self.circle_inv[g] {
            NO_INVERSE => Err(Error::NotAGroup(format!("{g} has no inverse under the circle operation"))),
            x => Ok(x as usize),
        }
    }

    #[inline]
    fn bar(&self, g: usize) -> usize {
        self.circle_inv[g] as usize
    }

    /// `(G, ∘)` as a group in its own right.
    pub fn circle_group(&self) -> Result<Group> {
        let name = format!("({}, circle)", self.dot.name());
        Group::from_table(name, self.order(), self.circle.iter().map(|&x| x as usize).collect())
            .map_err(|e| Error::NotAGroup(e.to_string()))
    }

    /// `g∘(h·k) = (g∘h)·g⁻¹·(g∘k)`, whether or not `∘` is a group.
    pub fn verify_left_brace_axiom(&self, cfg: &CheckConfig) -> Verdict {
        let d = &*self.dot;
        check_triples(self.order(), cfg, |g, h, k| {
            self.circle(g, d.mul(h, k)) == d.mul(d.mul(self.circle(g, h), d.inv(g)), self.circle(g, k))
        })
    }

    /// `(G,∘)` is a group and the left brace axiom holds.
    pub fn verify_skew_brace(&self, cfg: &CheckConfig) -> Verdict {
        if !self.circle_is_group {
            return Verdict::trivially(false);
        }
        self.verify_left_brace_axiom(cfg)
    }

    /// `g·(h∘k) = (g·h)∘ḡ∘(g·k)`, the axiom with the two operations swapped.
    pub fn verify_bi_skew(&self, cfg: &CheckConfig) -> Verdict {
        if !self.circle_is_group {
            return Verdict::trivially(false);
        }
        let d = &*self.dot;
        check_triples(self.order(), cfg, |g, h, k| {
            d.mul(g, self.circle(h, k)) == self.circle(self.circle(d.mul(g, h), self.bar(g)), d.mul(g, k))
        })
    }

    pub fn verify(&self, cfg: &CheckConfig) -> BraceReport {
        BraceReport {
            circle_is_group: self.circle_is_group,
            skew_brace: self.verify_skew_brace(cfg),
            bi_skew_brace: self.verify_bi_skew(cfg),
        }
    }

    /// `(G, ·', ∘)` with `g ·' h = h · g`.
    pub fn opposite(&self) -> SkewBrace<'static> {
        SkewBrace {
            dot: Cow::Owned(self.dot.reversed()),
            circle: self.circle.clone(),
            circle_inv: self.circle_inv.clone(),
            circle_is_group: self.circle_is_group,
        }
    }

    /// Same `·` and `∘` tables.
    pub fn same_tables(&self, other: &SkewBrace<'_>) -> bool {
        *self.dot == *other.dot && self.circle == other.circle
    }

    /// Two Cayley tables, `·` then `∘`, separated by a blank line.
    pub fn to_export_text(&self) -> String {
        let mut out = self.dot.to_cayley_text();
        out.push('\n');
        let n = self.order();
        out.push_str(&format!("order {n}\n"));
        for g in 0..n {
            let row: Vec<String> = (0..n).map(|h| self.circle(g, h).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `g∘h = ν(g)(h)`. Refused unless the family is a subgroup by its condition.
pub fn circle_from_family<'a>(family: &RegularFamily<'a>) -> Result<SkewBrace<'a>> {
    ensure_family_condition(family.group(), family.psi(), family.epsilon())?;
    let brace = raw_circle_from_family(family);
    if !brace.circle_is_group {
        return Err(Error::NotAGroup("circle operation of the family".into()));
    }
    Ok(brace)
}

/// The `∘` table of any family, group or not, for checking the axioms
/// independently of the condition on `ψ`.
pub fn raw_circle_from_family<'a>(family: &RegularFamily<'a>) -> SkewBrace<'a> {
    let group = family.group();
    let n = group.order();
    let circle = (0..n * n).into_par_iter().map(|gh| family.apply_nu(gh / n, gh % n)).collect();
    SkewBrace::from_tables(Cow::Borrowed(group), circle).expect("family values are element ids")
}

/// `ḡ = ψ(g^-ε)·g⁻¹·ψ(g^ε)`.
pub fn closed_form_circle_inverse(family: &RegularFamily<'_>, g: usize) -> usize {
    let grp = family.group();
    let c = family.twist(g);
    grp.product(&[grp.inv(c), grp.inv(g), c])
}

pub fn closed_form_inverse_matches(family: &RegularFamily<'_>, brace: &SkewBrace<'_>) -> bool {
    family.group().elements().all(|g| brace.circle_inverse(g).ok() == Some(closed_form_circle_inverse(family, g)))
}

/// `ψ(g∘h) = ψ(g)∘ψ(h)`.
pub fn psi_respects_circle(brace: &SkewBrace<'_>, psi: &GroupMap, cfg: &CheckConfig) -> Result<Verdict> {
    psi.ensure_endomorphism(brace.dot())?;
    let n = brace.order();
    Ok(check_pairs(n, n, n, cfg, |g, h| psi.apply(brace.circle(g, h)) == brace.circle(psi.apply(g), psi.apply(h))))
}

/// `ν(g∘h) = ν(g)·ν(h)` as permutations.
pub fn nu_is_homomorphism(family: &RegularFamily<'_>, brace: &SkewBrace<'_>, cfg: &CheckConfig) -> Verdict {
    let n = family.order();
    check_pairs(n, n, n, cfg, |g, h| {
        let gh = brace.circle(g, h);
        (0..n).all(|x| family.apply_nu(gh, x) == family.apply_nu(g, family.apply_nu(h, x)))
    })
}

/// The expected `∘` for the two identity examples: reversed `·` for
/// `ε = -1`, `g·[g,h]·h` for `ε = +1`.
pub fn identity_circle(group: &Group, epsilon: Sign, g: usize, h: usize) -> usize {
    match epsilon {
        Sign::Minus => group.mul(h, g),
        Sign::Plus => group.product(&[g, group.commutator(g, h), h]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::CheckConfig;
    use crate::zoo::{build, paper_example, ZooSpec};

    fn zoo(s: &str) -> Group {
        build(&s.parse::<ZooSpec>().unwrap()).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::oracle_default()
    }

    #[test]
    fn circle_for_special_endomorphisms() {
        let g = zoo("dihedral:8");
        let id = GroupMap::identity(&g);
        let zero = GroupMap::zero(&g);
        for eps in Sign::BOTH {
            let f = RegularFamily::new(&g, &id, eps).unwrap();
            let b = circle_from_family(&f).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(b.circle(x, y), identity_circle(&g, eps, x, y));
                }
            }
            let f = RegularFamily::new(&g, &zero, eps).unwrap();
            let b = circle_from_family(&f).unwrap();
            assert!(b.same_tables(&SkewBrace::trivial(&g)));
            assert!(g.elements().all(|x| b.circle_inverse(x) == Ok(g.inv(x))));
        }
    }

    #[test]
    fn refuses_families_that_are_not_subgroups() {
        let g = zoo("dihedral:16");
        let id = GroupMap::identity(&g);
        let f = RegularFamily::new(&g, &id, Sign::Plus).unwrap();
        assert!(matches!(circle_from_family(&f), Err(Error::Hypothesis(_))));
        let raw = raw_circle_from_family(&f);
        assert!(!raw.circle_is_group());
        assert!(!raw.verify_skew_brace(&cfg()).holds);
    }

    #[test]
    fn inverses() {
        let ex = paper_example("ex-neg-proj").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        assert_eq!(b.circle_inverse(0), Ok(0));
        assert!(closed_form_inverse_matches(&f, &b));
        let g = zoo("dihedral:8");
        let id = GroupMap::identity(&g);
        let f = RegularFamily::new(&g, &id, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        assert!(g.elements().all(|x| b.circle_inverse(x) == Ok(g.inv(x))));
    }

    #[test]
    fn axioms_on_examples() {
        let g = zoo("dihedral:8");
        let triv = SkewBrace::trivial(&g);
        let r = triv.verify(&cfg());
        assert!(r.circle_is_group && r.skew_brace.holds && r.bi_skew_brace.holds);

        let id = GroupMap::identity(&g);
        let f = RegularFamily::new(&g, &id, Sign::Minus).unwrap();
        let r = circle_from_family(&f).unwrap().verify(&cfg());
        assert!(r.skew_brace.holds && r.bi_skew_brace.holds);

        let ex = paper_example("ex-neg-proj").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Minus).unwrap();
        let b = circle_from_family(&f).unwrap();
        assert!(b.verify_skew_brace(&cfg()).holds && b.verify_bi_skew(&cfg()).holds);
        assert!(psi_respects_circle(&b, &ex.psi, &cfg()).unwrap().holds);
        assert!(nu_is_homomorphism(&f, &b, &cfg()).holds);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let g = zoo("dihedral:8");
        let id = GroupMap::identity(&g);
        let f = RegularFamily::new(&g, &id, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let n = g.order();
        let mut table: Vec<usize> = (0..n * n).map(|gh| b.circle(gh / n, gh % n)).collect();
        table.swap(5 * n + 2, 5 * n + 3);
        let bad = SkewBrace::from_tables(Cow::Borrowed(&g), table).unwrap();
        assert!(!bad.circle_is_group());
        let v = bad.verify_left_brace_axiom(&cfg());
        assert!(!v.holds && v.counterexample.is_some());
        assert!(!bad.verify_skew_brace(&cfg()).holds);
        assert!(!bad.verify_bi_skew(&cfg()).holds);
        assert!(bad.circle_group().is_err());
    }

    #[test]
    fn opposite_brace() {
        let g = zoo("dihedral:8");
        let triv = SkewBrace::trivial(&g);
        let op = triv.opposite();
        assert_eq!(*op.dot(), g.reversed());
        assert!(op.verify_skew_brace(&cfg()).holds);
        assert!(op.opposite().same_tables(&triv));
        let z6 = zoo("cyclic:6");
        let t6 = SkewBrace::trivial(&z6);
        assert!(t6.opposite().same_tables(&t6));
    }

    #[test]
    fn export_text_has_two_tables() {
        let z2 = zoo("cyclic:2");
        assert_eq!(SkewBrace::trivial(&z2).to_export_text(), "order 2\n0 1\n1 0\n\norder 2\n0 1\n1 0\n");
    }

    #[test]
    fn class_four_example_is_skew_but_not_bi_skew() {
        let ex = paper_example("ex-pos-class4").unwrap();
        let f = RegularFamily::new(&ex.group, &ex.psi, Sign::Plus).unwrap();
        let b = circle_from_family(&f).unwrap();
        let r = b.verify(&cfg());
        assert!(r.skew_brace.holds && r.skew_brace.is_sampled());
        assert!(!r.bi_skew_brace.holds);
    }
}
