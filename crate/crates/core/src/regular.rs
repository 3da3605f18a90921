//! The regular families `N = {ν(g) : g ∈ G}` with
//! `ν(g) = λ(g)·ι(ψ(g^ε))`, i.e. `ν(g)(h) = g·ψ(g^ε)·h·ψ(g^-ε)`.
//!
//! `η ↦ η(1)` is a bijection `N → G`, so a permutation `π` lies in `N`
//! exactly when `π = ν(π(1))`. All oracles below use that test.

use std::collections::HashSet;

use serde::Serialize;

use crate::check::{check_pairs, CheckConfig, Verdict};
use crate::error::{Error, Result};
use crate::group::{perm_closure, Group, GroupMap, Perm, Subgroup};
use crate::morphisms::classify;
use crate::sign::Sign;

#[derive(Debug, Clone)]
pub struct RegularFamily<'a> {
    group: &'a Group,
    psi: &'a GroupMap,
    epsilon: Sign,
    /// `ψ(g^ε)`
    twist: Vec<u32>,
    /// `g·ψ(g^ε)`
    left: Vec<u32>,
}

impl<'a> RegularFamily<'a> {
    pub fn new(group: &'a Group, psi: &'a GroupMap, epsilon: Sign) -> Result<Self> {
        psi.ensure_endomorphism(group)?;
        let twist: Vec<u32> = group
            .elements()
            .map(|g| {
                let e = match epsilon {
                    Sign::Plus => g,
                    Sign::Minus => group.inv(g),
                };
                psi.apply(e) as u32
            })
            .collect();
        let left = group.elements().map(|g| group.mul(g, twist[g] as usize) as u32).collect();
        Ok(RegularFamily { group, psi, epsilon, twist, left })
    }

    pub fn group(&self) -> &'a Group {
        self.group
    }

    pub fn psi(&self) -> &'a GroupMap {
        self.psi
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `ψ(g^ε)`
    #[inline]
    pub fn twist(&self, g: usize) -> usize {
        self.twist[g] as usize
    }

    /// `ν(g)(h) = g·ψ(g^ε)·h·ψ(g^-ε)`, which is also `g∘h`.
    #[inline]
    pub fn apply_nu(&self, g: usize, h: usize) -> usize {
        let c = self.twist[g] as usize;
        self.group.mul(self.group.mul(self.left[g] as usize, h), self.group.inv(c))
    }

    /// `ν(g)⁻¹(h) = (g·ψ(g^ε))⁻¹·h·ψ(g^ε)`.
    #[inline]
    pub fn apply_nu_inverse(&self, g: usize, h: usize) -> usize {
        let c = self.twist[g] as usize;
        self.group.mul(self.group.mul(self.group.inv(self.left[g] as usize), h), c)
    }

    pub fn nu(&self, g: usize) -> Result<Perm> {
        self.group.check_id(g)?;
        Perm::from_images((0..self.order()).map(|h| self.apply_nu(g, h)).collect())
    }

    /// Whether the map `h ↦ f(h)` equals `ν(f(1))`, i.e. lies in `N`.
    fn is_member_fn(&self, f: impl Fn(usize) -> usize) -> bool {
        let k = f(0);
        (0..self.order()).all(|h| f(h) == self.apply_nu(k, h))
    }

    pub fn contains(&self, perm: &Perm) -> bool {
        perm.degree() == self.order() && self.is_member_fn(|h| perm.apply(h))
    }

    /// `ν(g)·ν(h)⁻¹ ∈ N` for all `g, h`.
    pub fn oracle_is_subgroup(&self, cfg: &CheckConfig) -> Verdict {
        let n = self.order();
        check_pairs(n, n, n, cfg, |g, h| self.is_member_fn(|x| self.apply_nu(g, self.apply_nu_inverse(h, x))))
    }

    /// `λ(h)·ν(g)·λ(h)⁻¹ ∈ N` for all `g, h`.
    pub fn oracle_normalized_by_lambda(&self, cfg: &CheckConfig) -> Verdict {
        let n = self.order();
        let grp = self.group;
        check_pairs(n, n, n, cfg, |g, h| {
            let hi = grp.inv(h);
            self.is_member_fn(|x| grp.mul(h, self.apply_nu(g, grp.mul(hi, x))))
        })
    }

    /// `ν(g)·λ(h)·ν(g)⁻¹ ∈ λ(G)` for all `g, h`.
    pub fn oracle_normalizes_lambda(&self, cfg: &CheckConfig) -> Verdict {
        let n = self.order();
        let grp = self.group;
        check_pairs(n, n, n, cfg, |g, h| {
            let conj = |x: usize| self.apply_nu(g, grp.mul(h, self.apply_nu_inverse(g, x)));
            let k = conj(0);
            (0..n).all(|x| conj(x) == grp.mul(k, x))
        })
    }

    pub fn oracles(&self, cfg: &CheckConfig) -> OracleReport {
        OracleReport {
            is_subgroup: self.oracle_is_subgroup(cfg),
            normalized_by_lambda: self.oracle_normalized_by_lambda(cfg),
            normalizes_lambda: self.oracle_normalizes_lambda(cfg),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub is_subgroup: Verdict,
    pub normalized_by_lambda: Verdict,
    pub normalizes_lambda: Verdict,
}

/// Fails unless `ψ` satisfies the condition making its `ε`-family a subgroup:
/// `ψ([[G,ψ],G]) ≤ Z` for `ε = -1`, `ψ([ψ(G),G]) ≤ Z` for `ε = +1`.
pub fn ensure_family_condition(group: &Group, psi: &GroupMap, epsilon: Sign) -> Result<()> {
    let flags = classify(group, psi)?.flags;
    match epsilon {
        Sign::Minus if !flags.thm1_d => Err(Error::Hypothesis("ψ([[G,ψ],G]) is not central".into())),
        Sign::Plus if !flags.thm2_c => Err(Error::Hypothesis("ψ([ψ(G),G]) is not central".into())),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SameFamily {
    /// `ψ1(g)·ψ2(g⁻¹) ∈ Z(G)` for every `g`.
    pub criterion: bool,
    /// `ν1(g) = ν2(g)` as permutations for every `g`.
    pub elementwise: bool,
}

/// Whether two endomorphisms give the same family for the same `ε`. Both
/// must satisfy that `ε`'s subgroup condition.
pub fn same_family(group: &Group, psi1: &GroupMap, psi2: &GroupMap, epsilon: Sign) -> Result<SameFamily> {
    ensure_family_condition(group, psi1, epsilon)?;
    ensure_family_condition(group, psi2, epsilon)?;
    let center = group.center();
    let criterion = group.elements().all(|g| center.contains(group.mul(psi1.apply(g), psi2.apply(group.inv(g)))));
    let (f1, f2) = (RegularFamily::new(group, psi1, epsilon)?, RegularFamily::new(group, psi2, epsilon)?);
    let elementwise = group.elements().all(|g| group.elements().all(|h| f1.apply_nu(g, h) == f2.apply_nu(g, h)));
    Ok(SameFamily { criterion, elementwise })
}

/// Permutation closures are only attempted up to this degree.
pub const FITTING_CLOSURE_CAP: usize = 256;

/// `G = J ⋊ I` with `J = ker ψⁿ`, `I = ψⁿ(G)` for the least stable `n ≥ 1`.
#[derive(Debug, Clone)]
pub struct Fitting {
    pub n: usize,
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub checks: FittingChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FittingChecks {
    pub kernel_normal: bool,
    pub trivial_intersection: bool,
    pub orders_multiply: bool,
    pub nilpotent_on_kernel: bool,
    pub bijective_on_image: bool,
}

impl FittingChecks {
    pub fn all(&self) -> bool {
        self.kernel_normal
            && self.trivial_intersection
            && self.orders_multiply
            && self.nilpotent_on_kernel
            && self.bijective_on_image
    }
}

pub fn fitting_decomposition(group: &Group, psi: &GroupMap) -> Result<Fitting> {
    psi.ensure_endomorphism(group)?;
    let mut power = psi.clone();
    let mut n = 1;
    let (kernel, image) = loop {
        let next = psi.compose(&power)?;
        let (k, i) = (power.kernel(group)?, power.image(group)?);
        if k == next.kernel(group)? && i == next.image(group)? {
            break (k, i);
        }
        power = next;
        n += 1;
    };
    let restricted_images: HashSet<usize> = image.elements().iter().map(|&x| psi.apply(x)).collect();
    let checks = FittingChecks {
        kernel_normal: group.is_normal(&kernel)?,
        trivial_intersection: kernel.intersection_order(&image) == 1,
        orders_multiply: kernel.order() * image.order() == group.order(),
        nilpotent_on_kernel: kernel.elements().iter().all(|&j| power.apply(j) == 0),
        bijective_on_image: restricted_images.len() == image.order()
            && restricted_images.iter().all(|&x| image.contains(x)),
    };
    Ok(Fitting { n, kernel, image, checks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FittingFamilyChecks {
    /// `⟨ν(J), ν(I)⟩ = N`
    pub generates_family: bool,
    /// `ν(J) ◁ ⟨ν(J), ν(I)⟩`
    pub kernel_part_normal: bool,
}

/// Checks the semidirect decomposition of `N` itself by closing `ν(J) ∪ ν(I)`
/// as permutations. `None` above [`FITTING_CLOSURE_CAP`].
pub fn fitting_family_checks(family: &RegularFamily<'_>, fit: &Fitting) -> Result<Option<FittingFamilyChecks>> {
    let n = family.order();
    if n > FITTING_CLOSURE_CAP {
        return Ok(None);
    }
    let nu_kernel: Vec<Perm> = fit.kernel.elements().iter().map(|&j| family.nu(j)).collect::<Result<_>>()?;
    let nu_image: Vec<Perm> = fit.image.elements().iter().map(|&i| family.nu(i)).collect::<Result<_>>()?;
    let gens: Vec<Perm> = nu_kernel.iter().chain(&nu_image).cloned().collect();
    let closure = perm_closure(n, &gens)?;
    let generates_family = closure.len() == n && closure.iter().all(|p| family.contains(p));
    let kernel_closure: HashSet<Perm> = perm_closure(n, &nu_kernel)?.into_iter().collect();
    let kernel_part_normal = kernel_closure.len() == fit.kernel.order()
        && gens.iter().all(|m| {
            let mi = m.inverse();
            kernel_closure.iter().all(|x| {
                let c = m.compose(x).and_then(|mx| mx.compose(&mi)).expect("same degree");
                kernel_closure.contains(&c)
            })
        });
    Ok(Some(FittingFamilyChecks { generates_family, kernel_part_normal }))
}
