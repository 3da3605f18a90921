//! Skew braces, regular subgroups of the holomorph and set-theoretic
//! Yang-Baxter solutions built from a finite group `G` and an endomorphism
//! `ψ` of `G`.
//!
//! For `ε = ±1` the family `N = {ν(g)}`, `ν(g)(h) = g·ψ(g^ε)·h·ψ(g^-ε)`, is
//! regular. Whether it is a subgroup, whether `λ(G)` normalizes it, and
//! whether `g∘h = ν(g)(h)` gives a (bi-)skew brace are all decided by where
//! certain commutator subgroups land under `ψ`; [`morphisms::classify`]
//! computes those conditions and the other modules check them by brute force.

pub mod braces;
pub mod check;
pub mod error;
pub mod group;
pub mod hopf_galois;
pub mod morphisms;
pub mod regular;
pub mod sign;
pub mod ybe;
pub mod zoo;

pub use braces::SkewBrace;
pub use check::{CheckConfig, Coverage, Verdict};
pub use error::{Error, Result};
pub use group::{Group, GroupMap, Perm, Subgroup};
pub use morphisms::{classify, EndoFlags, EndoProfile};
pub use regular::RegularFamily;
pub use sign::Sign;
pub use ybe::{Variant, YBSolution};
pub use zoo::ZooSpec;
