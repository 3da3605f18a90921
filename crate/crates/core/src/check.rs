//! Exhaustive-or-sampled evaluation of universally quantified predicates.
//!
//! Every axiom and oracle in the crate is a statement "for all pairs" or "for
//! all triples" of element ids. Small groups are scanned completely; above
//! [`CheckConfig::exhaustive_cap`] a fixed number of tuples is drawn from a
//! seeded ChaCha stream, and the resulting [`Verdict`] says so. Parallel scans
//! always report the *first* counterexample in scan order, so results do not
//! depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0xB1A5E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    /// Largest group order scanned exhaustively.
    pub exhaustive_cap: usize,
    /// Number of tuples drawn when above the cap.
    pub samples: u64,
    pub seed: u64,
}

impl CheckConfig {
    pub const fn new(exhaustive_cap: usize, samples: u64, seed: u64) -> Self {
        CheckConfig { exhaustive_cap, samples, seed }
    }

    /// Defaults for the regular-subgroup oracles and brace axioms.
    pub const fn oracle_default() -> Self {
        CheckConfig::new(64, 1_000_000, DEFAULT_SEED)
    }

    /// Defaults for Yang-Baxter braid checks.
    pub const fn ybe_default() -> Self {
        CheckConfig::new(16, 100_000, DEFAULT_SEED)
    }

    /// Same config with a different cap, keeping samples and seed.
    pub fn with_cap(self, exhaustive_cap: usize) -> Self {
        CheckConfig { exhaustive_cap, ..self }
    }

    fn exhaustive(&self, order: usize, total: u128) -> bool {
        order <= self.exhaustive_cap || total <= u128::from(self.samples)
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::oracle_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive { checked: u64 },
    Sampled { samples: u64, seed: u64 },
}

/// Outcome of a universally quantified check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub coverage: Coverage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
}

impl Verdict {
    /// A verdict established without any quantification (e.g. a precondition
    /// that already failed).
    pub fn trivially(holds: bool) -> Self {
        Verdict { holds, coverage: Coverage::Exhaustive { checked: 0 }, counterexample: None }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.coverage, Coverage::Sampled { .. })
    }

    /// Conjunction; the first failing verdict wins, coverage is the weaker one.
    pub fn and(self, other: Verdict) -> Verdict {
        if !self.holds {
            return self;
        }
        if !other.holds {
            return other;
        }
        let coverage = match (self.coverage, other.coverage) {
            (Coverage::Exhaustive { checked: a }, Coverage::Exhaustive { checked: b }) => {
                Coverage::Exhaustive { checked: a + b }
            }
            (s @ Coverage::Sampled { .. }, _) | (_, s @ Coverage::Sampled { .. }) => s,
        };
        Verdict { holds: true, coverage, counterexample: None }
    }
}

const SAMPLE_BATCH: u64 = 1 << 16;

/// Checks `pred(a, b)` for `a < rows`, `b < cols`. `order` is the size of the
/// group the check is about and drives the exhaustive/sampled decision.
pub fn check_pairs<F>(order: usize, rows: usize, cols: usize, cfg: &CheckConfig, pred: F) -> Verdict
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let total = rows as u128 * cols as u128;
    if cfg.exhaustive(order, total) {
        let bad = (0..rows).into_par_iter().find_map_first(|a| (0..cols).find(|&b| !pred(a, b)).map(|b| vec![a, b]));
        return Verdict {
            holds: bad.is_none(),
            coverage: Coverage::Exhaustive { checked: total as u64 },
            counterexample: bad,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    sampled(
        cfg,
        |n| (0..n).map(|_| [rng.gen_range(0..rows), rng.gen_range(0..cols), 0]).collect(),
        |t| pred(t[0], t[1]),
        2,
    )
}

/// Checks `pred(a, b, c)` over all triples of `0..n`.
pub fn check_triples<F>(n: usize, cfg: &CheckConfig, pred: F) -> Verdict
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    let total = (n as u128).pow(3);
    if cfg.exhaustive(n, total) {
        let bad = (0..n * n).into_par_iter().find_map_first(|ab| {
            let (a, b) = (ab / n, ab % n);
            (0..n).find(|&c| !pred(a, b, c)).map(|c| vec![a, b, c])
        });
        return Verdict {
            holds: bad.is_none(),
            coverage: Coverage::Exhaustive { checked: total as u64 },
            counterexample: bad,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    sampled(
        cfg,
        |m| (0..m).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect(),
        |t| pred(t[0], t[1], t[2]),
        3,
    )
}

fn sampled<G, P>(cfg: &CheckConfig, mut draw: G, pred: P, arity: usize) -> Verdict
where
    G: FnMut(usize) -> Vec<[usize; 3]>,
    P: Fn(&[usize; 3]) -> bool + Sync,
{
    let mut remaining = cfg.samples;
    while remaining > 0 {
        let batch = remaining.min(SAMPLE_BATCH);
        remaining -= batch;
        let tuples = draw(batch as usize);
        if let Some(bad) = tuples.par_iter().find_first(|t| !pred(t)) {
            return Verdict {
                holds: false,
                coverage: Coverage::Sampled { samples: cfg.samples, seed: cfg.seed },
                counterexample: Some(bad[..arity].to_vec()),
            };
        }
    }
    Verdict { holds: true, coverage: Coverage::Sampled { samples: cfg.samples, seed: cfg.seed }, counterexample: None }
}
