//! Simulated search for a marked item with expected-cost charging.
//!
//! The simulator looks at the true number of marked items `t` to decide
//! the charge: `⌈α·√(N/t)⌉` for a successful round, and the cut-off budget
//! `⌈c·α·√N⌉` when nothing is marked and a real search would never stop.
//! Callers only ever see the returned index, never `t`.

use rand::Rng;
use serde::Serialize;

use crate::ledger::{ChargeDetail, QueryLedger};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Multiplier on every `√(N/t)` charge.
    pub alpha: f64,
    /// A search with nothing marked is cut off after this many times its
    /// expected cost.
    pub budget_factor: f64,
    pub rng_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { alpha: 1.0, budget_factor: 10.0, rng_seed: 0 }
    }
}

impl SearchConfig {
    pub fn is_valid(&self) -> bool {
        self.alpha > 0.0 && self.alpha.is_finite() && self.budget_factor >= 1.0 && self.budget_factor.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { index: usize, marked: usize },
    Exhausted,
}

/// `⌈scale · √(num/den)⌉`. Values within a relative `1e-9` of an integer
/// round to it, so exact ratios are not pushed up by float error.
pub fn ceil_scaled_sqrt(scale: f64, num: u64, den: u64) -> u64 {
    assert!(den > 0);
    let v = scale * (num as f64 / den as f64).sqrt();
    (v - 1e-9 * v.max(1.0)).ceil().max(0.0) as u64
}

/// Cost of one successful round over `domain` items with `marked` marked.
pub fn round_charge(alpha: f64, domain: usize, marked: usize) -> u64 {
    ceil_scaled_sqrt(alpha, domain as u64, marked as u64)
}

/// Cost of a round that finds nothing.
pub fn exhausted_charge(cfg: &SearchConfig, domain: usize) -> u64 {
    ceil_scaled_sqrt(cfg.budget_factor * cfg.alpha, domain as u64, 1)
}

/// Searches `0..domain` for an index satisfying `is_marked`. A found index
/// is uniform among the marked ones.
pub fn search_marked<R: Rng + ?Sized>(
    domain: usize,
    is_marked: impl Fn(usize) -> bool,
    cfg: &SearchConfig,
    rng: &mut R,
    ledger: &mut QueryLedger,
    label: &str,
) -> SearchOutcome {
    assert!(domain >= 1, "search domain must be non-empty");
    let marked: Vec<usize> = (0..domain).filter(|&i| is_marked(i)).collect();
    if marked.is_empty() {
        let cost = exhausted_charge(cfg, domain);
        ledger.charge(label, ChargeDetail::Search { domain, marked: 0, found: None }, cost);
        return SearchOutcome::Exhausted;
    }
    let index = marked[rng.gen_range(0..marked.len())];
    let cost = round_charge(cfg.alpha, domain, marked.len());
    ledger.charge(label, ChargeDetail::Search { domain, marked: marked.len(), found: Some(index) }, cost);
    SearchOutcome::Found { index, marked: marked.len() }
}
