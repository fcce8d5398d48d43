//! Classical stand-in for oracle query counting.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChargeDetail {
    /// Variables read directly, in read order.
    Read { vars: Vec<String> },
    /// One simulated search round over `domain` candidates, `marked` of
    /// which satisfy the predicate.
    Search { domain: usize, marked: usize, found: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub label: String,
    pub detail: ChargeDetail,
    pub cost: u64,
}

/// Running query count. `charged` is always the sum of the logged costs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    charged: u64,
    log: Vec<LedgerEntry>,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, label: impl Into<String>, detail: ChargeDetail, cost: u64) {
        self.charged += cost;
        self.log.push(LedgerEntry { label: label.into(), detail, cost });
    }

    pub fn charged(&self) -> u64 {
        self.charged
    }

    pub fn log(&self) -> &[LedgerEntry] {
        &self.log
    }

    /// Total cost of entries with the given label.
    pub fn charged_for(&self, label: &str) -> u64 {
        self.log.iter().filter(|e| e.label == label).map(|e| e.cost).sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.log.iter().map(|e| e.cost).sum::<u64>() == self.charged
    }
}
