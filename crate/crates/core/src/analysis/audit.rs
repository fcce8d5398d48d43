//! Re-derives the query bound of a pruning run from its own report.
//!
//! Each search round over at most `D = 2n` literals with `m_j` marked costs
//! at most `⌈α·√(D/m_j)⌉`. Marked counts strictly decrease, so the `r`-th
//! last one is at least `r`, which gives `Σ_j √(D/m_j) <= 2·√(D·k)` for
//! `k` successful rounds. With `k <= τ` and one cut-off round per pass this
//! bounds the whole run in closed form.

use serde::Serialize;

use crate::metrics::Metrics;
use crate::prune::search::{ceil_scaled_sqrt, exhausted_charge};
use crate::prune::{HaltReason, PassReport, PruneReport, SearchConfig};

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub passed: bool,
    /// Name of the first violated check.
    pub failure: Option<String>,
    pub checks: Vec<AuditCheck>,
}

/// `Σ_j ⌈α·√(domain/m_j)⌉`.
pub fn search_round_bound(domain: usize, m_sequence: &[usize], alpha: f64) -> u64 {
    m_sequence.iter().map(|&m| ceil_scaled_sqrt(alpha, domain as u64, m as u64)).sum()
}

/// Closed-form bound on the charge of a whole run:
/// `2·(2α√(D(τ+1)) + τ + ⌈c·α·√D⌉)` with `D = 2n`.
pub fn closed_form_bound(n: usize, tau: usize, cfg: &SearchConfig) -> f64 {
    let d = (2 * n) as f64;
    let per_pass = 2.0 * cfg.alpha * (d * (tau + 1) as f64).sqrt() + tau as f64 + exhausted_charge(cfg, 2 * n) as f64;
    2.0 * per_pass
}

struct Checks(Vec<AuditCheck>);

impl Checks {
    fn le(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let ok = value <= bound + TOL * bound.abs().max(1.0);
        self.0.push(AuditCheck { name: name.into(), value, bound, ok });
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        let v = if ok { 0.0 } else { 1.0 };
        self.0.push(AuditCheck { name: name.into(), value: v, bound: 0.0, ok });
    }
}

fn audit_pass(c: &mut Checks, p: &PassReport, domain: usize, tau: usize, cfg: &SearchConfig) {
    let kind = p.kind.label();
    let m = &p.m_sequence;
    c.holds(format!("{kind}: m_sequence strictly decreasing"), m.windows(2).all(|w| w[0] > w[1]));
    c.holds(
        format!("{kind}: rounds = successes + exhausted"),
        p.rounds == m.len() + usize::from(p.halt == HaltReason::Exhausted),
    );
    c.le(format!("{kind}: rounds <= tau + 1"), p.rounds as f64, (tau + 1) as f64);
    let k = m.len();
    c.holds(format!("{kind}: m_(k+1-r) >= r"), (1..=k).all(|r| m[k - r] >= r));
    let d = domain as f64;
    let sum: f64 = m.iter().map(|&mj| (d / mj as f64).sqrt()).sum();
    c.le(format!("{kind}: sum sqrt(D/m_j) <= 2 sqrt(D k)"), sum, 2.0 * (d * k as f64).sqrt());
    let bound = search_round_bound(domain, m, cfg.alpha) + exhausted_charge(cfg, domain);
    c.le(format!("{kind}: charged <= per-round bound"), p.charged as f64, bound as f64);
}

/// Checks a pruning report against the bound chain. `metrics` describes
/// the formula that was pruned.
pub fn ledger_audit(report: &PruneReport, metrics: &Metrics, cfg: &SearchConfig) -> AuditReport {
    let mut c = Checks(Vec::new());
    let domain = 2 * metrics.n;
    c.holds("report matches formula", report.n == metrics.n && report.gates == metrics.gates);
    c.holds("tau = ceil(sqrt(G))", report.tau == crate::prune::threshold(metrics.gates));
    c.holds("ledger total equals sum of entries", report.ledger.is_consistent());
    let pass_total: u64 = report.passes.iter().map(|p| p.charged).sum();
    c.holds("ledger total equals sum of passes", pass_total == report.ledger.charged());
    for p in &report.passes {
        c.holds(format!("{}: pass charge matches ledger label", p.kind.label()), report.ledger.charged_for(p.kind.label()) == p.charged);
        audit_pass(&mut c, p, domain, report.tau, cfg);
    }
    c.le("total <= closed form", report.ledger.charged() as f64, closed_form_bound(metrics.n, report.tau, cfg));
    let failure = c.0.iter().find(|k| !k.ok).map(|k| k.name.clone());
    AuditReport { passed: failure.is_none(), failure, checks: c.0 }
}
