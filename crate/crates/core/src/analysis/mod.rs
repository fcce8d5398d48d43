//! Bound calculators, the certificate-complexity oracle and the pruning
//! ledger audit. Bounds are asymptotic with constants suppressed.

pub mod audit;
pub mod bounds;
pub mod certificate;

use thiserror::Error;

pub use audit::{closed_form_bound, ledger_audit, search_round_bound, AuditCheck, AuditReport};
pub use bounds::{bound_for, gate_lower_bound, upper_bound, BoundReport, Regime, Term};
pub use certificate::{certificate_complexity, certificate_complexity_by_subsets, forced_value, Certificate, CertificateReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("query complexity {q} exceeds the input count {n}")]
    QExceedsN { q: f64, n: usize },
    #[error("{n} inputs is too many for exhaustive search (at most {max})")]
    TooLarge { n: usize, max: usize },
}
