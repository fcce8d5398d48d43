//! Query-complexity bound calculators.

use serde::Serialize;

use super::AnalysisError;
use crate::metrics::Metrics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Term {
    #[serde(rename = "n")]
    N,
    #[serde(rename = "sqrt(S)")]
    SqrtS,
    #[serde(rename = "n^(1/2) G^(1/4)")]
    NG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `S >= n²` and `G >= n²`.
    #[serde(rename = "n-limited")]
    InputLimited,
    /// `S <= n·√G`.
    SizeLimited,
    /// `S >= n·√G` and `G <= n²`.
    GateLimited,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    #[serde(rename = "S")]
    pub size: f64,
    #[serde(rename = "G")]
    pub gates: usize,
    pub term_n: f64,
    pub term_sqrt_s: f64,
    pub term_ng: f64,
    pub upper: f64,
    pub active_term: Term,
    pub regime: Regime,
    pub note: &'static str,
}

/// `min{n, √S, n^(1/2) G^(1/4)}` with the term that attains it (the first
/// one on ties) and the regime of `(n, S, G)`.
pub fn upper_bound(m: &Metrics) -> BoundReport {
    bound_for(m.n, m.size.to_f64(), m.gates)
}

pub fn bound_for(n: usize, size: f64, gates: usize) -> BoundReport {
    let nf = n as f64;
    let g = gates as f64;
    let terms = [(Term::N, nf), (Term::SqrtS, size.sqrt()), (Term::NG, nf.sqrt() * g.sqrt().sqrt())];
    let (active_term, upper) = terms.iter().copied().fold(terms[0], |best, t| if t.1 < best.1 { t } else { best });
    let n2 = nf * nf;
    let regime = if size >= n2 && g >= n2 {
        Regime::InputLimited
    } else if size <= nf * g.sqrt() {
        Regime::SizeLimited
    } else {
        Regime::GateLimited
    };
    BoundReport {
        n,
        size,
        gates,
        term_n: terms[0].1,
        term_sqrt_s: terms[1].1,
        term_ng: terms[2].1,
        upper,
        active_term,
        regime,
        note: crate::gen::LB_NOTE,
    }
}

/// Gates any formula for a function with `n` inputs and query complexity
/// `q` needs: `q⁴ / n²`.
pub fn gate_lower_bound(n: usize, q: f64) -> Result<f64, AnalysisError> {
    let nf = n as f64;
    if q.is_nan() || q < 0.0 || q > nf {
        return Err(AnalysisError::QExceedsN { q, n });
    }
    Ok(q.powi(4) / (nf * nf))
}
