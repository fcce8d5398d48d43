//! PARITY and PARITY composed with AND.

use serde::Serialize;

use super::{and_n, log2_exact, Family, GenError, InstanceRecord};
use crate::circuit::{Builder, NodeId};
use crate::transform::compose;

/// Builds a fresh tree for parity (or its complement) of inputs `lo..hi`.
fn parity_tree(b: &mut Builder, lo: usize, hi: usize, negated: bool) -> NodeId {
    if hi - lo == 1 {
        return b.literal(lo, !negated);
    }
    let mid = (lo + hi) / 2;
    // x ⊕ y = (x ∧ ¬y) ∨ (¬x ∧ y);  ¬(x ⊕ y) = (x ∧ y) ∨ (¬x ∧ ¬y)
    let l1 = parity_tree(b, lo, mid, false);
    let r1 = parity_tree(b, mid, hi, !negated);
    let left = b.and(vec![l1, r1]);
    let l2 = parity_tree(b, lo, mid, true);
    let r2 = parity_tree(b, mid, hi, negated);
    let right = b.and(vec![l2, r2]);
    b.or(vec![left, right])
}

/// PARITY_n for `n = 2^k`, `k >= 1`: formula size `n²`, `n² - 1` gates.
pub fn gen_parity(n: usize) -> Result<InstanceRecord, GenError> {
    let k = log2_exact("n", n)?;
    if k == 0 {
        return Err(GenError::NotPowerOfTwo { what: "n (at least 2)", got: n });
    }
    let mut b = Builder::new((0..n).map(|i| format!("x{i}")).collect());
    let out = parity_tree(&mut b, 0, n, false);
    let c = b.finish(format!("parity_{n}"), out)?;
    Ok(InstanceRecord::new(c, Family::Parity, &[("n", n as u64)], "n", n as f64))
}

/// PARITY_m composed with AND_{n/m}.
pub fn gen_parity_and(n: usize, m: usize) -> Result<InstanceRecord, GenError> {
    let f = gen_parity(m)?;
    if n == 0 || !n.is_multiple_of(m) {
        return Err(GenError::BadDivisibility { n, m });
    }
    let h = compose(&f.circuit, &and_n(n / m))?;
    let c = h.circuit.with_name(format!("parity_and_{n}_{m}"))?;
    let lb = ((n * m) as f64).sqrt();
    Ok(InstanceRecord::new(c, Family::ParityAnd, &[("n", n as u64), ("m", m as u64)], "sqrt(n*m)", lb))
}

/// Parameter choices for the three regimes of the tightness construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum ParityPreset {
    /// `m` = largest power of two with `m <= S/n` and `m | n`.
    SizeLimited { n: usize, size: u64 },
    /// `m` = largest power of two with `m <= √G` and `m | n`.
    GateLimited { n: usize, gates: u64 },
    /// Parity of a constant fraction of the inputs: `m` = largest power of
    /// two with `m <= fraction·n` and `m | n`.
    InputLimited { n: usize, fraction: f64 },
}

impl ParityPreset {
    /// The parity arity `m` the preset selects.
    pub fn arity(&self) -> Result<usize, GenError> {
        let (n, cap) = match *self {
            ParityPreset::SizeLimited { n, size } => (n, if n == 0 { 0 } else { size / n as u64 }),
            ParityPreset::GateLimited { n, gates } => (n, (gates as f64).sqrt().floor() as u64),
            ParityPreset::InputLimited { n, fraction } => {
                if !(fraction > 0.0 && fraction <= 1.0) {
                    return Err(GenError::BadParams(format!("fraction {fraction} not in (0, 1]")));
                }
                (n, (fraction * n as f64).floor() as u64)
            }
        };
        let mut m = 2usize;
        let mut best = None;
        while (m as u64) <= cap && m <= n {
            if n % m == 0 {
                best = Some(m);
            }
            m *= 2;
        }
        best.ok_or_else(|| GenError::BadParams(format!("no power of two m >= 2 with m | {n} fits the preset")))
    }
}

pub fn parity_and_preset(preset: ParityPreset) -> Result<InstanceRecord, GenError> {
    let n = match preset {
        ParityPreset::SizeLimited { n, .. } | ParityPreset::GateLimited { n, .. } | ParityPreset::InputLimited { n, .. } => n,
    };
    gen_parity_and(n, preset.arity()?)
}
