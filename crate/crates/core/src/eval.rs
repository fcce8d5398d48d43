//! Reference evaluation.
//!
//! [`evaluate`] is a plain bottom-up pass. [`evaluate_counting`] walks the
//! circuit top-down with short-circuiting, visiting children in list order,
//! and charges the ledger once for each distinct variable it reads.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::ledger::{ChargeDetail, QueryLedger};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment does not cover variable `{0}`")]
    MissingVariable(String),
    #[error("expected {expected} bits, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// Variable name to bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `bits` to the circuit's inputs in declared order.
    pub fn from_bits(c: &Circuit, bits: &[bool]) -> Result<Self, EvalError> {
        if bits.len() != c.num_inputs() {
            return Err(EvalError::WrongLength { expected: c.num_inputs(), got: bits.len() });
        }
        Ok(Assignment(c.inputs().iter().cloned().zip(bits.iter().copied()).collect()))
    }

    pub fn set(&mut self, var: impl Into<String>, value: bool) {
        self.0.insert(var.into(), value);
    }

    pub fn get(&self, var: &str) -> Option<bool> {
        self.0.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Values of the circuit's inputs in declared order.
    pub fn bits_for(&self, c: &Circuit) -> Result<Vec<bool>, EvalError> {
        c.inputs()
            .iter()
            .map(|v| self.get(v).ok_or_else(|| EvalError::MissingVariable(v.clone())))
            .collect()
    }
}

impl FromIterator<(String, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (String, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

pub fn evaluate(c: &Circuit, x: &Assignment) -> Result<bool, EvalError> {
    Ok(c.eval(&x.bits_for(c)?))
}

impl Circuit {
    /// Evaluates on `bits` given in declared input order.
    ///
    /// Panics if `bits.len()` differs from the input count.
    pub fn eval(&self, bits: &[bool]) -> bool {
        assert_eq!(bits.len(), self.num_inputs(), "assignment length");
        let mut val = vec![false; self.len()];
        for (i, g) in self.gates().iter().enumerate() {
            val[i] = match g.kind {
                GateKind::Input(v) => bits[v],
                GateKind::Const(b) => b,
                GateKind::Not => !val[g.children[0].index()],
                GateKind::And => g.children.iter().all(|c| val[c.index()]),
                GateKind::Or => g.children.iter().any(|c| val[c.index()]),
            };
        }
        val[self.output().index()]
    }

    /// Bit-parallel evaluation: lane `k` of every word is one assignment.
    pub fn eval_words(&self, words: &[u64]) -> u64 {
        assert_eq!(words.len(), self.num_inputs(), "assignment length");
        let mut val = vec![0u64; self.len()];
        for (i, g) in self.gates().iter().enumerate() {
            val[i] = match g.kind {
                GateKind::Input(v) => words[v],
                GateKind::Const(b) => {
                    if b {
                        u64::MAX
                    } else {
                        0
                    }
                }
                GateKind::Not => !val[g.children[0].index()],
                GateKind::And => g.children.iter().fold(u64::MAX, |acc, c| acc & val[c.index()]),
                GateKind::Or => g.children.iter().fold(0, |acc, c| acc | val[c.index()]),
            };
        }
        val[self.output().index()]
    }

    /// Full truth table for `n <= 30`, packed 64 assignments per word.
    /// Assignment index `a` sets input `v` to bit `v` of `a`.
    pub fn truth_table(&self) -> Vec<u64> {
        let n = self.num_inputs();
        assert!(n <= 30, "truth table too large");
        let total = 1usize << n;
        let words = total.div_ceil(64);
        let mut table = Vec::with_capacity(words);
        let mut inputs = vec![0u64; n];
        for w in 0..words {
            for (v, slot) in inputs.iter_mut().enumerate() {
                *slot = if v < 6 {
                    LANE_PATTERNS[v]
                } else if (w >> (v - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
            }
            let mut out = self.eval_words(&inputs);
            if total < 64 {
                out &= (1u64 << total) - 1;
            }
            table.push(out);
        }
        table
    }
}

const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Short-circuit evaluation that charges one query per distinct variable
/// read. The result always equals [`evaluate`]; the charge never exceeds
/// the input count.
pub fn evaluate_counting(c: &Circuit, x: &Assignment, ledger: &mut QueryLedger) -> Result<bool, EvalError> {
    let bits = x.bits_for(c)?;
    let mut memo: Vec<Option<bool>> = vec![None; c.len()];
    let mut read = vec![false; c.num_inputs()];
    let mut order = Vec::new();

    // frame: (node, next child index)
    let mut stack: Vec<(usize, usize)> = vec![(c.output().index(), 0)];
    let mut last: bool = false;
    while let Some(&(node, next)) = stack.last() {
        if let Some(v) = memo[node] {
            last = v;
            stack.pop();
            continue;
        }
        let g = &c.gates()[node];
        let done = match g.kind {
            GateKind::Input(v) => {
                if !read[v] {
                    read[v] = true;
                    order.push(c.inputs()[v].clone());
                }
                Some(bits[v])
            }
            GateKind::Const(b) => Some(b),
            GateKind::Not if next == 0 => None,
            GateKind::Not => Some(!last),
            GateKind::And | GateKind::Or => {
                let stop = g.kind == GateKind::Or;
                if next > 0 && last == stop {
                    Some(stop)
                } else if next == g.children.len() {
                    Some(!stop)
                } else {
                    None
                }
            }
        };
        match done {
            Some(v) => {
                memo[node] = Some(v);
                last = v;
                stack.pop();
            }
            None => {
                stack.last_mut().expect("non-empty").1 += 1;
                stack.push((g.children[next].index(), 0));
            }
        }
    }
    ledger.charge("evaluate", ChargeDetail::Read { vars: order.clone() }, order.len() as u64);
    Ok(last)
}
