//! Structural measures: input count, formula size, gate count, depth.
//!
//! Formula size `S` counts input leaves with multiplicity. On circuits
//! with gate fanout it is taken over the tree expansion, i.e. every input
//! node contributes the number of distinct output-to-leaf paths reaching
//! it. That count can outgrow any machine word, so it is a [`BigUint`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::circuit::{Circuit, GateKind};

/// Formula size; arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Size(pub BigUint);

impl Size {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl From<u64> for Size {
    fn from(v: u64) -> Self {
        Size(BigUint::from(v))
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Size {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metrics {
    /// Declared input variables.
    pub n: usize,
    /// Formula size: leaf occurrences with multiplicity (constants excluded).
    #[serde(rename = "S")]
    pub size: Size,
    /// AND and OR gates; NOT gates are not counted.
    #[serde(rename = "G")]
    pub gates: usize,
    pub not_gates: usize,
    /// Longest output-to-leaf path counting AND, OR and NOT nodes.
    pub depth: usize,
    /// Number of AND/OR levels with NOTs pushed to the leaves.
    pub alternation_depth: usize,
    pub max_fanin: usize,
    pub max_gate_fanout: usize,
    pub is_formula: bool,
}

impl Metrics {
    pub fn of(c: &Circuit) -> Metrics {
        let fanout = c.fanouts();
        let mut gates = 0;
        let mut not_gates = 0;
        let mut max_fanin = 0;
        let mut max_gate_fanout = 0;
        let mut is_formula = true;
        for (i, g) in c.gates().iter().enumerate() {
            match g.kind {
                GateKind::And | GateKind::Or => gates += 1,
                GateKind::Not => not_gates += 1,
                _ => continue,
            }
            max_fanin = max_fanin.max(g.children.len());
            max_gate_fanout = max_gate_fanout.max(fanout[i]);
            is_formula &= fanout[i] <= 1;
        }
        Metrics {
            n: c.num_inputs(),
            size: formula_size(c),
            gates,
            not_gates,
            depth: depth(c),
            alternation_depth: alternation_depth(c),
            max_fanin,
            max_gate_fanout,
            is_formula,
        }
    }
}

/// Leaf occurrences in the tree expansion of `c`.
pub fn formula_size(c: &Circuit) -> Size {
    match path_counts::<u128>(c) {
        Some(s) => Size(BigUint::from(s)),
        None => Size(path_counts::<BigUint>(c).expect("big arithmetic cannot overflow")),
    }
}

trait Count: Clone + Zero {
    fn one() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
}

impl Count for u128 {
    fn one() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u128::checked_add(*self, *other)
    }
}

impl Count for BigUint {
    fn one() -> Self {
        BigUint::from(1u8)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

fn path_counts<T: Count>(c: &Circuit) -> Option<T> {
    let mut paths = vec![T::zero(); c.len()];
    paths[c.output().index()] = T::one();
    for i in (0..c.len()).rev() {
        if paths[i].is_zero() {
            continue;
        }
        let here = paths[i].clone();
        for child in &c.gates()[i].children {
            let slot = &mut paths[child.index()];
            *slot = slot.checked_add(&here)?;
        }
    }
    let mut total = T::zero();
    for p in &paths[..c.num_inputs()] {
        total = total.checked_add(p)?;
    }
    Some(total)
}

pub fn depth(c: &Circuit) -> usize {
    let mut d = vec![0usize; c.len()];
    for (i, g) in c.gates().iter().enumerate() {
        if !g.kind.is_leaf() {
            d[i] = 1 + g.children.iter().map(|ch| d[ch.index()]).max().unwrap_or(0);
        }
    }
    d[c.output().index()]
}

/// Longest count of AND/OR runs along any output-to-leaf path, reading
/// each gate's kind after pushing NOTs downward.
pub fn alternation_depth(c: &Circuit) -> usize {
    // index 0: node seen positively, 1: under an odd number of NOTs
    let mut eff: Vec<[Option<GateKind>; 2]> = vec![[None, None]; c.len()];
    let mut alt: Vec<[usize; 2]> = vec![[0, 0]; c.len()];
    for (i, g) in c.gates().iter().enumerate() {
        for pol in 0..2 {
            match g.kind {
                GateKind::Input(_) | GateKind::Const(_) => {}
                GateKind::Not => {
                    let ch = g.children[0].index();
                    eff[i][pol] = eff[ch][1 - pol];
                    alt[i][pol] = alt[ch][1 - pol];
                }
                GateKind::And | GateKind::Or => {
                    let kind = if pol == 0 { g.kind } else { g.kind.dual() };
                    eff[i][pol] = Some(kind);
                    alt[i][pol] = g
                        .children
                        .iter()
                        .map(|ch| {
                            let ch = ch.index();
                            alt[ch][pol] + usize::from(eff[ch][pol] != Some(kind))
                        })
                        .max()
                        .unwrap_or(1);
                }
            }
        }
    }
    alt[c.output().index()][0]
}

/// Kind of the output after pushing NOTs downward; `None` for a literal or
/// constant output.
pub fn effective_top(c: &Circuit) -> Option<GateKind> {
    let mut id = c.output();
    let mut negated = false;
    loop {
        match c.kind(id) {
            GateKind::Not => {
                negated = !negated;
                id = c.gate(id).children[0];
            }
            k @ (GateKind::And | GateKind::Or) => return Some(if negated { k.dual() } else { k }),
            _ => return None,
        }
    }
}
