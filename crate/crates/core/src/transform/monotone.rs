//! Negation pushing: monotonization over doubled literals and root negation.

use serde::Serialize;

use crate::circuit::{Builder, Circuit, GateKind, NodeId};
use crate::metrics::effective_top;

/// Requested kind of the top gate after monotonization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TopGate {
    And,
    Or,
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralPair {
    pub var: String,
    pub pos: String,
    pub neg: String,
}

/// Original variable `v` becomes the two inputs `v_pos` and `v_neg`,
/// interleaved in declaration order: `x0_pos, x0_neg, x1_pos, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralMap {
    pairs: Vec<LiteralPair>,
}

impl LiteralMap {
    pub fn for_inputs(vars: &[String]) -> Self {
        let pairs = vars
            .iter()
            .map(|v| LiteralPair { var: v.clone(), pos: format!("{v}_pos"), neg: format!("{v}_neg") })
            .collect();
        LiteralMap { pairs }
    }

    pub fn pairs(&self) -> &[LiteralPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Input list of the doubled circuit.
    pub fn doubled_inputs(&self) -> Vec<String> {
        self.pairs.iter().flat_map(|p| [p.pos.clone(), p.neg.clone()]).collect()
    }

    /// Consistent doubling: `v_pos = x_v`, `v_neg = !x_v`.
    pub fn double(&self, bits: &[bool]) -> Vec<bool> {
        assert_eq!(bits.len(), self.pairs.len(), "assignment length");
        bits.iter().flat_map(|&b| [b, !b]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monotonized {
    pub circuit: Circuit,
    pub literals: LiteralMap,
    /// The circuit computes the negation of the original function.
    pub negated: bool,
}

/// Pushes every NOT to the leaves and replaces literals by the doubled
/// inputs of a [`LiteralMap`]. A formula stays a formula of the same size;
/// on general circuits a gate needed in both polarities is duplicated, so
/// the gate count at most doubles. If `want` names a kind the natural top
/// gate does not have, the negation is built instead and flagged.
pub fn monotonize(c: &Circuit, want: TopGate) -> Monotonized {
    let natural = effective_top(c);
    let negated = matches!((want, natural), (TopGate::And, Some(GateKind::Or)) | (TopGate::Or, Some(GateKind::And)));
    let literals = LiteralMap::for_inputs(c.inputs());
    let circuit = push_negations(c, negated, literals.doubled_inputs(), |b, var, neg| {
        b.input(2 * var + usize::from(neg))
    });
    Monotonized { circuit, literals, negated }
}

/// Circuit for the negation of `c`, by De Morgan dualization: AND and OR
/// swap, constants flip, NOTs above inputs disappear and bare inputs gain
/// one. The gate count is unchanged on formulas and on NNF circuits, and
/// negating twice returns an NNF circuit unchanged.
pub fn negate_root(c: &Circuit) -> Circuit {
    push_negations(c, true, c.inputs().to_vec(), |b, var, neg| b.literal(var, !neg))
}

/// Negation of a circuit over doubled literals: complemented literals swap
/// `v_pos` and `v_neg`, so the result is monotone whenever `c` is.
///
/// Panics if `c`'s inputs are not `map`'s doubled inputs.
pub fn negate_doubled(c: &Circuit, map: &LiteralMap) -> Circuit {
    assert_eq!(c.inputs(), map.doubled_inputs().as_slice(), "inputs must be the doubled literals");
    push_negations(c, true, c.inputs().to_vec(), |b, var, neg| b.input(if neg { var ^ 1 } else { var }))
}

/// Rebuilds `c` with NOTs pushed to the leaves. `leaf(b, v, negated)`
/// produces the node for input `v` under the given polarity; it is called
/// once per leaf occurrence.
fn push_negations(
    c: &Circuit,
    negate_output: bool,
    inputs: Vec<String>,
    mut leaf: impl FnMut(&mut Builder, usize, bool) -> NodeId,
) -> Circuit {
    let len = c.len();
    let mut need = vec![[false; 2]; len];
    need[c.output().index()][usize::from(negate_output)] = true;
    for i in (0..len).rev() {
        let g = &c.gates()[i];
        for p in 0..2 {
            if !need[i][p] {
                continue;
            }
            let child_pol = if g.kind == GateKind::Not { 1 - p } else { p };
            for ch in &g.children {
                need[ch.index()][child_pol] = true;
            }
        }
    }

    let mut b = Builder::new(inputs);
    let mut built: Vec<[Option<NodeId>; 2]> = vec![[None; 2]; len];
    let resolve = |b: &mut Builder, built: &[[Option<NodeId>; 2]], leaf: &mut dyn FnMut(&mut Builder, usize, bool) -> NodeId, id: NodeId, p: usize| {
        match c.kind(id) {
            GateKind::Input(v) => leaf(b, v, p == 1),
            _ => built[id.index()][p].expect("children are built first"),
        }
    };
    for i in 0..len {
        let g = &c.gates()[i];
        for p in 0..2 {
            if !need[i][p] {
                continue;
            }
            let node = match g.kind {
                GateKind::Input(_) => continue,
                GateKind::Const(v) => b.constant(v ^ (p == 1)),
                GateKind::Not => resolve(&mut b, &built, &mut leaf, g.children[0], 1 - p),
                GateKind::And | GateKind::Or => {
                    let kind = if p == 1 { g.kind.dual() } else { g.kind };
                    let children = g.children.iter().map(|ch| resolve(&mut b, &built, &mut leaf, *ch, p)).collect();
                    b.push(kind, children)
                }
            };
            built[i][p] = Some(node);
        }
    }
    let out = resolve(&mut b, &built, &mut leaf, c.output(), usize::from(negate_output));
    b.finish(c.name().to_string(), out).expect("negation pushing preserves validity")
}
