//! Constant propagation.
//!
//! Only identity/annihilator rules and unit-fanin unwrapping are applied;
//! no absorption or idempotence, so measured sizes keep reflecting the
//! constructions they came from.

use crate::circuit::{Builder, Circuit, GateKind, NodeId};

#[derive(Clone, Copy)]
enum Value {
    Const(bool),
    Node(NodeId),
}

pub fn simplify(c: &Circuit) -> Circuit {
    let mut b = Builder::new(c.inputs().to_vec());
    let mut val: Vec<Value> = Vec::with_capacity(c.len());
    for g in c.gates() {
        let v = match g.kind {
            GateKind::Input(var) => Value::Node(b.input(var)),
            GateKind::Const(x) => Value::Const(x),
            GateKind::Not => match val[g.children[0].index()] {
                Value::Const(x) => Value::Const(!x),
                Value::Node(n) => Value::Node(b.not(n)),
            },
            GateKind::And | GateKind::Or => {
                // absorbing element: 0 for AND, 1 for OR
                let absorbing = g.kind == GateKind::Or;
                let mut kept = Vec::with_capacity(g.children.len());
                let mut absorbed = false;
                for ch in &g.children {
                    match val[ch.index()] {
                        Value::Const(x) if x == absorbing => {
                            absorbed = true;
                            break;
                        }
                        Value::Const(_) => {}
                        Value::Node(n) => kept.push(n),
                    }
                }
                if absorbed {
                    Value::Const(absorbing)
                } else if kept.is_empty() {
                    Value::Const(!absorbing)
                } else if kept.len() == 1 {
                    Value::Node(kept[0])
                } else {
                    Value::Node(b.push(g.kind, kept))
                }
            }
        };
        val.push(v);
    }
    let out = match val[c.output().index()] {
        Value::Const(x) => b.constant(x),
        Value::Node(n) => n,
    };
    b.finish(c.name().to_string(), out).expect("simplification preserves validity")
}
