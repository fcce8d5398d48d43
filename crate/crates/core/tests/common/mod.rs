//! Shared helpers for the integration tests.

#![allow(dead_code)]

use rand::Rng;
use readmany::{Builder, Circuit, GateKind, NodeId};

/// Random circuit with `n` inputs and up to `k` internal nodes of any kind,
/// including NOT gates above gates, constants and shared subcircuits.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Circuit {
    let mut b = Builder::new((0..n).map(|i| format!("x{i}")).collect());
    let mut nodes: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    for _ in 0..k {
        let pick = |rng: &mut R, nodes: &[NodeId]| nodes[rng.gen_range(0..nodes.len())];
        let id = match rng.gen_range(0..20) {
            0 => b.constant(rng.gen_bool(0.5)),
            1..=4 => {
                let c = pick(rng, &nodes);
                b.not(c)
            }
            r => {
                let arity = rng.gen_range(1..=4);
                let kids = (0..arity).map(|_| pick(rng, &nodes)).collect();
                if r % 2 == 0 {
                    b.and(kids)
                } else {
                    b.or(kids)
                }
            }
        };
        nodes.push(id);
    }
    let out = *nodes.last().expect("at least one node");
    b.finish("dag", out).expect("random DAG is valid")
}

/// Random bits of length `n`.
pub fn random_bits<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(0.5)).collect()
}

/// Assignment index `a` as bits in declared order, bit `v` for input `v`.
pub fn bits_of(a: u64, n: usize) -> Vec<bool> {
    (0..n).map(|v| a >> v & 1 == 1).collect()
}

/// Exhaustive equality of two circuits over the same inputs.
pub fn same_function(a: &Circuit, b: &Circuit) -> bool {
    assert_eq!(a.num_inputs(), b.num_inputs());
    let n = a.num_inputs();
    (0..1u64 << n).all(|x| {
        let bits = bits_of(x, n);
        a.eval(&bits) == b.eval(&bits)
    })
}

/// `true` if the circuit uses no NOT gates.
pub fn not_free(c: &Circuit) -> bool {
    c.gates().iter().all(|g| g.kind != GateKind::Not)
}
