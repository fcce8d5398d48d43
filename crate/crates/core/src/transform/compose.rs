//! Block composition `h = f ∘ (g, ..., g)` with boundary-gate merging.
//!
//! Both operands are monotonized first, so `h` reads `2·n_f` independent
//! blocks, one per doubled literal of `f`, each holding the `2·n_g`
//! doubled literals of its copy of `g`. If the top gate of `g` differs
//! from the kind of `f`'s deepest gates, `g` is replaced by its monotone
//! negation so the two can merge.
//!
//! Wherever a leaf of `f` sits under a gate of the same kind as `g`'s top
//! gate, `g`'s top gate is dissolved into that parent. The rest of a block's
//! copy of `g` is shared by all occurrences of its literal, except when `g`
//! is a single gate over leaves; then unmerged occurrences get their own
//! copy of that gate so formula-ness of `f` carries over to `h`.

use crate::circuit::{Builder, Circuit, CircuitError, GateKind, NodeId};
use crate::metrics::alternation_depth;
use crate::transform::monotone::{monotonize, negate_doubled, LiteralMap, TopGate};

#[derive(Clone, Debug)]
pub struct Composed {
    pub circuit: Circuit,
    /// Monotonized outer circuit `f'`.
    pub outer: Circuit,
    /// Monotone inner circuit placed in every block: `g'` or its negation.
    pub inner: Circuit,
    pub outer_literals: LiteralMap,
    pub inner_literals: LiteralMap,
    /// `inner` computes `¬g` on consistent doublings.
    pub inner_negated: bool,
}

impl Composed {
    pub fn block_count(&self) -> usize {
        self.outer.num_inputs()
    }

    pub fn block_size(&self) -> usize {
        self.inner.num_inputs()
    }

    /// Reference value of `h`: run `inner` on every block, then `outer` on
    /// the block results.
    pub fn eval_blockwise(&self, bits: &[bool]) -> bool {
        let k = self.block_size();
        assert_eq!(bits.len(), self.block_count() * k, "assignment length");
        let values: Vec<bool> = bits.chunks(k).map(|blk| self.inner.eval(blk)).collect();
        self.outer.eval(&values)
    }

    /// Lifts one assignment of `g`'s original inputs per original input of
    /// `f` to an assignment of `h`, such that `h` evaluates to `f(y)` with
    /// `y_v = g(z_v)` (or `¬g(z_v)` when `inner_negated`).
    ///
    /// The block of `v_pos` is the consistent doubling of `z_v`; the block
    /// of `v_neg` is all-zero or all-one, whichever makes the monotone
    /// inner circuit produce `¬y_v`. Returns `None` if neither does, which
    /// happens only for constant `g`.
    pub fn lift(&self, blocks: &[Vec<bool>]) -> Option<Vec<bool>> {
        assert_eq!(blocks.len(), self.outer_literals.len(), "one block per outer input");
        let k = self.block_size();
        let mut bits = Vec::with_capacity(2 * blocks.len() * k);
        for z in blocks {
            let pos = self.inner_literals.double(z);
            let y = self.inner.eval(&pos);
            let neg = vec![!y; k];
            if self.inner.eval(&neg) == y {
                return None;
            }
            bits.extend(pos);
            bits.extend(neg);
        }
        Some(bits)
    }
}

/// Kind of the gates that hold leaves at the deepest alternation level of a
/// monotone circuit (majority vote when mixed, AND on ties).
fn bottom_kind(f: &Circuit) -> Option<GateKind> {
    let k = alternation_depth(f);
    let mut level = vec![0usize; f.len()];
    let out = f.output();
    if !f.kind(out).is_and_or() {
        return None;
    }
    level[out.index()] = 1;
    let (mut and, mut or) = (0usize, 0usize);
    for i in (0..f.len()).rev() {
        let g = &f.gates()[i];
        if level[i] == 0 || !g.kind.is_and_or() {
            continue;
        }
        for ch in &g.children {
            match f.kind(*ch) {
                GateKind::Input(_) if level[i] == k => {
                    if g.kind == GateKind::And {
                        and += 1;
                    } else {
                        or += 1;
                    }
                }
                kind @ (GateKind::And | GateKind::Or) => {
                    let l = level[i] + usize::from(kind != g.kind);
                    level[ch.index()] = level[ch.index()].max(l);
                }
                _ => {}
            }
        }
    }
    match (and, or) {
        (0, 0) => None,
        (a, o) if o > a => Some(GateKind::Or),
        _ => Some(GateKind::And),
    }
}

/// Copies `src` into block `blk` of `b` on demand.
struct BlockCopy<'a> {
    src: &'a Circuit,
    block_size: usize,
    copies: Vec<Vec<Option<NodeId>>>,
}

impl<'a> BlockCopy<'a> {
    fn node(&mut self, b: &mut Builder, blk: usize, id: NodeId) -> NodeId {
        if let Some(n) = self.copies[blk][id.index()] {
            return n;
        }
        let g = self.src.gate(id);
        let n = match g.kind {
            GateKind::Input(v) => b.input(blk * self.block_size + v),
            GateKind::Const(x) => b.constant(x),
            kind => {
                let children = g.children.clone().into_iter().map(|ch| self.node(b, blk, ch)).collect();
                b.push(kind, children)
            }
        };
        self.copies[blk][id.index()] = Some(n);
        n
    }
}

pub fn compose(f: &Circuit, g: &Circuit) -> Result<Composed, CircuitError> {
    let mf = monotonize(f, TopGate::Any);
    let mg = monotonize(g, TopGate::Any);
    let outer = mf.circuit;
    let target = bottom_kind(&outer);
    let g_top = outer_top(&mg.circuit);
    let inner_negated = matches!((target, g_top), (Some(t), Some(k)) if t != k);
    let inner = if inner_negated { negate_doubled(&mg.circuit, &mg.literals) } else { mg.circuit };

    let k = inner.num_inputs();
    let inputs: Vec<String> = outer
        .inputs()
        .iter()
        .flat_map(|fv| inner.inputs().iter().map(move |gv| format!("{fv}__{gv}")))
        .collect();
    let mut b = Builder::new(inputs);
    let mut blocks = BlockCopy { src: &inner, block_size: k, copies: vec![vec![None; inner.len()]; outer.num_inputs()] };

    let inner_out = inner.output();
    let inner_top = inner.kind(inner_out);
    let top_children = inner.gate(inner_out).children.clone();
    let single_level = inner_top.is_and_or() && top_children.iter().all(|ch| inner.kind(*ch).is_leaf());

    let mut map: Vec<NodeId> = Vec::with_capacity(outer.len());
    for (i, gate) in outer.gates().iter().enumerate() {
        let node = match gate.kind {
            // resolved per occurrence below; placeholder keeps indices aligned
            GateKind::Input(_) => NodeId(u32::MAX),
            GateKind::Const(x) => b.constant(x),
            GateKind::Not => unreachable!("monotonized"),
            kind @ (GateKind::And | GateKind::Or) => {
                let mut children = Vec::with_capacity(gate.children.len());
                for ch in &gate.children {
                    match outer.kind(*ch) {
                        GateKind::Input(blk) if inner_top == kind => {
                            for t in &top_children {
                                children.push(blocks.node(&mut b, blk, *t));
                            }
                        }
                        GateKind::Input(blk) if single_level => {
                            let kids = top_children.iter().map(|t| blocks.node(&mut b, blk, *t)).collect();
                            children.push(b.push(inner_top, kids));
                        }
                        GateKind::Input(blk) => children.push(blocks.node(&mut b, blk, inner_out)),
                        _ => children.push(map[ch.index()]),
                    }
                }
                b.push(kind, children)
            }
        };
        debug_assert_eq!(map.len(), i);
        map.push(node);
    }
    let out = match outer.kind(outer.output()) {
        GateKind::Input(blk) => blocks.node(&mut b, blk, inner_out),
        _ => map[outer.output().index()],
    };
    let name = format!("{}_o_{}", f.name(), g.name());
    let circuit = b.finish(name, out)?;
    Ok(Composed {
        circuit,
        outer,
        inner,
        outer_literals: mf.literals,
        inner_literals: mg.literals,
        inner_negated,
    })
}

fn outer_top(c: &Circuit) -> Option<GateKind> {
    Some(c.kind(c.output())).filter(|k| k.is_and_or())
}
