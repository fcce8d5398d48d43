//! Formula pruning against a fixed input.
//!
//! Given a formula in negation normal form and an assignment `x`, pruning
//! removes every gate that a high-degree literal already decides under `x`.
//! The OR pass looks for literals with more than `τ = ⌈√G⌉` OR-gate
//! neighbours that are 1 under `x`, and replaces all their OR gates by
//! constant 1; the AND pass does the same with 0-valued literals and AND
//! gates. Literals are found by simulated search, whose costs go to a
//! [`QueryLedger`]. Afterwards every literal feeds at most `τ` OR gates and
//! at most `τ` AND gates, and the result agrees with the input on `x`.

mod degree;
pub mod search;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Builder, Circuit, GateKind, NodeId};
use crate::eval::{Assignment, EvalError};
use crate::ledger::QueryLedger;
use crate::metrics::{formula_size, Metrics, Size};
use crate::transform::simplify;

pub use degree::{DegreeIndex, Lit};
pub use search::{search_marked, SearchConfig, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PruneError {
    #[error("circuit is not a formula: a gate has fanout above 1")]
    NotAFormula,
    #[error("circuit is not in negation normal form: a NOT sits above a gate")]
    NotNnf,
    #[error("assignment does not cover variable `{0}`")]
    MissingVariable(String),
    #[error("invalid search configuration: alpha must be > 0 and budget_factor >= 1")]
    BadConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Literal {
    pub var: String,
    pub negated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PassKind {
    Or,
    And,
}

impl PassKind {
    fn gate(self) -> GateKind {
        match self {
            PassKind::Or => GateKind::Or,
            PassKind::And => GateKind::And,
        }
    }

    /// Literal value that decides a gate of this kind.
    fn deciding_value(self) -> bool {
        self == PassKind::Or
    }

    pub fn label(self) -> &'static str {
        match self {
            PassKind::Or => "search:or",
            PassKind::And => "search:and",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltReason {
    /// Every gate of the pass's kind was deleted.
    NoGates,
    NoHighDegree,
    /// The search found no marked literal.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub literal: Literal,
    pub gates_deleted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PassReport {
    pub kind: PassKind,
    /// Search rounds, including a final exhausted one.
    pub rounds: usize,
    /// Marked high-degree literals at each successful round.
    pub m_sequence: Vec<usize>,
    pub eliminated: Vec<Elimination>,
    pub halt: HaltReason,
    /// Wires of unmarked high-degree literals cut after an exhausted search.
    pub cleared_wires: usize,
    pub charged: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneReport {
    pub n: usize,
    pub gates: usize,
    pub tau: usize,
    pub passes: Vec<PassReport>,
    pub ledger: QueryLedger,
    pub s_before: Size,
    pub s_after: Size,
    /// Largest number of distinct OR gates fed by one literal after pruning.
    pub max_or_degree: usize,
    pub max_and_degree: usize,
}

impl PruneReport {
    pub fn pass(&self, kind: PassKind) -> &PassReport {
        self.passes.iter().find(|p| p.kind == kind).expect("both passes run")
    }

    pub fn rounds_or(&self) -> usize {
        self.pass(PassKind::Or).rounds
    }

    pub fn rounds_and(&self) -> usize {
        self.pass(PassKind::And).rounds
    }
}

/// `⌈√g⌉`.
pub fn threshold(g: usize) -> usize {
    let mut t = (g as f64).sqrt() as usize;
    while t * t > g {
        t -= 1;
    }
    while t * t < g {
        t += 1;
    }
    t
}

/// Mutable copy of a formula; deleted gates become constants in place.
struct Work {
    kinds: Vec<GateKind>,
    children: Vec<Vec<NodeId>>,
    output: NodeId,
}

impl Work {
    fn literal(&self, id: NodeId) -> Option<Lit> {
        match self.kinds[id.index()] {
            GateKind::Input(v) => Some(2 * v),
            GateKind::Not => match self.kinds[self.children[id.index()][0].index()] {
                GateKind::Input(v) => Some(2 * v + 1),
                _ => None,
            },
            _ => None,
        }
    }

    fn reachable(&self) -> Vec<NodeId> {
        let mut seen = vec![false; self.kinds.len()];
        let mut stack = vec![self.output];
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id.index()], true) {
                continue;
            }
            out.push(id);
            stack.extend(self.children[id.index()].iter().copied());
        }
        out
    }

    fn push_const(&mut self, value: bool) -> NodeId {
        self.kinds.push(GateKind::Const(value));
        self.children.push(Vec::new());
        NodeId((self.kinds.len() - 1) as u32)
    }

    fn index(&self, kind: GateKind, num_lits: usize) -> DegreeIndex {
        let gates = self.reachable().into_iter().filter(|id| self.kinds[id.index()] == kind).map(|id| {
            let lits = self.children[id.index()].iter().filter_map(|&ch| self.literal(ch)).collect();
            (id, lits)
        });
        DegreeIndex::new(num_lits, self.kinds.len(), gates.collect::<Vec<_>>())
    }

    fn finish(&self, inputs: &[String], name: &str) -> Circuit {
        let mut b = Builder::new(inputs.to_vec());
        let mut built: Vec<Option<NodeId>> = vec![None; self.kinds.len()];
        let mut stack = vec![(self.output, false)];
        while let Some((id, expanded)) = stack.pop() {
            let i = id.index();
            if built[i].is_some() {
                continue;
            }
            match self.kinds[i] {
                GateKind::Input(v) => built[i] = Some(b.input(v)),
                GateKind::Const(x) => built[i] = Some(b.constant(x)),
                kind if expanded => {
                    let kids = self.children[i].iter().map(|c| built[c.index()].expect("child built")).collect();
                    built[i] = Some(b.push(kind, kids));
                }
                _ => {
                    stack.push((id, true));
                    stack.extend(self.children[i].iter().map(|&c| (c, false)));
                }
            }
        }
        b.finish(name.to_string(), built[self.output.index()].expect("output built"))
            .expect("pruning keeps the circuit valid")
    }
}

/// Distinct OR gates and distinct AND gates fed by each literal, counted
/// over gates reachable from the output.
pub fn literal_degrees(c: &Circuit) -> (Vec<usize>, Vec<usize>) {
    let w = Work {
        kinds: c.gates().iter().map(|g| g.kind).collect(),
        children: c.gates().iter().map(|g| g.children.clone()).collect(),
        output: c.output(),
    };
    let lits = 2 * c.num_inputs();
    let or = w.index(GateKind::Or, lits).degrees().to_vec();
    let and = w.index(GateKind::And, lits).degrees().to_vec();
    (or, and)
}

/// Prunes `formula` against `x`. Returns the simplified pruned formula and
/// the run's report.
pub fn prune(formula: &Circuit, x: &Assignment, cfg: &SearchConfig) -> Result<(Circuit, PruneReport), PruneError> {
    let (pruned, report) = prune_unsimplified(formula, x, cfg)?;
    Ok((simplify(&pruned), report))
}

/// Like [`prune`], but returns the pruned formula before constant
/// propagation, where the degree bound is stated.
pub fn prune_unsimplified(
    formula: &Circuit,
    x: &Assignment,
    cfg: &SearchConfig,
) -> Result<(Circuit, PruneReport), PruneError> {
    if !cfg.is_valid() {
        return Err(PruneError::BadConfig);
    }
    let metrics = Metrics::of(formula);
    if !metrics.is_formula {
        return Err(PruneError::NotAFormula);
    }
    if !formula.is_nnf() {
        return Err(PruneError::NotNnf);
    }
    let bits = x.bits_for(formula).map_err(|e| match e {
        EvalError::MissingVariable(v) => PruneError::MissingVariable(v),
        EvalError::WrongLength { .. } => unreachable!("bits_for reads by name"),
    })?;
    let value = |l: Lit| bits[l / 2] ^ (l % 2 == 1);
    let num_lits = 2 * formula.num_inputs();
    let tau = threshold(metrics.gates);

    let mut work = Work {
        kinds: formula.gates().iter().map(|g| g.kind).collect(),
        children: formula.gates().iter().map(|g| g.children.clone()).collect(),
        output: formula.output(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut ledger = QueryLedger::new();
    let mut passes = Vec::with_capacity(2);

    for kind in [PassKind::Or, PassKind::And] {
        let gate_kind = kind.gate();
        let target = kind.deciding_value();
        let mut index = work.index(gate_kind, num_lits);
        let before = ledger.charged();
        let mut report = PassReport {
            kind,
            rounds: 0,
            m_sequence: Vec::new(),
            eliminated: Vec::new(),
            halt: HaltReason::NoHighDegree,
            cleared_wires: 0,
            charged: 0,
        };
        loop {
            if index.live_gates() == 0 {
                report.halt = HaltReason::NoGates;
                break;
            }
            let high = index.high_degree(tau);
            if high.is_empty() {
                report.halt = HaltReason::NoHighDegree;
                break;
            }
            report.rounds += 1;
            let outcome =
                search_marked(high.len(), |i| value(high[i]) == target, cfg, &mut rng, &mut ledger, kind.label());
            match outcome {
                SearchOutcome::Found { index: i, marked } => {
                    let lit = high[i];
                    let victims = index.live_neighbors(lit);
                    for &g in &victims {
                        index.delete(g);
                        work.kinds[g.index()] = GateKind::Const(target);
                        work.children[g.index()].clear();
                    }
                    report.m_sequence.push(marked);
                    report.eliminated.push(Elimination {
                        literal: Literal { var: formula.inputs()[lit / 2].clone(), negated: lit % 2 == 1 },
                        gates_deleted: victims.len(),
                    });
                }
                SearchOutcome::Exhausted => {
                    // every remaining high-degree literal has the non-deciding
                    // value, which is the identity of this gate kind
                    let identity = work.push_const(!target);
                    for &lit in &high {
                        for g in index.live_neighbors(lit) {
                            let mut kids = std::mem::take(&mut work.children[g.index()]);
                            for ch in kids.iter_mut().filter(|ch| work.literal(**ch) == Some(lit)) {
                                *ch = identity;
                                report.cleared_wires += 1;
                            }
                            work.children[g.index()] = kids;
                            index.detach(lit, g);
                        }
                    }
                    report.halt = HaltReason::Exhausted;
                    break;
                }
            }
        }
        debug_assert_eq!(index.degrees(), index.recount().as_slice());
        report.charged = ledger.charged() - before;
        passes.push(report);
    }

    let pruned = work.finish(formula.inputs(), formula.name());
    let (or_deg, and_deg) = literal_degrees(&pruned);
    let report = PruneReport {
        n: formula.num_inputs(),
        gates: metrics.gates,
        tau,
        passes,
        ledger,
        s_before: metrics.size,
        s_after: formula_size(&simplify(&pruned)),
        max_or_degree: or_deg.into_iter().max().unwrap_or(0),
        max_and_degree: and_deg.into_iter().max().unwrap_or(0),
    };
    Ok((pruned, report))
}
