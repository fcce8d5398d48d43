//! Boolean circuit IR.
//!
//! A [`Circuit`] is a DAG of AND/OR/NOT/constant gates over named input
//! variables with a single output. Construction validates every structural
//! invariant and renumbers nodes into a canonical order:
//!
//! - ids `0..n` are the `Input` nodes, one per declared variable, in
//!   declaration order;
//! - every other node follows in depth-first post-order from the output,
//!   visiting children left to right.
//!
//! Two circuits with the same structure therefore compare equal with
//! `==`, and printing is deterministic.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Dense node identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GateKind {
    And,
    Or,
    Not,
    /// Leaf reading the declared input with this index.
    Input(usize),
    Const(bool),
}

impl GateKind {
    pub fn is_leaf(self) -> bool {
        matches!(self, GateKind::Input(_) | GateKind::Const(_))
    }

    /// AND and OR; the gates counted by `G`.
    pub fn is_and_or(self) -> bool {
        matches!(self, GateKind::And | GateKind::Or)
    }

    /// AND <-> OR, identity on everything else.
    pub fn dual(self) -> GateKind {
        match self {
            GateKind::And => GateKind::Or,
            GateKind::Or => GateKind::And,
            other => other,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            GateKind::And => "and",
            GateKind::Or => "or",
            GateKind::Not => "not",
            GateKind::Input(_) => "input",
            GateKind::Const(false) => "const0",
            GateKind::Const(true) => "const1",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub children: Vec<NodeId>,
}

impl Gate {
    pub fn new(kind: GateKind, children: Vec<NodeId>) -> Self {
        Gate { kind, children }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("node {node} references missing node {child}")]
    DanglingReference { node: NodeId, child: NodeId },
    #[error("output references missing node {0}")]
    DanglingOutput(NodeId),
    #[error("node {node}: {kind} gate cannot take {arity} children")]
    BadArity { node: NodeId, kind: GateKind, arity: usize },
    #[error("node {node} reads undeclared variable index {var}")]
    UndeclaredVariable { node: NodeId, var: usize },
    #[error("input `{0}` is declared twice")]
    DuplicateInput(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("cycle through node {node}")]
    CyclicGraph { node: NodeId },
    #[error("node {node} is not reachable from the output")]
    UnreachableNode { node: NodeId },
}

/// Validated, canonically ordered circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    inputs: Vec<String>,
    gates: Vec<Gate>,
    output: NodeId,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Circuit {
    /// Validates `gates` and returns the canonical circuit.
    ///
    /// Input nodes may appear anywhere and may be repeated; all `Input(v)`
    /// nodes are merged into the canonical node `v`. Every non-input node
    /// must be reachable from `output`.
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<String>,
        gates: Vec<Gate>,
        output: NodeId,
    ) -> Result<Circuit, CircuitError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(CircuitError::InvalidName(name));
        }
        check_local(&inputs, &gates, output)?;
        check_acyclic(&gates)?;
        check_reachable(&gates, output)?;
        Ok(canonicalize(name, inputs, &gates, output))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Circuit, CircuitError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(CircuitError::InvalidName(name));
        }
        self.name = name;
        Ok(self)
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v == name)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: NodeId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn kind(&self, id: NodeId) -> GateKind {
        self.gates[id.index()].kind
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    /// Ids of all non-input nodes, in topological order.
    pub fn internal_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (self.inputs.len()..self.gates.len()).map(|i| NodeId(i as u32))
    }

    /// Number of parent edges of every node (multi-edges counted).
    pub fn fanouts(&self) -> Vec<usize> {
        let mut out = vec![0; self.gates.len()];
        for gate in &self.gates {
            for c in &gate.children {
                out[c.index()] += 1;
            }
        }
        out
    }

    /// True when no NOT node appears.
    pub fn is_monotone(&self) -> bool {
        self.gates.iter().all(|g| g.kind != GateKind::Not)
    }

    /// True when every NOT node sits directly above an input.
    pub fn is_nnf(&self) -> bool {
        self.gates.iter().all(|g| {
            g.kind != GateKind::Not || matches!(self.kind(g.children[0]), GateKind::Input(_))
        })
    }
}

fn check_local(inputs: &[String], gates: &[Gate], output: NodeId) -> Result<(), CircuitError> {
    for (i, gate) in gates.iter().enumerate() {
        let node = NodeId(i as u32);
        for &child in &gate.children {
            if child.index() >= gates.len() {
                return Err(CircuitError::DanglingReference { node, child });
            }
        }
        let arity = gate.children.len();
        let arity_ok = match gate.kind {
            GateKind::And | GateKind::Or => arity >= 1,
            GateKind::Not => arity == 1,
            GateKind::Input(_) | GateKind::Const(_) => arity == 0,
        };
        if !arity_ok {
            return Err(CircuitError::BadArity { node, kind: gate.kind, arity });
        }
        if let GateKind::Input(var) = gate.kind {
            if var >= inputs.len() {
                return Err(CircuitError::UndeclaredVariable { node, var });
            }
        }
    }
    if output.index() >= gates.len() {
        return Err(CircuitError::DanglingOutput(output));
    }
    let mut seen = HashMap::with_capacity(inputs.len());
    for name in inputs {
        if !is_identifier(name) {
            return Err(CircuitError::InvalidName(name.clone()));
        }
        if seen.insert(name.as_str(), ()).is_some() {
            return Err(CircuitError::DuplicateInput(name.clone()));
        }
    }
    Ok(())
}

fn check_acyclic(gates: &[Gate]) -> Result<(), CircuitError> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; gates.len()];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..gates.len() {
        if state[root] != 0 {
            continue;
        }
        state[root] = 1;
        stack.push((root, 0));
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = gates[node].children.get(*next) {
                *next += 1;
                match state[child.index()] {
                    0 => {
                        state[child.index()] = 1;
                        stack.push((child.index(), 0));
                    }
                    1 => return Err(CircuitError::CyclicGraph { node: child }),
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
    }
    Ok(())
}

fn check_reachable(gates: &[Gate], output: NodeId) -> Result<(), CircuitError> {
    let mut seen = vec![false; gates.len()];
    let mut stack = vec![output.index()];
    seen[output.index()] = true;
    while let Some(node) = stack.pop() {
        for c in &gates[node].children {
            if !seen[c.index()] {
                seen[c.index()] = true;
                stack.push(c.index());
            }
        }
    }
    match gates
        .iter()
        .enumerate()
        .find(|(i, g)| !seen[*i] && !matches!(g.kind, GateKind::Input(_)))
    {
        Some((i, _)) => Err(CircuitError::UnreachableNode { node: NodeId(i as u32) }),
        None => Ok(()),
    }
}

/// Renumbers an acyclic, fully reachable gate list into canonical order.
fn canonicalize(name: String, inputs: Vec<String>, gates: &[Gate], output: NodeId) -> Circuit {
    let n = inputs.len();
    let mut new_id: Vec<Option<NodeId>> = vec![None; gates.len()];
    let mut out: Vec<Gate> = (0..n).map(|v| Gate::new(GateKind::Input(v), Vec::new())).collect();
    for (i, g) in gates.iter().enumerate() {
        if let GateKind::Input(v) = g.kind {
            new_id[i] = Some(NodeId(v as u32));
        }
    }
    let mut stack: Vec<(usize, usize)> = Vec::new();
    if new_id[output.index()].is_none() {
        stack.push((output.index(), 0));
    }
    while let Some(&mut (node, ref mut next)) = stack.last_mut() {
        if let Some(&child) = gates[node].children.get(*next) {
            *next += 1;
            if new_id[child.index()].is_none() {
                stack.push((child.index(), 0));
            }
        } else {
            stack.pop();
            // A node can sit on the stack twice only via a cycle, which
            // was already rejected; still guard against double emission.
            if new_id[node].is_none() {
                let children = gates[node]
                    .children
                    .iter()
                    .map(|c| new_id[c.index()].expect("children emitted first"))
                    .collect();
                new_id[node] = Some(NodeId(out.len() as u32));
                out.push(Gate::new(gates[node].kind, children));
            }
        }
    }
    let output = new_id[output.index()].expect("output emitted");
    Circuit { name, inputs, gates: out, output }
}

/// Incremental construction of circuits.
///
/// The builder starts with one input node per declared variable and hands
/// out ids for new gates. [`Builder::finish`] drops every node that is not
/// reachable from the chosen output and canonicalizes the rest.
#[derive(Clone, Debug)]
pub struct Builder {
    inputs: Vec<String>,
    gates: Vec<Gate>,
}

impl Builder {
    pub fn new(inputs: Vec<String>) -> Self {
        let gates = (0..inputs.len()).map(|v| Gate::new(GateKind::Input(v), Vec::new())).collect();
        Builder { inputs, gates }
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn input(&self, var: usize) -> NodeId {
        assert!(var < self.inputs.len(), "input index out of range");
        NodeId(var as u32)
    }

    pub fn push(&mut self, kind: GateKind, children: Vec<NodeId>) -> NodeId {
        let id = NodeId(self.gates.len() as u32);
        self.gates.push(Gate::new(kind, children));
        id
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.push(GateKind::Const(value), Vec::new())
    }

    pub fn not(&mut self, child: NodeId) -> NodeId {
        self.push(GateKind::Not, vec![child])
    }

    pub fn and(&mut self, children: Vec<NodeId>) -> NodeId {
        self.push(GateKind::And, children)
    }

    pub fn or(&mut self, children: Vec<NodeId>) -> NodeId {
        self.push(GateKind::Or, children)
    }

    /// Literal: the input itself, or a fresh NOT node above it.
    pub fn literal(&mut self, var: usize, positive: bool) -> NodeId {
        let x = self.input(var);
        if positive {
            x
        } else {
            self.not(x)
        }
    }

    pub fn kind(&self, id: NodeId) -> GateKind {
        self.gates[id.index()].kind
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.gates[id.index()].children
    }

    pub fn finish(self, name: impl Into<String>, output: NodeId) -> Result<Circuit, CircuitError> {
        let Builder { inputs, gates } = self;
        if output.index() >= gates.len() {
            return Err(CircuitError::DanglingOutput(output));
        }
        // keep only what the output can reach (plus the input nodes)
        let mut keep = vec![false; gates.len()];
        keep[..inputs.len()].iter_mut().for_each(|k| *k = true);
        let mut stack = vec![output.index()];
        keep[output.index()] = true;
        while let Some(node) = stack.pop() {
            for c in &gates[node].children {
                if c.index() < gates.len() && !keep[c.index()] {
                    keep[c.index()] = true;
                    stack.push(c.index());
                }
            }
        }
        let mut remap = vec![NodeId(u32::MAX); gates.len()];
        let mut kept = Vec::with_capacity(gates.len());
        for (i, g) in gates.into_iter().enumerate() {
            if keep[i] {
                remap[i] = NodeId(kept.len() as u32);
                kept.push(g);
            }
        }
        for g in &mut kept {
            for c in &mut g.children {
                // dangling children keep an out-of-range id so validation reports them
                *c = remap.get(c.index()).copied().unwrap_or(NodeId(u32::MAX));
            }
        }
        Circuit::new(name, inputs, kept, remap[output.index()])
    }
}
