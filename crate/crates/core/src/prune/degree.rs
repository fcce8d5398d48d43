//! Literal-to-gate adjacency with live degree counts.

use crate::circuit::NodeId;

/// Literal code: `2·var` for `var`, `2·var + 1` for its negation.
pub type Lit = usize;

/// Bipartite graph between literals and the live gates of one kind.
/// A literal's degree is the number of distinct live gates it feeds.
#[derive(Clone, Debug)]
pub struct DegreeIndex {
    adjacency: Vec<Vec<NodeId>>,
    gate_lits: Vec<(NodeId, Vec<Lit>)>,
    slot: Vec<Option<usize>>,
    deleted: Vec<bool>,
    degree: Vec<usize>,
    live: usize,
}

impl DegreeIndex {
    /// Builds the index over `gates`, each given with the literals among
    /// its children (duplicates are collapsed).
    pub fn new(num_lits: usize, num_nodes: usize, gates: impl IntoIterator<Item = (NodeId, Vec<Lit>)>) -> Self {
        let mut adjacency = vec![Vec::new(); num_lits];
        let mut gate_lits = Vec::new();
        let mut slot = vec![None; num_nodes];
        for (g, mut lits) in gates {
            lits.sort_unstable();
            lits.dedup();
            for &l in &lits {
                adjacency[l].push(g);
            }
            slot[g.index()] = Some(gate_lits.len());
            gate_lits.push((g, lits));
        }
        let degree = adjacency.iter().map(Vec::len).collect();
        let live = gate_lits.len();
        DegreeIndex { adjacency, deleted: vec![false; live], gate_lits, slot, degree, live }
    }

    pub fn degree(&self, lit: Lit) -> usize {
        self.degree[lit]
    }

    pub fn live_gates(&self) -> usize {
        self.live
    }

    /// Literals with degree above `tau`, ascending.
    pub fn high_degree(&self, tau: usize) -> Vec<Lit> {
        (0..self.degree.len()).filter(|&l| self.degree[l] > tau).collect()
    }

    /// Live gates adjacent to `lit`.
    pub fn live_neighbors(&self, lit: Lit) -> Vec<NodeId> {
        self.adjacency[lit]
            .iter()
            .copied()
            .filter(|g| !self.deleted[self.slot[g.index()].expect("indexed gate")])
            .collect()
    }

    /// Marks `gate` deleted and decrements the degrees of its literals.
    pub fn delete(&mut self, gate: NodeId) {
        let s = self.slot[gate.index()].expect("indexed gate");
        if std::mem::replace(&mut self.deleted[s], true) {
            return;
        }
        self.live -= 1;
        for &l in &self.gate_lits[s].1 {
            self.degree[l] -= 1;
        }
    }

    /// Removes the edge `lit`-`gate` after its wires were cut.
    pub fn detach(&mut self, lit: Lit, gate: NodeId) {
        let s = self.slot[gate.index()].expect("indexed gate");
        if self.deleted[s] {
            return;
        }
        let lits = &mut self.gate_lits[s].1;
        if let Some(p) = lits.iter().position(|&l| l == lit) {
            lits.remove(p);
            self.adjacency[lit].retain(|&g| g != gate);
            self.degree[lit] -= 1;
        }
    }

    /// Recounts degrees from scratch; used to check the incremental counts.
    pub fn recount(&self) -> Vec<usize> {
        let mut d = vec![0; self.degree.len()];
        for (s, (_, lits)) in self.gate_lits.iter().enumerate() {
            if !self.deleted[s] {
                for &l in lits {
                    d[l] += 1;
                }
            }
        }
        d
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }
}
