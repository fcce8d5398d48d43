//! Read-many Boolean formulas: a circuit IR with a text format, the
//! structure-preserving transformations used to build hard instances,
//! formula pruning with simulated search-query accounting, generators for
//! the hard-instance families, and bound calculators with brute-force
//! oracles.

pub mod analysis;
pub mod circuit;
pub mod eval;
pub mod gen;
pub mod ledger;
pub mod metrics;
pub mod prune;
pub mod text;
pub mod transform;

pub use circuit::{Builder, Circuit, CircuitError, Gate, GateKind, NodeId};
pub use eval::{evaluate, evaluate_counting, Assignment, EvalError};
pub use ledger::QueryLedger;
pub use metrics::Metrics;
pub use text::{parse, print, ParseError};
