//! Generators for the hard-instance families.
//!
//! Every generator returns an [`InstanceRecord`]: the circuit, its
//! parameters, a short citation of the result it instantiates, and that
//! result's lower-bound formula evaluated at the parameters. Lower-bound
//! values are asymptotic with all hidden constants set to 1 and logarithms
//! in base 2; they are not exact query complexities.

mod ed;
mod matrix;
mod onto;
mod parity;
mod plane;
mod random;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Builder, Circuit, CircuitError};
use crate::metrics::Metrics;

pub use ed::{ed_and_split, gen_ed, gen_ed_and};
pub use matrix::{gen_bmpv, gen_bvpv, BitMatrix, BmpvInstances};
pub use onto::{gen_onto, gen_onto_iter, onto_bits, onto_iter_composed};
pub use parity::{gen_parity, gen_parity_and, parity_and_preset, ParityPreset};
pub use plane::{gen_projective_plane, is_prime, ProjectivePlane};
pub use random::{gen_random, random_nnf_formula};

pub const LB_NOTE: &str = "asymptotic, constants suppressed";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("{what} must be a power of two, got {got}")]
    NotPowerOfTwo { what: &'static str, got: usize },
    #[error("m = {m} must divide n = {n}")]
    BadDivisibility { n: usize, m: usize },
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Parity,
    ParityAnd,
    Onto,
    OntoIter,
    Ed,
    EdAnd,
    Bvpv,
    Bmpv,
    ProjPlane,
    /// Random NNF formulas; no lower bound attached.
    Random,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Parity,
        Family::ParityAnd,
        Family::Onto,
        Family::OntoIter,
        Family::Ed,
        Family::EdAnd,
        Family::Bvpv,
        Family::Bmpv,
        Family::ProjPlane,
    ];

    pub fn citation(self) -> &'static str {
        match self {
            Family::Parity => "parity by recursive (F, not F) pairs, formula size n^2; quantum query complexity Theta(n)",
            Family::ParityAnd => {
                "parity_m composed with AND_{n/m}; tight instances for the min{n, sqrt S, n^1/2 G^1/4} bound"
            }
            Family::Onto => "ONTO (surjectivity of [2n-2] -> [n]) as a depth-3 formula; Q = Omega(N / log N)",
            Family::OntoIter => "iterated self-composition of ONTO; constant-depth circuits approaching linear size",
            Family::Ed => "element distinctness as a depth-2 OR of AND clauses; Q = Omega((N / log N)^(2/3))",
            Family::EdAnd => "element distinctness composed with AND; linear-size depth-2 circuit needing n^(5/9) queries",
            Family::Bvpv => "Boolean vector product verification AND_i OR_j A_ij v_j",
            Family::Bmpv => "Boolean matrix product verification AB = C; Q = Omega(n^(19/18))",
            Family::ProjPlane => "depth-2 projective plane circuit OR over lines of AND over points",
            Family::Random => "random NNF formula with skewed leaf choice",
        }
    }
}

/// A generated instance with provenance. Serializes to the sidecar form;
/// the circuit itself is written separately.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    #[serde(skip)]
    pub circuit: Circuit,
    pub family: Family,
    pub params: BTreeMap<String, u64>,
    pub citation: String,
    pub lb_formula: String,
    pub lb_value: f64,
    pub lb_note: &'static str,
    pub metrics: Metrics,
}

impl InstanceRecord {
    pub fn new(
        circuit: Circuit,
        family: Family,
        params: &[(&str, u64)],
        lb_formula: &str,
        lb_value: f64,
    ) -> InstanceRecord {
        let metrics = Metrics::of(&circuit);
        InstanceRecord {
            circuit,
            family,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            citation: family.citation().to_string(),
            lb_formula: lb_formula.to_string(),
            lb_value,
            lb_note: LB_NOTE,
            metrics,
        }
    }

    /// Stored metrics still describe the circuit.
    pub fn is_consistent(&self) -> bool {
        Metrics::of(&self.circuit) == self.metrics
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }
}

pub(crate) fn log2_exact(what: &'static str, n: usize) -> Result<u32, GenError> {
    if n == 0 || !n.is_power_of_two() {
        return Err(GenError::NotPowerOfTwo { what, got: n });
    }
    Ok(n.trailing_zeros())
}

/// `AND(y0, ..., y{n-1})`; a unit gate when `n = 1`.
pub fn and_n(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut b = Builder::new((0..n).map(|i| format!("y{i}")).collect());
    let kids = (0..n).map(|i| b.input(i)).collect();
    let out = b.and(kids);
    b.finish(format!("and_{n}"), out).expect("valid AND")
}
