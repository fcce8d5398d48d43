//! Boolean vector and matrix product verification over the (OR, AND)
//! semiring.

use std::fmt;
use std::str::FromStr;

use super::{Family, GenError, InstanceRecord};
use crate::circuit::{Builder, NodeId};

/// Square bit matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<BitMatrix, GenError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(GenError::NotSquare);
        }
        Ok(BitMatrix { n, bits: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> BitMatrix {
        BitMatrix { n, bits: (0..n * n).map(|p| p / n == p % n).collect() }
    }

    pub fn ones(n: usize) -> BitMatrix {
        BitMatrix { n, bits: vec![true; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    /// Boolean product `self · other`.
    pub fn product(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let bits = (0..n * n).map(|p| (0..n).any(|k| self.get(p / n, k) && other.get(k, p % n))).collect();
        BitMatrix { n, bits }
    }

    /// Row-major bits.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Rows of `0`/`1` separated by `/` or `;`, e.g. `10/01`.
impl FromStr for BitMatrix {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .split(['/', ';'])
            .map(|r| {
                r.trim()
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(GenError::BadParams(format!("matrix entry `{ch}` is not 0 or 1"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>, _>>()?;
        BitMatrix::from_rows(rows)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// `OR_j A[row][j] ∧ var(j)`, or constant 0 for a zero row.
fn row_or(b: &mut Builder, a: &BitMatrix, row: usize, var: impl Fn(usize) -> usize) -> NodeId {
    let kids: Vec<NodeId> = (0..a.n).filter(|&j| a.get(row, j)).map(|j| b.input(var(j))).collect();
    if kids.is_empty() {
        b.constant(false)
    } else {
        b.or(kids)
    }
}

/// `BVPV_A(v) = AND_i OR_j A_ij v_j`: `n` OR gates and one AND gate.
pub fn gen_bvpv(a: &BitMatrix) -> Result<InstanceRecord, GenError> {
    let n = a.n;
    let mut b = Builder::new((0..n).map(|j| format!("v{j}")).collect());
    let rows = (0..n).map(|i| row_or(&mut b, a, i, |j| j)).collect();
    let out = b.and(rows);
    let c = b.finish(format!("bvpv_{n}"), out)?;
    Ok(InstanceRecord::new(c, Family::Bvpv, &[("n", n as u64)], "n^(5/9)", (n as f64).powf(5.0 / 9.0)))
}

/// The two product-verification formulas for a fixed `A`.
#[derive(Clone, Debug)]
pub struct BmpvInstances {
    /// `AB = J` over inputs `b{k}_{j}`: the AND of `BVPV_A` on every column.
    pub all_ones: InstanceRecord,
    /// `AB = C` over inputs `a{i}_{k}`, `b{k}_{j}`, `c{i}_{j}`.
    pub general: InstanceRecord,
}

pub fn gen_bmpv(a: &BitMatrix) -> Result<BmpvInstances, GenError> {
    let n = a.n;
    let lb = (n as f64).powf(19.0 / 18.0);
    let idx = |k: usize, j: usize| k * n + j;

    let mut b = Builder::new((0..n * n).map(|p| format!("b{}_{}", p / n, p % n)).collect());
    let mut checks = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            checks.push(row_or(&mut b, a, i, |k| idx(k, j)));
        }
    }
    let out = b.and(checks);
    let c = b.finish(format!("bmpv_ones_{n}"), out)?;
    let all_ones = InstanceRecord::new(c, Family::Bmpv, &[("n", n as u64), ("variant", 0)], "n^(19/18)", lb);

    // inputs: A, then B, then C, each row-major
    let names = ["a", "b", "c"]
        .iter()
        .flat_map(|m| (0..n * n).map(move |p| format!("{m}{}_{}", p / n, p % n)))
        .collect();
    let (av, bv, cv) = (0, n * n, 2 * n * n);
    let mut b = Builder::new(names);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // C_ij ↔ P_ij with P_ij = OR_k A_ik ∧ B_kj, as (C ∧ P) ∨ (¬C ∧ ¬P)
            let terms = (0..n)
                .map(|k| {
                    let x = b.input(av + idx(i, k));
                    let y = b.input(bv + idx(k, j));
                    b.and(vec![x, y])
                })
                .collect();
            let p = b.or(terms);
            let c_pos = b.input(cv + idx(i, j));
            let yes = b.and(vec![c_pos, p]);
            let not_terms = (0..n)
                .map(|k| {
                    let x = b.literal(av + idx(i, k), false);
                    let y = b.literal(bv + idx(k, j), false);
                    b.or(vec![x, y])
                })
                .collect();
            let not_p = b.and(not_terms);
            let c_neg = b.literal(cv + idx(i, j), false);
            let no = b.and(vec![c_neg, not_p]);
            entries.push(b.or(vec![yes, no]));
        }
    }
    let out = b.and(entries);
    let c = b.finish(format!("bmpv_{n}"), out)?;
    let general = InstanceRecord::new(c, Family::Bmpv, &[("n", n as u64), ("variant", 1)], "n^(19/18)", lb);
    Ok(BmpvInstances { all_ones, general })
}
