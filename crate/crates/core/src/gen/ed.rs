//! Element distinctness as a depth-2 circuit, alone and composed with AND.
//!
//! Input `x{i}_{l}` is bit `l` (LSB first) of `x_i - 1`. The circuit
//! outputs 1 iff two positions collide.

use super::{and_n, log2_exact, Family, GenError, InstanceRecord};
use crate::circuit::{Builder, Circuit};
use crate::transform::{compose, Composed};

fn ed_circuit(n: usize) -> Result<Circuit, GenError> {
    let w = log2_exact("n", n)? as usize;
    if n < 2 {
        return Err(GenError::BadArity(format!("element distinctness needs n >= 2, got {n}")));
    }
    let inputs = (0..n).flat_map(|i| (0..w).map(move |l| format!("x{i}_{l}"))).collect();
    let mut b = Builder::new(inputs);
    let mut clauses = Vec::with_capacity(n * n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut lits = Vec::with_capacity(2 * w);
                for pos in [i, j] {
                    for l in 0..w {
                        lits.push(b.literal(pos * w + l, k >> l & 1 == 1));
                    }
                }
                clauses.push(b.and(lits));
            }
        }
    }
    let out = b.or(clauses);
    Ok(b.finish(format!("ed_{n}"), out)?)
}

/// Element distinctness on `n` values from `[n]`, `n` a power of two.
pub fn gen_ed(n: usize) -> Result<InstanceRecord, GenError> {
    let c = ed_circuit(n)?;
    let big_n = n * n.trailing_zeros() as usize;
    let l = (big_n as f64).log2();
    let lb = if l > 0.0 { (big_n as f64 / l).powf(2.0 / 3.0) } else { big_n as f64 };
    Ok(InstanceRecord::new(c, Family::Ed, &[("n", n as u64), ("N", big_n as u64)], "(N/log N)^(2/3)", lb))
}

/// `(n_f, n_g) = (2^round(log₂ n / 3), 2^round(2·log₂ n / 3))`.
pub fn ed_and_split(n_total: usize) -> Result<(usize, usize), GenError> {
    if n_total < 4 {
        return Err(GenError::BadParams(format!("n_total must be at least 4, got {n_total}")));
    }
    let l = (n_total as f64).log2();
    let n_f = 1usize << (l / 3.0).round() as u32;
    let n_g = 1usize << (2.0 * l / 3.0).round() as u32;
    if n_f < 2 {
        return Err(GenError::BadParams(format!("n_total = {n_total} leaves no room for element distinctness")));
    }
    Ok((n_f, n_g))
}

fn ed_and_composed(n_total: usize) -> Result<(Composed, usize, usize), GenError> {
    let (n_f, n_g) = ed_and_split(n_total)?;
    Ok((compose(&ed_circuit(n_f)?, &and_n(n_g))?, n_f, n_g))
}

/// Element distinctness on `n_f` values composed with AND on `n_g` bits.
pub fn gen_ed_and(n_total: usize) -> Result<InstanceRecord, GenError> {
    let (h, n_f, n_g) = ed_and_composed(n_total)?;
    let c = h.circuit.with_name(format!("ed_and_{n_total}"))?;
    Ok(InstanceRecord::new(
        c,
        Family::EdAnd,
        &[("n", n_total as u64), ("n_f", n_f as u64), ("n_g", n_g as u64)],
        "n^(5/9)",
        (n_total as f64).powf(5.0 / 9.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn encode(n: usize, xs: &[usize]) -> Vec<bool> {
        let w = n.trailing_zeros() as usize;
        xs.iter().flat_map(|&x| (0..w).map(move |l| (x - 1) >> l & 1 == 1)).collect()
    }

    #[test]
    fn n2_examples() {
        let r = gen_ed(2).unwrap();
        assert_eq!(r.metrics.gates, 3);
        assert!(!r.circuit.eval(&encode(2, &[1, 2])));
        assert!(r.circuit.eval(&encode(2, &[1, 1])));
    }

    #[test]
    fn n4_exhaustive() {
        let r = gen_ed(4).unwrap();
        assert_eq!(r.metrics.gates, 25);
        assert_eq!(r.metrics.alternation_depth, 2);
        for code in 0..256usize {
            let xs: Vec<usize> = (0..4).map(|i| code >> (2 * i) & 3).map(|v| v + 1).collect();
            let collide = (0..4).any(|i| (i + 1..4).any(|j| xs[i] == xs[j]));
            assert_eq!(r.circuit.eval(&encode(4, &xs)), collide);
        }
    }

    #[test]
    fn split() {
        assert_eq!(ed_and_split(512).unwrap(), (8, 64));
        assert!(ed_and_split(2).is_err());
    }

    #[test]
    fn ed_and_depth_and_semantics() {
        let r = gen_ed_and(64).unwrap();
        assert_eq!(r.metrics.alternation_depth, 2);
        let (h, _, _) = ed_and_composed(64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let bits: Vec<bool> = (0..h.circuit.num_inputs()).map(|_| rng.gen_bool(0.9)).collect();
            assert_eq!(h.circuit.eval(&bits), h.eval_blockwise(&bits));
        }
    }
}
