//! ONTO (surjectivity) and its iterated self-composition.
//!
//! The input encodes `f: [2n-2] -> [n]` with `log₂ n` bits per value:
//! input `f{i}_{l}` is bit `l` (LSB first) of `f(i+1) - 1`.

use super::{log2_exact, Family, GenError, InstanceRecord};
use crate::circuit::{Builder, Circuit};
use crate::transform::{compose, Composed};

/// Input bits for the map `values[i] = f(i+1)`, each in `1..=n`.
pub fn onto_bits(n: usize, values: &[usize]) -> Vec<bool> {
    let w = n.trailing_zeros() as usize;
    assert_eq!(values.len(), 2 * n - 2, "one value per domain point");
    values
        .iter()
        .flat_map(|&v| {
            assert!((1..=n).contains(&v), "value out of range");
            (0..w).map(move |l| (v - 1) >> l & 1 == 1)
        })
        .collect()
}

fn onto_circuit(n: usize) -> Result<Circuit, GenError> {
    let w = log2_exact("n", n)? as usize;
    if n < 2 {
        return Err(GenError::BadArity(format!("ONTO needs an even n >= 2, got {n}")));
    }
    let domain = 2 * n - 2;
    let inputs = (0..domain).flat_map(|i| (0..w).map(move |l| format!("f{i}_{l}"))).collect();
    let mut b = Builder::new(inputs);
    let mut clauses = Vec::with_capacity(n);
    for j in 0..n {
        let mut hits = Vec::with_capacity(domain);
        for i in 0..domain {
            // f(i) = j, bit by bit; a unit AND when w = 1 keeps the depth at 3
            let lits = (0..w).map(|l| b.literal(i * w + l, j >> l & 1 == 1)).collect();
            hits.push(b.and(lits));
        }
        clauses.push(b.or(hits));
    }
    let out = b.and(clauses);
    Ok(b.finish(format!("onto_{n}"), out)?)
}

fn bits_of(n: usize) -> usize {
    (2 * n - 2) * n.trailing_zeros() as usize
}

fn lb_onto(big_n: f64, log_power: i32) -> f64 {
    let l = big_n.log2();
    if l <= 0.0 {
        big_n
    } else {
        big_n / l.powi(log_power)
    }
}

/// ONTO for a power of two `n >= 2`, over `N = (2n-2)·log₂ n` bits.
pub fn gen_onto(n: usize) -> Result<InstanceRecord, GenError> {
    let c = onto_circuit(n)?;
    let big_n = bits_of(n);
    Ok(InstanceRecord::new(c, Family::Onto, &[("n", n as u64), ("N", big_n as u64)], "N/log N", lb_onto(big_n as f64, 1)))
}

struct Iterated {
    circuit: Circuit,
    composed: Option<Composed>,
    /// Input bits of the underlying (undoubled) composed function.
    logical_inputs: usize,
    /// Size exponent as a fraction.
    r: (u64, u64),
}

/// ONTO instance whose bit count is nearest `target` (ties to the smaller).
fn nearest_onto(target: f64) -> usize {
    let mut best = 2usize;
    let mut p = 4usize;
    while (bits_of(p) as f64) < 4.0 * target.max(2.0) {
        if (bits_of(p) as f64 - target).abs() < (bits_of(best) as f64 - target).abs() {
            best = p;
        }
        p *= 2;
    }
    best
}

fn iterate(target: f64, iterations: u32) -> Result<Iterated, GenError> {
    if iterations == 0 {
        let n = nearest_onto(target);
        return Ok(Iterated { circuit: onto_circuit(n)?, composed: None, logical_inputs: bits_of(n), r: (2, 1) });
    }
    let (a, b) = exponent(iterations - 1);
    let r = a as f64 / b as f64;
    let m = target.powf(r / (2.0 * r - 1.0));
    let f = iterate(m, iterations - 1)?;
    let g = iterate(target / m, iterations - 1)?;
    let h = compose(&f.circuit, &g.circuit)?;
    Ok(Iterated {
        circuit: h.circuit.clone(),
        composed: Some(h),
        logical_inputs: f.logical_inputs * g.logical_inputs,
        r: exponent(iterations),
    })
}

/// `r_0 = 2`, `r_{i+1} = r_i² / (2 r_i - 1)`, as an exact fraction.
fn exponent(iterations: u32) -> (u64, u64) {
    let (mut a, mut b) = (2u64, 1u64);
    for _ in 0..iterations {
        (a, b) = (a * a, b * (2 * a - b));
    }
    (a, b)
}

/// Iterated self-composition of ONTO aimed at `target` logical input bits.
/// Each step composes the previous construction on `m` bits with itself on
/// `target/m` bits, where `m^(2r-1) = target^r`.
pub fn gen_onto_iter(target: usize, iterations: u32) -> Result<InstanceRecord, GenError> {
    if target < 2 || iterations > 4 {
        return Err(GenError::BadParams(format!("need target >= 2 and iterations <= 4, got {target}, {iterations}")));
    }
    let it = iterate(target as f64, iterations)?;
    let c = it.circuit.with_name(format!("onto_iter_{target}_{iterations}"))?;
    let big_n = it.logical_inputs;
    let log_power = 1i32 << iterations;
    Ok(InstanceRecord::new(
        c,
        Family::OntoIter,
        &[
            ("target", target as u64),
            ("iterations", iterations as u64),
            ("N", big_n as u64),
            ("size_exponent_num", it.r.0),
            ("size_exponent_den", it.r.1),
        ],
        "N/log(N)^(2^iterations)",
        lb_onto(big_n as f64, log_power),
    ))
}

/// The last composition step of [`gen_onto_iter`], for blockwise checks.
pub fn onto_iter_composed(target: usize, iterations: u32) -> Result<Option<Composed>, GenError> {
    Ok(iterate(target as f64, iterations)?.composed)
}
