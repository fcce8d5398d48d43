//! Exact certificate complexity by exhaustive search.
//!
//! A certificate for input `x` is a set of positions such that every input
//! agreeing with `x` there has the same value as `x`. `C1` (`C0`) is the
//! largest, over 1-inputs (0-inputs), of the smallest certificate.
//!
//! Up to [`CUBE_DP_MAX`] inputs every subcube of the hypercube is
//! classified once (`3^n` cubes) and minimal certificates are read off by
//! dynamic programming. Larger inputs, up to [`MAX_INPUTS`], fall back to
//! enumerating position subsets per input in increasing size.

use serde::Serialize;

use super::AnalysisError;
use crate::circuit::Circuit;

pub const MAX_INPUTS: usize = 25;
pub const CUBE_DP_MAX: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// The input, as bits in declared order.
    pub input: String,
    /// Fixed positions and their values.
    pub fixed: Vec<(String, bool)>,
    #[serde(skip)]
    pub mask: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub c0: Option<usize>,
    pub c1: Option<usize>,
    pub witness0: Option<Certificate>,
    pub witness1: Option<Certificate>,
}

struct Table {
    n: usize,
    words: Vec<u64>,
}

impl Table {
    fn of(c: &Circuit) -> Table {
        Table { n: c.num_inputs(), words: c.truth_table() }
    }

    fn get(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// All inputs agreeing with `x` on `mask` share its value.
    fn forces(&self, x: u32, mask: u32) -> bool {
        let v = self.get(x);
        let free = !mask & ((1u64 << self.n) - 1) as u32;
        let base = x & mask;
        let mut sub = free;
        loop {
            if self.get(base | sub) != v {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & free;
        }
    }
}

/// `true`/`false` if fixing `mask` to the bits of `x` forces that value,
/// `None` otherwise.
pub fn forced_value(c: &Circuit, x: u32, mask: u32) -> Option<bool> {
    let t = Table::of(c);
    t.forces(x, mask).then(|| t.get(x))
}

fn witness(c: &Circuit, x: u32, mask: u32) -> Certificate {
    let n = c.num_inputs();
    Certificate {
        input: (0..n).map(|v| if x >> v & 1 == 1 { '1' } else { '0' }).collect(),
        fixed: (0..n).filter(|v| mask >> v & 1 == 1).map(|v| (c.inputs()[v].clone(), x >> v & 1 == 1)).collect(),
        mask,
    }
}

/// Smallest certificate of every input, as (size, mask).
fn per_input_cube_dp(t: &Table) -> Vec<(usize, u32)> {
    let n = t.n;
    let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
    let cubes = pow3[n];
    // digit 0/1: fixed to that value, 2: free
    const MIXED: u8 = 2;
    let mut mono = vec![0u8; cubes];
    for c in 0..cubes {
        let mut rest = c;
        let mut point = 0u32;
        let mut free = None;
        for i in 0..n {
            match rest % 3 {
                1 => point |= 1 << i,
                2 => {
                    free = Some(i);
                    break;
                }
                _ => {}
            }
            rest /= 3;
        }
        mono[c] = match free {
            None => u8::from(t.get(point)),
            Some(i) => {
                let (a, b) = (mono[c - 2 * pow3[i]], mono[c - pow3[i]]);
                if a == b {
                    a
                } else {
                    MIXED
                }
            }
        };
    }
    const INF: u8 = u8::MAX;
    let mut best = vec![INF; cubes];
    let mut arg = vec![0u32; cubes];
    for c in (0..cubes).rev() {
        let mut rest = c;
        let mut fixed = 0u8;
        for &p in &pow3[..n] {
            let d = rest % 3;
            rest /= 3;
            if d != 2 {
                fixed += 1;
                let parent = c + (2 - d) * p;
                if best[parent] < best[c] {
                    best[c] = best[parent];
                    arg[c] = arg[parent];
                }
            }
        }
        if mono[c] != MIXED && fixed <= best[c] {
            best[c] = fixed;
            arg[c] = c as u32;
        }
    }
    (0..1u32 << n)
        .map(|x| {
            let c: usize = (0..n).filter(|&i| x >> i & 1 == 1).map(|i| pow3[i]).sum();
            let cube = arg[c] as usize;
            let mask = (0..n).filter(|&i| cube / pow3[i] % 3 != 2).fold(0u32, |m, i| m | 1 << i);
            (best[c] as usize, mask)
        })
        .collect()
}

/// Smallest certificate of every input by subset enumeration.
fn per_input_subsets(t: &Table) -> Vec<(usize, u32)> {
    let n = t.n;
    (0..1u32 << n)
        .map(|x| {
            for k in 0..=n {
                if let Some(mask) = subsets_of_size(n, k).find(|&m| t.forces(x, m)) {
                    return (k, mask);
                }
            }
            unreachable!("fixing every position forces the value")
        })
        .collect()
}

/// `k`-subsets of `0..n` as masks, in increasing numeric order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { Some(0u64) } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u32)
    })
}

fn report(c: &Circuit, t: &Table, per_input: &[(usize, u32)]) -> CertificateReport {
    let mut worst: [Option<(usize, u32, u32)>; 2] = [None, None];
    for (x, &(size, mask)) in per_input.iter().enumerate() {
        let v = usize::from(t.get(x as u32));
        if worst[v].is_none_or(|(s, _, _)| size > s) {
            worst[v] = Some((size, x as u32, mask));
        }
    }
    let w = |v: usize| worst[v].map(|(_, x, mask)| witness(c, x, mask));
    CertificateReport {
        n: t.n,
        c0: worst[0].map(|w| w.0),
        c1: worst[1].map(|w| w.0),
        witness0: w(0),
        witness1: w(1),
    }
}

/// Exact `C0` and `C1` with witnesses. `c0` (`c1`) is `None` when the
/// function has no 0-input (1-input).
pub fn certificate_complexity(c: &Circuit) -> Result<CertificateReport, AnalysisError> {
    let n = c.num_inputs();
    if n > MAX_INPUTS {
        return Err(AnalysisError::TooLarge { n, max: MAX_INPUTS });
    }
    let t = Table::of(c);
    let per_input = if n <= CUBE_DP_MAX { per_input_cube_dp(&t) } else { per_input_subsets(&t) };
    Ok(report(c, &t, &per_input))
}

/// Same as [`certificate_complexity`] but always by subset enumeration.
pub fn certificate_complexity_by_subsets(c: &Circuit) -> Result<CertificateReport, AnalysisError> {
    let n = c.num_inputs();
    if n > MAX_INPUTS {
        return Err(AnalysisError::TooLarge { n, max: MAX_INPUTS });
    }
    let t = Table::of(c);
    Ok(report(c, &t, &per_input_subsets(&t)))
}
