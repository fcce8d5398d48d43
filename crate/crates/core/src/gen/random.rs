//! Random NNF formulas for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Family, GenError, InstanceRecord};
use crate::circuit::{Builder, Circuit, GateKind, NodeId};

/// Leaves drawn from this many "hot" variables half of the time, so that
/// some literals reach high degree.
const HOT_VARS: usize = 3;

/// A random formula in negation normal form with `n` inputs `x0..` and
/// exactly `g` AND/OR gates (`g >= 1`). Gates form a random tree, every
/// gate has fanin at least 2, and no gate reads the same literal twice.
pub fn random_nnf_formula<R: Rng + ?Sized>(rng: &mut R, n: usize, g: usize) -> Circuit {
    assert!(n >= 2 && g >= 1, "need n >= 2 and g >= 1");
    let mut kinds = Vec::with_capacity(g);
    let mut gate_kids: Vec<Vec<usize>> = vec![Vec::new(); g];
    kinds.push(if rng.gen_bool(0.5) { GateKind::And } else { GateKind::Or });
    for i in 1..g {
        let parent = rng.gen_range(0..i);
        gate_kids[parent].push(i);
        let pk: GateKind = kinds[parent];
        kinds.push(if rng.gen_bool(0.75) { pk.dual() } else { pk });
    }

    let mut b = Builder::new((0..n).map(|i| format!("x{i}")).collect());
    let mut node = vec![NodeId(0); g];
    let hot = HOT_VARS.min(n);
    for i in (0..g).rev() {
        let mut kids: Vec<NodeId> = gate_kids[i].iter().map(|&c| node[c]).collect();
        let want = rng.gen_range(0..=4).max(2usize.saturating_sub(kids.len())).min(2 * n);
        let mut lits: Vec<usize> = Vec::with_capacity(want);
        while lits.len() < want {
            let var = if rng.gen_bool(0.5) { rng.gen_range(0..hot) } else { rng.gen_range(0..n) };
            let lit = 2 * var + usize::from(rng.gen_bool(0.5));
            if !lits.contains(&lit) {
                lits.push(lit);
            }
        }
        kids.extend(lits.into_iter().map(|l| b.literal(l / 2, l % 2 == 0)));
        kids.shuffle(rng);
        node[i] = b.push(kinds[i], kids);
    }
    b.finish("random", node[0]).expect("random formula is valid")
}

/// [`random_nnf_formula`] from a ChaCha8 stream seeded with `seed`.
pub fn gen_random(n: usize, g: usize, seed: u64) -> Result<InstanceRecord, GenError> {
    if n < 2 || g < 1 {
        return Err(GenError::BadParams(format!("random formulas need n >= 2 and g >= 1, got {n}, {g}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_nnf_formula(&mut rng, n, g);
    Ok(InstanceRecord::new(c, Family::Random, &[("n", n as u64), ("gates", g as u64), ("seed", seed)], "none", 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::Metrics;

    #[test]
    fn shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..20);
            let g = rng.gen_range(1..60);
            let c = random_nnf_formula(&mut rng, n, g);
            let m = Metrics::of(&c);
            assert_eq!(m.gates, g);
            assert!(m.is_formula && c.is_nnf());
            for gate in c.gates().iter().filter(|gt| gt.kind.is_and_or()) {
                assert!(gate.children.len() >= 2);
            }
        }
    }
}
