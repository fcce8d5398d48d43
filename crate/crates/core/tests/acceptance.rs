//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{bits_of, not_free, random_bits, random_dag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use readmany::analysis::{bound_for, certificate_complexity, certificate_complexity_by_subsets, ledger_audit, Regime, Term};
use readmany::gen::{self, and_n, random_nnf_formula, BitMatrix, ParityPreset};
use readmany::metrics::alternation_depth;
use readmany::prune::{prune, prune_unsimplified, threshold, PassKind, PruneReport, SearchConfig};
use readmany::text::parse_bytes;
use readmany::transform::{compose, monotonize, TopGate};
use readmany::{parse, print, Assignment, Circuit, GateKind, Metrics};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn size_of(c: &Circuit) -> f64 {
    Metrics::of(c).size.to_f64()
}

// ---------------------------------------------------------------- pruning runs

struct Run {
    formula: Circuit,
    bits: Vec<bool>,
    raw: Circuit,
    pruned: Circuit,
    report: PruneReport,
    cfg: SearchConfig,
}

struct Runs {
    runs: Vec<Run>,
    elapsed: Duration,
}

/// The 200 formulas x 5 assignments shared by the pruning criteria.
fn pruning_runs() -> &'static Runs {
    static RUNS: OnceLock<Runs> = OnceLock::new();
    RUNS.get_or_init(|| {
        let start = Instant::now();
        let mut runs = Vec::with_capacity(1000);
        for i in 0..200u64 {
            let mut r = rng(0x5eed_0000 + i);
            let n = r.gen_range(8..=64);
            let g = r.gen_range(16..=256);
            let formula = random_nnf_formula(&mut r, n, g);
            for j in 0..5u64 {
                let bits = random_bits(&mut r, n);
                let x = Assignment::from_bits(&formula, &bits).expect("bits cover inputs");
                let cfg = SearchConfig { rng_seed: i * 5 + j, ..SearchConfig::default() };
                let (raw, report) = prune_unsimplified(&formula, &x, &cfg).expect("valid NNF formula");
                let (pruned, again) = prune(&formula, &x, &cfg).expect("valid NNF formula");
                assert_eq!(report, again, "prune and prune_unsimplified report the same run");
                runs.push(Run { formula: formula.clone(), bits, raw, pruned, report, cfg });
            }
        }
        Runs { runs, elapsed: start.elapsed() }
    })
}

fn c1_pruning_correctness() -> Outcome {
    let runs = pruning_runs();
    let mut agree = 0;
    for run in &runs.runs {
        let want = run.formula.eval(&run.bits);
        if run.pruned.eval(&run.bits) == want && run.raw.eval(&run.bits) == want {
            agree += 1;
        }
    }
    let total = runs.runs.len();
    check!(agree == total, "{agree}/{total} runs agree");
    check!(runs.elapsed < Duration::from_secs(60), "took {:.1?}", runs.elapsed);
    let with_rounds = runs.runs.iter().filter(|r| r.report.passes.iter().any(|p| !p.m_sequence.is_empty())).count();

    // PARITY_8 composed with AND_8 under the all-ones assignment
    let h = gen::gen_parity_and(64, 8).map_err(|e| e.to_string())?.circuit;
    let ones = vec![true; h.num_inputs()];
    let x = Assignment::from_bits(&h, &ones).unwrap();
    let (out, rep) = prune(&h, &x, &SearchConfig::default()).map_err(|e| e.to_string())?;
    check!(out.eval(&ones) == h.eval(&ones), "parity8 o and8: pruned value differs");
    check!(rep.pass(PassKind::And).m_sequence.is_empty(), "parity8 o and8: AND pass marked a literal");

    Ok(format!(
        "{agree}/{total} agree ({with_rounds} runs eliminated literals) in {:.2} s; parity8 o and8 all-ones: f'(x) = f(x) = {}, AND pass unmarked",
        runs.elapsed.as_secs_f64(),
        u8::from(h.eval(&ones))
    ))
}

/// Distinct OR and AND gates fed by each literal `2v + negated`.
fn degrees_oracle(c: &Circuit) -> (Vec<usize>, Vec<usize>) {
    let lits = 2 * c.num_inputs();
    let mut or = vec![0; lits];
    let mut and = vec![0; lits];
    let mut reach = vec![false; c.len()];
    reach[c.output().index()] = true;
    for i in (0..c.len()).rev() {
        if !reach[i] {
            continue;
        }
        let g = &c.gates()[i];
        let mut seen = BTreeSet::new();
        for ch in &g.children {
            reach[ch.index()] = true;
            let lit = match c.kind(*ch) {
                GateKind::Input(v) => Some(2 * v),
                GateKind::Not => match c.kind(c.gate(*ch).children[0]) {
                    GateKind::Input(v) => Some(2 * v + 1),
                    _ => None,
                },
                _ => None,
            };
            if let Some(l) = lit {
                seen.insert(l);
            }
        }
        let target = match g.kind {
            GateKind::Or => &mut or,
            GateKind::And => &mut and,
            _ => continue,
        };
        for l in seen {
            target[l] += 1;
        }
    }
    (or, and)
}

/// Literal leaf occurrences reachable from the output.
fn literal_leaves(c: &Circuit) -> usize {
    let mut count = vec![0usize; c.len()];
    count[c.output().index()] = 1;
    let mut total = 0;
    for i in (0..c.len()).rev() {
        let g = &c.gates()[i];
        match g.kind {
            GateKind::Input(_) => total += count[i],
            GateKind::Not if matches!(c.kind(g.children[0]), GateKind::Input(_)) => total += count[i],
            _ => {
                for ch in &g.children {
                    count[ch.index()] += count[i];
                }
            }
        }
    }
    total
}

fn c2_pruned_size_bound() -> Outcome {
    let runs = pruning_runs();
    let mut max_ratio: f64 = 0.0;
    for (k, run) in runs.runs.iter().enumerate() {
        let m = Metrics::of(&run.formula);
        let tau = threshold(m.gates);
        check!(tau * tau >= m.gates && (tau == 0 || (tau - 1) * (tau - 1) < m.gates), "run {k}: tau {tau} is not ceil(sqrt({}))", m.gates);
        let (or, and) = degrees_oracle(&run.raw);
        let worst = or.iter().chain(&and).copied().max().unwrap_or(0);
        check!(worst <= tau, "run {k}: a literal has degree {worst} > tau = {tau}");
        check!(run.report.max_or_degree <= tau && run.report.max_and_degree <= tau, "run {k}: report degrees exceed tau");
        let cap = (4 * m.n * tau) as f64;
        let leaves = literal_leaves(&run.raw) as f64;
        check!(leaves <= cap, "run {k}: {leaves} literal leaves > 4 n tau = {cap}");
        let s = size_of(&run.pruned);
        check!(s <= cap, "run {k}: S' = {s} > 4 n tau = {cap}");
        max_ratio = max_ratio.max(s / cap);
    }
    Ok(format!("{} runs, 0 violations, max S'/(4 n tau) = {max_ratio:.3}", runs.runs.len()))
}

/// Small instances of every family that is an NNF formula.
fn family_formulas() -> Vec<Circuit> {
    let mut out = vec![
        gen::gen_parity(2).unwrap().circuit,
        gen::gen_parity(4).unwrap().circuit,
        gen::gen_parity(8).unwrap().circuit,
        gen::gen_parity_and(8, 2).unwrap().circuit,
        gen::gen_parity_and(16, 4).unwrap().circuit,
        gen::gen_onto(2).unwrap().circuit,
        gen::gen_onto(4).unwrap().circuit,
        gen::gen_ed(2).unwrap().circuit,
        gen::gen_ed(4).unwrap().circuit,
        gen::gen_ed_and(16).unwrap().circuit,
        gen::gen_bvpv(&"110/011/101".parse().unwrap()).unwrap().circuit,
        gen::gen_bmpv(&BitMatrix::ones(2)).unwrap().all_ones.circuit,
        gen::gen_bmpv(&BitMatrix::identity(2)).unwrap().general.circuit,
        gen::gen_projective_plane(2).unwrap().1.circuit,
        gen::gen_projective_plane(3).unwrap().1.circuit,
        gen::gen_onto_iter(16, 1).unwrap().circuit,
    ];
    out.retain(|c| {
        let m = Metrics::of(c);
        m.is_formula && c.is_nnf()
    });
    out
}

fn c3_ledger_bound() -> Outcome {
    let runs = pruning_runs();
    let mut max_ratio: f64 = 0.0;
    for (k, run) in runs.runs.iter().enumerate() {
        let m = Metrics::of(&run.formula);
        let audit = ledger_audit(&run.report, &m, &run.cfg);
        check!(audit.passed, "run {k}: audit failed at {:?}", audit.failure);
        let tau = run.report.tau;
        for p in &run.report.passes {
            check!(p.m_sequence.windows(2).all(|w| w[0] > w[1]), "run {k}: m_sequence not strictly decreasing");
            check!(p.rounds <= tau + 1, "run {k}: {} rounds > tau + 1 = {}", p.rounds, tau + 1);
        }
        // closed form stated for the default constants
        let (a, c) = (run.cfg.alpha, run.cfg.budget_factor);
        let n = m.n as f64;
        let stated = c * a * (2.0 * (n * (tau + 1) as f64).sqrt() + 2.0 * n.sqrt()) + 2.0 * (c * a * (2.0 * n).sqrt()).ceil();
        let charged = run.report.ledger.charged() as f64;
        check!(charged <= stated, "run {k}: charged {charged} > closed form {stated:.2}");
        max_ratio = max_ratio.max(charged / stated);
    }

    let families = family_formulas();
    let mut family_runs = 0;
    for (i, f) in families.iter().enumerate() {
        let m = Metrics::of(f);
        let mut r = rng(900 + i as u64);
        let reps = 100usize.div_ceil(families.len());
        for s in 0..reps {
            let bits = random_bits(&mut r, f.num_inputs());
            let x = Assignment::from_bits(f, &bits).unwrap();
            let cfg = SearchConfig { rng_seed: s as u64, ..SearchConfig::default() };
            let (out, rep) = prune(f, &x, &cfg).map_err(|e| format!("family {}: {e}", f.name()))?;
            check!(out.eval(&bits) == f.eval(&bits), "family {}: pruned value differs", f.name());
            let audit = ledger_audit(&rep, &m, &cfg);
            check!(audit.passed, "family {}: audit failed at {:?}", f.name(), audit.failure);
            family_runs += 1;
        }
    }
    Ok(format!(
        "{} random runs audited, max charged/closed form = {max_ratio:.3}; {family_runs} runs over {} generator formulas audited",
        runs.runs.len(),
        families.len()
    ))
}

// ----------------------------------------------------------------- generators

fn c4_parity() -> Outcome {
    for n in [2usize, 4, 8, 16] {
        let r = gen::gen_parity(n).map_err(|e| e.to_string())?;
        check!(r.metrics.size.to_u64() == Some((n * n) as u64), "n={n}: S = {}", r.metrics.size.to_f64());
        check!(r.metrics.gates == n * n - 1, "n={n}: G = {}", r.metrics.gates);
        if n <= 8 {
            for a in 0..1u64 << n {
                check!(r.circuit.eval(&bits_of(a, n)) == (a.count_ones() % 2 == 1), "n={n}: wrong value at {a:b}");
            }
        }
    }
    Ok("S = n^2, G = n^2 - 1 for n in {2,4,8,16}; XOR agreement exhaustive for n in {2,4,8}".into())
}

fn input_positions(c: &Circuit, prefix: &str, count: usize, width: usize) -> Vec<Vec<usize>> {
    (0..count)
        .map(|i| (0..width).map(|l| c.input_index(&format!("{prefix}{i}_{l}")).expect("input exists")).collect())
        .collect()
}

fn decode(bits: &[bool], pos: &[Vec<usize>]) -> Vec<usize> {
    pos.iter().map(|p| p.iter().enumerate().map(|(l, &k)| usize::from(bits[k]) << l).sum()).collect()
}

fn c5_onto() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in [2usize, 4] {
        let c = gen::gen_onto(n).map_err(|e| e.to_string())?.circuit;
        let w = n.trailing_zeros() as usize;
        let pos = input_positions(&c, "f", 2 * n - 2, w);
        let k = c.num_inputs();
        for a in 0..1u64 << k {
            let bits = bits_of(a, k);
            let image: BTreeSet<usize> = decode(&bits, &pos).into_iter().collect();
            check!(c.eval(&bits) == (image.len() == n), "n={n}: wrong value at {a:b}");
            checked += 1;
        }
        let d = alternation_depth(&c);
        check!(d == 3, "n={n}: alternation depth {d}");
    }
    let t = start.elapsed();
    check!(t < Duration::from_secs(5), "took {t:.1?}");
    Ok(format!("{checked} assignments agree with surjectivity in {:.2} s; alternation depth 3", t.as_secs_f64()))
}

/// Longest path counting AND and OR gates only; literals are leaves.
fn and_or_depth(c: &Circuit) -> usize {
    let mut d = vec![0usize; c.len()];
    for (i, g) in c.gates().iter().enumerate() {
        let below = g.children.iter().map(|ch| d[ch.index()]).max().unwrap_or(0);
        d[i] = below + usize::from(g.kind.is_and_or());
    }
    d[c.output().index()]
}

fn c6_ed() -> Outcome {
    for n in [2usize, 4] {
        let r = gen::gen_ed(n).map_err(|e| e.to_string())?;
        let want = n * (n - 1) / 2 * n + 1;
        check!(r.metrics.gates == want, "n={n}: G = {} != {want}", r.metrics.gates);
        let d = and_or_depth(&r.circuit);
        check!(d == 2, "n={n}: AND/OR depth {d}");
        check!(r.metrics.alternation_depth == 2, "n={n}: alternation depth {}", r.metrics.alternation_depth);
        let c = &r.circuit;
        let pos = input_positions(c, "x", n, n.trailing_zeros() as usize);
        for a in 0..1u64 << c.num_inputs() {
            let bits = bits_of(a, c.num_inputs());
            let vals = decode(&bits, &pos);
            let distinct: BTreeSet<usize> = vals.iter().copied().collect();
            check!(c.eval(&bits) == (distinct.len() < n), "n={n}: wrong value at {a:b}");
        }
    }
    Ok("G = C(n,2) n + 1 and depth 2 for n in {2,4}; exhaustive agreement with collision check".into())
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> BitMatrix {
    loop {
        let rows: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| r.gen_bool(0.5)).collect()).collect();
        if rows.iter().all(|row| row.iter().any(|&b| b)) {
            return BitMatrix::from_rows(rows).unwrap();
        }
    }
}

fn composition_pool(r: &mut ChaCha8Rng) -> Vec<Circuit> {
    vec![
        gen::gen_parity(2).unwrap().circuit,
        gen::gen_parity(4).unwrap().circuit,
        gen::gen_onto(2).unwrap().circuit,
        gen::gen_ed(2).unwrap().circuit,
        gen::gen_bvpv(&random_matrix(r, 2)).unwrap().circuit,
        gen::gen_bvpv(&random_matrix(r, 3)).unwrap().circuit,
        gen::gen_bmpv(&random_matrix(r, 2)).unwrap().all_ones.circuit,
        gen::gen_projective_plane(2).unwrap().1.circuit,
        and_n(2),
        and_n(3),
    ]
}

fn c7_composition() -> Outcome {
    let mut r = rng(77);
    let pool = composition_pool(&mut r);
    let mut pairs = BTreeSet::new();
    for k in 0..20 {
        let f = &pool[r.gen_range(0..pool.len())];
        let g = &pool[r.gen_range(0..pool.len())];
        let h = compose(f, g).map_err(|e| e.to_string())?;
        let tag = format!("pair {k} ({} o {})", f.name(), g.name());
        let (kf, kg, kh) = (alternation_depth(f), alternation_depth(g), alternation_depth(&h.circuit));
        check!(kh == kf + kg - 1, "{tag}: alternation depth {kh} != {kf} + {kg} - 1");
        let (gf, gg, gh) = (Metrics::of(f).gates, Metrics::of(g).gates, Metrics::of(&h.circuit).gates);
        let cap = 2 * gf + 4 * f.num_inputs() * gg;
        check!(gh <= cap, "{tag}: G_h = {gh} > 2 G_f + 4 n_f G_g = {cap}");
        check!(not_free(&h.circuit), "{tag}: NOT gate in h");
        for _ in 0..1000 {
            let bits = random_bits(&mut r, h.circuit.num_inputs());
            check!(h.circuit.eval(&bits) == h.eval_blockwise(&bits), "{tag}: differs from blockwise evaluation");
        }
        // sequential evaluation of the original f and g on lifted inputs
        for _ in 0..1000 {
            let blocks: Vec<Vec<bool>> = (0..f.num_inputs()).map(|_| random_bits(&mut r, g.num_inputs())).collect();
            let y: Vec<bool> = blocks.iter().map(|z| g.eval(z) != h.inner_negated).collect();
            let lifted = h.lift(&blocks).ok_or_else(|| format!("{tag}: constant inner circuit"))?;
            check!(h.circuit.eval(&lifted) == f.eval(&y), "{tag}: differs from f(g(z_1), ..., g(z_n))");
        }
        pairs.insert(format!("{} o {}", f.name(), g.name()));
    }
    Ok(format!("20 pairs ({} distinct) x (1000 blockwise + 1000 lifted) assignments; depth and gate bounds hold", pairs.len()))
}

fn c8_monotonize() -> Outcome {
    let mut r = rng(88);
    let mut circuits: Vec<Circuit> = (0..150)
        .map(|_| {
            let n = r.gen_range(1..=8);
            let k = r.gen_range(1..60);
            random_dag(&mut r, n, k)
        })
        .collect();
    circuits.extend((0..50).map(|_| {
        let n = r.gen_range(2..=8);
        let g = r.gen_range(1..40);
        random_nnf_formula(&mut r, n, g)
    }));
    circuits.extend([
        gen::gen_parity(8).unwrap().circuit,
        gen::gen_ed(4).unwrap().circuit,
        gen::gen_projective_plane(2).unwrap().1.circuit,
        gen::gen_bvpv(&"101/011/110".parse().unwrap()).unwrap().circuit,
    ]);
    let mut formulas = 0;
    for (k, c) in circuits.iter().enumerate() {
        let mc = Metrics::of(c);
        for want in [TopGate::And, TopGate::Or, TopGate::Any] {
            let m = monotonize(c, want);
            let mm = Metrics::of(&m.circuit);
            check!(not_free(&m.circuit), "circuit {k}: NOT gate survives");
            check!(mm.gates <= 2 * mc.gates, "circuit {k}: G' = {} > 2 G = {}", mm.gates, 2 * mc.gates);
            if mc.is_formula {
                check!(mm.size == mc.size, "circuit {k}: formula size changed");
            }
            let n = c.num_inputs();
            for a in 0..1u64 << n {
                let bits = bits_of(a, n);
                let doubled: Vec<bool> = bits.iter().flat_map(|&b| [b, !b]).collect();
                check!(m.circuit.eval(&doubled) == (c.eval(&bits) != m.negated), "circuit {k}: wrong value at {a:b}");
            }
        }
        formulas += usize::from(mc.is_formula);
    }
    Ok(format!("{} circuits ({formulas} formulas) x 3 top-gate choices, exhaustive for n <= 8", circuits.len()))
}

fn c9_projective_plane() -> Outcome {
    let mut measured = Vec::new();
    for q in [2u64, 3, 5, 7] {
        let (plane, rec) = gen::gen_projective_plane(q).map_err(|e| e.to_string())?;
        let q = q as usize;
        let n = q * q + q + 1;
        check!(plane.points.len() == n && plane.lines.len() == n, "q={q}: {} points, {} lines", plane.points.len(), plane.lines.len());
        let on: Vec<BTreeSet<usize>> = plane.lines.iter().map(|l| l.iter().copied().collect()).collect();
        check!(on.iter().all(|l| l.len() == q + 1), "q={q}: a line without q+1 points");
        for p in 0..n {
            let through = on.iter().filter(|l| l.contains(&p)).count();
            check!(through == q + 1, "q={q}: point {p} on {through} lines");
        }
        for a in 0..n {
            for b in a + 1..n {
                let common = on.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                check!(common == 1, "q={q}: points {a},{b} share {common} lines");
                let meet = on[a].intersection(&on[b]).count();
                check!(meet == 1, "q={q}: lines {a},{b} meet in {meet} points");
            }
        }
        let frame = plane.frame().ok_or_else(|| format!("q={q}: no frame"))?;
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            let (x, y, z) = (frame[i], frame[j], frame[k]);
            check!(!on.iter().any(|l| l.contains(&x) && l.contains(&y) && l.contains(&z)), "q={q}: frame has three collinear points");
        }
        check!(rec.circuit.num_inputs() == n, "q={q}: {} inputs", rec.circuit.num_inputs());
        check!(rec.metrics.gates == n + 1, "q={q}: {} gates", rec.metrics.gates);
        if q <= 3 {
            let c = &rec.circuit;
            for a in 0..1u64 << n {
                let bits = bits_of(a, n);
                let want = plane.lines.iter().any(|l| l.iter().all(|&p| bits[c.input_index(&format!("x{p}")).unwrap()]));
                check!(c.eval(&bits) == want, "q={q}: wrong value at {a:b}");
            }
            let cert = certificate_complexity(c).map_err(|e| e.to_string())?;
            check!(cert.c1 == Some(q + 1), "q={q}: C1 = {:?}", cert.c1);
            if q == 2 {
                let by_subsets = certificate_complexity_by_subsets(c).map_err(|e| e.to_string())?;
                check!((by_subsets.c0, by_subsets.c1) == (cert.c0, cert.c1), "q=2: oracles disagree");
            }
            measured.push(format!("q={q}: C0 = {}", cert.c0.map_or("none".into(), |v| v.to_string())));
        }
    }
    Ok(format!("incidence invariants for q in {{2,3,5,7}}; n inputs, n+1 gates; C1 = q+1 for q in {{2,3}}; measured {}", measured.join(", ")))
}

fn c10_bounds() -> Outcome {
    let cases = [
        (10usize, 200.0, 150usize, Regime::InputLimited, Term::N),
        (64, 64.0 * 64.0, 64 * 64, Regime::InputLimited, Term::N),
        (100, 900.0, 400, Regime::SizeLimited, Term::SqrtS),
        (64, 64.0 * 8.0, 1000, Regime::SizeLimited, Term::SqrtS),
        (100, 400.0, 4, Regime::GateLimited, Term::NG),
        (64, 64.0 * 64.0, 256, Regime::GateLimited, Term::NG),
    ];
    for (n, s, g, regime, term) in cases {
        let b = bound_for(n, s, g);
        check!(b.regime == regime && b.active_term == term, "({n}, {s}, {g}): got {:?}/{:?}", b.regime, b.active_term);
    }
    // presets pick the arity the regime argument prescribes
    let m = ParityPreset::SizeLimited { n: 64, size: 512 }.arity().map_err(|e| e.to_string())?;
    check!(m == 8, "size-limited preset: m = {m}, want S/n = 8");
    let m = ParityPreset::GateLimited { n: 64, gates: 256 }.arity().map_err(|e| e.to_string())?;
    check!(m == 16, "gate-limited preset: m = {m}, want sqrt(G) = 16");
    let m = ParityPreset::InputLimited { n: 64, fraction: 0.5 }.arity().map_err(|e| e.to_string())?;
    check!(m == 32, "n-limited preset: m = {m}, want n/2 = 32");

    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let mut r = rng(1010);
    let trials = 100_000;
    for _ in 0..trials {
        let n = r.gen_range(1..5000usize);
        let s = r.gen_range(1..50_000_000u64) as f64;
        let g = r.gen_range(1..50_000_000usize);
        let b = bound_for(n, s, g);
        let (tn, ts, tg) = (n as f64, s.sqrt(), (n as f64).sqrt() * (g as f64).powf(0.25));
        let want = tn.min(ts).min(tg);
        check!(close(b.upper, want), "({n}, {s}, {g}): upper {} != {want}", b.upper);
        check!(close(b.term_n, tn) && close(b.term_sqrt_s, ts) && close(b.term_ng, tg), "({n}, {s}, {g}): term mismatch");
        let expect = if tn <= ts && tn <= tg {
            Regime::InputLimited
        } else if ts <= tg {
            Regime::SizeLimited
        } else {
            Regime::GateLimited
        };
        let margin = [tn, ts, tg].iter().filter(|&&t| (t - want).abs() <= 1e-9 * want).count();
        check!(margin > 1 || b.regime == expect, "({n}, {s}, {g}): regime {:?}, minimum says {expect:?}", b.regime);
    }
    Ok(format!("{} regime examples and 3 presets classify correctly; {trials} random triples match recomputation to 1e-12", cases.len()))
}

// ------------------------------------------------------------------------ CLI

fn rmf(dir: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rmf")).current_dir(dir).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("rmf {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    Ok(bytes)
}

/// Runs a fixed set of pipelines in `dir`; returns every output produced.
fn pipelines(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let mut out = BTreeMap::new();
    let gens: [(&str, &[&str]); 11] = [
        ("parity", &["--n", "8"]),
        ("parity-and", &["--n", "16", "--m", "4"]),
        ("onto", &["--n", "4"]),
        ("onto-iter", &["--target", "16", "--iterations", "1"]),
        ("ed", &["--n", "4"]),
        ("ed-and", &["--n", "16"]),
        ("bvpv", &["--matrix", "101/011/110"]),
        ("bmpv", &["--matrix", "11/01"]),
        ("projplane", &["--q", "3"]),
        ("random", &["--n", "24", "--gates", "150", "--seed", "5"]),
        ("random", &["--n", "40", "--gates", "250", "--seed", "6"]),
    ];
    for (i, (family, params)) in gens.iter().enumerate() {
        let file = format!("g{i}.rmf");
        let mut args = vec!["gen", family];
        args.extend_from_slice(params);
        args.extend(["-o", &file]);
        rmf(dir, &args)?;
        out.insert(format!("{file} stats"), rmf(dir, &["stats", &file, "--json"])?);
        out.insert(format!("{file} monotonize"), rmf(dir, &["monotonize", &file, "--top", "and"])?);
        out.insert(format!("{file} simplify"), rmf(dir, &["simplify", &file])?);
    }
    for i in [9, 10] {
        let file = format!("g{i}.rmf");
        let n = if i == 9 { 24 } else { 40 };
        let bits: String = (0..n).map(|k| if (k * 7 + i) % 3 == 0 { '1' } else { '0' }).collect();
        for seed in ["0", "42"] {
            let rep = format!("rep{i}_{seed}.json");
            let pruned = format!("p{i}_{seed}.rmf");
            out.insert(
                format!("{file} prune {seed}"),
                rmf(dir, &["prune", &file, "--assign", &bits, "--seed", seed, "--report", &rep, "-o", &pruned])?,
            );
            out.insert(format!("{file} eval pruned {seed}"), rmf(dir, &["eval", &pruned, "--assign", &bits, "--count"])?);
        }
    }
    rmf(dir, &["gen", "parity", "--n", "2", "-o", "f.rmf"])?;
    rmf(dir, &["gen", "onto", "--n", "2", "-o", "g.rmf"])?;
    out.insert("compose".into(), rmf(dir, &["compose", "f.rmf", "g.rmf", "-o", "h.rmf"])?);
    out.insert("cert".into(), rmf(dir, &["cert", "g8.rmf", "--json"])?);
    let mut names: Vec<_> = std::fs::read_dir(dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().file_name()).collect();
    names.sort();
    for name in names {
        let name = name.to_string_lossy().into_owned();
        out.insert(format!("file {name}"), std::fs::read(dir.join(&name)).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn c11_determinism() -> Outcome {
    let root = std::env::temp_dir().join(format!("rmf-acceptance-{}", std::process::id()));
    let a = pipelines(&root.join("a"))?;
    let b = pipelines(&root.join("b"))?;
    let _ = std::fs::remove_dir_all(&root);
    check!(a.keys().eq(b.keys()), "runs produced different sets of outputs");
    for (k, v) in &a {
        check!(&b[k] == v, "`{k}` differs between runs");
    }
    Ok(format!("{} outputs byte-identical across two runs", a.len()))
}

// ------------------------------------------------------------------ roundtrip

fn smallest_instances() -> Result<Vec<Circuit>, String> {
    let e = |e: gen::GenError| e.to_string();
    let mut v = vec![
        gen::gen_parity(2).map_err(e)?.circuit,
        gen::gen_parity_and(2, 2).map_err(e)?.circuit,
        gen::parity_and_preset(ParityPreset::SizeLimited { n: 2, size: 4 }).map_err(e)?.circuit,
        gen::parity_and_preset(ParityPreset::GateLimited { n: 2, gates: 4 }).map_err(e)?.circuit,
        gen::parity_and_preset(ParityPreset::InputLimited { n: 2, fraction: 1.0 }).map_err(e)?.circuit,
        gen::gen_onto(2).map_err(e)?.circuit,
        gen::gen_onto_iter(2, 0).map_err(e)?.circuit,
        gen::gen_onto_iter(2, 1).map_err(e)?.circuit,
        gen::gen_ed(2).map_err(e)?.circuit,
        gen::gen_ed_and(4).map_err(e)?.circuit,
        gen::gen_bvpv(&BitMatrix::identity(1)).map_err(e)?.circuit,
        gen::gen_bvpv(&"0".parse().map_err(e)?).map_err(e)?.circuit,
        gen::gen_projective_plane(2).map_err(e)?.1.circuit,
        gen::gen_random(2, 1, 0).map_err(e)?.circuit,
    ];
    let bm = gen::gen_bmpv(&BitMatrix::identity(1)).map_err(e)?;
    v.push(bm.all_ones.circuit);
    v.push(bm.general.circuit);
    Ok(v)
}

fn c12_roundtrip() -> Outcome {
    let instances = smallest_instances()?;
    for c in &instances {
        let text = print(c);
        let back = parse(&text).map_err(|e| format!("{}: {e}", c.name()))?;
        check!(&back == c, "{}: parse(print(c)) != c", c.name());
        check!(print(&back) == text, "{}: printing is not stable", c.name());
    }

    let mut r = rng(1212);
    let samples: Vec<String> = instances.iter().map(print).collect();
    const TOKENS: [&str; 16] = ["circuit", "inputs", "output", "and", "or", "not", "const0", "const1", "(", ")", ",", ";", "=", "{", "}", "x0"];
    let trials = 100_000;
    let mut accepted = 0;
    let mut panics = 0;
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for t in 0..trials {
        let bytes: Vec<u8> = match t % 3 {
            0 => (0..r.gen_range(0..128)).map(|_| r.gen()).collect(),
            1 => (0..r.gen_range(0..40))
                .flat_map(|_| {
                    let tok = TOKENS[r.gen_range(0..TOKENS.len())];
                    let sep = if r.gen_bool(0.8) { " " } else { "\n" };
                    format!("{tok}{sep}").into_bytes()
                })
                .collect(),
            _ => {
                let mut b = samples[r.gen_range(0..samples.len())].clone().into_bytes();
                for _ in 0..r.gen_range(1..4) {
                    let i = r.gen_range(0..b.len());
                    match r.gen_range(0..3) {
                        0 => b[i] = r.gen(),
                        1 => {
                            b.remove(i);
                        }
                        _ => b.insert(i, r.gen()),
                    }
                    if b.is_empty() {
                        break;
                    }
                }
                b
            }
        };
        match catch_unwind(AssertUnwindSafe(|| parse_bytes(&bytes).is_ok())) {
            Ok(ok) => accepted += usize::from(ok),
            Err(_) => panics += 1,
        }
    }
    std::panic::set_hook(prev);
    check!(panics == 0, "{panics} parser panics");
    Ok(format!(
        "{} generator instances roundtrip; {trials} fuzz inputs, 0 panics ({accepted} parsed)",
        instances.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("C1", "pruning correctness", c1_pruning_correctness),
        ("C2", "pruned size bound", c2_pruned_size_bound),
        ("C3", "ledger bound", c3_ledger_bound),
        ("C4", "parity generator", c4_parity),
        ("C5", "ONTO generator", c5_onto),
        ("C6", "ED generator", c6_ed),
        ("C7", "composition contracts", c7_composition),
        ("C8", "monotonize contracts", c8_monotonize),
        ("C9", "projective plane", c9_projective_plane),
        ("C10", "bound calculator", c10_bounds),
        ("C11", "determinism", c11_determinism),
        ("C12", "roundtrip and parser fuzz", c12_roundtrip),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} [{secs:.2} s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name}: {detail} [{secs:.2} s]");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
