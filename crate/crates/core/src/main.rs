//! `rmf`: command-line front end for read-many formula tools.
//!
//! Results go to standard output, diagnostics to standard error. Exit
//! status is 0 on success, 1 when a tool rejects its input and 2 on usage
//! errors. Every file argument accepts `-` for standard input/output.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use readmany::analysis::{certificate_complexity, ledger_audit, upper_bound};
use readmany::gen::{self, BitMatrix, InstanceRecord, ParityPreset};
use readmany::prune::{prune, SearchConfig};
use readmany::transform::{compose, monotonize, simplify, TopGate};
use readmany::{evaluate, evaluate_counting, parse, print, Assignment, Circuit, Metrics, QueryLedger};

#[derive(Parser, Debug)]
#[command(name = "rmf", version, about = "Read-many Boolean formula toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print metrics and the query upper bound
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Push NOTs to the leaves over doubled literals
    Monotonize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Top::Any)]
        top: Top,
        #[command(flatten)]
        out: Out,
    },
    /// Compose f with a copy of g in every input
    Compose {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Propagate constants
    Simplify {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Prune a formula against an assignment
    Prune {
        file: PathBuf,
        /// Bits in declared input order, or @FILE with `var=bit` lines
        #[arg(long)]
        assign: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Cut-off factor for a search that finds nothing
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
        /// Write the prune report and ledger audit as JSON here
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Generate an instance
    Gen(GenArgs),
    /// Evaluate a circuit
    Eval {
        file: PathBuf,
        #[arg(long)]
        assign: String,
        /// Also report the number of input reads of short-circuit evaluation
        #[arg(long)]
        count: bool,
    },
    /// Exact certificate complexity (at most 25 inputs)
    Cert {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Out {
    /// Output file
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Top {
    And,
    Or,
    Any,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Parity,
    #[value(alias = "parity_and")]
    ParityAnd,
    Onto,
    #[value(alias = "onto_iter")]
    OntoIter,
    Ed,
    #[value(alias = "ed_and")]
    EdAnd,
    Bvpv,
    Bmpv,
    Projplane,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetArg {
    Size,
    Gate,
    Input,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BmpvVariant {
    Ones,
    General,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    /// Main size parameter (inputs, alphabet size or matrix order)
    #[arg(long)]
    n: Option<usize>,
    /// Parity arity for parity-and
    #[arg(long)]
    m: Option<usize>,
    /// Field order for projplane
    #[arg(long)]
    q: Option<u64>,
    /// Bit matrix for bvpv/bmpv, rows separated by `/`, e.g. 10/01
    #[arg(long)]
    matrix: Option<String>,
    /// Logical input target for onto-iter
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, default_value_t = 1)]
    iterations: u32,
    /// Regime preset for parity-and
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Size budget for the size preset
    #[arg(long)]
    size: Option<u64>,
    /// Gate budget for the gate preset; gate count for random
    #[arg(long)]
    gates: Option<u64>,
    /// Parity fraction for the input preset
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long, value_enum, default_value_t = BmpvVariant::General)]
    variant: BmpvVariant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sidecar JSON path; defaults to the output path with `.json` when
    /// writing to a file
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[command(flatten)]
    out: Out,
}

fn is_std(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn read_input(p: &Path) -> Result<String> {
    if is_std(p) {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
    }
}

fn write_output(p: &Path, text: &str) -> Result<()> {
    if is_std(p) {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))
    }
}

fn load(p: &Path) -> Result<Circuit> {
    let text = read_input(p)?;
    parse(&text).with_context(|| format!("parsing {}", if is_std(p) { "standard input".into() } else { p.display().to_string() }))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_assignment(spec: &str, c: &Circuit) -> Result<Assignment> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = read_input(Path::new(path))?;
        let mut a = Assignment::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((var, bit)) = line.split_once('=') else {
                bail!("{path}:{}: expected `var=bit`", no + 1);
            };
            let value = match bit.trim() {
                "0" => false,
                "1" => true,
                other => bail!("{path}:{}: bit must be 0 or 1, got `{other}`", no + 1),
            };
            a.set(var.trim(), value);
        }
        return Ok(a);
    }
    let bits = spec
        .chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => bail!("assignment bit `{ch}` is not 0 or 1"),
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(Assignment::from_bits(c, &bits)?)
}

#[derive(Serialize)]
struct StatsOut {
    name: String,
    metrics: Metrics,
    bounds: readmany::analysis::BoundReport,
}

fn stats(file: &Path, as_json: bool) -> Result<String> {
    let c = load(file)?;
    let metrics = Metrics::of(&c);
    let bounds = upper_bound(&metrics);
    if as_json {
        return Ok(json(&StatsOut { name: c.name().to_string(), metrics, bounds }));
    }
    let active = serde_json::to_value(bounds.active_term)?;
    let regime = serde_json::to_value(bounds.regime)?;
    let rows: Vec<(&str, String)> = vec![
        ("name", c.name().to_string()),
        ("n", metrics.n.to_string()),
        ("S", metrics.size.to_string()),
        ("G", metrics.gates.to_string()),
        ("not_gates", metrics.not_gates.to_string()),
        ("depth", metrics.depth.to_string()),
        ("alternation_depth", metrics.alternation_depth.to_string()),
        ("max_fanin", metrics.max_fanin.to_string()),
        ("max_gate_fanout", metrics.max_gate_fanout.to_string()),
        ("is_formula", metrics.is_formula.to_string()),
        ("term_n", format!("{:.6}", bounds.term_n)),
        ("term_sqrt_S", format!("{:.6}", bounds.term_sqrt_s)),
        ("term_n^1/2_G^1/4", format!("{:.6}", bounds.term_ng)),
        ("upper", format!("{:.6}", bounds.upper)),
        ("active_term", active.as_str().unwrap_or_default().to_string()),
        ("regime", regime.as_str().unwrap_or_default().to_string()),
        ("note", bounds.note.to_string()),
    ];
    Ok(rows.iter().map(|(k, v)| format!("{k:<18} {v}\n")).collect())
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.with_context(|| format!("`gen {family}` needs --{flag}"))
}

fn generate(a: &GenArgs) -> Result<InstanceRecord> {
    let rec = match a.family {
        FamilyArg::Parity => gen::gen_parity(need(a.n, "n", "parity")?)?,
        FamilyArg::ParityAnd => {
            let n = need(a.n, "n", "parity-and")?;
            match a.preset {
                None => gen::gen_parity_and(n, need(a.m, "m", "parity-and")?)?,
                Some(PresetArg::Size) => {
                    gen::parity_and_preset(ParityPreset::SizeLimited { n, size: need(a.size, "size", "parity-and")? })?
                }
                Some(PresetArg::Gate) => {
                    gen::parity_and_preset(ParityPreset::GateLimited { n, gates: need(a.gates, "gates", "parity-and")? })?
                }
                Some(PresetArg::Input) => gen::parity_and_preset(ParityPreset::InputLimited { n, fraction: a.fraction })?,
            }
        }
        FamilyArg::Onto => gen::gen_onto(need(a.n, "n", "onto")?)?,
        FamilyArg::OntoIter => gen::gen_onto_iter(need(a.target, "target", "onto-iter")?, a.iterations)?,
        FamilyArg::Ed => gen::gen_ed(need(a.n, "n", "ed")?)?,
        FamilyArg::EdAnd => gen::gen_ed_and(need(a.n, "n", "ed-and")?)?,
        FamilyArg::Bvpv => gen::gen_bvpv(&matrix(a)?)?,
        FamilyArg::Bmpv => {
            let inst = gen::gen_bmpv(&matrix(a)?)?;
            match a.variant {
                BmpvVariant::Ones => inst.all_ones,
                BmpvVariant::General => inst.general,
            }
        }
        FamilyArg::Projplane => gen::gen_projective_plane(need(a.q, "q", "projplane")?)?.1,
        FamilyArg::Random => gen::gen_random(need(a.n, "n", "random")?, need(a.gates, "gates", "random")? as usize, a.seed)?,
    };
    Ok(rec)
}

fn matrix(a: &GenArgs) -> Result<BitMatrix> {
    match (&a.matrix, a.n) {
        (Some(m), _) => Ok(m.parse()?),
        (None, Some(n)) if n >= 1 => Ok(BitMatrix::ones(n)),
        _ => bail!("matrix families need --matrix ROWS or --n (all-ones matrix)"),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stats { file, json } => write_output(Path::new("-"), &stats(&file, json)?),
        Command::Monotonize { file, top, out } => {
            let c = load(&file)?;
            let want = match top {
                Top::And => TopGate::And,
                Top::Or => TopGate::Or,
                Top::Any => TopGate::Any,
            };
            let m = monotonize(&c, want);
            if m.negated {
                eprintln!("note: the result computes the negation of the input function");
            }
            write_output(&out.output, &print(&m.circuit))
        }
        Command::Compose { f, g, out } => {
            let (f, g) = (load(&f)?, load(&g)?);
            let h = compose(&f, &g)?;
            if h.inner_negated {
                eprintln!("note: every block holds the negation of g");
            }
            write_output(&out.output, &print(&h.circuit))
        }
        Command::Simplify { file, out } => write_output(&out.output, &print(&simplify(&load(&file)?))),
        Command::Prune { file, assign, seed, alpha, budget, report, out } => {
            let c = load(&file)?;
            let x = parse_assignment(&assign, &c)?;
            let cfg = SearchConfig { alpha, budget_factor: budget, rng_seed: seed };
            let (pruned, rep) = prune(&c, &x, &cfg)?;
            let audit = ledger_audit(&rep, &Metrics::of(&c), &cfg);
            eprintln!(
                "audit: {} (charged {}, rounds or/and {}/{})",
                match &audit.failure {
                    None => "pass".to_string(),
                    Some(f) => format!("FAIL at `{f}`"),
                },
                rep.ledger.charged(),
                rep.rounds_or(),
                rep.rounds_and()
            );
            if let Some(path) = report {
                #[derive(Serialize)]
                struct Full<'a> {
                    report: &'a readmany::prune::PruneReport,
                    audit: &'a readmany::analysis::AuditReport,
                }
                write_output(&path, &json(&Full { report: &rep, audit: &audit }))?;
            }
            write_output(&out.output, &print(&pruned))?;
            if !audit.passed {
                bail!("ledger audit failed");
            }
            Ok(())
        }
        Command::Gen(a) => {
            let rec = generate(&a)?;
            let sidecar = match (&a.sidecar, is_std(&a.out.output)) {
                (Some(p), _) => Some(p.clone()),
                (None, false) => Some(a.out.output.with_extension("json")),
                (None, true) => None,
            };
            write_output(&a.out.output, &print(&rec.circuit))?;
            if let Some(p) = sidecar {
                let mut s = rec.sidecar_json();
                s.push('\n');
                write_output(&p, &s)?;
            }
            Ok(())
        }
        Command::Eval { file, assign, count } => {
            let c = load(&file)?;
            let x = parse_assignment(&assign, &c)?;
            if count {
                let mut ledger = QueryLedger::new();
                let v = evaluate_counting(&c, &x, &mut ledger)?;
                write_output(Path::new("-"), &format!("value {}\nqueries {}\n", u8::from(v), ledger.charged()))
            } else {
                write_output(Path::new("-"), &format!("{}\n", u8::from(evaluate(&c, &x)?)))
            }
        }
        Command::Cert { file, json: as_json } => {
            let c = load(&file)?;
            let r = certificate_complexity(&c)?;
            if as_json {
                return write_output(Path::new("-"), &json(&r));
            }
            let show = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
            write_output(Path::new("-"), &format!("C0 {}\nC1 {}\n", show(r.c0), show(r.c1)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
