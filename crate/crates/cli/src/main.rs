//! `splitter`: command-line front end for the beamsplitter toolkit.
//!
//! Every subcommand prints exactly one JSON document on stdout. Diagnostics go
//! to stderr. Exit codes: 0 success, 1 verdict-level failure, 2 invalid
//! input, 3 capacity exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use splitter_core::classify::{
    classify_two_mode, classify_two_mode_with_phases, verdict_cross_check_with, CrossCheckConfig,
};
use splitter_core::forensics::{
    commutant_dimension, complex_witness, finite_closure, full_elimination, generator_triple, lie_closure_dimension,
    DEDUP_GRANULARITY, DEFAULT_CAP,
};
use splitter_core::io::{beamsplitter_from_literals, parse_complex, read_matrix, read_unitary};
use splitter_core::reck::{decompose, decompose_real};
use splitter_core::{fock, synth, Beamsplitter, Error, Tolerance};

/// Reconstruction error above which `decompose` reports a verdict failure.
const DECOMPOSE_ACCEPT: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "splitter", version, about = "Beamsplitter universality toolkit")]
struct Cli {
    /// Numerical tolerance (defaults to each operation's own)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Spaces of JSON indentation; 0 prints compact JSON
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Seed for randomized internals (none currently; accepted for reproducible scripts)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BeamsplitterArgs {
    /// Amplitude alpha as re,im
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Amplitude beta as re,im
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
}

impl BeamsplitterArgs {
    fn build(&self) -> Result<Beamsplitter, Error> {
        beamsplitter_from_literals(parse_complex(&self.alpha)?, parse_complex(&self.beta)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Universality verdict for a beamsplitter or a two-mode gate
    Classify {
        #[arg(long, allow_hyphen_values = true, requires = "beta", conflicts_with = "gate")]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "alpha", conflicts_with = "gate")]
        beta: Option<String>,
        /// JSON file holding a 2x2 unitary
        #[arg(long, required_unless_present = "alpha")]
        gate: Option<PathBuf>,
        /// Allow arbitrary single-mode phaseshifters alongside the gate
        #[arg(long, requires = "gate")]
        with_phases: bool,
    },
    /// Group-theoretic evidence for a beamsplitter
    Forensics {
        #[command(flatten)]
        bs: BeamsplitterArgs,
        /// Element cap for the finite-closure search
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Finite-closure search on the generator triple
    Closure {
        #[command(flatten)]
        bs: BeamsplitterArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Triangular beamsplitter mesh for a unitary
    Decompose {
        #[arg(long)]
        unitary: PathBuf,
        /// Use real beamsplitters only (input must be orthogonal)
        #[arg(long)]
        real: bool,
    },
    /// Shortest placement word approximating a three-mode target
    Synth {
        #[command(flatten)]
        bs: BeamsplitterArgs,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        budget: usize,
    },
    /// Multi-photon representation of a unitary
    Lift {
        #[arg(long)]
        unitary: PathBuf,
        #[arg(long)]
        photons: usize,
    },
}

struct Output {
    doc: Value,
    code: u8,
}

impl Output {
    fn ok(doc: impl Serialize) -> Result<Self, Error> {
        Ok(Output { doc: to_value(doc)?, code: 0 })
    }
}

fn to_value(doc: impl Serialize) -> Result<Value, Error> {
    serde_json::to_value(doc).map_err(|e| Error::Json(e.to_string()))
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn tolerance(tol: Option<f64>, default: f64) -> Result<Tolerance, Error> {
    Tolerance::new(tol.unwrap_or(default))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Classify { alpha, beta, gate, with_phases } => {
            if let Some(path) = gate {
                let tol = tolerance(cli.tol, splitter_core::classify::CLASSIFIER_TOL)?;
                let g = read_matrix(&read_file(path)?)?;
                let v =
                    if *with_phases { classify_two_mode_with_phases(&g, tol)? } else { classify_two_mode(&g, tol)? };
                return Output::ok(v);
            }
            let (Some(a), Some(b)) = (alpha, beta) else {
                return Err(Error::Validation("give --alpha and --beta, or --gate".into()));
            };
            let bs = BeamsplitterArgs { alpha: a.clone(), beta: b.clone() }.build()?;
            let mut cfg = CrossCheckConfig::default();
            if let Some(t) = cli.tol {
                cfg.classifier_tol = t;
            }
            match verdict_cross_check_with(&bs, &cfg) {
                Ok(v) => Output::ok(v),
                Err(Error::Inconsistency(msg)) => {
                    eprintln!("evidence contradicts verdict: {msg}");
                    Ok(Output { doc: json!({"outcome": "Inconsistent", "detail": msg}), code: 1 })
                }
                Err(e) => Err(e),
            }
        }
        Command::Forensics { bs, cap } => {
            let b = bs.build()?;
            let tol = tolerance(cli.tol, splitter_core::matrix::DEFAULT_TOL)?;
            let triple = generator_triple(&b);
            let gens = triple.to_vec();
            let trivial = !b.is_nontrivial(Tolerance::new(splitter_core::classify::CLASSIFIER_TOL)?);
            let elimination =
                if trivial { json!({"skipped": "trivial"}) } else { to_value(full_elimination(&triple, tol)?)? };
            let lie = lie_closure_dimension(&gens, Tolerance::new(1e-6)?)?;
            Output::ok(json!({
                "alpha": b.alpha(),
                "beta": b.beta(),
                "traces": triple.traces(),
                "commutant_dimension": commutant_dimension(3, &gens, tol)?,
                "closure": finite_closure(&gens, *cap, Tolerance::new(DEDUP_GRANULARITY)?)?,
                "lie_dim": lie.dimension,
                "lie": lie,
                "complex_witness": complex_witness(&triple),
                "elimination": elimination,
            }))
        }
        Command::Closure { bs, cap } => {
            let gens = generator_triple(&bs.build()?).to_vec();
            Output::ok(finite_closure(&gens, *cap, Tolerance::new(DEDUP_GRANULARITY)?)?)
        }
        Command::Decompose { unitary, real } => {
            let tol = tolerance(cli.tol, splitter_core::matrix::DEFAULT_TOL)?;
            let u = read_unitary(&read_file(unitary)?, tol)?;
            let d = if *real { decompose_real(&u, tol)? } else { decompose(&u, tol)? };
            let mut doc = to_value(d.full_circuit())?;
            doc["reconstruction_error"] = json!(d.reconstruction_error);
            let code = if d.reconstruction_error <= DECOMPOSE_ACCEPT { 0 } else { 1 };
            Ok(Output { doc, code })
        }
        Command::Synth { bs, target, eps, budget } => {
            let b = bs.build()?;
            let t = read_unitary(&read_file(target)?, Tolerance::default())?;
            let r = synth::synthesize(&b, &t, *eps, *budget)?;
            let code = if r.converged { 0 } else { 1 };
            if !r.converged {
                eprintln!("not converged: best error {:.3e} at budget {}", r.achieved_error, r.budget);
            }
            Ok(Output { doc: to_value(r)?, code })
        }
        Command::Lift { unitary, photons } => {
            let u = read_unitary(&read_file(unitary)?, Tolerance::default())?;
            Output::ok(fock::lift(&u, *photons)?)
        }
    }
}

fn render(doc: &Value, indent: usize) -> String {
    if indent == 0 {
        return doc.to_string();
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, serde_json::ser::PrettyFormatter::with_indent(&pad));
    doc.serialize(&mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

fn exit_code(e: &Error) -> u8 {
    if e.is_capacity() {
        3
    } else if e.is_validation() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{}", render(&out.doc, cli.json_indent));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
