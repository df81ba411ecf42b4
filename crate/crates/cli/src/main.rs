mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use lhs_core::bisim::{largest_bisimulation_with, BisimError};
use lhs_core::decide::{
    lhs_bounded_sat_with, lhs_minus_sat_with, lhs_minus_valid_with, BoundedResult, DecideError, LhsVerdict, Status,
    Witness,
};
use lhs_core::model::{ModelError, PointedPair};
use lhs_core::normal::{companion_with, CompanionStyle, NormalError};
use lhs_core::proof::{check_proof, proof_conclusion_valid, ConclusionError, Proof};
use lhs_core::semantics::{check, fo_translate};
use lhs_core::syntax::{classify, parse, render_full};
use lhs_core::tiling::{generate_phi, torus_model, validate_tiling, PeriodicTiling, TileSet, TilingError};
use lhs_core::{Exec, Formula, Model};

const EXIT_USAGE: u8 = 64;
const EXIT_INPUT: u8 = 65;
const EXIT_GUARD: u8 = 70;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Guard(_) => EXIT_GUARD,
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::ResourceGuard { .. } | DecideError::Internal(_) => CliError::Guard(e.to_string()),
            DecideError::Normal(NormalError::TooLarge { .. }) => CliError::Guard(e.to_string()),
            DecideError::ContainsI => {
                CliError::Input("formula contains I; use --full for bounded search over the full language".into())
            }
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<NormalError> for CliError {
    fn from(e: NormalError) -> Self {
        match e {
            NormalError::TooLarge { .. } => CliError::Guard(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<BisimError> for CliError {
    fn from(e: BisimError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::ResourceGuard { .. } => CliError::Guard(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<TilingError> for CliError {
    fn from(e: TilingError) -> Self {
        CliError::input(e)
    }
}

/// Two-dimensional modal logic of hide and seek: model checking, normal
/// forms, decision procedure and proof checking.
#[derive(Parser)]
#[command(name = "lhs", version)]
struct Cli {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormulaSource {
    /// Formula in concrete syntax.
    #[arg(short = 'f', long = "formula")]
    formula: Option<String>,
    /// File holding the formula.
    #[arg(short = 'F', long = "formula-file")]
    file: Option<PathBuf>,
}

impl FormulaSource {
    fn load(&self) -> Result<Formula, CliError> {
        let text = match (&self.formula, &self.file) {
            (Some(f), _) => f.clone(),
            (None, Some(path)) => read(path)?,
            (None, None) => unreachable!("clap requires one source"),
        };
        parse(text.trim()).map_err(CliError::input)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and pretty-print a formula.
    Parse {
        #[command(flatten)]
        src: FormulaSource,
        /// Parenthesize every binary connective.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula at a pair of states of a model.
    Check {
        #[arg(short = 'm', long)]
        model: PathBuf,
        #[command(flatten)]
        src: FormulaSource,
        /// Evaluation pair as `s,t` (state names).
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Satisfiability (complete for I-free input; bounded with --full).
    Sat(DecideArgs),
    /// Validity (complete for I-free input; bounded with --full).
    Valid(DecideArgs),
    /// Clean CNF companion of an I-free formula.
    Cnf {
        #[command(flatten)]
        src: FormulaSource,
        /// List the (psi, gamma) pairs instead of one formula.
        #[arg(long)]
        pairs: bool,
        /// Rewrite derived connectives into primitives first.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// First-order standard translation.
    Translate {
        #[command(flatten)]
        src: FormulaSource,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "y")]
        y: String,
    },
    /// Largest bisimulation between two models.
    Bisim {
        #[arg(short = 'm', long)]
        left: PathBuf,
        #[arg(short = 'n', long)]
        right: PathBuf,
        /// Pair of the first model; with --at2, only answer whether the
        /// two pairs are bisimilar.
        #[arg(long, requires = "at2")]
        at: Option<String>,
        #[arg(long, requires = "at")]
        at2: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check a Hilbert-style derivation.
    Proof {
        #[arg(short = 'p', long)]
        proof: PathBuf,
        /// Also decide the last line with the decision procedure.
        #[arg(long)]
        conclusion: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tiling construction.
    Tiling {
        #[command(subcommand)]
        command: TilingCommand,
    },
    /// Randomized cross-checks of the decision procedure, the companion
    /// and the standard translation.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per check.
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    src: FormulaSource,
    /// Bounded model search over the full language (I allowed).
    #[arg(long, requires = "max_size")]
    full: bool,
    /// State bound for --full.
    #[arg(long, requires = "full")]
    max_size: Option<usize>,
    /// Run bounded search even above the resource guard.
    #[arg(long, requires = "full")]
    force: bool,
    /// Write the witness model here.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Print the formula phi_T of a tile set.
    Gen {
        #[arg(short = 't', long)]
        tiles: PathBuf,
        /// One line per named conjunct.
        #[arg(long)]
        components: bool,
    },
    /// Check wrap-around color matching of a periodic tiling.
    Validate {
        #[arg(short = 't', long)]
        tiles: PathBuf,
        #[arg(short = 'a', long)]
        assign: PathBuf,
    },
    /// Build the torus model of a periodic tiling.
    Model {
        #[arg(short = 't', long)]
        tiles: PathBuf,
        #[arg(short = 'a', long)]
        assign: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
        /// Model-check phi_T at the spy point.
        #[arg(long)]
        check: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<Model, CliError> {
    Model::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_pair(m: &Model, text: &str) -> Result<PointedPair, CliError> {
    let (s, t) = text
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("expected a pair `s,t`, got `{text}`")))?;
    Ok(PointedPair::new(m.state_index(s.trim())?, m.state_index(t.trim())?))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values print"));
}

fn witness_json(w: &Witness, file: Option<&Path>) -> Value {
    json!({
        "at": [w.model.state_name(w.at.s), w.model.state_name(w.at.t)],
        "file": file.map(|p| p.display().to_string()),
        "model": serde_json::from_str::<Value>(&w.model.to_json()).expect("models serialize"),
    })
}

/// A verdict ready for printing: status word, exit code, optional witness.
struct Outcome {
    word: String,
    code: u8,
    witness: Option<Witness>,
    extra: Value,
}

fn run_decide(args: &DecideArgs, validity: bool, exec: Exec) -> Result<u8, CliError> {
    let phi = args.src.load()?;
    let start = Instant::now();
    let outcome = if args.full {
        let bound = args.max_size.expect("clap requires --max-size");
        let target = if validity { Formula::not(phi.clone()) } else { phi.clone() };
        match lhs_bounded_sat_with(&target, bound, args.force, exec)? {
            BoundedResult::Sat(w) => Outcome {
                word: if validity { "INVALID" } else { "SAT" }.into(),
                code: if validity { 1 } else { 0 },
                witness: Some(w),
                extra: json!({"bound": bound}),
            },
            BoundedResult::NoModelUpToBound(n) => Outcome {
                word: if validity {
                    format!("NO-COUNTERMODEL-UP-TO-BOUND {n}")
                } else {
                    format!("NO-MODEL-UP-TO-BOUND {n}")
                },
                code: 2,
                witness: None,
                extra: json!({"bound": n}),
            },
        }
    } else {
        let v: LhsVerdict = if validity {
            lhs_minus_valid_with(&phi, exec)?
        } else {
            lhs_minus_sat_with(&phi, exec)?
        };
        let code = match v.status {
            Status::Valid | Status::Sat => 0,
            Status::Invalid | Status::Unsat => 1,
        };
        Outcome {
            word: serde_json::to_value(v.status)
                .expect("statuses serialize")
                .as_str()
                .expect("statuses are strings")
                .to_string(),
            code,
            witness: v.witness,
            extra: json!({"certificate": v.certificate, "conjuncts": v.conjuncts}),
        }
    };
    let elapsed = start.elapsed();
    if let (Some(w), Some(path)) = (&outcome.witness, &args.witness) {
        write(path, &w.model.to_json())?;
    }
    if args.json {
        let mut v = json!({
            "formula": phi.to_string(),
            "status": outcome.word,
            "exit_code": outcome.code,
            "elapsed_ms": elapsed.as_secs_f64() * 1000.0,
            "witness": outcome.witness.as_ref().map(|w| witness_json(w, args.witness.as_deref())),
        });
        if let (Value::Object(a), Value::Object(b)) = (&mut v, outcome.extra) {
            a.extend(b);
        }
        print_json(&v);
    } else {
        println!("{}", outcome.word);
        if let Some(w) = &outcome.witness {
            println!("at ({}, {})", w.model.state_name(w.at.s), w.model.state_name(w.at.t));
            if args.witness.is_none() {
                println!("{}", w.model.to_json());
            }
        }
    }
    Ok(outcome.code)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Parse { src, full, json } => {
            let phi = src.load()?;
            let text = if full { render_full(&phi) } else { phi.to_string() };
            if json {
                let c = classify(&phi);
                print_json(&json!({
                    "formula": text,
                    "i_free": c.i_free,
                    "white_only": c.white_only,
                    "black_only": c.black_only,
                    "clean": c.clean,
                    "modal_depth": phi.modal_depth(),
                    "size": phi.size(),
                }));
            } else {
                println!("{text}");
            }
            Ok(0)
        }
        Command::Check { model, src, at, json } => {
            let m = load_model(&model)?;
            let phi = src.load()?;
            let pair = parse_pair(&m, &at)?;
            let value = check(&m, pair, &phi).map_err(CliError::input)?;
            if json {
                print_json(&json!({"formula": phi.to_string(), "at": at, "value": value}));
            } else {
                println!("{value}");
            }
            Ok(if value { 0 } else { 1 })
        }
        Command::Sat(args) => run_decide(&args, false, exec),
        Command::Valid(args) => run_decide(&args, true, exec),
        Command::Cnf {
            src,
            pairs,
            strict,
            json,
        } => {
            let phi = src.load()?;
            let style = if strict { CompanionStyle::Strict } else { CompanionStyle::Compact };
            let c = companion_with(&phi, style)?;
            if json {
                let rows: Vec<Value> = c
                    .conjuncts
                    .iter()
                    .map(|(p, g)| json!({"psi": p.to_string(), "gamma": g.to_string()}))
                    .collect();
                print_json(&json!({"formula": c.to_formula().to_string(), "conjuncts": rows}));
            } else if pairs {
                for (i, (p, g)) in c.conjuncts.iter().enumerate() {
                    println!("{}\t{}\t{}", i + 1, p, g);
                }
            } else {
                println!("{}", c.to_formula());
            }
            Ok(0)
        }
        Command::Translate { src, x, y } => {
            if x == y {
                return Err(CliError::Usage("--x and --y must differ".into()));
            }
            println!("{}", fo_translate(&src.load()?, &x, &y));
            Ok(0)
        }
        Command::Bisim {
            left,
            right,
            at,
            at2,
            json,
        } => {
            let m = load_model(&left)?;
            let n = load_model(&right)?;
            let z = largest_bisimulation_with(&m, &n, exec)?;
            if let (Some(a), Some(b)) = (at, at2) {
                let related = z.contains(parse_pair(&m, &a)?, parse_pair(&n, &b)?);
                if json {
                    print_json(&json!({"bisimilar": related}));
                } else {
                    println!("{related}");
                }
                return Ok(if related { 0 } else { 1 });
            }
            if json {
                print_json(&json!({"size": z.len(), "pairs": z.named()}));
            } else {
                for [[s, t], [s2, t2]] in z.named() {
                    println!("({s}, {t}) ~ ({s2}, {t2})");
                }
            }
            Ok(0)
        }
        Command::Proof { proof, conclusion, json } => {
            let p = Proof::from_json(&read(&proof)?).map_err(CliError::input)?;
            let report = check_proof(&p);
            let verdict = if conclusion && report.ok {
                match proof_conclusion_valid(&p) {
                    Ok(v) => Some(v),
                    Err(ConclusionError::Decide(e)) => return Err(e.into()),
                    Err(e @ ConclusionError::NotAProof(_)) => return Err(CliError::input(e)),
                }
            } else {
                None
            };
            if json {
                print_json(&json!({"report": report, "lines": p.lines.len(), "conclusion_valid": verdict}));
            } else {
                match &report.first_error {
                    None => println!("OK: {} lines", p.lines.len()),
                    Some(e) => println!("line {}: {}", e.line, e.reason),
                }
                if let Some(v) = verdict {
                    println!("conclusion {}", if v { "VALID" } else { "INVALID" });
                }
            }
            Ok(if report.ok && verdict != Some(false) { 0 } else { 1 })
        }
        Command::Tiling { command } => run_tiling(command),
        Command::Selftest { seed, count } => Ok(selftest::run(seed, count, exec)),
    }
}

fn run_tiling(command: TilingCommand) -> Result<u8, CliError> {
    match command {
        TilingCommand::Gen { tiles, components } => {
            let ts = TileSet::from_json(&read(&tiles)?)?;
            let phi = generate_phi(&ts);
            if components {
                for (name, f) in &phi.components {
                    println!("{name}\t{f}");
                }
            } else {
                println!("{}", phi.formula());
            }
            Ok(0)
        }
        TilingCommand::Validate { tiles, assign } => {
            let ts = TileSet::from_json(&read(&tiles)?)?;
            let pt = PeriodicTiling::from_json(&read(&assign)?)?;
            match validate_tiling(&ts, &pt) {
                Ok(()) => {
                    println!("ok");
                    Ok(0)
                }
                Err(v) => {
                    println!("{v}");
                    Ok(1)
                }
            }
        }
        TilingCommand::Model {
            tiles,
            assign,
            out,
            check: do_check,
        } => {
            let ts = TileSet::from_json(&read(&tiles)?)?;
            let pt = PeriodicTiling::from_json(&read(&assign)?)?;
            let (m, spy) = torus_model(&ts, &pt)?;
            match &out {
                Some(path) => write(path, &m.to_json())?,
                None if !do_check => println!("{}", m.to_json()),
                None => {}
            }
            if do_check {
                let phi = generate_phi(&ts).formula();
                let holds = check(&m, PointedPair::new(spy, spy), &phi).map_err(CliError::input)?;
                let name = m.state_name(spy);
                println!("phi_T {} at ({name},{name})", if holds { "holds" } else { "fails" });
                return Ok(if holds { 0 } else { 1 });
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // Formulas are trees and most passes over them recurse; large normal
    // forms nest deeply.
    let worker = std::thread::Builder::new()
        .stack_size(WORKER_STACK)
        .spawn(move || run(cli));
    let result = match worker.map(|h| h.join()) {
        Ok(Ok(r)) => r,
        _ => Err(CliError::Guard("internal error".into())),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lhs: {e}");
            ExitCode::from(e.code())
        }
    }
}

const WORKER_STACK: usize = 512 << 20;
