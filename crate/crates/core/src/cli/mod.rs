//! The `sexakit` command line.
//!
//! Exit status: 0 success, 1 a replayed value disagreed with the corpus,
//! 2 bad input (literal, expression, corpus file or problem id), 3 a
//! mathematical precondition failed.

mod expr;

use std::io::Write;
use std::path::PathBuf;
use std::thread;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use expr::{parse_expr, Division, Expr, ExprError, Op};

use crate::corpus::{self, CorpusError, ReplayReport, TabletProblem};
use crate::error::Error;
use crate::geometry::{depth_from_labor, prism_volume, trapezoid_cross_section, CanalConstant};
use crate::procedures::{
    solve_quadratic_scribal, solve_sum_difference, QuadraticProblem, StepTrace,
    SumDifferenceProblem,
};
use crate::sexcore::Sexa;
use crate::units::Quantity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sexakit", version, about = "Exact sexagesimal arithmetic and tablet replay")]
pub struct Cli {
    /// Print every intermediate step.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Corpus file for `replay` (default: the bundled corpus).
    #[arg(long, global = true, env = corpus::CORPUS_ENV)]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an arithmetic expression over sexagesimal literals.
    Eval(EvalArgs),
    /// Reciprocal of a regular number.
    Recip {
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
    /// Exact square root.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Solve A·u² − B·u = C by completing the square.
    #[command(name = "solve-quadratic")]
    SolveQuadratic {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Two numbers from their difference and product.
    #[command(name = "sum-diff")]
    SumDiff {
        #[arg(allow_hyphen_values = true)]
        diff: String,
        #[arg(allow_hyphen_values = true)]
        prod: String,
    },
    /// Canal geometry.
    #[command(subcommand)]
    Geom(GeomCommand),
    /// Replay corpus problems and compare every value.
    Replay {
        /// Problem id, e.g. smt24.p1.
        id: Option<String>,
        /// Replay every problem in the corpus.
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Divide by recognition: any divisor, if the quotient terminates.
    #[arg(long)]
    pub recognize: bool,
    /// Exact rational division; non-terminating results print as p/q.
    #[arg(long, conflicts_with = "recognize")]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum GeomCommand {
    /// Trapezoid cross-section from breadths u, v (nindan) and depth z (kus).
    Trapezoid {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Prism volume from cross-section (nindan-kus) and length (nindan).
    Volume {
        #[arg(allow_hyphen_values = true)]
        section: String,
        #[arg(allow_hyphen_values = true)]
        length: String,
    },
    /// Canal depth from the reserved water shared among workers.
    #[command(name = "labor-depth")]
    LaborDepth {
        /// Reserved water, e.g. "6 sar60"; a bare literal is volume-sar.
        water: String,
        /// Length dug by each worker, in nindan.
        reach: String,
        workers: String,
        /// Width in nindan.
        width: String,
        #[arg(long, default_value = "0;48")]
        constant: String,
    },
}

/// A command failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_MATH };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::ProcedureError> for Failure {
    fn from(e: crate::ProcedureError) -> Self {
        let code = if e.source.is_input_error() { EXIT_INPUT } else { EXIT_MATH };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn lit(text: &str) -> Result<Sexa, Failure> {
    Ok(Sexa::parse(text)?)
}

fn trace_json(t: &StepTrace) -> serde_json::Value {
    serde_json::to_value(t).expect("traces serialize")
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            o.code
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": f.message, "exit": f.code }));
            }
            let _ = writeln!(err, "sexakit: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Recip { n } => {
            let n = lit(n)?;
            let r = n.reciprocal()?;
            Ok(Output::ok(format!("{r}\n"), json!({ "input": n, "reciprocal": r })))
        }
        Command::Sqrt { x } => {
            let x = lit(x)?;
            let r = x.sqrt_exact()?;
            Ok(Output::ok(format!("{r}\n"), json!({ "input": x, "root": r })))
        }
        Command::SolveQuadratic { a, b, c } => {
            let p = QuadraticProblem::new(lit(a)?, lit(b)?, lit(c)?)?;
            let (u, t) = solve_quadratic_scribal(&p)?;
            let mut text = if cli.trace { t.to_string() } else { String::new() };
            text += &format!("u = {u}\n");
            Ok(Output::ok(text, json!({ "u": u, "trace": trace_json(&t) })))
        }
        Command::SumDiff { diff, prod } => {
            let p = SumDifferenceProblem {
                diff: lit(diff)?,
                prod: lit(prod)?,
            };
            let (x, y, t) = solve_sum_difference(&p)?;
            let mut text = if cli.trace { t.to_string() } else { String::new() };
            text += &format!("x = {x}\ny = {y}\n");
            Ok(Output::ok(text, json!({ "x": x, "y": y, "trace": trace_json(&t) })))
        }
        Command::Geom(g) => geom(cli, g),
        Command::Replay { id, all } => replay(cli, id.as_deref(), *all),
    }
}

fn eval(a: &EvalArgs) -> Result<Output, Failure> {
    let division = match (a.recognize, a.oracle) {
        (true, _) => Division::Recognize,
        (_, true) => Division::Oracle,
        _ => Division::Scribal,
    };
    let value = parse_expr(&a.expr)?.eval(division)?;
    let rendered = match value.render() {
        Ok(s) => s,
        Err(_) if division == Division::Oracle => value.render_fraction(),
        Err(e) => return Err(e.into()),
    };
    Ok(Output::ok(
        format!("{rendered}\n"),
        json!({ "value": rendered, "fraction": value.render_fraction() }),
    ))
}

fn geom(cli: &Cli, g: &GeomCommand) -> Result<Output, Failure> {
    match g {
        GeomCommand::Trapezoid { u, v, z } => {
            let s = trapezoid_cross_section(
                &Quantity::nindan(lit(u)?),
                &Quantity::nindan(lit(v)?),
                &Quantity::kus(lit(z)?),
            )?;
            Ok(Output::ok(format!("S = {s}\n"), json!({ "S": s })))
        }
        GeomCommand::Volume { section, length } => {
            let v = prism_volume(&Quantity::nindan_kus(lit(section)?), &Quantity::nindan(lit(length)?))?;
            Ok(Output::ok(format!("V = {v}\n"), json!({ "V": v })))
        }
        GeomCommand::LaborDepth {
            water,
            reach,
            workers,
            width,
            constant,
        } => {
            let water = if water.trim().contains(char::is_whitespace) {
                water.parse::<Quantity>().map_err(|e| match e {
                    crate::units::QuantityParseError::Literal(e) => Failure::from(e),
                    other => input_error(other.to_string()),
                })?
            } else {
                Quantity::volume_sar(lit(water)?)
            };
            let c = CanalConstant::new(lit(constant)?)?;
            let (z, zw, t) = depth_from_labor(
                &water,
                &lit(reach)?,
                &Quantity::workers(lit(workers)?),
                &Quantity::nindan(lit(width)?),
                &c,
            )?;
            let mut text = if cli.trace { t.to_string() } else { String::new() };
            text += &format!("z = {z}\nz_water = {zw}\n");
            Ok(Output::ok(
                text,
                json!({ "z": z, "z_water": zw, "trace": trace_json(&t) }),
            ))
        }
    }
}

fn load(cli: &Cli) -> Result<Vec<TabletProblem>, Failure> {
    Ok(match &cli.corpus {
        Some(path) => corpus::load_corpus(path)?,
        None => corpus::parse_corpus(corpus::BUNDLED_CORPUS)?,
    })
}

fn replay(cli: &Cli, id: Option<&str>, all: bool) -> Result<Output, Failure> {
    let problems = load(cli)?;
    let selected: Vec<&TabletProblem> = match (id, all) {
        (Some(id), _) => vec![corpus::find(&problems, id)?],
        (None, true) => problems.iter().collect(),
        (None, false) => return Err(input_error("replay needs a problem id or --all".into())),
    };

    let mut results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|p| s.spawn(move || corpus::replay(p)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("replay thread panicked"))
            .collect()
    });
    results.sort_by(|a, b| result_id(a).cmp(result_id(b)));

    let mut text = String::new();
    let mut reports = Vec::new();
    let mut code = EXIT_OK;
    let mut errors = Vec::new();
    for r in &results {
        match r {
            Ok(report) => {
                if cli.trace {
                    text += &report.trace.to_string();
                }
                text += &report.to_string();
                if !report.pass {
                    code = code.max(EXIT_MISMATCH);
                }
                reports.push(serde_json::to_value(report).expect("reports serialize"));
            }
            Err(e) => {
                code = EXIT_MATH;
                text += &format!("== {} ERROR {}\n", e.problem, e.source);
                errors.push(json!({ "problem": e.problem, "error": e.source.to_string() }));
            }
        }
    }
    if all {
        let passed = results.iter().filter(|r| r.as_ref().is_ok_and(|r| r.pass)).count();
        text += &format!("{} problems, {} passed\n", results.len(), passed);
    }
    Ok(Output {
        text,
        json: json!({ "reports": reports, "errors": errors }),
        code,
    })
}

fn result_id(r: &Result<ReplayReport, corpus::ReplayError>) -> &str {
    match r {
        Ok(report) => &report.problem,
        Err(e) => &e.problem,
    }
}
