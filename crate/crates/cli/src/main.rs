use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meadow::axioms::{suite_by_id, AxiomError};
use meadow::checker::{
    check_suite_with, check_with, search, CheckError, CheckMode, CheckOptions, CheckReport,
    EvalError, FamilySpec, SuiteReport, Valuation, DEFAULT_MAX_EVALS,
};
use meadow::translate::{to_md, to_nimd, TranslateError};
use meadow::{parse_descriptor, parse_formula, parse_term, Model, ModelError, Signature, SyntaxError};
use serde_json::json;

/// `println!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const MAX_EVALS_VAR: &str = "MEADOW_MAX_EVALS";
const DEFAULT_TRIALS: u64 = 1000;

#[derive(Parser)]
#[command(name = "meadow", version, about = "Evaluate, check and translate meadow terms and formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term in a model
    Eval {
        #[arg(long)]
        model: String,
        /// Variable assignment `x=VALUE`; repeatable
        #[arg(long = "assign", value_name = "VAR=VALUE")]
        assign: Vec<String>,
        term: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a formula in a model
    Check {
        #[arg(long)]
        model: String,
        formula: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        json: bool,
    },
    /// List an axiom suite or check it in a model
    Axioms {
        /// Suite id: cr, md, nimd1, nimd, nimd:N, derived-md, derived-nimd1,
        /// derived-nimd:N, guarded, initiality-md, initiality-nimd
        suite: String,
        #[arg(long, conflicts_with = "check")]
        list: bool,
        #[arg(long, requires = "model")]
        check: bool,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeName::Auto)]
        mode: ModeName,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search a family of finite models for a counterexample
    Search {
        formula: String,
        #[arg(long, value_enum, default_value_t = Family::Gf)]
        family: Family,
        #[arg(long)]
        pmax: u64,
        /// Only use the inverse of zero `k`
        #[arg(long)]
        k: Option<u64>,
        /// Also search products of two family members
        #[arg(long)]
        products: bool,
        /// Also search the `n`-based retotalizations of meadow members
        #[arg(long, value_name = "N")]
        reto: Option<u64>,
        /// Also search the involutizations of non-involutive members
        #[arg(long)]
        invo: bool,
        #[arg(long)]
        json: bool,
    },
    /// Translate a term between the two inverse symbols
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, default_value_t = 1)]
        n: u64,
        term: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModeArgs {
    fn mode(&self) -> CheckMode {
        match (self.exhaustive, self.trials) {
            (true, _) => CheckMode::Exhaustive,
            (false, Some(trials)) => CheckMode::Sampled { trials, seed: self.seed },
            (false, None) => CheckMode::Auto {
                trials: DEFAULT_TRIALS,
                seed: self.seed,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeName {
    Exhaustive,
    Sampled,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Md,
    Nimd,
}

/// An error with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Failure::new(2, e)
    }
}

impl From<AxiomError> for Failure {
    fn from(e: AxiomError) -> Self {
        Failure::new(2, e)
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        Failure::new(2, e)
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        let code = match &e {
            CheckError::Eval(EvalError::UnboundVariable(_)) => 3,
            CheckError::InfiniteCarrier(_) => 4,
            CheckError::TooManyAssignments { .. } => 5,
            _ => 2,
        };
        Failure::new(code, e)
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        CheckError::from(e).into()
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Precondition { .. } => Failure::new(6, e),
            ModelError::Check(inner) => (*inner).into(),
            other => Failure::new(2, other),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn options() -> Result<CheckOptions, Failure> {
    let max_evals = match std::env::var(MAX_EVALS_VAR) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(2, format!("{MAX_EVALS_VAR} must be a non-negative integer, got `{v}`")))?,
        _ => DEFAULT_MAX_EVALS,
    };
    Ok(CheckOptions {
        max_evals,
        ..CheckOptions::default()
    })
}

fn print_json(value: &impl serde::Serialize) {
    out!("{}", serde_json::to_string(value).expect("reports serialize"));
}

fn verdict_code(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_report(r: &CheckReport) {
    out!("{}", r.verdict);
    if let Some(w) = r.witness.as_ref().filter(|w| !w.is_empty()) {
        out!("witness: {w}");
    }
    out!("assignments tested: {}", r.assignments_tested);
    if let Some(seed) = r.seed {
        out!("seed: {seed}");
    }
}

fn parse_assignments(m: &Model, assign: &[String]) -> Result<Valuation, Failure> {
    assign
        .iter()
        .map(|a| {
            let (var, value) = a
                .split_once('=')
                .ok_or_else(|| Failure::new(2, format!("assignment `{a}` is not of the form VAR=VALUE")))?;
            Ok((var.trim().to_string(), m.parse_element(value.trim())?))
        })
        .collect()
}

fn cmd_eval(model: &str, assign: &[String], term: &str, json: bool) -> Outcome {
    let t = parse_term(term, Signature::Mixed)?;
    let m = parse_descriptor(model)?.read_as(t.signature())?;
    let v = parse_assignments(&m, assign)?;
    let value = meadow::checker::eval(&m, &t, &v)?;
    if json {
        print_json(&json!({ "value": value.to_string() }));
    } else {
        out!("{value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(model: &str, formula: &str, mode: CheckMode, json: bool) -> Outcome {
    let f = parse_formula(formula, Signature::Mixed)?;
    let m = parse_descriptor(model)?.read_as(f.signature())?;
    let r = check_with(&m, &f, mode, &options()?)?;
    if json {
        print_json(&r);
    } else {
        print_report(&r);
    }
    Ok(verdict_code(r.holds()))
}

fn print_suite_report(r: &SuiteReport) {
    for x in &r.results {
        match &x.report.witness {
            Some(w) if !w.is_empty() => out!("{}: {} {w}", x.label, x.report.verdict),
            _ => out!("{}: {}", x.label, x.report.verdict),
        }
    }
    let failed = r.results.iter().filter(|x| !x.report.holds()).count();
    if failed == 0 {
        out!("all {} hold in {}", r.results.len(), r.model);
    } else {
        out!("{failed} of {} fail in {}", r.results.len(), r.model);
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    suite: &str,
    check: bool,
    model: Option<&str>,
    mode: ModeName,
    trials: u64,
    seed: u64,
    json: bool,
) -> Outcome {
    let s = suite_by_id(suite)?;
    if !check {
        if json {
            let items: Vec<_> = s
                .formulas
                .iter()
                .map(|a| json!({ "label": a.label, "formula": a.formula.to_string() }))
                .collect();
            print_json(&json!({ "suite": s.id, "signature": s.signature, "axioms": items }));
        } else {
            for a in &s.formulas {
                out!("{}: {}", a.label, a.formula);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let model = model.expect("clap requires --model with --check");
    let m = parse_descriptor(model)?.read_as(s.signature)?;
    let mode = match mode {
        ModeName::Exhaustive => CheckMode::Exhaustive,
        ModeName::Sampled => CheckMode::Sampled { trials, seed },
        ModeName::Auto => CheckMode::Auto { trials, seed },
    };
    let r = check_suite_with(&m, &s, mode, &options()?)?;
    if json {
        print_json(&r);
    } else {
        print_suite_report(&r);
    }
    Ok(verdict_code(r.passed()))
}

fn cmd_search(formula: &str, family: FamilySpec, json: bool) -> Outcome {
    let f = parse_formula(formula, Signature::Mixed)?;
    let r = search(&f, &family, &options()?)?;
    if json {
        print_json(&r);
    } else {
        match &r.counterexample {
            Some(c) => out!("{}, {}", c.model, c.witness),
            None => out!("none"),
        }
    }
    Ok(verdict_code(r.counterexample.is_none()))
}

fn cmd_translate(to: Target, n: u64, term: &str, json: bool) -> Outcome {
    let out = match to {
        Target::Md => to_md(&parse_term(term, Signature::Nimd)?, n)?,
        Target::Nimd => to_nimd(&parse_term(term, Signature::Md)?)?,
    };
    if json {
        print_json(&json!({ "term": out.to_string() }));
    } else {
        out!("{out}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Eval {
            model,
            assign,
            term,
            json,
        } => cmd_eval(&model, &assign, &term, json),
        Command::Check {
            model,
            formula,
            mode,
            json,
        } => cmd_check(&model, &formula, mode.mode(), json),
        Command::Axioms {
            suite,
            list: _,
            check,
            model,
            mode,
            trials,
            seed,
            json,
        } => cmd_axioms(&suite, check, model.as_deref(), mode, trials, seed, json),
        Command::Search {
            formula,
            family: Family::Gf,
            pmax,
            k,
            products,
            reto,
            invo,
            json,
        } => {
            let family = FamilySpec {
                pmax,
                k,
                products,
                reto,
                invo,
            };
            cmd_search(&formula, family, json)
        }
        Command::Translate { to, n, term, json } => cmd_translate(to, n, &term, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
