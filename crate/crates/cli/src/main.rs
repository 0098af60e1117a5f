//! `hahn`: root decisions, automaton algebra and ramification diagnostics.
//!
//! Polynomials use the grammar `X`, `t`, integer literals, `+ - * ^ ( )` with
//! implicit multiplication; coefficients are reduced mod p when parsed.
//!
//! Exit status of `decide`: 0 = YES, 1 = NO, 2 = UNDECIDED-RESOURCE.
//! Any other command exits 0 on success. Status 3 is a usage error, 4 an
//! input error, 5 a failed computation.

mod input;
mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hahn_automata::automata::text::{format_dfao, parse_dfao, to_dot};
use hahn_automata::decide::{
    decide_gamma_m, decide_ppf, decide_with_value_set, DecideConfig, RootQuery, Verdict,
};
use hahn_automata::newton::ramification_bound;
use hahn_automata::series::arith::{add, equals, is_zero, multiply};
use hahn_automata::series::{check_well_formed, check_well_ordered, AutomaticSeries};

use input::{parse_coefficient_field, parse_poly, parse_value_set};
use report::{BoundReport, DecideReport};

#[derive(Parser, Debug)]
#[command(
    name = "hahn",
    version,
    about = "Automatic power series in characteristic p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a monic f in F_p[t][X] has a root in a tame Hahn field.
    Decide(DecideArgs),
    /// Operations on automaton files.
    Dfao {
        #[command(subcommand)]
        op: DfaoOp,
    },
    /// Additive polynomial divisible by f.
    Ore(PolyArgs),
    /// Lower envelope of the lines of the additive multiple of f.
    Envelope(PolyArgs),
    /// Ramification bound m of f.
    Bound(PolyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Monic polynomial in X with coefficients in F_p[t].
    poly: String,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[arg(long)]
    p: u32,
    /// `F<q>`, `GF(q)`, `GF(q,modulus)`, `perfect`, `closure` or
    /// `degrees:d1,d2,...`. Defaults to F_p.
    #[arg(long)]
    field: Option<String>,
    /// Search the value group (1/(m p^∞))Z, m coprime to p.
    #[arg(long, conflicts_with = "v")]
    m: Option<u64>,
    /// Admissible prime powers, comma separated; empty for none.
    #[arg(long = "V", visible_alias = "v", id = "v")]
    v: Option<String>,
    #[arg(long, default_value_t = DecideConfig::default().max_states)]
    max_states: usize,
    #[arg(long, default_value_t = DecideConfig::default().max_candidates)]
    max_candidates: u64,
    /// Worker threads for candidate evaluation.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the witness automaton here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    poly: String,
}

#[derive(Subcommand, Debug)]
enum DfaoOp {
    /// Sum of two series.
    Add(BinaryArgs),
    /// Product of two series.
    Mul(BinaryArgs),
    /// Whether a series is zero.
    Zero { file: PathBuf },
    /// Whether two series are equal.
    Eq { a: PathBuf, b: PathBuf },
    /// Well-formedness and well-orderedness report.
    Validate { file: PathBuf },
    /// First k terms of the series.
    Support {
        #[arg(short, default_value_t = 8)]
        k: usize,
        file: PathBuf,
    },
    /// Graphviz rendering.
    Dot { file: PathBuf },
}

#[derive(Args, Debug)]
struct BinaryArgs {
    a: PathBuf,
    b: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }

    fn compute(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 5,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Decide(args) => cmd_decide(args),
        Command::Dfao { op } => cmd_dfao(op),
        Command::Ore(args) => cmd_ore(args),
        Command::Envelope(args) => cmd_envelope(args),
        Command::Bound(args) => cmd_bound(args),
    }
}

fn emit(format: OutputFormat, text: String, json: impl serde::Serialize) -> Result<(), Failure> {
    match format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Json => {
            let s = serde_json::to_string_pretty(&json).map_err(Failure::compute)?;
            println!("{s}");
        }
    }
    Ok(())
}

fn cmd_decide(args: DecideArgs) -> Result<u8, Failure> {
    let f = parse_poly(&args.poly, args.p)?;
    let field = match &args.field {
        Some(s) => parse_coefficient_field(s, args.p)?,
        None => input::prime_field(args.p)?,
    };
    if let Some(j) = args.jobs {
        if j == 0 {
            return Err(Failure::input("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(Failure::compute)?;
    }
    if args.max_states == 0 || args.max_candidates == 0 {
        return Err(Failure::input("caps must be positive"));
    }
    let cfg = DecideConfig {
        max_states: args.max_states,
        max_candidates: args.max_candidates,
        ..DecideConfig::default()
    };
    let query = RootQuery { f, field };
    let (reduction, decision) = match (&args.v, args.m) {
        (Some(v), _) => {
            let v: BTreeSet<u64> = parse_value_set(v)?;
            let (r, d) =
                decide_with_value_set(&query, |q| v.contains(&q), &cfg).map_err(decide_failure)?;
            (Some(r), d)
        }
        (None, Some(m)) => (
            None,
            decide_gamma_m(&query, m, &cfg).map_err(decide_failure)?,
        ),
        (None, None) => (None, decide_ppf(&query, &cfg).map_err(decide_failure)?),
    };
    let witness_file = match (&args.witness_out, decision.witness()) {
        (Some(path), Some(w)) => {
            write_file(path, &format_dfao(w.automaton()))?;
            Some(path.display().to_string())
        }
        _ => None,
    };
    let rep = DecideReport::new(&query, reduction.as_ref(), &decision, witness_file)
        .map_err(Failure::compute)?;
    emit(args.format, rep.text(), &rep)?;
    Ok(match decision.verdict {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::UndecidedResource => 2,
    })
}

fn decide_failure(e: hahn_automata::error::DecideError) -> Failure {
    use hahn_automata::error::DecideError;
    match e {
        DecideError::NotCoprime { .. } | DecideError::BadQuery => Failure::input(e),
        _ => Failure::compute(e),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::compute(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<AutomaticSeries, Failure> {
    let m = parse_dfao(&read_file(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    AutomaticSeries::new(m).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_pair(a: &Path, b: &Path) -> Result<(AutomaticSeries, AutomaticSeries), Failure> {
    let x = load_series(a)?;
    let y = load_series(b)?;
    if !x.field().same_field(y.field()) {
        return Err(Failure::input(format!(
            "operands have different output fields {} and {}",
            x.field().descriptor(),
            y.field().descriptor()
        )));
    }
    Ok((x, y))
}

fn cmd_dfao(op: DfaoOp) -> Result<u8, Failure> {
    match op {
        DfaoOp::Add(args) => binary(args, add),
        DfaoOp::Mul(args) => binary(args, multiply),
        DfaoOp::Zero { file } => {
            println!("{}", is_zero(&load_series(&file)?));
            Ok(0)
        }
        DfaoOp::Eq { a, b } => {
            let (x, y) = load_pair(&a, &b)?;
            println!("{}", equals(&x, &y).map_err(Failure::compute)?);
            Ok(0)
        }
        DfaoOp::Validate { file } => {
            let m = parse_dfao(&read_file(&file)?)
                .map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
            let formed = check_well_formed(&m);
            let ordered = check_well_ordered(&m);
            print!("{}", report::validation(&formed, &ordered));
            Ok(if formed.is_ok() && ordered.well_ordered() {
                0
            } else {
                1
            })
        }
        DfaoOp::Support { k, file } => {
            let x = load_series(&file)?;
            let sp = x.support_prefix(k).map_err(Failure::compute)?;
            for (e, c) in &sp.terms {
                println!("{e} {}", x.field().format_element(*c));
            }
            if !sp.exhausted {
                println!("...");
            }
            Ok(0)
        }
        DfaoOp::Dot { file } => {
            let m = parse_dfao(&read_file(&file)?)
                .map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
            print!("{}", to_dot(&m));
            Ok(0)
        }
    }
}

fn binary(
    args: BinaryArgs,
    op: impl Fn(
        &AutomaticSeries,
        &AutomaticSeries,
    ) -> Result<AutomaticSeries, hahn_automata::error::SeriesError>,
) -> Result<u8, Failure> {
    let (x, y) = load_pair(&args.a, &args.b)?;
    let z = op(&x, &y).map_err(Failure::compute)?;
    let text = format_dfao(z.automaton());
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_ore(args: PolyArgs) -> Result<u8, Failure> {
    let f = parse_poly(&args.poly, args.p)?;
    let b = ramification_bound(&f).map_err(Failure::input)?;
    let rep = BoundReport::new(&f, &b);
    emit(args.format, format!("{}\n", b.additive), rep.ore())?;
    Ok(0)
}

fn cmd_envelope(args: PolyArgs) -> Result<u8, Failure> {
    let f = parse_poly(&args.poly, args.p)?;
    let b = ramification_bound(&f).map_err(Failure::input)?;
    let rep = BoundReport::new(&f, &b);
    emit(args.format, rep.envelope_text(), rep.envelope())?;
    Ok(0)
}

fn cmd_bound(args: PolyArgs) -> Result<u8, Failure> {
    let f = parse_poly(&args.poly, args.p)?;
    let b = ramification_bound(&f).map_err(Failure::input)?;
    let rep = BoundReport::new(&f, &b);
    emit(args.format, rep.bound_text(), &rep)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn m_and_v_conflict() {
        let r = Cli::try_parse_from(["hahn", "decide", "--p", "3", "--m", "2", "--V", "2", "X"]);
        assert!(r.is_err());
    }

    #[test]
    fn empty_value_set_parses() {
        let r = Cli::try_parse_from(["hahn", "decide", "--p", "3", "--V=", "X"]).unwrap();
        match r.command {
            Command::Decide(a) => assert_eq!(a.v.as_deref(), Some("")),
            _ => panic!(),
        }
    }
}
