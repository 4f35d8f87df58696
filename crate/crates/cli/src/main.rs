//! `qadv`: generate functions, compute measures, evaluate witnesses, run verification suites.
//!
//! Exit codes: 0 success, 1 verification or soundness failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qadv::constructions::{
    compose_or, gen_all_total, gen_fpp, gen_gth, gen_osp, gen_random_partial, or_total, Budget,
};
use qadv::report::{MeasureKind, MeasureReport};
use qadv::verify::{run_suite, Suite};
use qadv::witness_file::{evaluate, soundness, Witness};
use qadv::{parse_archive, write_archive, Exec, PartialFunction, Rational};

#[derive(Parser)]
#[command(
    name = "qadv",
    version,
    about = "Exact adversary bounds and sensitivity measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a function (or, for all-total, an archive) in the qfn format.
    Gen(GenArgs),
    /// Compute exact measures of a function file.
    Compute(ComputeArgs),
    /// Evaluate a witness file against a function file.
    Witness(WitnessArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gth,
    Osp,
    Fpp,
    FppOr,
    Or,
    Random,
    AllTotal,
}

#[derive(Args)]
struct BudgetArgs {
    /// Override the domain budget |S| <= 20000.
    #[arg(long)]
    max_domain: Option<u128>,
    /// Override the cube budget g^n <= 10^6.
    #[arg(long)]
    max_cube: Option<u128>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(d) = self.max_domain {
            eprintln!("warning: domain budget overridden to {d}");
            b.max_domain = d;
        }
        if let Some(c) = self.max_cube {
            eprintln!("warning: cube budget overridden to {c}");
            b.max_cube = c;
        }
        b
    }
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Projective plane order (prime).
    #[arg(long)]
    t: Option<usize>,
    /// OR arity for fpp-or.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 2)]
    g: usize,
    #[arg(long, default_value_t = 2)]
    h: usize,
    /// Domain fraction for random, as p/q.
    #[arg(long, default_value = "1/2")]
    fraction: Rational,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ComputeArgs {
    file: PathBuf,
    /// Comma-separated subset of bs, cert, fbs, fc, mm, ca1.
    #[arg(long, value_delimiter = ',', default_value = "bs,cert,fbs,fc,mm,ca1")]
    measures: Vec<MeasureKind>,
    /// One-sided variant for output symbol b (Boolean outputs only).
    #[arg(long)]
    side: Option<u8>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Attach optimal solutions as witness documents (JSON only).
    #[arg(long, requires = "json")]
    witnesses: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct WitnessArgs {
    function: PathBuf,
    witness: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    fraction: Option<Rational>,
    /// Run on the current thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

enum Failure {
    /// Exit 1.
    Check,
    /// Exit 2 with a one-line diagnostic.
    Input(String),
}

impl From<qadv::Error> for Failure {
    fn from(e: qadv::Error) -> Self {
        match e {
            // A solver in an impossible state is a bug, not bad input.
            qadv::Error::Solver(_) => {
                eprintln!("error: {e}");
                Failure::Check
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn required(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("--{flag} is required for this family")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(a: &GenArgs) -> Outcome {
    let budget = a.budget.budget();
    let f = match a.family {
        Family::Gth => gen_gth(required(a.n, "n")?)?,
        Family::Osp => gen_osp(required(a.n, "n")?)?,
        Family::Fpp => gen_fpp(required(a.t, "t")?)?,
        Family::FppOr => compose_or(&gen_fpp(required(a.t, "t")?)?, required(a.k, "k")?, &budget)?,
        Family::Or => or_total(required(a.n, "n")?)?,
        Family::Random => {
            gen_random_partial(required(a.n, "n")?, a.g, a.h, &a.fraction, a.seed, &budget)?
        }
        Family::AllTotal => {
            let all: Vec<_> = gen_all_total(required(a.n, "n")?, a.g, a.h, &budget)?.collect();
            return emit(&write_archive(&all), a.output.as_deref());
        }
    };
    emit(&f.to_qfn(), a.output.as_deref())
}

fn load_functions(path: &Path) -> Result<Vec<(String, PartialFunction)>, Failure> {
    let text = read(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let fs = parse_archive(&text)?;
    if fs.len() == 1 {
        return Ok(fs.into_iter().map(|f| (name.clone(), f)).collect());
    }
    Ok(fs
        .into_iter()
        .enumerate()
        .map(|(k, f)| (format!("{name}#{k}"), f))
        .collect())
}

fn compute(a: &ComputeArgs) -> Outcome {
    let budget = a.budget.budget();
    let functions = load_functions(&a.file)?;
    let mut out = String::new();
    for (k, (id, f)) in functions.iter().enumerate() {
        if f.domain_size() as u128 > budget.max_domain {
            return Err(Failure::Input(format!(
                "{id}: domain of {} words exceeds the budget of {}",
                f.domain_size(),
                budget.max_domain
            )));
        }
        let report = MeasureReport::compute(f, id, &a.measures, a.side, a.witnesses)?;
        if a.json {
            out.push_str(&report.to_json());
            out.push('\n');
        } else if a.csv {
            out.push_str(&report.to_csv(k == 0));
        } else {
            out.push_str(&format!("{id} (n = {})\n", report.n));
            for (name, value) in &report.measures {
                match report.argmax.get(name) {
                    Some(x) => out.push_str(&format!("  {name} = {value} at {x}\n")),
                    None => out.push_str(&format!("  {name} = {value}\n")),
                }
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn witness(a: &WitnessArgs) -> Outcome {
    let f = PartialFunction::parse_qfn(&read(&a.function)?)?;
    let w = Witness::from_json(&read(&a.witness)?)?;
    let value = evaluate(&f, &w)?;
    let check = soundness(&f, &w, &value)?;
    println!("{} witness: {value}", w.kind());
    println!("soundness: {check}");
    if check.holds() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(a: &VerifyArgs) -> Outcome {
    let mut p = a.suite.default_params();
    p.n = a.n.unwrap_or(p.n);
    p.g = a.g.unwrap_or(p.g);
    p.h = a.h.unwrap_or(p.h);
    p.samples = a.samples.unwrap_or(p.samples);
    p.seed = a.seed.unwrap_or(p.seed);
    if let Some(fr) = &a.fraction {
        p.fraction = fr.clone();
    }
    p.budget = a.budget.budget();
    let exec = if a.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let result = run_suite(a.suite, &p, exec)?;
    print!("{result}");
    if result.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Compute(a) => compute(a),
        Command::Witness(a) => witness(a),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
