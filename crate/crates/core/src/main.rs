use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use quiver_motive::engine::{motive_class, motive_table, MotiveResult};
use quiver_motive::fflab::field::is_prime;
use quiver_motive::quiver::{parse_quiver, DimVector, Quiver, QuiverSpec};
use quiver_motive::record::{CaseRecord, MotiveRecord};
use quiver_motive::verify::{run_suite, selftest, Fault, Status, VerifyConfig};
use quiver_motive::Error;

/// Exit code for malformed input.
const EXIT_USAGE: u8 = 2;
/// Exit code when a class fails to be a polynomial in `L`.
const EXIT_NOT_POLYNOMIAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "quiver-motive",
    version,
    about = "Motivic classes of Nakajima quiver varieties",
    after_help = "Exit codes: 0 success, 1 verification or self-test failure, 2 bad input, 3 non-polynomial class."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class of M(v, w) for one dimension vector.
    Motive(ComputeArgs),
    /// Classes of M(v, w) for every v with |v| <= max degree.
    Series(ComputeArgs),
    /// Compare formulas against finite-field oracles.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: ComputeArgs,
        /// Field sizes (primes).
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u32>,
        /// Moment-map level.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        alpha: i64,
        /// Maximum number of enumerated points per case.
        #[arg(long, default_value_t = 1 << 26)]
        budget: u128,
    },
    /// Run the built-in invariant checks.
    Selftest {
        /// Quick subset.
        #[arg(long)]
        fast: bool,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<InjectedFault>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Quiver spec file, or a built-in name (jordan, single, a2, kronecker, star3, two-loop).
    #[arg(long)]
    quiver: Option<String>,
    /// Dimension vector, comma separated.
    #[arg(long, value_parser = parse_list)]
    v: Option<DimVector>,
    /// Framing vector, comma separated.
    #[arg(long, value_parser = parse_list)]
    w: Option<DimVector>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Human,
    Records,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Ffcount,
    Centralizer,
    Kappa,
    Harmonic,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Ffcount => "ffcount",
            Suite::Centralizer => "centralizer",
            Suite::Kappa => "kappa",
            Suite::Harmonic => "harmonic",
            Suite::All => "all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InjectedFault {
    Pairing,
}

fn parse_list(s: &str) -> Result<DimVector, String> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Err("empty list".into());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| format!("{x:?} is not a nonnegative integer")))
        .collect::<Result<Vec<_>, _>>()
        .map(DimVector)
}

/// Failure carrying the process exit code.
struct Fatal {
    code: u8,
    message: String,
}

impl Fatal {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PolynomialityViolated { .. } => EXIT_NOT_POLYNOMIAL,
            Error::Spec(_) | Error::LengthMismatch { .. } => EXIT_USAGE,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Fatal {
    fn from(e: io::Error) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn load_spec(args: &ComputeArgs) -> Result<QuiverSpec, Fatal> {
    let name = args
        .quiver
        .as_deref()
        .ok_or_else(|| Fatal::usage("--quiver is required"))?;
    let mut spec = match Quiver::builtin(name) {
        Some(quiver) => QuiverSpec {
            quiver,
            w: None,
            v: None,
            max_degree: None,
        },
        None => {
            let text = fs::read_to_string(name)
                .map_err(|e| Fatal::usage(format!("{name}: not a built-in quiver and not readable: {e}")))?;
            parse_quiver(&text).map_err(|e| Fatal::usage(format!("{name}: {e}")))?
        }
    };
    if args.v.is_some() {
        spec.v = args.v.clone();
    }
    if args.w.is_some() {
        spec.w = args.w.clone();
    }
    if args.max_degree.is_some() {
        spec.max_degree = args.max_degree;
    }
    for (field, vec) in [("--v", &spec.v), ("--w", &spec.w)] {
        if let Some(vec) = vec {
            if vec.len() != spec.quiver.vertex_count() {
                return Err(Fatal::usage(format!(
                    "{field}: has {} entries, quiver has {} vertices",
                    vec.len(),
                    spec.quiver.vertex_count()
                )));
            }
        }
    }
    Ok(spec)
}

fn configure_threads(threads: Option<usize>) -> Result<(), Fatal> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Fatal::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fatal::usage(e.to_string()))?;
    }
    Ok(())
}

/// Polynomial in descending powers of `L`, e.g. `L^2 + L`.
fn descending(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let one = mag == BigInt::from(1);
        match (k, one) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, true) => out.push('L'),
            (1, false) => out.push_str(&format!("{mag}*L")),
            (_, true) => out.push_str(&format!("L^{k}")),
            (_, false) => out.push_str(&format!("{mag}*L^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn warn_negative(r: &MotiveResult) {
    if r.has_negative_coefficient() {
        eprintln!("WARNING: class of M({}, {}) has a negative coefficient", r.v, r.w);
    }
}

fn cmd_motive(args: &ComputeArgs, out: &mut impl Write) -> Result<(), Fatal> {
    configure_threads(args.threads)?;
    let spec = load_spec(args)?;
    let v = spec.v.ok_or_else(|| Fatal::usage("--v is required"))?;
    let w = spec.w.ok_or_else(|| Fatal::usage("--w is required"))?;
    let r = motive_class(&spec.quiver, &v, &w)?;
    warn_negative(&r);
    match args.format {
        Format::Human => {
            writeln!(out, "{}", descending(&r.class_polynomial))?;
            writeln!(out, "d_{{v,w}} = {}", r.d_shift)?;
        }
        Format::Records => writeln!(out, "{}", MotiveRecord::from(&r).to_line())?,
    }
    Ok(())
}

fn cmd_series(args: &ComputeArgs, out: &mut impl Write) -> Result<(), Fatal> {
    configure_threads(args.threads)?;
    let spec = load_spec(args)?;
    let w = spec.w.ok_or_else(|| Fatal::usage("--w is required"))?;
    let n = spec.max_degree.ok_or_else(|| Fatal::usage("--max-degree is required"))?;
    let table = motive_table(&spec.quiver, &w, n)?;
    for r in &table {
        warn_negative(r);
        match args.format {
            Format::Human => writeln!(out, "v={:<12} d={:<5} {}", r.v.to_string(), r.d_shift, descending(&r.class_polynomial))?,
            Format::Records => writeln!(out, "{}", MotiveRecord::from(r).to_line())?,
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    common: &ComputeArgs,
    qs: &[u32],
    alpha: i64,
    budget: u128,
    out: &mut impl Write,
) -> Result<bool, Fatal> {
    configure_threads(common.threads)?;
    if let Some(bad) = qs.iter().find(|&&q| !is_prime(q)) {
        return Err(Fatal::usage(format!("--q: {bad} is not prime")));
    }
    let mut config = VerifyConfig {
        qs: qs.to_vec(),
        alpha,
        budget,
        ..VerifyConfig::default()
    };
    if common.quiver.is_some() {
        let spec = load_spec(common)?;
        let w = spec.w.unwrap_or_else(|| DimVector(vec![1; spec.quiver.vertex_count()]));
        config.target = Some((spec.quiver, w));
        config.v = spec.v;
        if let Some(n) = spec.max_degree {
            config.max_degree = n;
        }
    } else if common.v.is_some() || common.w.is_some() {
        return Err(Fatal::usage("--v and --w need --quiver"));
    }
    let reports = run_suite(suite.name(), &config).expect("suite names come from the parser");
    for r in &reports {
        match common.format {
            Format::Human => writeln!(out, "{r}")?,
            Format::Records => writeln!(out, "{}", CaseRecord::from(r).to_line())?,
        }
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    if common.format == Format::Human {
        writeln!(
            out,
            "{} passed, {} flagged, {} skipped, {} failed",
            count(Status::Pass),
            count(Status::Flag),
            count(Status::Skip),
            count(Status::Fail)
        )?;
    }
    Ok(count(Status::Fail) == 0)
}

fn run(cli: Cli) -> Result<bool, Fatal> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Motive(args) => cmd_motive(&args, &mut out).map(|_| true),
        Command::Series(args) => cmd_series(&args, &mut out).map(|_| true),
        Command::Verify {
            suite,
            common,
            q,
            alpha,
            budget,
        } => cmd_verify(suite, &common, &q, alpha, budget, &mut out),
        Command::Selftest {
            fast,
            inject_fault,
            threads,
        } => {
            configure_threads(threads)?;
            let fault = inject_fault.map(|InjectedFault::Pairing| Fault::Pairing);
            match selftest(fast, fault, |line| {
                let _ = writeln!(out, "{line}");
            }) {
                Ok(()) => {
                    writeln!(out, "selftest passed")?;
                    Ok(true)
                }
                Err(failure) => {
                    writeln!(out, "FAILED invariant: {}", failure.invariant)?;
                    writeln!(out, "counterexample: {}", failure.counterexample)?;
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
