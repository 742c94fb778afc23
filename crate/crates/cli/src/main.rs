use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobw_core::frontend::report::{
    fano_json, membership_json, split_report, toric_json, verify_json, HypersurfaceInput,
};
use frobw_core::frontend::verify::run_all;
use frobw_core::frontend::{parse_e_range, parse_fan, parse_polynomial_with_vars, Report};
use frobw_core::splitting::{fano_report, membership_check, profiles, ProfileOptions, Strategy};
use frobw_core::toric::{corpus::named_fan, toric_alpha};
use frobw_core::{Error, GradedHypersurface};

#[derive(Parser)]
#[command(name = "frobw", version, about = "Frobenius splitting invariants at desk scale")]
struct Cli {
    /// Worker threads for per-degree jobs (default: available parallelism).
    #[arg(long, global = true, env = "FROBW_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting profile b_e(m), thresholds and free ranks of a hypersurface.
    Split(HypersurfaceArgs),
    /// Split, plus the normalised Fano report (requires v > δ).
    Fano(HypersurfaceArgs),
    /// Exact α of a simplicial toric Fano variety.
    ToricAlpha(ToricArgs),
    /// Run the built-in acceptance suite.
    Verify(VerifyArgs),
    /// Test f ∈ I_e.
    Membership(MembershipArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Direct,
    Strings,
}

#[derive(Args)]
struct PolyArgs {
    /// Prime characteristic.
    #[arg(long)]
    p: u64,
    /// Defining polynomial, e.g. "x0^3+x1^3+x2^3+x3^3".
    #[arg(long, conflicts_with = "poly_file", required_unless_present = "poly_file")]
    poly: Option<String>,
    /// File holding the defining polynomial.
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Comma-separated variable order; default is first appearance.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Args)]
struct HypersurfaceArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Level n or inclusive range a..b.
    #[arg(long, default_value = "1")]
    e: String,
    /// Report duality failures instead of exiting with status 4.
    #[arg(long)]
    no_duality_check: bool,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ToricArgs {
    /// Fan JSON file, or a named fan such as p2, p1xp1, dp6.
    #[arg(long)]
    fan: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Include the oracle equivalence criterion.
    #[arg(long)]
    deep: bool,
    /// Also write a JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MembershipArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Homogeneous element f in the same variables.
    #[arg(long)]
    element: String,
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::InternalCheck(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn load_ring(args: &PolyArgs) -> Result<(GradedHypersurface, String, Vec<String>), Failure> {
    let raw = match (&args.poly, &args.poly_file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?.trim().to_string(),
        (None, None) => unreachable!("clap requires one of --poly, --poly-file"),
    };
    let src = parse_polynomial_with_vars(&raw, args.p, args.vars.as_deref())?;
    for w in &src.warnings {
        eprintln!("warning: {w}");
    }
    let ring = GradedHypersurface::new(src.poly, src.vars)?;
    Ok((ring, raw, src.warnings))
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn duality_gate(report: &Report, advisory: bool) -> Result<(), Failure> {
    let duality = &report.value()["checks"]["duality"];
    if advisory || duality["ok"].as_bool() != Some(false) {
        return Ok(());
    }
    Err(Failure {
        code: 4,
        message: format!(
            "internal check failed: duality palindrome fails at {}",
            duality["failures"]
        ),
    })
}

fn hypersurface(args: &HypersurfaceArgs, fano: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (ring, raw, warnings) = load_ring(&args.poly)?;
    let (e_lo, e_hi) = parse_e_range(&args.e)?;
    let opts = ProfileOptions {
        strategy: match args.strategy {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Direct => Strategy::DirectRank,
            StrategyArg::Strings => Strategy::TensorStrings,
        },
        ..ProfileOptions::default()
    };
    let input = HypersurfaceInput {
        ring: &ring,
        raw: &raw,
        e_lo,
        e_hi,
        duality_advisory: args.no_duality_check,
        warnings: &warnings,
    };
    let mut report = if fano {
        if e_lo != 1 {
            return Err(Failure {
                code: 1,
                message: "fano reports start at e = 1; use --e 1..b".into(),
            });
        }
        fano_json(&input, &fano_report(&ring, e_hi, opts)?)
    } else {
        split_report(&input, &profiles(&ring, e_lo, e_hi, opts)?)
    };
    report.set_elapsed_ms(start.elapsed().as_millis() as u64);
    emit(&report, args.format, args.out.as_ref())?;
    duality_gate(&report, args.no_duality_check)
}

fn toric(args: &ToricArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let fan = match std::fs::read(&args.fan) {
        Ok(bytes) => parse_fan(&bytes)?,
        Err(io) => named_fan(&args.fan).ok_or_else(|| Failure {
            code: 1,
            message: format!("cannot read fan '{}': {io}", args.fan),
        })?,
    };
    let rep = toric_alpha(&fan)?;
    let mut report = toric_json(&args.fan, &fan, &rep);
    report.set_elapsed_ms(start.elapsed().as_millis() as u64);
    emit(&report, args.format, args.out.as_ref())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let results = run_all(args.deep);
    for r in &results {
        println!("{}", r.line());
    }
    if let Some(path) = &args.out {
        let mut report = verify_json(&results, args.deep);
        report.set_elapsed_ms(start.elapsed().as_millis() as u64);
        std::fs::write(path, report.to_json())?;
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", results.len());
        Ok(())
    } else {
        Err(Failure {
            code: 4,
            message: format!("failed criteria: {failed:?}"),
        })
    }
}

fn membership(args: &MembershipArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let (ring, raw, _) = load_ring(&args.poly)?;
    let element = parse_polynomial_with_vars(&args.element, args.poly.p, Some(ring.names()))?;
    for w in &element.warnings {
        eprintln!("warning: {w}");
    }
    let result = membership_check(&ring, args.e, &element.poly)?;
    let display = element.poly.to_string_with(ring.names());
    let mut report = membership_json(&ring, &raw, &args.element, &display, args.e, result);
    report.set_elapsed_ms(start.elapsed().as_millis() as u64);
    emit(&report, Format::Json, None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match &cli.command {
        Command::Split(a) => hypersurface(a, false),
        Command::Fano(a) => hypersurface(a, true),
        Command::ToricAlpha(a) => toric(a),
        Command::Verify(a) => verify(a),
        Command::Membership(a) => membership(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
