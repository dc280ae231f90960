//! `wdist`: exact weight distributions for a two-zero family of p-ary
//! cyclic codes, with closed-form prediction, brute-force and
//! character-sum enumeration, and verification between the two.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use wdist_cli::render;
use wdist_core::codes::{self, CodesError, Method};
use wdist_core::expsums::{self, ExpsumError};
use wdist_core::gf::{Field, GfError};
use wdist_core::predict::{self, PredictError, VerifyStatus};
use wdist_core::structure::{self, StructureError};

#[derive(Parser)]
#[command(
    name = "wdist",
    version,
    about = "Exact weight distributions for a family of p-ary cyclic codes with two dual zeros"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form weight distribution for the (p, m, k) code family
    Predict(PredictArgs),
    /// Enumerate the weight distribution of the code with exponent t
    Enumerate(EnumerateArgs),
    /// Enumerate and compare against the closed form (exit 0 PASS, 1 FAIL)
    Verify(VerifyArgs),
    /// Value distribution of a character sum over the field
    Expsum(ExpsumArgs),
    /// p-cyclotomic coset of i modulo p^m - 1
    Coset(CosetArgs),
    /// Minimal polynomial of the dual zero pi^(-t)
    Minpoly(MinpolyArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Odd prime characteristic
    #[arg(long)]
    p: u64,
    /// Extension degree of the field F_{p^m}
    #[arg(long)]
    m: u32,
    /// Modulus table file overriding the built-in polynomials
    #[arg(long)]
    modulus_file: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered output to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Family parameter: the dual zeros involve the exponent (p^k+1)/2
    #[arg(long)]
    k: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Code exponent t (reduced mod p^m - 1)
    #[arg(long)]
    t: u64,
    /// Enumeration route
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Worker threads for direct enumeration (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Code exponent t (must match the family for some (k, tau))
    #[arg(long)]
    t: u64,
    /// Enumeration route for the computed side
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Worker threads for direct enumeration (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ExpsumArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Family parameter k for the power exponent p^k + 1
    #[arg(long)]
    k: u32,
    /// Which sum's value distribution to compute
    #[arg(long, value_enum)]
    which: Which,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CosetArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coset representative
    #[arg(long)]
    i: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct MinpolyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Code exponent t; the polynomial annihilates pi^(-t)
    #[arg(long)]
    t: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Fast,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Fast => Method::Fast,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "t_alpha")]
    TAlpha,
    #[value(name = "r_alpha")]
    RAlpha,
    #[value(name = "t_ab")]
    TAb,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::TAlpha => "t_alpha",
            Which::RAlpha => "r_alpha",
            Which::TAb => "t_ab",
        }
    }
}

/// Everything a run needs, resolved from the parsed arguments.
struct RunConfig {
    p: u64,
    m: u32,
    k: Option<u32>,
    t: Option<u64>,
    i: Option<u64>,
    which: Option<Which>,
    method: Method,
    workers: Option<usize>,
    format: Format,
    output: Option<PathBuf>,
    modulus_file: Option<PathBuf>,
}

impl RunConfig {
    fn new(field: FieldArgs, out: OutputArgs) -> RunConfig {
        RunConfig {
            p: field.p,
            m: field.m,
            k: None,
            t: None,
            i: None,
            which: None,
            method: Method::Auto,
            workers: None,
            format: out.format,
            output: out.output,
            modulus_file: field.modulus_file,
        }
    }
}

/// A diagnosed failure: message for stderr plus the documented exit code
/// (2 invalid parameters, 3 resource guard, 4 inadmissible t, 5 no
/// family match; 1 is reserved for verification FAIL and broken internal
/// identities).
struct Failure {
    code: u8,
    message: String,
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Failure {
        let code = match e {
            GfError::TooLarge { .. } => 3,
            _ => 2,
        };
        failure(code, e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Failure {
        let code = match e {
            StructureError::TooLarge { .. } => 3,
            StructureError::Inadmissible { .. } => 4,
            StructureError::NonPositive => 2,
        };
        failure(code, e.to_string())
    }
}

impl From<CodesError> for Failure {
    fn from(e: CodesError) -> Failure {
        let code = match e {
            CodesError::TooLarge { .. } => 3,
            CodesError::InadmissibleT { .. } => 4,
            CodesError::NonRationalSum { .. } | CodesError::DegenerateCode => 1,
        };
        failure(code, e.to_string())
    }
}

impl From<ExpsumError> for Failure {
    fn from(e: ExpsumError) -> Failure {
        let code = match e {
            ExpsumError::PreconditionViolation { .. } | ExpsumError::CaseNotCovered { .. } => 2,
            ExpsumError::LemmaViolation { .. } | ExpsumError::IdentityViolation { .. } => 1,
        };
        failure(code, e.to_string())
    }
}

impl From<PredictError> for Failure {
    fn from(e: PredictError) -> Failure {
        match e {
            PredictError::InvalidParameters { .. } => failure(2, e.to_string()),
            PredictError::NoMatch { .. } => failure(5, e.to_string()),
            PredictError::Enumeration(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        failure(2, format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Predict(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.k = Some(args.k);
            cmd_predict(&cfg)
        }
        Command::Enumerate(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.t = Some(args.t);
            cfg.method = args.method.into();
            cfg.workers = args.workers;
            cmd_enumerate(&cfg)
        }
        Command::Verify(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.t = Some(args.t);
            cfg.method = args.method.into();
            cfg.workers = args.workers;
            cmd_verify(&cfg)
        }
        Command::Expsum(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.k = Some(args.k);
            cfg.which = Some(args.which);
            cmd_expsum(&cfg)
        }
        Command::Coset(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.i = Some(args.i);
            cmd_coset(&cfg)
        }
        Command::Minpoly(args) => {
            let mut cfg = RunConfig::new(args.field, args.out);
            cfg.t = Some(args.t);
            cmd_minpoly(&cfg)
        }
    }
}

/// Shape check shared by subcommands that do arithmetic before (or
/// without) building a field, which would otherwise validate p and m.
fn validate_prime_field(p: u64, m: u32) -> Result<(), Failure> {
    if p == 2 || !wdist_core::gf::is_prime(p) {
        return Err(failure(2, format!("p must be an odd prime, got {p}")));
    }
    if m == 0 {
        return Err(failure(2, "m must be at least 1"));
    }
    Ok(())
}

/// Resolve the modulus without building the field (used by subcommands
/// whose mathematics is field-independent but whose output still echoes
/// the modulus for reproducibility).
fn resolve_modulus(cfg: &RunConfig) -> Result<Vec<u64>, Failure> {
    Ok(wdist_core::gf::resolve_modulus(
        cfg.p,
        cfg.m,
        cfg.modulus_file.as_deref(),
    )?)
}

fn build_field(cfg: &RunConfig) -> Result<Field, Failure> {
    Ok(Field::resolved(cfg.p, cfg.m, cfg.modulus_file.as_deref())?)
}

fn install_workers(cfg: &RunConfig) -> Result<(), Failure> {
    if let Some(n) = cfg.workers {
        if n == 0 {
            return Err(failure(2, "workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| failure(2, format!("cannot configure {n} workers: {e}")))?;
    }
    Ok(())
}

fn emit(cfg: &RunConfig, rendered: String) -> Result<u8, Failure> {
    match &cfg.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

fn csv_unsupported(what: &str) -> Failure {
    failure(2, format!("csv format is not available for {what}"))
}

fn cmd_predict(cfg: &RunConfig) -> Result<u8, Failure> {
    let (p, m, k) = (cfg.p, cfg.m, cfg.k.expect("predict always sets k"));
    let dist = predict::predicted_distribution(p, m, k)?;
    let info = predict::classify(p, m, k)?;
    let base_t = structure::family_exponent(p, m, k)?;
    let doc = render::DistributionDoc {
        p,
        m,
        t: Some(base_t),
        k: Some(k),
        tau: Some(0),
        case: Some(info.case),
        n: dist.n,
        dimension: dist.dimension,
        distribution: render::distribution_pairs(&dist),
        enumerator: dist.enumerator(),
        minimum_distance: codes::minimum_distance(&dist).ok(),
        modulus: resolve_modulus(cfg)?,
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => doc.csv(),
    };
    emit(cfg, rendered)
}

fn cmd_enumerate(cfg: &RunConfig) -> Result<u8, Failure> {
    let t = cfg.t.expect("enumerate always sets t");
    install_workers(cfg)?;
    let field = build_field(cfg)?;
    let dist = codes::weight_distribution(&field, t, cfg.method)?;
    let params = structure::resolve_params(cfg.p, cfg.m, t)?;
    let doc = render::DistributionDoc {
        p: cfg.p,
        m: cfg.m,
        t: Some(t % field.n()),
        k: params.as_ref().map(|cp| cp.k),
        tau: params.as_ref().map(|cp| cp.tau),
        case: params.as_ref().map(|cp| cp.case),
        n: dist.n,
        dimension: dist.dimension,
        distribution: render::distribution_pairs(&dist),
        enumerator: dist.enumerator(),
        minimum_distance: codes::minimum_distance(&dist).ok(),
        modulus: field.modulus().to_vec(),
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => doc.csv(),
    };
    emit(cfg, rendered)
}

fn cmd_verify(cfg: &RunConfig) -> Result<u8, Failure> {
    let t = cfg.t.expect("verify always sets t");
    install_workers(cfg)?;
    let field = build_field(cfg)?;
    let report = predict::verify(&field, t, cfg.method)?;
    let params = structure::resolve_params(cfg.p, cfg.m, t)?
        .expect("verify already established a family match");
    let status = report.status;
    let doc = render::VerifyDoc {
        p: cfg.p,
        m: cfg.m,
        t: t % field.n(),
        k: params.k,
        tau: params.tau,
        case: params.case,
        n: field.n(),
        status: report.status,
        predicted: report.predicted,
        computed: report.computed,
        diff: report.diff,
        modulus: field.modulus().to_vec(),
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => return Err(csv_unsupported("verify reports")),
    };
    emit(cfg, rendered)?;
    Ok(match status {
        VerifyStatus::Pass => 0,
        VerifyStatus::Fail => 1,
    })
}

fn cmd_expsum(cfg: &RunConfig) -> Result<u8, Failure> {
    let k = cfg.k.expect("expsum always sets k");
    let which = cfg.which.expect("expsum always sets which");
    if k == 0 {
        return Err(failure(2, "k must be at least 1"));
    }
    let field = build_field(cfg)?;
    let dist = match which {
        Which::TAlpha => expsums::power_sum_distribution(&field, k),
        Which::RAlpha => expsums::counting_sum_distribution(&field, k)?,
        Which::TAb => {
            let base_t = structure::family_exponent(cfg.p, cfg.m, k)?;
            let params = structure::resolve_params(cfg.p, cfg.m, base_t)?.ok_or_else(|| {
                failure(
                    2,
                    format!("family exponent {base_t} did not resolve to code parameters"),
                )
            })?;
            expsums::pair_sum_distribution(&field, &params)?
        }
    };
    let doc = render::ExpsumDoc {
        p: cfg.p,
        m: cfg.m,
        k,
        which: which.name().to_string(),
        n: field.n(),
        total: dist.total(),
        entries: render::expsum_entries(&dist),
        modulus: field.modulus().to_vec(),
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => doc
            .csv()
            .ok_or_else(|| csv_unsupported("sums with non-rational values"))?,
    };
    emit(cfg, rendered)
}

fn cmd_coset(cfg: &RunConfig) -> Result<u8, Failure> {
    let i = cfg.i.expect("coset always sets i");
    validate_prime_field(cfg.p, cfg.m)?;
    let coset = structure::cyclotomic_coset(cfg.p, cfg.m, i)?;
    let n = (cfg.p as u128).pow(cfg.m) as u64 - 1;
    let doc = render::CosetDoc {
        p: cfg.p,
        m: cfg.m,
        i: i % n,
        n,
        coset,
        modulus: resolve_modulus(cfg)?,
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => return Err(csv_unsupported("cosets")),
    };
    emit(cfg, rendered)
}

fn cmd_minpoly(cfg: &RunConfig) -> Result<u8, Failure> {
    let t = cfg.t.expect("minpoly always sets t");
    let field = build_field(cfg)?;
    let n = field.n();
    let zero_log = (n - t % n) % n;
    let beta = field.from_log(zero_log);
    let coefficients = structure::minimal_polynomial(&field, &beta);
    let doc = render::MinpolyDoc {
        p: cfg.p,
        m: cfg.m,
        t: t % n,
        n,
        zero_log,
        degree: coefficients.len() - 1,
        polynomial: render::polynomial_text(&coefficients),
        coefficients,
        modulus: field.modulus().to_vec(),
    };
    let rendered = match cfg.format {
        Format::Text => doc.text(),
        Format::Json => render::to_json(&doc),
        Format::Csv => return Err(csv_unsupported("minimal polynomials")),
    };
    emit(cfg, rendered)
}
