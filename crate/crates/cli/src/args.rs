//! Flag parsing and validation into a [`RunConfig`].

use std::path::PathBuf;

use askey_core::{FamilyKind, FreeParamMode, Grid, Precision, DEFAULT_DIGITS};
use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsageError {
    #[error("unknown flag --{0}")]
    UnknownFlag(String),
    #[error("missing required flag --{0}")]
    MissingRequired(String),
    #[error("invalid value for --{flag}: {reason}")]
    InvalidValue { flag: String, reason: String },
    #[error("{0}")]
    Other(String),
}

impl UsageError {
    pub fn flag(&self) -> Option<&str> {
        match self {
            UsageError::UnknownFlag(f) | UsageError::MissingRequired(f) => Some(f),
            UsageError::InvalidValue { flag, .. } => Some(flag),
            UsageError::Other(_) => None,
        }
    }
}

fn invalid(flag: &str, reason: impl Into<String>) -> UsageError {
    UsageError::InvalidValue { flag: flag.to_string(), reason: reason.into() }
}

/// What `parse_args` produced: a config to run, or text clap wants printed
/// (help, version).
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    Print(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub precision: Precision,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval { family: FamilyArgs, n: usize },
    Expand { family: FamilyArgs, plan: PlanKind, n: usize, up_to: usize },
    Order { setup: askey_core::TruncationSetup, mode: FreeParamMode, target: f64, n: usize, up_to: usize, grid: Grid },
    Limit { case: askey_core::LimitCase, grid: Grid },
    Selftest { corrupt: Option<FamilyKind> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanKind {
    Hermite,
    Laguerre { mode: FreeParamMode, target: f64 },
}

/// Family and argument as given on the command line, already range-checked.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyArgs {
    pub family: askey_core::Family<f64>,
    pub x: Complex64,
}

#[derive(Parser, Debug)]
#[command(name = "askey", version, about = "Finite Hermite and Laguerre expansions of classical orthogonal polynomials")]
#[command(args_override_self = true, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// p_0..p_n by series extraction and by recurrence
    Eval(EvalArgs),
    /// Expansion parameters, coefficients and truncated values of p_n
    Expand(ExpandArgs),
    /// Relative truncation error over a grid of the large parameter
    Order(OrderArgs),
    /// Distance to a limit relation over a parameter grid
    Limit(LimitArgs),
    /// Reconstruction, closed-form and limit checks
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Decimal digits, or `double`
    #[arg(long)]
    digits: Option<String>,
    /// Write CSV here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyFlags {
    /// hermite, laguerre, ultraspherical, jacobi, mp, meixner or krawtchouk
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Krawtchouk N
    #[arg(long)]
    size: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Argument; complex values as `re+imi`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    x: Option<Complex64>,
}

#[derive(Args, Debug)]
struct GridFlags {
    #[arg(long)]
    grid_start: Option<f64>,
    #[arg(long)]
    grid_ratio: Option<f64>,
    #[arg(long)]
    grid_count: Option<usize>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyFlags,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    family: FamilyFlags,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    upto: Option<usize>,
    /// hermite, onefree, twofreeab, twofreeac or threefree
    #[arg(long)]
    mode: Option<String>,
    /// Laguerre order for onefree and twofreeab (defaults to --alpha, else 0)
    #[arg(long, allow_hyphen_values = true)]
    target_alpha: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OrderArgs {
    /// mp, jacobi, meixner or krawtchouk
    #[arg(long)]
    family: Option<String>,
    /// mp: polar angle of x + i lambda
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// jacobi: alpha (the grid runs over alpha + beta)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// krawtchouk: x / N
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    target_alpha: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    upto: Option<usize>,
    #[command(flatten)]
    grid: GridFlags,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// gegenbauer-hermite, laguerre-hermite, gegenbauer-exact, mp-lambda-half,
    /// mp-substitution, jacobi-laguerre, jacobi-laguerre-askey, meixner-laguerre
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<f64>,
    #[command(flatten)]
    grid: GridFlags,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long)]
    digits: Option<String>,
    /// Perturb one family's recurrence, to exercise the failure path
    #[arg(long, hide = true)]
    corrupt: Option<String>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|_| format!("`{s}` is not a number of the form re+imi"))
}

fn map_clap(err: clap::Error) -> Result<Parsed, UsageError> {
    let arg_name = || match err.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => clean_flag(s),
        Some(ContextValue::Strings(v)) => v.first().map(|s| clean_flag(s)).unwrap_or_default(),
        _ => String::new(),
    };
    match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            Ok(Parsed::Print(err.render().to_string()))
        }
        ErrorKind::UnknownArgument => Err(UsageError::UnknownFlag(arg_name())),
        ErrorKind::MissingRequiredArgument => Err(UsageError::MissingRequired(arg_name())),
        ErrorKind::ValueValidation | ErrorKind::InvalidValue => {
            let reason = std::error::Error::source(&err).map_or_else(
                || match err.get(ContextKind::InvalidValue) {
                    Some(ContextValue::String(v)) => format!("`{v}` is not valid"),
                    _ => "not valid".to_string(),
                },
                |s| s.to_string(),
            );
            Err(invalid(&arg_name(), reason))
        }
        _ => Err(UsageError::Other(err.render().to_string().trim_end().to_string())),
    }
}

/// `--phi <PHI>` → `phi`; `--grid-start` → `grid-start`.
fn clean_flag(s: &str) -> String {
    let head = s.split_whitespace().next().unwrap_or(s);
    head.trim_start_matches('-').split('=').next().unwrap_or(head).to_string()
}

/// Remove `--config <path>` from `argv` and splice its `key=value` lines in as
/// flags right after the subcommand, so explicit flags (later) win.
fn splice_config(argv: &[String]) -> Result<Vec<String>, UsageError> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut iter = argv.iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            path = Some(iter.next().ok_or_else(|| invalid("config", "expects a file path"))?.clone());
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg.clone());
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|e| invalid("config", format!("cannot read {path}: {e}")))?;
    let mut spliced = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| invalid("config", format!("line {} is not key=value", i + 1)))?;
        spliced.push(format!("--{}", key.trim().trim_start_matches('-')));
        spliced.push(value.trim().to_string());
    }
    let at = rest.len().min(2);
    rest.splice(at..at, spliced);
    Ok(rest)
}

/// Parse `argv` (including the program name). `env_digits` is the value of
/// `ASKEY_DIGITS`, if set.
pub fn parse_args(argv: &[String], env_digits: Option<&str>) -> Result<Parsed, UsageError> {
    let argv = splice_config(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => return map_clap(e),
    };
    let default_precision = match env_digits {
        Some(v) => parse_precision("ASKEY_DIGITS", v)?,
        None => Precision::Digits(DEFAULT_DIGITS),
    };
    let precision = |flag: &Option<String>| match flag {
        Some(v) => parse_precision("digits", v),
        None => Ok(default_precision),
    };
    let config = match cli.command {
        Sub::Eval(a) => RunConfig {
            precision: precision(&a.common.digits)?,
            command: Command::Eval { family: family_args(&a.family)?, n: required("n", a.n)? },
            output: a.common.output,
        },
        Sub::Expand(a) => {
            let family = family_args(&a.family)?;
            let n = required("n", a.n)?;
            let up_to = a.upto.unwrap_or(n);
            if up_to > n {
                return Err(invalid("upto", format!("must not exceed --n ({n})")));
            }
            let kind = family.family.kind();
            let hermite_default =
                matches!(kind, FamilyKind::Hermite | FamilyKind::Laguerre | FamilyKind::Ultraspherical);
            let plan = match a.mode.as_deref() {
                None if hermite_default => PlanKind::Hermite,
                Some("hermite") => PlanKind::Hermite,
                other => {
                    let mode = parse_mode(other.unwrap_or("onefree"))?;
                    let target = a.target_alpha.or(a.family.alpha).unwrap_or(0.0);
                    PlanKind::Laguerre { mode, target }
                }
            };
            RunConfig {
                precision: precision(&a.common.digits)?,
                command: Command::Expand { family, plan, n, up_to },
                output: a.common.output,
            }
        }
        Sub::Order(a) => order_config(a, default_precision)?,
        Sub::Limit(a) => limit_config(a, default_precision)?,
        Sub::Selftest(a) => {
            let corrupt = match a.corrupt.as_deref() {
                Some(name) => Some(parse_family_name(name).map_err(|r| invalid("corrupt", r))?),
                None => None,
            };
            RunConfig { precision: precision(&a.digits)?, command: Command::Selftest { corrupt }, output: None }
        }
    };
    Ok(Parsed::Run(config))
}

fn required<T>(flag: &str, v: Option<T>) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError::MissingRequired(flag.to_string()))
}

fn parse_precision(flag: &str, v: &str) -> Result<Precision, UsageError> {
    if v.eq_ignore_ascii_case("double") {
        return Ok(Precision::Double);
    }
    match v.parse::<u32>() {
        Ok(d) if (16..=10_000).contains(&d) => Ok(Precision::Digits(d)),
        _ => Err(invalid(flag, "must be `double` or an integer number of digits in 16..=10000")),
    }
}

fn parse_mode(v: &str) -> Result<FreeParamMode, UsageError> {
    match v.to_ascii_lowercase().as_str() {
        "onefree" => Ok(FreeParamMode::OneFree),
        "twofreeab" => Ok(FreeParamMode::TwoFreeAB),
        "twofreeac" => Ok(FreeParamMode::TwoFreeAC),
        "threefree" => Ok(FreeParamMode::ThreeFree),
        _ => Err(invalid("mode", format!("`{v}` is not one of hermite, onefree, twofreeab, twofreeac, threefree"))),
    }
}

fn parse_family_name(v: &str) -> Result<FamilyKind, String> {
    match v.to_ascii_lowercase().as_str() {
        "hermite" => Ok(FamilyKind::Hermite),
        "laguerre" => Ok(FamilyKind::Laguerre),
        "ultraspherical" | "gegenbauer" => Ok(FamilyKind::Ultraspherical),
        "jacobi" => Ok(FamilyKind::Jacobi),
        "mp" | "meixner-pollaczek" => Ok(FamilyKind::MeixnerPollaczek),
        "meixner" => Ok(FamilyKind::Meixner),
        "krawtchouk" => Ok(FamilyKind::Krawtchouk),
        _ => Err(format!("`{v}` is not a known family")),
    }
}

fn open_unit(flag: &str, v: f64) -> Result<f64, UsageError> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(invalid(flag, "must be in (0,1)"))
    }
}

fn positive(flag: &str, v: f64) -> Result<f64, UsageError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(flag, "must be > 0"))
    }
}

fn angle(flag: &str, v: f64) -> Result<f64, UsageError> {
    if v > 0.0 && v < std::f64::consts::PI {
        Ok(v)
    } else {
        Err(invalid(flag, "must be in (0,pi)"))
    }
}

fn finite(flag: &str, v: f64) -> Result<f64, UsageError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(flag, "must be finite"))
    }
}

fn family_args(f: &FamilyFlags) -> Result<FamilyArgs, UsageError> {
    use askey_core::Family;
    let kind = parse_family_name(required("family", f.family.as_deref())?).map_err(|r| invalid("family", r))?;
    let family = match kind {
        FamilyKind::Hermite => Family::Hermite,
        FamilyKind::Laguerre => Family::Laguerre { alpha: finite("alpha", required("alpha", f.alpha)?)? },
        FamilyKind::Ultraspherical => Family::Ultraspherical { gamma: finite("gamma", required("gamma", f.gamma)?)? },
        FamilyKind::Jacobi => Family::Jacobi {
            alpha: finite("alpha", required("alpha", f.alpha)?)?,
            beta: finite("beta", required("beta", f.beta)?)?,
        },
        FamilyKind::MeixnerPollaczek => Family::MeixnerPollaczek {
            lambda: positive("lambda", required("lambda", f.lambda)?)?,
            phi: angle("phi", required("phi", f.phi)?)?,
        },
        FamilyKind::Meixner => Family::Meixner {
            beta: positive("beta", required("beta", f.beta)?)?,
            c: open_unit("c", required("c", f.c)?)?,
        },
        FamilyKind::Krawtchouk => {
            let size = required("size", f.size)?;
            if size == 0 {
                return Err(invalid("size", "must be a positive integer"));
            }
            Family::Krawtchouk { size, p: open_unit("p", required("p", f.p)?)? }
        }
    };
    let x = required("x", f.x)?;
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(invalid("x", "must be finite"));
    }
    Ok(FamilyArgs { family, x })
}

fn grid_from(flags: &GridFlags, default: Grid) -> Result<Grid, UsageError> {
    if flags.grid_start.is_none() && flags.grid_ratio.is_none() && flags.grid_count.is_none() {
        return Ok(default);
    }
    let d = default.values();
    let start = flags.grid_start.unwrap_or(d[0]);
    let ratio = flags.grid_ratio.unwrap_or(d[1] / d[0]);
    let count = flags.grid_count.unwrap_or(d.len());
    let flag = match (flags.grid_count, flags.grid_ratio) {
        (Some(_), _) if count < 4 => "grid-count",
        (_, Some(_)) => "grid-ratio",
        _ if flags.grid_start.is_some() => "grid-start",
        _ => "grid-count",
    };
    if !(start > 0.0 && start.is_finite()) {
        return Err(invalid("grid-start", "must be > 0"));
    }
    Grid::geometric(start, ratio, count).map_err(|e| invalid(flag, e.to_string()))
}

fn order_config(a: OrderArgs, default_precision: Precision) -> Result<RunConfig, UsageError> {
    use askey_core::TruncationSetup;
    let kind = parse_family_name(required("family", a.family.as_deref())?).map_err(|r| invalid("family", r))?;
    let setup = match kind {
        FamilyKind::MeixnerPollaczek => TruncationSetup::MeixnerPollaczek {
            theta: finite("theta", required("theta", a.theta)?)?,
            phi: angle("phi", required("phi", a.phi)?)?,
        },
        FamilyKind::Jacobi => TruncationSetup::Jacobi {
            alpha: finite("alpha", required("alpha", a.alpha)?)?,
            x: finite("x", required("x", a.x)?)?,
        },
        FamilyKind::Meixner => TruncationSetup::Meixner {
            c: open_unit("c", required("c", a.c)?)?,
            x: finite("x", required("x", a.x)?)?,
        },
        FamilyKind::Krawtchouk => TruncationSetup::Krawtchouk {
            p: open_unit("p", required("p", a.p)?)?,
            s: open_unit("s", required("s", a.s)?)?,
        },
        _ => return Err(invalid("family", "order studies cover mp, jacobi, meixner and krawtchouk")),
    };
    let mode = parse_mode(a.mode.as_deref().unwrap_or("onefree"))?;
    let n = required("n", a.n)?;
    let up_to = a.upto.unwrap_or(0);
    if up_to > n {
        return Err(invalid("upto", format!("must not exceed --n ({n})")));
    }
    let target = a.target_alpha.or(a.alpha).unwrap_or(0.0);
    let grid = grid_from(&a.grid, Grid::large_default())?;
    let precision = match &a.common.digits {
        Some(v) => parse_precision("digits", v)?,
        None => default_precision,
    };
    Ok(RunConfig { command: Command::Order { setup, mode, target, n, up_to, grid }, precision, output: a.common.output })
}

fn limit_config(a: LimitArgs, default_precision: Precision) -> Result<RunConfig, UsageError> {
    use askey_core::LimitCase;
    let n = required("n", a.n)?;
    let x = || required("x", a.x).and_then(|v| finite("x", v));
    let alpha = || required("alpha", a.alpha).and_then(|v| finite("alpha", v));
    let xi = || required("xi", a.xi).and_then(|v| finite("xi", v));
    let case = match required("case", a.case.as_deref())? {
        "gegenbauer-hermite" => LimitCase::GegenbauerToHermite { n, x: x()? },
        "laguerre-hermite" => LimitCase::LaguerreToHermite { n, x: x()? },
        "gegenbauer-exact" => LimitCase::GegenbauerExact { n, x: x()? },
        "mp-lambda-half" => LimitCase::MpLambdaHalf { n, alpha: alpha()?, xi: xi()? },
        "mp-substitution" => LimitCase::MpSubstitution { n, alpha: alpha()?, xi: xi()? },
        "jacobi-laguerre" => LimitCase::JacobiToLaguerre { n, alpha: alpha()?, xi: xi()? },
        "jacobi-laguerre-askey" => LimitCase::JacobiToLaguerreAskey { n, alpha: alpha()?, xi: xi()? },
        "meixner-laguerre" => LimitCase::MeixnerToLaguerre { n, alpha: alpha()?, xi: xi()? },
        other => return Err(invalid("case", format!("`{other}` is not a known limit case"))),
    };
    let grid = grid_from(&a.grid, case.default_grid())?;
    let precision = match &a.common.digits {
        Some(v) => parse_precision("digits", v)?,
        None => default_precision,
    };
    Ok(RunConfig { command: Command::Limit { case, grid }, precision, output: a.common.output })
}
