use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dfc_core::identities::{TheoremSelection, DEFAULT_REL_TOL};
use dfc_core::{NumericMode, Order, Rational, Scalar};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "dfc", version, about = "Discrete fractional sums on unit grids")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Apply a fractional sum to a builtin function or a CSV column.
    Eval(EvalArgs),
    /// Print the kernel weights c_j(alpha), j = 0..n-1.
    Weights(WeightsArgs),
    /// Check the operator identities on seeded random inputs.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Delta,
    Nabla,
    Diamond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
struct Shared {
    /// Numeric backend.
    #[arg(long, value_enum, env = "DFC_MODE")]
    mode: Option<ModeArg>,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Perturb kernel weight j of every kernel (fault injection).
    #[arg(long, hide = true)]
    perturb_weight: Option<usize>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum, default_value_t = Op::Diamond)]
    op: Op,
    /// Delta order, e.g. 1/2 (default 1/2).
    #[arg(long)]
    alpha: Option<String>,
    /// Nabla order (default: alpha).
    #[arg(long)]
    beta: Option<String>,
    /// Mixing weight in [0, 1] (default 1/2).
    #[arg(long)]
    gamma: Option<String>,
    /// Grid base point a (default 0, or the first t of --input).
    #[arg(long)]
    base: Option<String>,
    /// Number of grid points (default 8, or all rows of --input).
    #[arg(long)]
    n: Option<usize>,
    /// Builtin input: const:k, ramp, or poly:c0,c1,...
    #[arg(long = "fn", conflicts_with = "input")]
    function: Option<String>,
    /// CSV input with header "t,value".
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct WeightsArgs {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// all, linearity, constant, coincidence, composition, leibniz or reduction.
    #[arg(long, default_value = "all")]
    theorem: TheoremSelection,
    /// Fix alpha instead of sweeping it.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Relative tolerance (float mode only).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of random cases.
    #[arg(long, default_value_t = 8)]
    cases: usize,
    /// Only json is supported.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin<S> {
    Const(S),
    /// f(a + j) = j
    Ramp,
    /// f(a + j) = c0 + c1 j + c2 j^2 + ...
    Poly(Vec<S>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source<S> {
    Builtin(Builtin<S>),
    Csv(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command<S> {
    Eval { op: Op, source: Source<S> },
    Weights,
    Verify {
        theorem: TheoremSelection,
        rel_tol: f64,
        seed: u64,
        cases: usize,
    },
}

/// A validated invocation. Parameters the user did not give stay `None`;
/// the accessors supply defaults where a subcommand needs one.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<S> {
    pub command: Command<S>,
    pub mode: NumericMode,
    pub alpha: Option<Order<S>>,
    pub beta: Option<Order<S>>,
    pub gamma: Option<S>,
    pub base: Option<S>,
    pub n: Option<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub perturb_weight: Option<usize>,
}

pub const DEFAULT_N: usize = 8;

impl<S: Scalar> RunConfig<S> {
    pub fn alpha_or_default(&self) -> Order<S> {
        self.alpha
            .clone()
            .unwrap_or_else(|| Order::new(S::from_ratio(1, 2).unwrap()).unwrap())
    }

    pub fn beta_or_default(&self) -> Order<S> {
        self.beta.clone().unwrap_or_else(|| self.alpha_or_default())
    }

    pub fn gamma_or_default(&self) -> S {
        self.gamma
            .clone()
            .unwrap_or_else(|| S::from_ratio(1, 2).unwrap())
    }

    pub fn n_or_default(&self) -> usize {
        self.n.unwrap_or(DEFAULT_N)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyConfig {
    Exact(RunConfig<Rational>),
    Float(RunConfig<f64>),
}

impl AnyConfig {
    pub fn mode(&self) -> NumericMode {
        match self {
            AnyConfig::Exact(_) => NumericMode::Exact,
            AnyConfig::Float(_) => NumericMode::Float,
        }
    }
}

/// Everything the three subcommands have in common, still as text.
struct Raw {
    command: RawCommand,
    alpha: Option<String>,
    beta: Option<String>,
    gamma: Option<String>,
    base: Option<String>,
    n: Option<usize>,
    format: Format,
    shared: Shared,
}

enum RawCommand {
    Eval {
        op: Op,
        function: Option<String>,
        input: Option<PathBuf>,
    },
    Weights,
    Verify {
        theorem: TheoremSelection,
        tol: Option<f64>,
        seed: u64,
        cases: usize,
    },
}

/// Parses a full argument vector (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<AnyConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let raw = match cli.command {
        Sub::Eval(a) => Raw {
            command: RawCommand::Eval {
                op: a.op,
                function: a.function,
                input: a.input,
            },
            alpha: a.alpha,
            beta: a.beta,
            gamma: a.gamma,
            base: a.base,
            n: a.n,
            format: a.format,
            shared: a.shared,
        },
        Sub::Weights(a) => Raw {
            command: RawCommand::Weights,
            alpha: a.alpha,
            beta: None,
            gamma: None,
            base: None,
            n: a.n,
            format: a.format,
            shared: a.shared,
        },
        Sub::Verify(a) => Raw {
            command: RawCommand::Verify {
                theorem: a.theorem,
                tol: a.tol,
                seed: a.seed,
                cases: a.cases,
            },
            alpha: a.alpha,
            beta: a.beta,
            gamma: a.gamma,
            base: a.base,
            n: a.n,
            format: a.format,
            shared: a.shared,
        },
    };
    match raw.shared.mode {
        Some(ModeArg::Float) => build::<f64>(raw).map(AnyConfig::Float),
        Some(ModeArg::Exact) | None => build::<Rational>(raw).map(AnyConfig::Exact),
    }
}

fn scalar<S: Scalar>(flag: &str, text: &str) -> Result<S, CliError> {
    S::parse(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn order<S: Scalar>(flag: &str, text: Option<&str>) -> Result<Option<Order<S>>, CliError> {
    text.map(|t| {
        Order::new(scalar(flag, t)?)
            .map_err(|_| CliError::Usage(format!("--{flag} must be a positive order, got {t}")))
    })
    .transpose()
}

fn builtin<S: Scalar>(spec: &str) -> Result<Builtin<S>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--fn {spec:?}: expected const:k, ramp or poly:c0,c1,..."
        ))
    };
    if spec == "ramp" {
        return Ok(Builtin::Ramp);
    }
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "const" => Ok(Builtin::Const(scalar("fn", rest)?)),
        "poly" => {
            let coeffs = rest
                .split(',')
                .map(|c| scalar("fn", c.trim()))
                .collect::<Result<Vec<S>, _>>()?;
            Ok(Builtin::Poly(coeffs))
        }
        _ => Err(bad()),
    }
}

fn build<S: Scalar>(raw: Raw) -> Result<RunConfig<S>, CliError> {
    // gamma first, so its range is reported even when other flags are missing
    let gamma = raw
        .gamma
        .as_deref()
        .map(|t| scalar::<S>("gamma", t))
        .transpose()?;
    if let Some(g) = &gamma {
        if *g < S::zero() || *g > S::one() {
            return Err(CliError::Usage(format!(
                "--gamma must lie in [0,1], got {g}"
            )));
        }
    }
    let alpha = order("alpha", raw.alpha.as_deref())?;
    let beta = order("beta", raw.beta.as_deref())?;
    let base = raw
        .base
        .as_deref()
        .map(|t| scalar::<S>("base", t))
        .transpose()?;
    if raw.n == Some(0) {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }

    let command = match raw.command {
        RawCommand::Eval { op, function, input } => {
            let source = match (function, input) {
                (Some(spec), None) => Source::Builtin(builtin(&spec)?),
                (None, Some(path)) => Source::Csv(path),
                _ => {
                    return Err(CliError::Usage(
                        "eval needs one of --fn or --input".into(),
                    ))
                }
            };
            Command::Eval { op, source }
        }
        RawCommand::Weights => Command::Weights,
        RawCommand::Verify {
            theorem,
            tol,
            seed,
            cases,
        } => {
            if cases == 0 {
                return Err(CliError::Usage("--cases must be at least 1".into()));
            }
            if raw.format != Format::Json {
                return Err(CliError::Usage("verify only writes json".into()));
            }
            let rel_tol = match (S::MODE, tol) {
                (NumericMode::Exact, Some(_)) => {
                    return Err(CliError::Usage(
                        "--tol applies to float mode only; exact checks use tolerance 0".into(),
                    ))
                }
                (_, Some(t)) if !(t.is_finite() && t >= 0.0) => {
                    return Err(CliError::Usage(format!(
                        "--tol must be a nonnegative number, got {t}"
                    )))
                }
                (_, Some(t)) => t,
                (_, None) => DEFAULT_REL_TOL,
            };
            Command::Verify {
                theorem,
                rel_tol,
                seed,
                cases,
            }
        }
    };

    Ok(RunConfig {
        command,
        mode: S::MODE,
        alpha,
        beta,
        gamma,
        base,
        n: raw.n,
        format: raw.format,
        output: raw.shared.output,
        perturb_weight: raw.shared.perturb_weight,
    })
}
