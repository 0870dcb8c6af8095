use std::fs::File;
use std::io::{BufWriter, Write};

use dfc_core::identities::{run_suite, SuiteConfig};
use dfc_core::{Convolver, DiamondParams, GridFunction, Scalar, Verifier};

use crate::args::{AnyConfig, Builtin, Command, Op, RunConfig, Source};
use crate::table::{read_grid, write_table, Cell};
use crate::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};

/// Runs a parsed command, writing to `--output` or else to `stdout`.
/// Returns the process exit code.
pub fn execute(cfg: &AnyConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cfg {
        AnyConfig::Exact(cfg) => dispatch(cfg, stdout),
        AnyConfig::Float(cfg) => dispatch(cfg, stdout),
    }
}

fn dispatch<S: Scalar>(cfg: &RunConfig<S>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let mut file;
    let out: &mut dyn Write = match &cfg.output {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(|e| {
                CliError::Data(format!("{}: {e}", path.display()))
            })?);
            &mut file
        }
        None => stdout,
    };
    let code = match cfg.command {
        Command::Eval { .. } => run_eval(cfg, out).map(|()| EXIT_OK),
        Command::Weights => run_weights(cfg, out).map(|()| EXIT_OK),
        Command::Verify { .. } => run_verify(cfg, out).map(|all_passed| {
            if all_passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }),
    }?;
    out.flush()?;
    Ok(code)
}

fn convolver<S>(cfg: &RunConfig<S>) -> Convolver {
    cfg.perturb_weight
        .map_or_else(Convolver::new, Convolver::with_perturbed_weight)
}

fn builtin_grid<S: Scalar>(builtin: &Builtin<S>, base: S, n: usize) -> Result<GridFunction<S>, CliError> {
    let grid = match builtin {
        Builtin::Const(k) => GridFunction::constant(base, k.clone(), n),
        Builtin::Ramp => GridFunction::from_offsets(base, n, |j| S::from_i64(j as i64)),
        Builtin::Poly(coeffs) => GridFunction::from_offsets(base, n, |j| {
            let x = S::from_i64(j as i64);
            coeffs
                .iter()
                .rev()
                .fold(S::zero(), |acc, c| acc * &x + c)
        }),
    };
    Ok(grid?)
}

/// Writes `t,value` rows of the selected operator applied to the input.
pub fn run_eval<S: Scalar>(cfg: &RunConfig<S>, out: &mut dyn Write) -> Result<(), CliError> {
    let Command::Eval { op, source } = &cfg.command else {
        unreachable!("run_eval called for another subcommand")
    };
    let f = match source {
        Source::Builtin(b) => {
            let base = cfg.base.clone().unwrap_or_else(S::zero);
            builtin_grid(b, base, cfg.n_or_default())?
        }
        Source::Csv(path) => read_grid(path, cfg.base.as_ref(), cfg.n)?,
    };
    let conv = convolver(cfg);
    let result = match op {
        Op::Delta => conv.delta_fractional_sum(&f, &cfg.alpha_or_default())?,
        Op::Nabla => conv.nabla_fractional_sum(&f, &cfg.beta_or_default())?,
        Op::Diamond => {
            let params = DiamondParams::new(
                cfg.alpha_or_default(),
                cfg.beta_or_default(),
                cfg.gamma_or_default(),
            )?;
            conv.diamond_fractional_sum(&f, &params)?
        }
    };
    let rows = result
        .points()
        .zip(result.samples())
        .map(|(t, v)| [Cell::scalar(&t), Cell::scalar(v)]);
    write_table(out, cfg.format, ["t", "value"], rows)
}

/// Writes `j,c_j` rows for `j = 0..n`.
pub fn run_weights<S: Scalar>(cfg: &RunConfig<S>, out: &mut dyn Write) -> Result<(), CliError> {
    let weights = convolver(cfg).weights(&cfg.alpha_or_default(), cfg.n_or_default());
    let rows = weights
        .iter()
        .enumerate()
        .map(|(j, c)| [Cell::index(j), Cell::scalar(c)]);
    write_table(out, cfg.format, ["j", "c_j"], rows)
}

/// Writes one JSON report per line; returns whether every check passed.
pub fn run_verify<S: Scalar>(cfg: &RunConfig<S>, out: &mut dyn Write) -> Result<bool, CliError> {
    let Command::Verify {
        theorem,
        rel_tol,
        seed,
        cases,
    } = cfg.command
    else {
        unreachable!("run_verify called for another subcommand")
    };
    let mut suite = SuiteConfig::<S>::new(theorem, cfg.n_or_default(), cases, seed);
    if let Some(base) = &cfg.base {
        suite.base = base.clone();
    }
    suite.alpha = cfg.alpha.clone();
    suite.beta = cfg.beta.clone();
    suite.gamma = cfg.gamma.clone();

    let verifier = Verifier::new()
        .with_convolver(convolver(cfg))
        .with_rel_tol(rel_tol);
    let reports = run_suite(&verifier, &suite)?;
    for report in &reports {
        serde_json::to_writer(&mut *out, report).map_err(|e| CliError::Data(e.to_string()))?;
        writeln!(out)?;
    }
    Ok(reports.iter().all(|r| r.passed))
}
