//! Term-by-term delta fractional sum, evaluated from the grid points
//! themselves rather than from precomputed kernel weights.

use crate::error::Result;
use crate::grid::GridFunction;
use crate::kernelmath::{falling_power, Order};
use crate::scalar::{NumericMode, Scalar};

/// `(t - σ(s))^(ν-1) / Γ(ν)`.
///
/// Float mode evaluates the falling power and `Γ(ν)` directly. Exact mode
/// regroups the same quantity as `[Γ(x+1)/Γ(ν)] / [Γ(x+2-ν)/Γ(1)]` with
/// `x = t - σ(s)`, both of which have integer argument gaps on the grid.
fn kernel<S: Scalar>(t: &S, s: &S, nu: &S) -> Result<S> {
    let x = t.clone() - s - S::one();
    match S::MODE {
        NumericMode::Float => {
            let power = falling_power(&x, &(nu.clone() - S::one()))?;
            Ok(power / S::gamma_ratio(nu, &S::one())?)
        }
        NumericMode::Exact => {
            let upper = S::gamma_ratio(&(x.clone() + S::one()), nu)?;
            let lower = S::gamma_ratio(&(x + S::from_i64(2) - nu), &S::one())?;
            Ok(upper / lower)
        }
    }
}

/// `(Δ_a^{-ν} f)(t) = Σ_{s=a}^{t-ν} (t-σ(s))^(ν-1) f(s) / Γ(ν)` at
/// `t = a+ν, a+ν+1, …`.
pub fn delta_sum_from_definition<S: Scalar>(
    f: &GridFunction<S>,
    nu: &Order<S>,
) -> Result<GridFunction<S>> {
    let nu = nu.value();
    let out_base = f.base().clone() + nu;
    let mut samples = Vec::with_capacity(f.len());
    for m in 0..f.len() {
        let t = out_base.clone() + S::from_i64(m as i64);
        let mut acc = S::zero();
        // s runs over a, a+1, …, t-ν = a+m.
        for (s, value) in f.points().zip(f.samples()).take(m + 1) {
            acc = acc + kernel(&t, &s, nu)? * value;
        }
        samples.push(acc);
    }
    GridFunction::new(out_base, samples)
}
