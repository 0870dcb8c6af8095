//! Delta, nabla and diamond-γ fractional sums on unit grids.
//!
//! On a unit grid both the delta kernel `(t-σ(s))^(α-1)/Γ(α)` and the nabla
//! kernel `(t-ρ(s))^{β-1 rising}/Γ(β)` reduce to the same normalized weight
//! `c_{t-s}`, so all three operators are lower-triangular convolutions with
//! [`kernel_weights`](crate::kernelmath::kernel_weights). The delta and nabla
//! sums differ only in where the output grid starts.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::kernelmath::{weight_vec, Order};
use crate::scalar::Scalar;

/// Orders and mixing weight of the diamond-γ operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DiamondParams<S> {
    alpha: Order<S>,
    beta: Order<S>,
    gamma: S,
}

impl<S: Scalar> DiamondParams<S> {
    pub fn new(alpha: Order<S>, beta: Order<S>, gamma: S) -> Result<Self> {
        if !gamma.is_finite() || gamma < S::zero() || gamma > S::one() {
            return Err(Error::GammaOutOfRange(gamma.to_string()));
        }
        Ok(DiamondParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &Order<S> {
        &self.alpha
    }

    pub fn beta(&self) -> &Order<S> {
        &self.beta
    }

    pub fn gamma(&self) -> &S {
        &self.gamma
    }

    fn shared_gamma(&self, other: &Self) -> Result<()> {
        if self.gamma == other.gamma {
            Ok(())
        } else {
            Err(Error::GammaMismatch {
                left: self.gamma.to_string(),
                right: other.gamma.to_string(),
            })
        }
    }
}

/// Evaluates the fractional sums.
///
/// The default convolver is the production path. A convolver built with
/// [`Convolver::with_perturbed_weight`] nudges one kernel weight of every
/// kernel it builds; the verification harness uses it to show that its
/// checks can fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Convolver {
    perturbed_index: Option<usize>,
}

impl Convolver {
    pub const fn new() -> Self {
        Convolver {
            perturbed_index: None,
        }
    }

    /// Weight `index` of every kernel is moved by [`Scalar::nudge`].
    pub const fn with_perturbed_weight(index: usize) -> Self {
        Convolver {
            perturbed_index: Some(index),
        }
    }

    pub fn perturbed_index(&self) -> Option<usize> {
        self.perturbed_index
    }

    pub fn weights<S: Scalar>(&self, order: &Order<S>, count: usize) -> Vec<S> {
        let mut weights = weight_vec(order, count);
        if let Some(slot) = self.perturbed_index.and_then(|j| weights.get_mut(j)) {
            *slot = slot.nudge();
        }
        weights
    }

    /// `out[m] = Σ_{j=0}^{m} c_{m-j} f[j]`, summed left to right in `j`.
    fn convolve<S: Scalar>(&self, samples: &[S], order: &Order<S>) -> Vec<S> {
        let weights = self.weights(order, samples.len());
        (0..samples.len())
            .map(|m| {
                samples[..=m]
                    .iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (j, v)| acc + weights[m - j].clone() * v)
            })
            .collect()
    }

    /// `Δ_a^{-α} f`, sampled on `a+α, a+α+1, …`.
    pub fn delta_fractional_sum<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        alpha: &Order<S>,
    ) -> Result<GridFunction<S>> {
        let base = f.base().clone() + alpha.value();
        GridFunction::new(base, self.convolve(f.samples(), alpha))
    }

    /// `∇_a^{-β} f`, sampled on the input grid.
    pub fn nabla_fractional_sum<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        beta: &Order<S>,
    ) -> Result<GridFunction<S>> {
        GridFunction::new(f.base().clone(), self.convolve(f.samples(), beta))
    }

    /// `γ (Δ_a^{-α} f)(t+α) + (1-γ) (∇_a^{-β} f)(t)` on the input grid.
    pub fn diamond_fractional_sum<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        params: &DiamondParams<S>,
    ) -> Result<GridFunction<S>> {
        let delta = self.convolve(f.samples(), &params.alpha);
        let nabla = self.convolve(f.samples(), &params.beta);
        let gamma = &params.gamma;
        let complement = S::one() - gamma;
        let samples = delta
            .into_iter()
            .zip(nabla)
            .map(|(d, n)| gamma.clone() * &d + complement.clone() * &n)
            .collect();
        GridFunction::new(f.base().clone(), samples)
    }

    /// Literal nesting `◇^{α1,β1}(◇^{α2,β2} f)` with a shared γ.
    pub fn compose_diamond_lhs<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        outer: &DiamondParams<S>,
        inner: &DiamondParams<S>,
    ) -> Result<GridFunction<S>> {
        outer.shared_gamma(inner)?;
        let once = self.diamond_fractional_sum(f, inner)?;
        self.diamond_fractional_sum(&once, outer)
    }

    /// `γ ◇^{α1+α2, β1+α2} f + (1-γ) ◇^{α1+β2, β1+β2} f`.
    pub fn compose_diamond_rhs<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        outer: &DiamondParams<S>,
        inner: &DiamondParams<S>,
    ) -> Result<GridFunction<S>> {
        outer.shared_gamma(inner)?;
        let gamma = outer.gamma.clone();
        let via_alpha = DiamondParams::new(
            outer.alpha.plus(&inner.alpha),
            outer.beta.plus(&inner.alpha),
            gamma.clone(),
        )?;
        let via_beta = DiamondParams::new(
            outer.alpha.plus(&inner.beta),
            outer.beta.plus(&inner.beta),
            gamma.clone(),
        )?;
        let left = self.diamond_fractional_sum(f, &via_alpha)?.scale(&gamma)?;
        let right = self
            .diamond_fractional_sum(f, &via_beta)?
            .scale(&(S::one() - &gamma))?;
        left.add(&right)
    }
}

pub fn delta_fractional_sum<S: Scalar>(
    f: &GridFunction<S>,
    alpha: &Order<S>,
) -> Result<GridFunction<S>> {
    Convolver::new().delta_fractional_sum(f, alpha)
}

pub fn nabla_fractional_sum<S: Scalar>(
    f: &GridFunction<S>,
    beta: &Order<S>,
) -> Result<GridFunction<S>> {
    Convolver::new().nabla_fractional_sum(f, beta)
}

pub fn diamond_fractional_sum<S: Scalar>(
    f: &GridFunction<S>,
    params: &DiamondParams<S>,
) -> Result<GridFunction<S>> {
    Convolver::new().diamond_fractional_sum(f, params)
}

pub fn compose_diamond_lhs<S: Scalar>(
    f: &GridFunction<S>,
    outer: &DiamondParams<S>,
    inner: &DiamondParams<S>,
) -> Result<GridFunction<S>> {
    Convolver::new().compose_diamond_lhs(f, outer, inner)
}

pub fn compose_diamond_rhs<S: Scalar>(
    f: &GridFunction<S>,
    outer: &DiamondParams<S>,
    inner: &DiamondParams<S>,
) -> Result<GridFunction<S>> {
    Convolver::new().compose_diamond_rhs(f, outer, inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d).unwrap()
    }

    fn order(p: i64, d: i64) -> Order<Rational> {
        Order::new(q(p, d)).unwrap()
    }

    fn params(a: (i64, i64), b: (i64, i64), g: (i64, i64)) -> DiamondParams<Rational> {
        DiamondParams::new(order(a.0, a.1), order(b.0, b.1), q(g.0, g.1)).unwrap()
    }

    fn ones(n: usize) -> GridFunction<Rational> {
        GridFunction::constant(q(0, 1), q(1, 1), n).unwrap()
    }

    #[test]
    fn gamma_must_be_a_convex_weight() {
        assert!(matches!(
            DiamondParams::new(order(1, 2), order(1, 2), q(2, 1)),
            Err(Error::GammaOutOfRange(_))
        ));
        assert!(DiamondParams::new(order(1, 2), order(1, 2), q(-1, 10)).is_err());
        assert!(DiamondParams::new(order(1, 2), order(1, 2), q(0, 1)).is_ok());
        assert!(DiamondParams::new(order(1, 2), order(1, 2), q(1, 1)).is_ok());
    }

    #[test]
    fn delta_of_ones_half_order() {
        let g = delta_fractional_sum(&ones(3), &order(1, 2)).unwrap();
        assert_eq!(g.base(), &q(1, 2));
        assert_eq!(g.samples(), &[q(1, 1), q(3, 2), q(15, 8)]);
    }

    #[test]
    fn delta_of_ramp_half_order() {
        let f = GridFunction::new(q(0, 1), vec![q(0, 1), q(1, 1), q(2, 1)]).unwrap();
        let g = delta_fractional_sum(&f, &order(1, 2)).unwrap();
        assert_eq!(g.get(2), Some(&q(5, 2)));
    }

    #[test]
    fn unit_order_is_cumulative_sum() {
        let f = GridFunction::new(q(3, 2), vec![q(1, 3), q(-2, 1), q(7, 5), q(0, 1)]).unwrap();
        let cum = f.cumulative_sum().unwrap();
        let delta = delta_fractional_sum(&f, &order(1, 1)).unwrap();
        assert_eq!(delta.base(), &q(5, 2));
        assert_eq!(delta.samples(), cum.samples());
        assert_eq!(nabla_fractional_sum(&f, &order(1, 1)).unwrap(), cum);
    }

    #[test]
    fn nabla_keeps_domain() {
        let g = nabla_fractional_sum(&ones(3), &order(1, 2)).unwrap();
        assert_eq!(g.base(), &q(0, 1));
        assert_eq!(g.samples(), &[q(1, 1), q(3, 2), q(15, 8)]);
        let single = GridFunction::new(q(7, 2), vec![q(-4, 9)]).unwrap();
        assert_eq!(nabla_fractional_sum(&single, &order(5, 4)).unwrap(), single);
    }

    #[test]
    fn diamond_reductions() {
        let f = GridFunction::new(q(0, 1), vec![q(2, 1), q(-1, 3), q(5, 2), q(1, 1)]).unwrap();
        let alpha = order(1, 3);
        let beta = order(3, 4);
        let one = diamond_fractional_sum(
            &f,
            &DiamondParams::new(alpha.clone(), beta.clone(), q(1, 1)).unwrap(),
        )
        .unwrap();
        let delta = delta_fractional_sum(&f, &alpha).unwrap();
        assert_eq!(one.base(), f.base());
        assert_eq!(one.samples(), delta.samples());
        let zero =
            diamond_fractional_sum(&f, &DiamondParams::new(alpha, beta.clone(), q(0, 1)).unwrap())
                .unwrap();
        assert_eq!(zero, nabla_fractional_sum(&f, &beta).unwrap());
    }

    #[test]
    fn diamond_equal_orders_ignores_gamma() {
        for g in [(0, 1), (1, 4), (1, 2), (1, 1)] {
            let out = diamond_fractional_sum(&ones(3), &params((1, 2), (1, 2), g)).unwrap();
            assert_eq!(out.samples(), &[q(1, 1), q(3, 2), q(15, 8)]);
        }
    }

    #[test]
    fn composition_examples() {
        let p = params((1, 2), (1, 2), (0, 1));
        let lhs = compose_diamond_lhs(&ones(3), &p, &p).unwrap();
        assert_eq!(lhs.get(2), Some(&q(3, 1)));
        assert_eq!(compose_diamond_rhs(&ones(3), &p, &p).unwrap(), lhs);

        let p = params((1, 1), (1, 3), (1, 1));
        let f = GridFunction::new(q(0, 1), vec![q(1, 1), q(2, 1), q(3, 1)]).unwrap();
        let twice = f.cumulative_sum().unwrap().cumulative_sum().unwrap();
        assert_eq!(compose_diamond_lhs(&f, &p, &p).unwrap(), twice);

        let single = GridFunction::new(q(0, 1), vec![q(9, 7)]).unwrap();
        let p1 = params((1, 3), (2, 5), (1, 2));
        let p2 = params((3, 7), (1, 6), (1, 2));
        assert_eq!(compose_diamond_lhs(&single, &p1, &p2).unwrap(), single);

        let half = params((1, 2), (1, 2), (1, 2));
        assert_eq!(
            compose_diamond_rhs(&ones(3), &half, &half).unwrap().samples(),
            &[q(1, 1), q(2, 1), q(3, 1)]
        );
    }

    #[test]
    fn composition_remark_specializations() {
        let f = GridFunction::new(q(0, 1), vec![q(1, 2), q(-3, 1), q(4, 3), q(2, 1)]).unwrap();
        let p1 = params((1, 3), (2, 5), (0, 1));
        let p2 = params((3, 4), (5, 4), (0, 1));
        let nabla = nabla_fractional_sum(&f, &order(2, 5).plus(&order(5, 4))).unwrap();
        assert_eq!(compose_diamond_rhs(&f, &p1, &p2).unwrap(), nabla);

        let p1 = params((1, 3), (2, 5), (1, 1));
        let p2 = params((3, 4), (5, 4), (1, 1));
        let delta = delta_fractional_sum(&f, &order(1, 3).plus(&order(3, 4))).unwrap();
        assert_eq!(
            compose_diamond_rhs(&f, &p1, &p2).unwrap().samples(),
            delta.samples()
        );
    }

    #[test]
    fn composition_requires_shared_gamma() {
        let p1 = params((1, 2), (1, 2), (0, 1));
        let p2 = params((1, 2), (1, 2), (1, 2));
        assert!(matches!(
            compose_diamond_lhs(&ones(2), &p1, &p2),
            Err(Error::GammaMismatch { .. })
        ));
        assert!(matches!(
            compose_diamond_rhs(&ones(2), &p1, &p2),
            Err(Error::GammaMismatch { .. })
        ));
    }

    #[test]
    fn perturbed_convolver_moves_one_weight() {
        let alpha = order(1, 2);
        let clean = Convolver::new().weights(&alpha, 4);
        let dirty = Convolver::with_perturbed_weight(2).weights(&alpha, 4);
        assert_eq!(clean[..2], dirty[..2]);
        assert_eq!(dirty[2].clone() - &clean[2], q(1, 1_000_000));
        assert_eq!(clean[3], dirty[3]);
        // out-of-range index leaves the kernel alone
        assert_eq!(Convolver::with_perturbed_weight(9).weights(&alpha, 4), clean);
    }

    #[test]
    fn float_mode_matches_exact_mode() {
        let fe = GridFunction::new(q(0, 1), vec![q(1, 2), q(-3, 1), q(4, 3), q(2, 1)]).unwrap();
        let ff = GridFunction::new(0.0, vec![0.5, -3.0, 4.0 / 3.0, 2.0]).unwrap();
        let pe = params((1, 3), (3, 4), (1, 4));
        let pf = DiamondParams::new(
            Order::new(1.0 / 3.0).unwrap(),
            Order::new(0.75).unwrap(),
            0.25,
        )
        .unwrap();
        let exact = diamond_fractional_sum(&fe, &pe).unwrap();
        let float = diamond_fractional_sum(&ff, &pf).unwrap();
        for (e, f) in exact.samples().iter().zip(float.samples()) {
            assert!((e.to_f64() - f).abs() < 1e-14);
        }
    }
}
