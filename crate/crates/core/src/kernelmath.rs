//! Gamma-ratio machinery: factorial powers, normalized kernel weights,
//! generalized binomials and the closed form for sums of constants.
//!
//! Everything that a fractional order touches is a *normalized* gamma ratio,
//! which for rational orders reduces to a rational product. Raw `Γ(x)` at
//! non-integer `x` is only ever formed in float mode.

use std::fmt;
use std::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A fractional sum order; always strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Order<S>(S);

impl<S: Scalar> Order<S> {
    pub fn new(value: S) -> Result<Self> {
        if value.is_finite() && value > S::zero() {
            Ok(Order(value))
        } else {
            Err(Error::NonPositiveOrder(value.to_string()))
        }
    }

    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn into_inner(self) -> S {
        self.0
    }

    /// Sum of two orders is again an order.
    pub fn plus(&self, other: &Order<S>) -> Order<S> {
        Order(self.0.clone() + &other.0)
    }

    /// `self + k` for a nonnegative integer shift.
    pub fn shifted(&self, k: usize) -> Order<S> {
        Order(self.0.clone() + S::from_i64(k as i64))
    }
}

impl<S: Scalar> fmt::Display for Order<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Kernel coefficients `c_j(α) = Γ(j+α) / (Γ(α) Γ(j+1))` for `j = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<S> {
    order: Order<S>,
    weights: Vec<S>,
}

impl<S: Scalar> WeightSequence<S> {
    pub fn order(&self) -> &Order<S> {
        &self.order
    }

    pub fn as_slice(&self) -> &[S] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<&S> {
        self.weights.get(j)
    }

    pub fn into_vec(self) -> Vec<S> {
        self.weights
    }
}

/// `c_0 = 1`, `c_j = c_{j-1} (j - 1 + α) / j`.
pub fn kernel_weights<S: Scalar>(alpha: &Order<S>, count: NonZeroUsize) -> WeightSequence<S> {
    WeightSequence {
        order: alpha.clone(),
        weights: weight_vec(alpha, count.get()),
    }
}

pub(crate) fn weight_vec<S: Scalar>(alpha: &Order<S>, count: usize) -> Vec<S> {
    let mut weights = Vec::with_capacity(count);
    if count == 0 {
        return weights;
    }
    let mut current = S::one();
    weights.push(current.clone());
    for j in 1..count {
        let jj = S::from_i64(j as i64);
        let factor = (jj.clone() - S::one() + alpha.value()) / jj;
        current = current * factor;
        weights.push(current.clone());
    }
    weights
}

/// Falling factorial power `t^(α) = Γ(t+1) / Γ(t+1-α)`.
///
/// For integer `α = n ≥ 0` this is `t(t-1)…(t-n+1)`; `α = 0` gives 1 for any
/// `t`. Exact mode handles integer `α` only.
pub fn falling_power<S: Scalar>(t: &S, alpha: &S) -> Result<S> {
    if alpha.is_zero() {
        return Ok(S::one());
    }
    let upper = t.clone() + S::one();
    let lower = upper.clone() - alpha;
    S::gamma_ratio(&upper, &lower)
}

/// Rising factorial power `t^ᾱ = Γ(t+α) / Γ(t)`, with `t^0 = 1`.
pub fn rising_power<S: Scalar>(t: &S, alpha: &S) -> Result<S> {
    if alpha.is_zero() {
        return Ok(S::one());
    }
    let upper = t.clone() + alpha;
    S::gamma_ratio(&upper, t)
}

/// `binom(u, k) = ∏_{i=1}^{k} (u - i + 1) / i`; defined for every real `u`.
pub fn generalized_binomial<S: Scalar>(u: &S, k: usize) -> S {
    let mut acc = S::one();
    for i in 1..=k {
        let ii = S::from_i64(i as i64);
        acc = acc * ((u.clone() - &ii + S::one()) / ii);
    }
    acc
}

/// Value of the order-`α` sum of the constant `k` at grid offset `n`:
/// `k Γ(n+1+α) / (Γ(α+1) Γ(n+1)) = k ∏_{j=1}^{n} (j+α)/j`.
pub fn constant_sum_closed_form<S: Scalar>(alpha: &Order<S>, n: usize, k: &S) -> S {
    let mut acc = k.clone();
    for j in 1..=n {
        let jj = S::from_i64(j as i64);
        acc = acc * ((jj.clone() + alpha.value()) / jj);
    }
    acc
}
