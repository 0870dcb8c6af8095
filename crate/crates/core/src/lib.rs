//! Discrete fractional sums on unit grids.
//!
//! Provides the delta sum `Δ_a^{-α}`, the nabla sum `∇_a^{-β}` and their
//! convex combination, the diamond-γ sum, over two numeric backends (exact
//! rationals and `f64`), together with a harness that checks the operator
//! identities (linearity, sums of constants, delta/nabla coincidence,
//! composition, the Leibniz product rule) by independent routes.
//!
//! ```
//! use dfc_core::{delta_fractional_sum, GridFunction, Order, Rational, Scalar};
//!
//! let ones = GridFunction::constant(Rational::from_i64(0), Rational::from_i64(1), 3).unwrap();
//! let half = Order::new(Rational::from_ratio(1, 2).unwrap()).unwrap();
//! let out = delta_fractional_sum(&ones, &half).unwrap();
//! assert_eq!(out.get(2).unwrap(), &Rational::from_ratio(15, 8).unwrap());
//! ```

pub mod error;
pub mod fracops;
pub mod grid;
pub mod identities;
pub mod kernelmath;
pub mod scalar;

pub use error::{Error, Result};
pub use fracops::{
    compose_diamond_lhs, compose_diamond_rhs, delta_fractional_sum, diamond_fractional_sum,
    nabla_fractional_sum, Convolver, DiamondParams,
};
pub use grid::GridFunction;
pub use identities::{
    leibniz_rhs, verify_coincidence, verify_composition, verify_constant, verify_leibniz,
    verify_linearity, TheoremId, VerificationReport, Verifier,
};
pub use kernelmath::{
    constant_sum_closed_form, falling_power, generalized_binomial, kernel_weights, rising_power,
    Order, WeightSequence,
};
pub use scalar::{NumericMode, Rational, Scalar};
