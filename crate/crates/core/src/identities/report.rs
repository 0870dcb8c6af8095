use std::fmt;

use serde::Serialize;

use crate::scalar::{serialize_opt_scalar, serialize_scalar, NumericMode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Linearity,
    Constant,
    Coincidence,
    Composition,
    Leibniz,
    ReductionGamma0,
    ReductionGamma1,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Linearity => "linearity",
            TheoremId::Constant => "constant",
            TheoremId::Coincidence => "coincidence",
            TheoremId::Composition => "composition",
            TheoremId::Leibniz => "leibniz",
            TheoremId::ReductionGamma0 => "reduction_gamma0",
            TheoremId::ReductionGamma1 => "reduction_gamma1",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters a check ran with. Composition checks also record the inner
/// operator's orders as `alpha2`/`beta2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ReportParams<S> {
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub alpha: Option<S>,
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub beta: Option<S>,
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub gamma: Option<S>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_scalar"
    )]
    pub alpha2: Option<S>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_scalar"
    )]
    pub beta2: Option<S>,
    pub n: usize,
    pub mode: NumericMode,
    pub seed: Option<u64>,
}

impl<S: Scalar> ReportParams<S> {
    pub(crate) fn new(n: usize, seed: Option<u64>) -> Self {
        ReportParams {
            alpha: None,
            beta: None,
            gamma: None,
            alpha2: None,
            beta2: None,
            n,
            mode: S::MODE,
            seed,
        }
    }
}

/// Worst-disagreeing grid index.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct Witness<S> {
    pub index: usize,
    #[serde(serialize_with = "serialize_scalar")]
    pub lhs: S,
    #[serde(serialize_with = "serialize_scalar")]
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct VerificationReport<S> {
    #[serde(rename = "theorem")]
    pub theorem_id: TheoremId,
    pub params: ReportParams<S>,
    #[serde(serialize_with = "serialize_scalar")]
    pub max_abs_error: S,
    /// Absolute tolerance actually applied; zero in exact mode.
    #[serde(serialize_with = "serialize_scalar")]
    pub tolerance: S,
    pub passed: bool,
    pub witness: Option<Witness<S>>,
}

impl<S: Scalar> VerificationReport<S> {
    /// Compares two evaluations of the same quantity pointwise.
    ///
    /// In float mode the applied tolerance is `rel_tol · (1 + max |lhs|)`.
    pub(crate) fn compare(
        theorem_id: TheoremId,
        params: ReportParams<S>,
        lhs: &[S],
        rhs: &[S],
        rel_tol: f64,
    ) -> Self {
        debug_assert_eq!(lhs.len(), rhs.len());
        let mut max_abs_error = S::zero();
        let mut worst = None;
        let mut scale = S::zero();
        for (index, (l, r)) in lhs.iter().zip(rhs).enumerate() {
            let err = (l.clone() - r).abs();
            if !err.is_finite() || err > max_abs_error {
                max_abs_error = err;
                worst = Some(index);
            }
            let magnitude = l.abs();
            if magnitude > scale {
                scale = magnitude;
            }
        }
        let tolerance = match S::MODE {
            NumericMode::Exact => S::zero(),
            NumericMode::Float => S::from_f64(rel_tol) * (S::one() + scale),
        };
        // A NaN error never compares <= and so fails.
        let passed = max_abs_error <= tolerance;
        let witness = worst.map(|index| Witness {
            index,
            lhs: lhs[index].clone(),
            rhs: rhs[index].clone(),
        });
        VerificationReport {
            theorem_id,
            params,
            max_abs_error,
            tolerance,
            passed,
            witness,
        }
    }
}

impl<S: Scalar> fmt::Display for VerificationReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} n={} max_abs_error={} tolerance={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.theorem_id,
            self.params.n,
            self.max_abs_error,
            self.tolerance
        )
    }
}
