//! Executable checks of the fractional-sum identities.
//!
//! Every check evaluates both sides of an identity by independent routes and
//! compares them pointwise. In exact mode the identities hold with zero
//! error, so any nonzero difference is a bug.

mod definitional;
mod report;
mod suite;

pub use definitional::delta_sum_from_definition;
pub use report::{ReportParams, TheoremId, VerificationReport, Witness};
pub use suite::{run_suite, InputSampler, SuiteConfig, TheoremSelection, GAMMA_SWEEP, ORDER_SWEEP};

use crate::error::{Error, Result};
use crate::fracops::{Convolver, DiamondParams};
use crate::grid::GridFunction;
use crate::kernelmath::{constant_sum_closed_form, generalized_binomial, Order};
use crate::scalar::Scalar;

/// Default relative tolerance for float-mode checks.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verifier {
    convolver: Convolver,
    rel_tol: f64,
    seed: Option<u64>,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            convolver: Convolver::new(),
            rel_tol: DEFAULT_REL_TOL,
            seed: None,
        }
    }
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs the production side of every check through `convolver`.
    pub fn with_convolver(mut self, convolver: Convolver) -> Self {
        self.convolver = convolver;
        self
    }

    /// Relative tolerance for float mode; ignored in exact mode.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Seed recorded in report parameters.
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn convolver(&self) -> &Convolver {
        &self.convolver
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    fn params<S: Scalar>(&self, n: usize, p: Option<&DiamondParams<S>>) -> ReportParams<S> {
        let mut params = ReportParams::new(n, self.seed);
        if let Some(p) = p {
            params.alpha = Some(p.alpha().value().clone());
            params.beta = Some(p.beta().value().clone());
            params.gamma = Some(p.gamma().clone());
        }
        params
    }

    fn report<S: Scalar>(
        &self,
        theorem: TheoremId,
        params: ReportParams<S>,
        lhs: &GridFunction<S>,
        rhs: &GridFunction<S>,
    ) -> VerificationReport<S> {
        VerificationReport::compare(theorem, params, lhs.samples(), rhs.samples(), self.rel_tol)
    }

    /// `◇(f+g) = ◇f + ◇g`.
    pub fn verify_linearity<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        g: &GridFunction<S>,
        p: &DiamondParams<S>,
    ) -> Result<VerificationReport<S>> {
        let ops = &self.convolver;
        let lhs = ops.diamond_fractional_sum(&f.add(g)?, p)?;
        let rhs = ops
            .diamond_fractional_sum(f, p)?
            .add(&ops.diamond_fractional_sum(g, p)?)?;
        Ok(self.report(TheoremId::Linearity, self.params(f.len(), Some(p)), &lhs, &rhs))
    }

    /// Diamond sum of the constant `k` against
    /// `γ k binom(n+α, n) + (1-γ) k binom(n+β, n)` on `n` grid points.
    pub fn verify_constant<S: Scalar>(
        &self,
        k: &S,
        p: &DiamondParams<S>,
        n: usize,
    ) -> Result<VerificationReport<S>> {
        let f = GridFunction::constant(S::zero(), k.clone(), n)?;
        let lhs = self.convolver.diamond_fractional_sum(&f, p)?;
        let complement = S::one() - p.gamma();
        let rhs = GridFunction::from_offsets(S::zero(), n, |m| {
            p.gamma().clone() * constant_sum_closed_form(p.alpha(), m, k)
                + complement.clone() * constant_sum_closed_form(p.beta(), m, k)
        })?;
        Ok(self.report(TheoremId::Constant, self.params(n, Some(p)), &lhs, &rhs))
    }

    /// `(Δ_a^{-ν} f)(t+ν) = (∇_a^{-ν} f)(t)`, with the delta side evaluated
    /// from its definition.
    pub fn verify_coincidence<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        nu: &Order<S>,
    ) -> Result<VerificationReport<S>> {
        let lhs = delta_sum_from_definition(f, nu)?;
        let rhs = self.convolver.nabla_fractional_sum(f, nu)?;
        let mut params = ReportParams::new(f.len(), self.seed);
        params.alpha = Some(nu.value().clone());
        params.beta = Some(nu.value().clone());
        Ok(self.report(TheoremId::Coincidence, params, &lhs, &rhs))
    }

    /// Nested diamond sums against the four-branch closed form.
    pub fn verify_composition<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        outer: &DiamondParams<S>,
        inner: &DiamondParams<S>,
    ) -> Result<VerificationReport<S>> {
        let lhs = self.convolver.compose_diamond_lhs(f, outer, inner)?;
        let rhs = self.convolver.compose_diamond_rhs(f, outer, inner)?;
        let mut params = self.params(f.len(), Some(outer));
        params.alpha2 = Some(inner.alpha().value().clone());
        params.beta2 = Some(inner.beta().value().clone());
        Ok(self.report(TheoremId::Composition, params, &lhs, &rhs))
    }

    /// `γ = 1` diamond sum against the plain delta sum read on the input grid.
    pub fn verify_reduction_gamma1<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        alpha: &Order<S>,
        beta: &Order<S>,
    ) -> Result<VerificationReport<S>> {
        let p = DiamondParams::new(alpha.clone(), beta.clone(), S::one())?;
        let lhs = self.convolver.diamond_fractional_sum(f, &p)?;
        let rhs = self
            .convolver
            .delta_fractional_sum(f, alpha)?
            .with_base(f.base().clone())?;
        Ok(self.report(TheoremId::ReductionGamma1, self.params(f.len(), Some(&p)), &lhs, &rhs))
    }

    /// `γ = 0` diamond sum against the plain nabla sum.
    pub fn verify_reduction_gamma0<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        alpha: &Order<S>,
        beta: &Order<S>,
    ) -> Result<VerificationReport<S>> {
        let p = DiamondParams::new(alpha.clone(), beta.clone(), S::zero())?;
        let lhs = self.convolver.diamond_fractional_sum(f, &p)?;
        let rhs = self.convolver.nabla_fractional_sum(f, beta)?;
        Ok(self.report(TheoremId::ReductionGamma0, self.params(f.len(), Some(&p)), &lhs, &rhs))
    }

    /// Right side of the Leibniz formula at grid offset `m`, with the series
    /// truncated at `k = m`.
    pub fn leibniz_rhs<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        g: &GridFunction<S>,
        p: &DiamondParams<S>,
        m: usize,
    ) -> Result<S> {
        self.leibniz_rhs_capped(f, g, p, m, m)
    }

    /// As [`Verifier::leibniz_rhs`] with the series summed up to `k = cap`.
    /// Terms past `k = m` have an empty inner sum and contribute zero.
    pub fn leibniz_rhs_capped<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        g: &GridFunction<S>,
        p: &DiamondParams<S>,
        m: usize,
        cap: usize,
    ) -> Result<S> {
        f.same_domain(g)?;
        if m >= f.len() {
            return Err(Error::IndexOutOfRange { index: m, len: f.len() });
        }
        let f = f.truncated(m + 1)?;
        let g = g.truncated(m + 1)?;
        let series = LeibnizSeries::new(&self.convolver, &f, &g, p)?;
        Ok(series.evaluate(m, cap))
    }

    /// `◇(fg)` against the Leibniz series at every grid point.
    pub fn verify_leibniz<S: Scalar>(
        &self,
        f: &GridFunction<S>,
        g: &GridFunction<S>,
        p: &DiamondParams<S>,
    ) -> Result<VerificationReport<S>> {
        f.same_domain(g)?;
        let lhs = self.convolver.diamond_fractional_sum(&f.multiply(g)?, p)?;
        let series = LeibnizSeries::new(&self.convolver, f, g, p)?;
        let rhs = GridFunction::from_offsets(f.base().clone(), f.len(), |m| series.evaluate(m, m))?;
        Ok(self.report(TheoremId::Leibniz, self.params(f.len(), Some(p)), &lhs, &rhs))
    }
}

/// Precomputed factors of the Leibniz series for one `(f, g, p)`.
struct LeibnizSeries<S> {
    gamma: S,
    alpha: SeriesBranch<S>,
    beta: SeriesBranch<S>,
    /// `differences[k][m-k] = (∇^k g)(a+m)`.
    differences: Vec<Vec<S>>,
}

/// `binom(-order, k)` and `Δ_a^{-(order+k)} f` for `k = 0..n`.
struct SeriesBranch<S> {
    binomials: Vec<S>,
    delta_sums: Vec<Vec<S>>,
}

impl<S: Scalar> SeriesBranch<S> {
    fn new(convolver: &Convolver, f: &GridFunction<S>, order: &Order<S>) -> Result<Self> {
        let negated = -order.value().clone();
        let mut binomials = Vec::with_capacity(f.len());
        let mut delta_sums = Vec::with_capacity(f.len());
        for k in 0..f.len() {
            binomials.push(generalized_binomial(&negated, k));
            let sum = convolver.delta_fractional_sum(f, &order.shifted(k))?;
            delta_sums.push(sum.into_samples());
        }
        Ok(SeriesBranch {
            binomials,
            delta_sums,
        })
    }

    /// `Σ_{k=0}^{cap} binom(-order, k) (∇^k g)(t) (Δ_a^{-(order+k)} f)(t+order)`
    /// at `t = a+m`. The delta factor sums over `s = a..t-k`, which is empty
    /// for `k > m`.
    fn evaluate(&self, differences: &[Vec<S>], m: usize, cap: usize) -> S {
        let mut acc = S::zero();
        for k in 0..=cap {
            let Some(offset) = m.checked_sub(k) else {
                acc = acc + S::zero();
                continue;
            };
            let term = self.binomials[k].clone()
                * &differences[k][offset]
                * &self.delta_sums[k][offset];
            acc = acc + term;
        }
        acc
    }
}

impl<S: Scalar> LeibnizSeries<S> {
    fn new(
        convolver: &Convolver,
        f: &GridFunction<S>,
        g: &GridFunction<S>,
        p: &DiamondParams<S>,
    ) -> Result<Self> {
        let differences = (0..g.len())
            .map(|k| g.backward_difference(k).map(GridFunction::into_samples))
            .collect::<Result<Vec<_>>>()?;
        Ok(LeibnizSeries {
            gamma: p.gamma().clone(),
            alpha: SeriesBranch::new(convolver, f, p.alpha())?,
            beta: SeriesBranch::new(convolver, f, p.beta())?,
            differences,
        })
    }

    fn evaluate(&self, m: usize, cap: usize) -> S {
        let complement = S::one() - &self.gamma;
        self.gamma.clone() * self.alpha.evaluate(&self.differences, m, cap)
            + complement * self.beta.evaluate(&self.differences, m, cap)
    }
}

pub fn verify_linearity<S: Scalar>(
    f: &GridFunction<S>,
    g: &GridFunction<S>,
    p: &DiamondParams<S>,
) -> Result<VerificationReport<S>> {
    Verifier::default().verify_linearity(f, g, p)
}

pub fn verify_constant<S: Scalar>(
    k: &S,
    p: &DiamondParams<S>,
    n: usize,
) -> Result<VerificationReport<S>> {
    Verifier::default().verify_constant(k, p, n)
}

pub fn verify_coincidence<S: Scalar>(
    f: &GridFunction<S>,
    nu: &Order<S>,
) -> Result<VerificationReport<S>> {
    Verifier::default().verify_coincidence(f, nu)
}

pub fn verify_composition<S: Scalar>(
    f: &GridFunction<S>,
    outer: &DiamondParams<S>,
    inner: &DiamondParams<S>,
) -> Result<VerificationReport<S>> {
    Verifier::default().verify_composition(f, outer, inner)
}

pub fn leibniz_rhs<S: Scalar>(
    f: &GridFunction<S>,
    g: &GridFunction<S>,
    p: &DiamondParams<S>,
    m: usize,
) -> Result<S> {
    Verifier::default().leibniz_rhs(f, g, p, m)
}

pub fn verify_leibniz<S: Scalar>(
    f: &GridFunction<S>,
    g: &GridFunction<S>,
    p: &DiamondParams<S>,
) -> Result<VerificationReport<S>> {
    Verifier::default().verify_leibniz(f, g, p)
}
