use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{VerificationReport, Verifier};
use crate::error::Result;
use crate::fracops::DiamondParams;
use crate::grid::GridFunction;
use crate::kernelmath::Order;
use crate::scalar::Scalar;

/// Orders drawn by the randomized suite, as `(numer, denom)`.
pub const ORDER_SWEEP: [(i64, i64); 5] = [(1, 3), (2, 5), (1, 2), (3, 4), (5, 4)];

/// Mixing weights drawn by the randomized suite.
pub const GAMMA_SWEEP: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];

const DENOMINATORS: [i64; 3] = [1, 2, 3];

/// Seeded source of rational test inputs: numerators in `[-9, 9]`,
/// denominators in `{1, 2, 3}`.
#[derive(Debug, Clone)]
pub struct InputSampler {
    rng: ChaCha8Rng,
}

impl InputSampler {
    pub fn new(seed: u64) -> Self {
        InputSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn ratio<S: Scalar>(numer: i64, denom: i64) -> S {
        S::from_ratio(numer, denom).expect("sweep denominators are nonzero")
    }

    pub fn rational<S: Scalar>(&mut self) -> S {
        let numer = self.rng.gen_range(-9..=9);
        let denom = DENOMINATORS[self.rng.gen_range(0..DENOMINATORS.len())];
        Self::ratio(numer, denom)
    }

    pub fn grid_function<S: Scalar>(&mut self, base: S, len: usize) -> GridFunction<S> {
        let samples = (0..len).map(|_| self.rational()).collect();
        GridFunction::new(base, samples).expect("sampled grids are finite and nonempty")
    }

    pub fn order<S: Scalar>(&mut self) -> Order<S> {
        let (p, q) = ORDER_SWEEP[self.rng.gen_range(0..ORDER_SWEEP.len())];
        Order::new(Self::ratio(p, q)).expect("sweep orders are positive")
    }

    pub fn gamma<S: Scalar>(&mut self) -> S {
        let (p, q) = GAMMA_SWEEP[self.rng.gen_range(0..GAMMA_SWEEP.len())];
        Self::ratio(p, q)
    }

    pub fn length(&mut self, max: usize) -> usize {
        self.rng.gen_range(1..=max.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremSelection {
    All,
    Linearity,
    Constant,
    Coincidence,
    Composition,
    Leibniz,
    Reduction,
}

impl TheoremSelection {
    pub const NAMES: [&'static str; 7] = [
        "all",
        "linearity",
        "constant",
        "coincidence",
        "composition",
        "leibniz",
        "reduction",
    ];

    fn includes(self, other: TheoremSelection) -> bool {
        self == TheoremSelection::All || self == other
    }
}

impl FromStr for TheoremSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "all" => TheoremSelection::All,
            "linearity" => TheoremSelection::Linearity,
            "constant" => TheoremSelection::Constant,
            "coincidence" => TheoremSelection::Coincidence,
            "composition" => TheoremSelection::Composition,
            "leibniz" => TheoremSelection::Leibniz,
            "reduction" => TheoremSelection::Reduction,
            other => {
                return Err(format!(
                    "unknown theorem {other:?} (expected one of {})",
                    Self::NAMES.join(", ")
                ))
            }
        })
    }
}

impl fmt::Display for TheoremSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TheoremSelection::All => "all",
            TheoremSelection::Linearity => "linearity",
            TheoremSelection::Constant => "constant",
            TheoremSelection::Coincidence => "coincidence",
            TheoremSelection::Composition => "composition",
            TheoremSelection::Leibniz => "leibniz",
            TheoremSelection::Reduction => "reduction",
        };
        f.write_str(name)
    }
}

/// A batch of randomized checks. Parameters left as `None` are drawn from
/// [`ORDER_SWEEP`] / [`GAMMA_SWEEP`] per case.
#[derive(Debug, Clone)]
pub struct SuiteConfig<S> {
    pub theorems: TheoremSelection,
    pub n: usize,
    pub cases: usize,
    pub seed: u64,
    pub base: S,
    pub alpha: Option<Order<S>>,
    pub beta: Option<Order<S>>,
    pub gamma: Option<S>,
}

impl<S: Scalar> SuiteConfig<S> {
    pub fn new(theorems: TheoremSelection, n: usize, cases: usize, seed: u64) -> Self {
        SuiteConfig {
            theorems,
            n,
            cases,
            seed,
            base: S::zero(),
            alpha: None,
            beta: None,
            gamma: None,
        }
    }
}

struct Case<S> {
    outer: DiamondParams<S>,
    inner: DiamondParams<S>,
    k: S,
    f: GridFunction<S>,
    g: GridFunction<S>,
}

/// Runs the selected checks on `cases` seeded random inputs. Reports come
/// back in case order, and within a case in theorem order.
pub fn run_suite<S: Scalar>(
    verifier: &Verifier,
    config: &SuiteConfig<S>,
) -> Result<Vec<VerificationReport<S>>> {
    let verifier = verifier.with_seed(Some(config.seed));
    let mut sampler = InputSampler::new(config.seed);
    let cases = (0..config.cases)
        .map(|_| {
            let alpha = config.alpha.clone().unwrap_or_else(|| sampler.order());
            let beta = config.beta.clone().unwrap_or_else(|| sampler.order());
            let gamma = config.gamma.clone().unwrap_or_else(|| sampler.gamma());
            let inner_alpha = sampler.order();
            let inner_beta = sampler.order();
            Ok(Case {
                outer: DiamondParams::new(alpha, beta, gamma.clone())?,
                inner: DiamondParams::new(inner_alpha, inner_beta, gamma)?,
                k: sampler.rational(),
                f: sampler.grid_function(config.base.clone(), config.n),
                g: sampler.grid_function(config.base.clone(), config.n),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let select = config.theorems;
    let mut reports = Vec::new();
    for case in &cases {
        let p = &case.outer;
        if select.includes(TheoremSelection::Linearity) {
            reports.push(verifier.verify_linearity(&case.f, &case.g, p)?);
        }
        if select.includes(TheoremSelection::Constant) {
            reports.push(verifier.verify_constant(&case.k, p, config.n)?);
        }
        if select.includes(TheoremSelection::Coincidence) {
            reports.push(verifier.verify_coincidence(&case.f, p.alpha())?);
        }
        if select.includes(TheoremSelection::Composition) {
            reports.push(verifier.verify_composition(&case.f, p, &case.inner)?);
        }
        if select.includes(TheoremSelection::Leibniz) {
            reports.push(verifier.verify_leibniz(&case.f, &case.g, p)?);
        }
        if select.includes(TheoremSelection::Reduction) {
            reports.push(verifier.verify_reduction_gamma0(&case.f, p.alpha(), p.beta())?);
            reports.push(verifier.verify_reduction_gamma1(&case.f, p.alpha(), p.beta())?);
        }
    }
    Ok(reports)
}
