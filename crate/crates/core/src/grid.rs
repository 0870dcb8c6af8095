//! Functions sampled on a unit-spaced grid `{base, base+1, …, base+n-1}`.

use crate::error::{Error, Result};
use crate::kernelmath::generalized_binomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<S> {
    base: S,
    samples: Vec<S>,
}

impl<S: Scalar> GridFunction<S> {
    pub fn new(base: S, samples: Vec<S>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if !base.is_finite() || samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GridFunction { base, samples })
    }

    pub fn constant(base: S, value: S, len: usize) -> Result<Self> {
        Self::new(base, vec![value; len])
    }

    /// Samples `f(j)` at offsets `j = 0..len`.
    pub fn from_offsets(base: S, len: usize, f: impl FnMut(usize) -> S) -> Result<Self> {
        Self::new(base, (0..len).map(f).collect())
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn samples(&self) -> &[S] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<S> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> Option<&S> {
        self.samples.get(index)
    }

    /// Grid point `base + index`.
    pub fn point(&self, index: usize) -> S {
        self.base.clone() + S::from_i64(index as i64)
    }

    pub fn points(&self) -> impl Iterator<Item = S> + '_ {
        (0..self.len()).map(|j| self.point(j))
    }

    /// Same samples on a different grid.
    pub fn with_base(self, base: S) -> Result<Self> {
        Self::new(base, self.samples)
    }

    /// First `len` samples.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyGrid);
        }
        if len > self.len() {
            return Err(Error::IndexOutOfRange {
                index: len - 1,
                len: self.len(),
            });
        }
        Self::new(self.base.clone(), self.samples[..len].to_vec())
    }

    pub fn same_domain(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::DomainMismatch(format!(
                "bases {} and {} differ",
                self.base, other.base
            )));
        }
        if self.len() != other.len() {
            return Err(Error::DomainMismatch(format!(
                "lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(S, &S) -> S) -> Result<Self> {
        self.same_domain(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| op(a.clone(), b))
            .collect();
        Self::new(self.base.clone(), samples)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &S) -> Result<Self> {
        let samples = self.samples.iter().map(|v| v.clone() * c).collect();
        Self::new(self.base.clone(), samples)
    }

    /// `∇^k`: `h(t) = Σ_{i=0}^{k} (-1)^i C(k,i) g(t-i)`, defined from
    /// `base + k` onward.
    pub fn backward_difference(&self, k: usize) -> Result<Self> {
        let n = self.len();
        if k >= n {
            return Err(Error::InsufficientSamples { order: k, len: n });
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let coeffs: Vec<S> = (0..=k)
            .map(|i| {
                let c = generalized_binomial(&S::from_i64(k as i64), i);
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let samples = (k..n)
            .map(|m| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (i, c)| acc + c.clone() * &self.samples[m - i])
            })
            .collect();
        Self::new(self.base.clone() + S::from_i64(k as i64), samples)
    }

    /// Running sums `g(base+m) = Σ_{j≤m} f(base+j)`.
    pub fn cumulative_sum(&self) -> Result<Self> {
        let mut acc = S::zero();
        let samples = self
            .samples
            .iter()
            .map(|v| {
                acc = acc.clone() + v;
                acc.clone()
            })
            .collect();
        Self::new(self.base.clone(), samples)
    }
}
