//! Forward lattice walk with Poisson-distributed steps.
//!
//! Step `l` moves the particle by `a_l * k_l` with `k_l ~ Poisson(alpha)`.
//! The displacement after all steps has generating function
//! `exp(alpha * sum_l (z^a_l - 1))`, so every probability carries the common
//! factor `exp(-alpha * r)`. We keep that factor symbolic and work with
//! scaled weights `W(n) = p(n) * exp(alpha * r)`, which are exact rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSpec {
    alpha: BigRational,
    coeffs: Vec<u64>,
}

impl WalkSpec {
    pub fn new(alpha: BigRational, coeffs: Vec<u64>) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidInstance(format!("alpha must be positive, got {alpha}")));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInstance("at least one step is required".into()));
        }
        if coeffs.contains(&0) {
            return Err(Error::InvalidInstance(
                "step displacements must be positive (forward walk)".into(),
            ));
        }
        Ok(WalkSpec { alpha, coeffs })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn steps(&self) -> usize {
        self.coeffs.len()
    }
}

/// Weights `W(0..=N)`; the probability of displacement `n` is
/// `W(n) * exp(-scale_exponent())`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDistribution {
    weights: Vec<BigRational>,
    scale_exponent: BigRational,
}

impl ScaledDistribution {
    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// `alpha * r`
    pub fn scale_exponent(&self) -> &BigRational {
        &self.scale_exponent
    }

    pub fn probability_f64(&self, n: usize) -> f64 {
        let w = self.weights[n].to_f64().unwrap_or(f64::NAN);
        let s = self.scale_exponent.to_f64().unwrap_or(f64::NAN);
        w * (-s).exp()
    }
}

fn scale_exponent(spec: &WalkSpec) -> BigRational {
    &spec.alpha * BigRational::from_integer(spec.coeffs.len().into())
}

/// `W(n) = (alpha / n) * sum_l a_l * W(n - a_l)` with `W(0) = 1`.
pub fn walk_distribution(spec: &WalkSpec, n_max: usize) -> ScaledDistribution {
    let mut w: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    w.push(BigRational::one());
    for n in 1..=n_max {
        let mut acc = BigRational::zero();
        for &a in &spec.coeffs {
            let a = a as usize;
            if a <= n {
                acc += &w[n - a] * BigRational::from_integer(a.into());
            }
        }
        w.push(acc * &spec.alpha / BigRational::from_integer(n.into()));
    }
    ScaledDistribution {
        weights: w,
        scale_exponent: scale_exponent(spec),
    }
}

/// Direct expansion of `exp(alpha * sum_l z^a_l)` through the series
/// exponential; repeated displacements add their `alpha` into the same
/// coefficient.
pub fn walk_convolution_oracle(spec: &WalkSpec, n_max: usize) -> ScaledDistribution {
    let mut d = vec![BigRational::zero(); n_max + 1];
    for &a in &spec.coeffs {
        if let Some(slot) = d.get_mut(a as usize) {
            *slot += &spec.alpha;
        }
    }
    let weights = TruncatedSeries::new(d)
        .exp()
        .expect("constant term is zero by construction")
        .into_coeffs();
    ScaledDistribution {
        weights,
        scale_exponent: scale_exponent(spec),
    }
}
