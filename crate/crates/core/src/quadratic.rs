//! Signed integer solutions of `a1*k1^2 + ... + ar*kr^2 = n`.
//!
//! The generating function is a product of theta series
//! `sum_{k in Z} z^(a*k^2)`. Two routes are exposed: the parity-weighted
//! recursion over divisor pairs `(p, q)`, and direct multiplication of the
//! theta series.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::TruncatedSeries;
use crate::table::{exact_quotient, rational_to_count};
use crate::{CountTable, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticInstance {
    coeffs: Vec<u64>,
    target_max: usize,
}

impl QuadraticInstance {
    pub fn new(coeffs: Vec<u64>, target_max: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInstance("at least one coefficient is required".into()));
        }
        if let Some(pos) = coeffs.iter().position(|&a| a == 0) {
            return Err(Error::InvalidInstance(format!(
                "coefficient {} is zero; coefficients must be positive",
                pos + 1
            )));
        }
        Ok(QuadraticInstance { coeffs, target_max })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn target_max(&self) -> usize {
        self.target_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QuadraticPath {
    #[default]
    Re2,
    Theta,
}

impl FromStr for QuadraticPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "re2" => Ok(QuadraticPath::Re2),
            "theta" => Ok(QuadraticPath::Theta),
            _ => Err(format!("unknown quadratic path '{s}' (expected re2 or theta)")),
        }
    }
}

pub fn count_quadratic(inst: &QuadraticInstance, path: QuadraticPath) -> Result<CountTable> {
    match path {
        QuadraticPath::Re2 => count_quadratic_re2(inst),
        QuadraticPath::Theta => count_quadratic_theta(inst),
    }
}

/// `(-1 + (-1)^(p-1) + 2(-1)^(q-1) + 2(-1)^(p+q)) * p`
pub fn re2_weight(p: u64, q: u64) -> i64 {
    let p_odd = p % 2 == 1;
    let q_odd = q % 2 == 1;
    let p = p as i64;
    match (p_odd, q_odd) {
        (true, true) => 4 * p,
        (true, false) => -4 * p,
        (false, _) => -2 * p,
    }
}

/// `nu(n) = (1/2n) * sum_l a_l * sum_{p q <= n/a_l} w(p, q) * nu(n - a_l p q)`
pub fn count_quadratic_re2(inst: &QuadraticInstance) -> Result<CountTable> {
    let n_max = inst.target_max;
    let mut nu: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    nu.push(BigInt::one());
    for n in 1..=n_max {
        let mut total = BigInt::zero();
        for &a in &inst.coeffs {
            let a = a as usize;
            let mut inner = BigInt::zero();
            for p in 1..=n / a {
                for q in 1..=n / (a * p) {
                    let rest = &nu[n - a * p * q];
                    if !rest.is_zero() {
                        inner += rest * re2_weight(p as u64, q as u64);
                    }
                }
            }
            total += inner * BigInt::from(a);
        }
        let value = exact_quotient(&total, &BigInt::from(2 * n), "re2", n)?;
        nu.push(value);
    }
    Ok(CountTable::new(nu))
}

/// `1 + 2 * sum_{k>=1, a k^2 <= N} z^(a k^2)`
pub fn theta_coeffs(a: u64, order: usize) -> TruncatedSeries {
    assert!(a >= 1, "theta coefficient must be positive");
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut k: u64 = 1;
    while let Some(pos) = k.checked_mul(k).and_then(|s| s.checked_mul(a)) {
        if pos > order as u64 {
            break;
        }
        coeffs[pos as usize] = two.clone();
        k += 1;
    }
    TruncatedSeries::new(coeffs)
}

/// Coefficients of the product of theta series.
pub fn count_quadratic_theta(inst: &QuadraticInstance) -> Result<CountTable> {
    let n_max = inst.target_max;
    let mut product = TruncatedSeries::one(n_max);
    for &a in &inst.coeffs {
        product = product.mul(&theta_coeffs(a, n_max))?;
    }
    let values = product
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| rational_to_count(c, "theta", n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::new(values))
}
