//! Non-negative solutions of `a1*k1 + ... + ar*kr = n`.
//!
//! The counts satisfy
//!
//! ```text
//! nu(n) = (1/n) * sum_l a_l * sum_{i=1}^{n/a_l} nu(n - i*a_l),   nu(0) = 1
//! ```
//!
//! and, grouping by `m = i*a_l`, the divisor form
//! `nu(n) = (1/n) * sum_{m=1}^n rho(m) * nu(n-m)` where `rho(m)` is the sum of
//! the coefficients dividing `m`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::table::exact_quotient;
use crate::{CountTable, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInstance {
    coeffs: Vec<u64>,
    target_max: usize,
}

impl LinearInstance {
    /// Coefficients must all be positive; repeats are allowed and order is
    /// irrelevant.
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
        Ok(LinearInstance { coeffs, target_max })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn target_max(&self) -> usize {
        self.target_max
    }

    pub fn with_target_max(&self, target_max: usize) -> Self {
        LinearInstance {
            coeffs: self.coeffs.clone(),
            target_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinearPath {
    #[default]
    Re1,
    Rho,
}

impl FromStr for LinearPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "re1" => Ok(LinearPath::Re1),
            "rho" => Ok(LinearPath::Rho),
            _ => Err(format!("unknown linear path '{s}' (expected re1 or rho)")),
        }
    }
}

pub fn count_linear(inst: &LinearInstance, path: LinearPath) -> Result<CountTable> {
    match path {
        LinearPath::Re1 => count_linear_re1(inst),
        LinearPath::Rho => count_linear_rho(inst),
    }
}

/// Bottom-up evaluation of the coefficient-wise recursion.
///
/// The inner sum `sum_{i>=1} nu(n - i*a)` is read from a running
/// residue-class prefix sum `tail[a][m] = nu(m) + tail[a][m - a]`, so each
/// `n` costs one lookup per distinct coefficient.
pub fn count_linear_re1(inst: &LinearInstance) -> Result<CountTable> {
    let n_max = inst.target_max;

    // distinct coefficient -> a * multiplicity
    let mut groups: Vec<(usize, BigInt)> = Vec::new();
    for &a in &inst.coeffs {
        let a = a as usize;
        match groups.iter_mut().find(|(b, _)| *b == a) {
            Some((_, w)) => *w += BigInt::from(a),
            None => groups.push((a, BigInt::from(a))),
        }
    }
    // coefficients above n_max never contribute
    groups.retain(|(a, _)| *a <= n_max);

    let mut nu = Vec::with_capacity(n_max + 1);
    nu.push(BigInt::one());
    let mut tails: Vec<Vec<BigInt>> = groups.iter().map(|_| vec![BigInt::one()]).collect();

    for n in 1..=n_max {
        let mut total = BigInt::zero();
        for ((a, weight), tail) in groups.iter().zip(&tails) {
            if n >= *a {
                total += weight * &tail[n - a];
            }
        }
        let value = exact_quotient(&total, &BigInt::from(n), "re1", n)?;
        for ((a, _), tail) in groups.iter().zip(tails.iter_mut()) {
            let next = if n >= *a { &value + &tail[n - a] } else { value.clone() };
            tail.push(next);
        }
        nu.push(value);
    }
    Ok(CountTable::new(nu))
}

/// Sum of the coefficients that divide `m`, counted with multiplicity.
pub fn divisor_weight(inst: &LinearInstance, m: u64) -> u64 {
    inst.coeffs.iter().filter(|&&a| m.is_multiple_of(a)).sum()
}

pub fn count_linear_rho(inst: &LinearInstance) -> Result<CountTable> {
    let n_max = inst.target_max;
    let rho: Vec<BigInt> = (0..=n_max as u64)
        .map(|m| {
            if m == 0 {
                BigInt::zero()
            } else {
                BigInt::from(divisor_weight(inst, m))
            }
        })
        .collect();

    let mut nu = Vec::with_capacity(n_max + 1);
    nu.push(BigInt::one());
    for n in 1..=n_max {
        let total: BigInt = (1..=n)
            .filter(|&m| !rho[m].is_zero())
            .map(|m| &rho[m] * &nu[n - m])
            .sum();
        nu.push(exact_quotient(&total, &BigInt::from(n), "rho", n)?);
    }
    Ok(CountTable::new(nu))
}

/// `(n + r - 1)! / (n! (r - 1)!)`, the count for `r` unit coefficients.
pub fn count_unit_closed_form(r: u64, n: u64) -> BigInt {
    assert!(r >= 1, "at least one unknown is required");
    let top = n + r - 1;
    let k = n.min(r - 1);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(top - k + i) / BigInt::from(i);
    }
    acc
}

/// Leading constant `C` in `nu(n) ~ C * n^(r-1)`, i.e. `1 / ((r-1)! * prod a_l)`.
///
/// Only defined pointwise when the coefficients are coprime as a set.
pub fn asymptotic_coefficient(inst: &LinearInstance) -> Result<BigRational> {
    let g = inst.coeffs.iter().fold(0u64, |g, &a| g.gcd(&a));
    if g != 1 {
        return Err(Error::NotCoprime { gcd: g });
    }
    let r = inst.coeffs.len();
    let mut denom: BigInt = (1..r).map(BigInt::from).product();
    for &a in &inst.coeffs {
        denom *= BigInt::from(a);
    }
    Ok(BigRational::new(BigInt::one(), denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(coeffs: &[u64], n: usize) -> Vec<BigInt> {
        count_linear_re1(&LinearInstance::new(coeffs.to_vec(), n).unwrap())
            .unwrap()
            .into_values()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(LinearInstance::new(vec![], 3).is_err());
        assert!(LinearInstance::new(vec![1, 0], 3).is_err());
    }

    #[test]
    fn partition_counts() {
        for (n, expected) in [(2, 2), (3, 3), (4, 5), (5, 7), (6, 11), (7, 15), (8, 22)] {
            let coeffs: Vec<u64> = (1..=n as u64).collect();
            assert_eq!(table(&coeffs, n)[n], BigInt::from(expected));
        }
    }

    #[test]
    fn two_three_table() {
        assert_eq!(table(&[2, 3], 7), big(&[1, 0, 1, 1, 1, 1, 2, 1]));
        assert_eq!(table(&[2, 3], 0), big(&[1]));
    }

    #[test]
    fn divisor_weight_examples() {
        let inst = LinearInstance::new(vec![2, 3], 0).unwrap();
        assert_eq!(divisor_weight(&inst, 6), 5);
        assert_eq!(divisor_weight(&inst, 5), 0);
        let inst = LinearInstance::new(vec![1, 2, 3, 4], 0).unwrap();
        assert_eq!(divisor_weight(&inst, 4), 7);
    }

    #[test]
    fn rho_matches_re1() {
        let inst = LinearInstance::new(vec![1, 2, 3], 50).unwrap();
        assert_eq!(count_linear_rho(&inst).unwrap(), count_linear_re1(&inst).unwrap());
    }

    #[test]
    fn single_coefficient() {
        let inst = LinearInstance::new(vec![5], 10).unwrap();
        let t = count_linear_rho(&inst).unwrap();
        assert_eq!(t.values(), big(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).as_slice());
        let ones = count_linear_rho(&LinearInstance::new(vec![1], 20).unwrap()).unwrap();
        assert!(ones.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn repeated_coefficients_count_separately() {
        // k1 + k2 = n has n + 1 solutions
        assert_eq!(table(&[1, 1], 5), big(&[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn closed_form_small() {
        assert_eq!(count_unit_closed_form(3, 2), BigInt::from(6));
        assert_eq!(count_unit_closed_form(1, 17), BigInt::one());
        assert_eq!(count_unit_closed_form(4, 0), BigInt::one());
    }

    #[test]
    fn asymptotic_constants() {
        let c = |a: &[u64]| asymptotic_coefficient(&LinearInstance::new(a.to_vec(), 0).unwrap());
        assert_eq!(c(&[1, 2, 3]).unwrap(), BigRational::new(1.into(), 12.into()));
        assert_eq!(c(&[1]).unwrap(), BigRational::one());
        assert_eq!(c(&[1, 1]).unwrap(), BigRational::one());
        assert_eq!(c(&[2, 4]), Err(Error::NotCoprime { gcd: 2 }));
        // pairwise non-coprime but coprime as a set
        assert!(c(&[6, 10, 15]).is_ok());
    }

    #[test]
    fn path_parsing() {
        assert_eq!("rho".parse::<LinearPath>().unwrap(), LinearPath::Rho);
        assert!("re2".parse::<LinearPath>().is_err());
    }
}
