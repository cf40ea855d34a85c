//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` stores the coefficients of `z^0 ..= z^N`. Nothing
//! here ever extends or shrinks the order of its inputs.
//!
//! The logarithm and exponential are computed with the bilateral recurrence
//! between the coefficients `c` of `f` and `d` of `ln f`:
//!
//! ```text
//! c_n = d_n + (1/n) * sum_{k=1}^{n-1} k * d_k * c_{n-k}
//! ```
//!
//! which is the same relation that converts moments to cumulants. Read left
//! to right it gives `exp`, solved for `d_n` it gives `log`.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Number of exact rational operations performed by a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub mul: u64,
    pub add: u64,
    pub div: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.mul + self.add + self.div
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            mul: self.mul + rhs.mul,
            add: self.add + rhs.add,
            div: self.div + rhs.div,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds a series from `coeffs[0..=N]`.
    ///
    /// Panics if `coeffs` is empty; a series always has at least the
    /// constant term.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    fn check_order(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(BigRational::zero(), |acc, j| {
                    if self.coeffs[j].is_zero() || other.coeffs[k - j].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[j] * &other.coeffs[k - j]
                    }
                })
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Coefficients of `ln f`; requires `f(0) = 1`.
    pub fn log(&self) -> Result<TruncatedSeries> {
        self.log_counted(&mut OpCount::default())
    }

    pub(crate) fn log_counted(&self, ops: &mut OpCount) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm(self.coeffs[0].clone()));
        }
        let c = &self.coeffs;
        let mut d = vec![BigRational::zero(); c.len()];
        for n in 1..c.len() {
            let s = weighted_convolution(&d, c, n, ops);
            d[n] = &c[n] - s / BigRational::from_integer(n.into());
            ops.div += 1;
            ops.add += 1;
        }
        Ok(TruncatedSeries { coeffs: d })
    }

    /// Coefficients of `exp f`; requires `f(0) = 0`.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(self.coeffs[0].clone()));
        }
        let d = &self.coeffs;
        let mut c = vec![BigRational::zero(); d.len()];
        c[0] = BigRational::one();
        let mut ops = OpCount::default();
        for n in 1..d.len() {
            let s = weighted_convolution(d, &c, n, &mut ops);
            c[n] = &d[n] + s / BigRational::from_integer(n.into());
        }
        Ok(TruncatedSeries { coeffs: c })
    }

    /// Coefficients `e[0..N]` of `f'/f`, i.e. `e[n-1] = n * d_n` with `d = ln f`.
    pub fn log_derivative_coeffs(&self) -> Result<Vec<BigRational>> {
        let d = self.log()?;
        Ok(d.coeffs
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(n, dn)| dn * BigRational::from_integer(n.into()))
            .collect())
    }
}

/// `sum_{k=1}^{n-1} k * d_k * c_{n-k}`
fn weighted_convolution(
    d: &[BigRational],
    c: &[BigRational],
    n: usize,
    ops: &mut OpCount,
) -> BigRational {
    let mut s = BigRational::zero();
    for k in 1..n {
        let term = &d[k] * &c[n - k] * BigRational::from_integer(k.into());
        s += term;
        ops.mul += 2;
        ops.add += 1;
    }
    s
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
