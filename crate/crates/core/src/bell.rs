//! Partial and complete Bell polynomials, and the logarithmic polynomials
//! `K_n`, evaluated at exact rational points.
//!
//! Arguments are 1-indexed in the usual notation; here `x[0]` holds `x_1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub(crate) fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigInt::one());
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// All `B_{n,k}(x)` for `0 <= k <= n <= max_n`, filled with the recurrence
///
/// ```text
/// B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) * x_j * B_{n-j,k-1}
/// ```
///
/// from `B_{0,0} = 1`. Arguments past the end of `x` read as zero; an entry
/// `B_{n,k}` only ever touches `x_1 ..= x_{n-k+1}`.
#[derive(Clone, Debug)]
pub struct PartialBellTable {
    rows: Vec<Vec<BigRational>>,
}

impl PartialBellTable {
    pub fn new(x: &[BigRational], max_n: usize) -> Self {
        let binom = pascal(max_n.max(1));
        let zero = BigRational::zero();
        let arg = |j: usize| x.get(j - 1).unwrap_or(&zero);

        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigRational::one()]);
        for n in 1..=max_n {
            let mut row = vec![BigRational::zero(); n + 1];
            for k in 1..=n {
                let mut acc = BigRational::zero();
                for j in 1..=(n - k + 1) {
                    let xj = arg(j);
                    let prev = &rows[n - j][k - 1];
                    if xj.is_zero() || prev.is_zero() {
                        continue;
                    }
                    let c = BigRational::from_integer(binom[n - 1][j - 1].clone());
                    acc += c * xj * prev;
                }
                row[k] = acc;
            }
            rows.push(row);
        }
        PartialBellTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{n,k}`; panics outside `k <= n <= max_n`.
    pub fn get(&self, n: usize, k: usize) -> &BigRational {
        &self.rows[n][k]
    }

    /// `B_n = sum_k B_{n,k}`, with `B_0 = 1`.
    pub fn complete(&self, n: usize) -> BigRational {
        self.rows[n].iter().sum()
    }

    /// `K_n = sum_{k=1}^n (-1)^{k-1} (k-1)! B_{n,k}`, for a table built on
    /// the scaled arguments `j! * c_j`.
    fn log_polynomial(&self, n: usize, fact: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            let term = &self.rows[n][k] * BigRational::from_integer(fact[k - 1].clone());
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// `B_{n,k}(x_1, ..., x_{n-k+1})`.
pub fn partial_bell(n: usize, k: usize, x: &[BigRational]) -> Result<BigRational> {
    if k > n {
        return Err(Error::BellIndex { n, k });
    }
    if k >= 1 && x.len() < n - k + 1 {
        return Err(Error::BellArity {
            n,
            needed: n - k + 1,
            got: x.len(),
        });
    }
    Ok(PartialBellTable::new(x, n).get(n, k).clone())
}

/// Complete Bell polynomial `B_n(x_1, ..., x_n)`.
pub fn complete_bell(n: usize, x: &[BigRational]) -> Result<BigRational> {
    if x.len() < n {
        return Err(Error::BellArity {
            n,
            needed: n,
            got: x.len(),
        });
    }
    Ok(PartialBellTable::new(x, n).complete(n))
}

fn scaled_args(c: &[BigRational], n: usize, fact: &[BigInt]) -> Vec<BigRational> {
    c[..n]
        .iter()
        .enumerate()
        .map(|(i, cj)| cj * BigRational::from_integer(fact[i + 1].clone()))
        .collect()
}

/// `K_n(c_1, ..., c_n)`. The factorial scaling `j! * c_j` is applied here;
/// callers pass raw series coefficients with `c[0] = c_1`.
pub fn log_polynomial(n: usize, c: &[BigRational]) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::BellIndex { n: 0, k: 1 });
    }
    if c.len() < n {
        return Err(Error::BellArity {
            n,
            needed: n,
            got: c.len(),
        });
    }
    let fact = factorials(n);
    let table = PartialBellTable::new(&scaled_args(c, n, &fact), n);
    Ok(table.log_polynomial(n, &fact))
}

/// `[K_1, ..., K_max_n]` from a single Bell table.
pub fn log_polynomials(c: &[BigRational], max_n: usize) -> Result<Vec<BigRational>> {
    if c.len() < max_n {
        return Err(Error::BellArity {
            n: max_n,
            needed: max_n,
            got: c.len(),
        });
    }
    let fact = factorials(max_n);
    let table = PartialBellTable::new(&scaled_args(c, max_n, &fact), max_n);
    Ok((1..=max_n).map(|n| table.log_polynomial(n, &fact)).collect())
}
