//! Non-negative solutions of `g1(k1) + ... + gr(kr) = n` for strictly
//! increasing term functions with `g(0) = 0`.
//!
//! Each term contributes the 0/1 indicator series `phi_l(z) = sum_k z^g(k)`.
//! Three routes turn those into counts:
//!
//! - `Re3`: recursion weighted by the logarithmic polynomials `K_m` of each
//!   indicator series,
//! - `C5`: the log-coefficients `d_k` of the full product, summed over terms,
//!   feed `nu(n) = (1/n) * sum_k k d_k nu(n-k)`,
//! - `Bell`: `nu(n) = B_n(1! d_1, ..., n! d_n) / n!`.
//!
//! `C5` is the cheapest and is the default.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bell::{factorials, log_polynomials, PartialBellTable};
use crate::series::{OpCount, TruncatedSeries};
use crate::table::rational_to_count;
use crate::{CountTable, Error, Result};

/// A strictly increasing map from non-negative integers to non-negative
/// integers with `g(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermFunction {
    /// `a * k`
    Affine { a: u64 },
    /// `c * k^e`
    Power { c: u64, e: u32 },
    /// `g(1), g(2), ...` listed explicitly; `g` is undefined past the end
    /// of the table, so the term only takes finitely many values.
    Table(Vec<u64>),
}

impl TermFunction {
    pub fn affine(a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInstance("affine coefficient must be positive".into()));
        }
        Ok(TermFunction::Affine { a })
    }

    /// `c * k^e`; an exponent of 1 collapses to the affine form.
    pub fn power(c: u64, e: u32) -> Result<Self> {
        if c == 0 || e == 0 {
            return Err(Error::InvalidInstance(
                "power term needs coefficient >= 1 and exponent >= 1".into(),
            ));
        }
        if e == 1 {
            return Ok(TermFunction::Affine { a: c });
        }
        Ok(TermFunction::Power { c, e })
    }

    pub fn table(values: Vec<u64>) -> Result<Self> {
        let mut prev = 0;
        for (i, &v) in values.iter().enumerate() {
            if v <= prev {
                return Err(Error::NonIncreasingTable { position: i + 1 });
            }
            prev = v;
        }
        Ok(TermFunction::Table(values))
    }

    /// `g(k)`, or `None` when it overflows `u64` or lies past a table's end.
    pub fn eval(&self, k: u64) -> Option<u64> {
        if k == 0 {
            return Some(0);
        }
        match self {
            TermFunction::Affine { a } => a.checked_mul(k),
            TermFunction::Power { c, e } => k.checked_pow(*e).and_then(|p| p.checked_mul(*c)),
            TermFunction::Table(values) => values.get(k as usize - 1).copied(),
        }
    }

    /// Values `g(1), g(2), ...` not exceeding `bound`, in increasing order.
    pub fn values_up_to(&self, bound: u64) -> Vec<u64> {
        (1..)
            .map(|k| self.eval(k))
            .take_while(|v| matches!(v, Some(v) if *v <= bound))
            .flatten()
            .collect()
    }
}

impl fmt::Display for TermFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermFunction::Affine { a: 1 } => f.write_str("k"),
            TermFunction::Affine { a } => write!(f, "{a}*k"),
            TermFunction::Power { c: 1, e } => write!(f, "k^{e}"),
            TermFunction::Power { c, e } => write!(f, "{c}*k^{e}"),
            TermFunction::Table(values) => {
                f.write_str("{")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralInstance {
    terms: Vec<TermFunction>,
    target_max: usize,
}

impl GeneralInstance {
    pub fn new(terms: Vec<TermFunction>, target_max: usize) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInstance("at least one term is required".into()));
        }
        Ok(GeneralInstance { terms, target_max })
    }

    pub fn terms(&self) -> &[TermFunction] {
        &self.terms
    }

    pub fn target_max(&self) -> usize {
        self.target_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneralPath {
    Re3,
    #[default]
    C5,
    Bell,
}

impl FromStr for GeneralPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "re3" => Ok(GeneralPath::Re3),
            "c5" => Ok(GeneralPath::C5),
            "bell" => Ok(GeneralPath::Bell),
            _ => Err(format!("unknown general path '{s}' (expected re3, c5 or bell)")),
        }
    }
}

pub fn count_general(inst: &GeneralInstance, path: GeneralPath) -> Result<CountTable> {
    match path {
        GeneralPath::Re3 => count_general_re3(inst),
        GeneralPath::C5 => count_general_c5(inst),
        GeneralPath::Bell => count_general_bell_table(inst),
    }
}

/// Series with `c_0 = 1` and `c_k = 1` exactly when `k = g(m)` for some `m > 0`.
pub fn indicator_coeffs(g: &TermFunction, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    for v in g.values_up_to(order as u64) {
        coeffs[v as usize] = BigRational::one();
    }
    TruncatedSeries::new(coeffs)
}

/// Fills `nu(1..=N)` from `nu(n) = (1/n) * sum_{m=1}^n weight[m] * nu(n-m)`.
fn fill_from_weights(
    weights: &[BigRational],
    n_max: usize,
    path: &'static str,
    ops: &mut OpCount,
) -> Result<CountTable> {
    let mut nu: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    nu.push(BigInt::one());
    for n in 1..=n_max {
        let mut total = BigRational::zero();
        for m in 1..=n {
            total += &weights[m] * BigRational::from_integer(nu[n - m].clone());
            ops.mul += 1;
            ops.add += 1;
        }
        total /= BigRational::from_integer(n.into());
        ops.div += 1;
        nu.push(rational_to_count(&total, path, n)?);
    }
    Ok(CountTable::new(nu))
}

/// Recursion through `K_m(c_{l1}, ..., c_{lm}) / (m-1)!`.
pub fn count_general_re3(inst: &GeneralInstance) -> Result<CountTable> {
    let n_max = inst.target_max;
    let fact = factorials(n_max.max(1));
    let per_term: Vec<Vec<BigRational>> = inst
        .terms
        .par_iter()
        .map(|g| {
            let c = indicator_coeffs(g, n_max);
            log_polynomials(&c.coeffs()[1..], n_max)
        })
        .collect::<Result<_>>()?;

    let mut weights = vec![BigRational::zero(); n_max + 1];
    for k in &per_term {
        for m in 1..=n_max {
            weights[m] += &k[m - 1] / BigRational::from_integer(fact[m - 1].clone());
        }
    }
    fill_from_weights(&weights, n_max, "re3", &mut OpCount::default())
}

/// Log-coefficients `d_k = sum_l d_{lk}` of the full generating function,
/// truncated at `order`.
pub fn log_coefficients(terms: &[TermFunction], order: usize) -> Result<TruncatedSeries> {
    log_coefficients_counted(terms, order).map(|(d, _)| d)
}

fn log_coefficients_counted(
    terms: &[TermFunction],
    order: usize,
) -> Result<(TruncatedSeries, OpCount)> {
    let logs: Vec<(TruncatedSeries, OpCount)> = terms
        .par_iter()
        .map(|g| {
            let mut ops = OpCount::default();
            let d = indicator_coeffs(g, order).log_counted(&mut ops)?;
            Ok((d, ops))
        })
        .collect::<Result<_>>()?;

    let mut ops = OpCount::default();
    let mut total = TruncatedSeries::zero(order);
    for (d, term_ops) in &logs {
        total = total.add(d)?;
        ops += *term_ops;
        ops.add += order as u64 + 1;
    }
    Ok((total, ops))
}

pub fn count_general_c5(inst: &GeneralInstance) -> Result<CountTable> {
    count_general_c5_counted(inst).map(|(t, _)| t)
}

/// As [`count_general_c5`], also reporting the rational operations spent.
pub fn count_general_c5_counted(inst: &GeneralInstance) -> Result<(CountTable, OpCount)> {
    let n_max = inst.target_max;
    let (d, mut ops) = log_coefficients_counted(&inst.terms, n_max)?;
    let weights: Vec<BigRational> = d
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, dk)| dk * BigRational::from_integer(k.into()))
        .collect();
    ops.mul += n_max as u64;
    let table = fill_from_weights(&weights, n_max, "c5", &mut ops)?;
    Ok((table, ops))
}

fn bell_args(d: &TruncatedSeries, fact: &[BigInt]) -> Vec<BigRational> {
    d.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, dj)| dj * BigRational::from_integer(fact[j].clone()))
        .collect()
}

/// `nu(n) = B_n(1! d_1, ..., n! d_n) / n!` for a single `n <= target_max`.
pub fn count_general_bell(inst: &GeneralInstance, n: usize) -> Result<BigInt> {
    if n > inst.target_max {
        return Err(Error::InvalidInstance(format!(
            "n = {n} exceeds the instance bound {}",
            inst.target_max
        )));
    }
    let fact = factorials(n);
    let d = log_coefficients(&inst.terms, n)?;
    let table = PartialBellTable::new(&bell_args(&d, &fact), n);
    bell_quotient(table.complete(n), &fact[n], n)
}

/// Closed form for every `n <= target_max` from one Bell table.
pub fn count_general_bell_table(inst: &GeneralInstance) -> Result<CountTable> {
    let n_max = inst.target_max;
    let fact = factorials(n_max);
    let d = log_coefficients(&inst.terms, n_max)?;
    let table = PartialBellTable::new(&bell_args(&d, &fact), n_max);
    let values = (0..=n_max)
        .map(|n| bell_quotient(table.complete(n), &fact[n], n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::new(values))
}

fn bell_quotient(bn: BigRational, n_fact: &BigInt, n: usize) -> Result<BigInt> {
    // B_n(1! d_1, ..., n! d_n) must itself be an integer multiple of n!
    let bn = rational_to_count(&bn, "bell", n)?;
    crate::table::exact_quotient(&bn, n_fact, "bell", n)
}

/// Counts of solutions with every unknown `k_l >= 1`, for `n <= n_max`.
///
/// Inclusion-exclusion over the terms that are allowed to move:
/// `P(n) = sum_{S} (-1)^(r-|S|) nu_S(n)`, where `nu_S` counts solutions of the
/// equation restricted to the terms in `S` (the others pinned at `k = 0`).
pub fn count_positive(terms: &[TermFunction], n_max: usize, path: GeneralPath) -> Result<CountTable> {
    let r = terms.len();
    let mut total = vec![BigInt::zero(); n_max + 1];
    for mask in 0u64..(1u64 << r) {
        let subset: Vec<TermFunction> = (0..r)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| terms[i].clone())
            .collect();
        let negative = (r - subset.len()) % 2 == 1;
        let table = if subset.is_empty() {
            let mut t = vec![BigInt::zero(); n_max + 1];
            t[0] = BigInt::one();
            CountTable::new(t)
        } else {
            count_general(&GeneralInstance::new(subset, n_max)?, path)?
        };
        for (acc, v) in total.iter_mut().zip(table.values()) {
            if negative {
                *acc -= v;
            } else {
                *acc += v;
            }
        }
    }
    Ok(CountTable::new(total))
}

fn count_positive_at(terms: &[TermFunction], n: usize) -> Result<BigInt> {
    let r = terms.len();
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << r) {
        let subset: Vec<TermFunction> = (0..r)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| terms[i].clone())
            .collect();
        let negative = (r - subset.len()) % 2 == 1;
        let v = if subset.is_empty() {
            BigInt::from(u8::from(n == 0))
        } else {
            count_general_bell(&GeneralInstance::new(subset, n)?, n)?
        };
        if negative {
            total -= v;
        } else {
            total += v;
        }
    }
    Ok(total)
}

/// Non-trivial solutions of `left_1(k_1) + ... + left_r(k_r) = right(m)`.
///
/// For every `n = right(m) <= bound` with `m >= 1`, counts the left-hand
/// tuples with all `k_l >= 1` summing to `n`, and returns the `(n, count)`
/// pairs with a non-zero count. Solutions in which some `k_l = 0` reduce to
/// an equation with fewer terms and are not reported.
pub fn two_sided_search(
    left: &[TermFunction],
    right: &TermFunction,
    bound: u64,
) -> Result<Vec<(u64, BigInt)>> {
    two_sided_search_with(left, right, bound, GeneralPath::C5)
}

pub fn two_sided_search_with(
    left: &[TermFunction],
    right: &TermFunction,
    bound: u64,
    path: GeneralPath,
) -> Result<Vec<(u64, BigInt)>> {
    if left.is_empty() {
        return Err(Error::InvalidInstance("at least one left-hand term is required".into()));
    }
    let candidates = right.values_up_to(bound);
    let hits: Vec<(u64, BigInt)> = match path {
        // the closed form is evaluated independently per n
        GeneralPath::Bell => candidates
            .par_iter()
            .map(|&n| count_positive_at(left, n as usize).map(|c| (n, c)))
            .collect::<Result<_>>()?,
        _ => {
            let table = count_positive(left, bound as usize, path)?;
            candidates
                .into_iter()
                .map(|n| (n, table[n as usize].clone()))
                .collect()
        }
    };
    Ok(hits.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
