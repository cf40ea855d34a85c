//! Brute-force counts by direct enumeration, plus Euler's pentagonal
//! recurrence for the partition function.
//!
//! Nothing here shares code with the recursions it is used to check. Every
//! enumerator refuses to run when its search space exceeds the [`Guard`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{CountTable, Error, GeneralInstance, LinearInstance, QuadraticInstance, Result};

/// Upper bound on the number of enumerated tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub limit: u128,
}

impl Guard {
    pub const DEFAULT_LIMIT: u128 = 10_000_000;

    pub fn new(limit: u128) -> Self {
        Guard { limit }
    }

    fn check(&self, ranges: impl Iterator<Item = u64>) -> Result<()> {
        let size = ranges.fold(1u128, |acc, r| acc.saturating_mul(u128::from(r)));
        if size > self.limit {
            return Err(Error::GuardExceeded {
                size,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard::new(Self::DEFAULT_LIMIT)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Enumeration size: the product of loop ranges over all but the last
/// unknown, whose value is fixed by the remainder.
fn leading(ranges: Vec<u64>) -> impl Iterator<Item = u64> {
    let keep = ranges.len().saturating_sub(1);
    ranges.into_iter().take(keep)
}

/// Non-negative tuples with `sum a_l k_l = n`.
pub fn brute_linear(inst: &LinearInstance, n: u64, guard: &Guard) -> Result<BigInt> {
    let a = inst.coeffs();
    guard.check(leading(a.iter().map(|&al| n / al + 1).collect()))?;

    fn go(a: &[u64], rest: u64) -> u64 {
        match a {
            [last] => u64::from(rest.is_multiple_of(*last)),
            [first, tail @ ..] => (0..=rest / first).map(|k| go(tail, rest - k * first)).sum(),
            [] => u64::from(rest == 0),
        }
    }
    Ok(BigInt::from(go(a, n)))
}

/// Signed tuples with `sum a_l k_l^2 = n`.
pub fn brute_quadratic(inst: &QuadraticInstance, n: u64, guard: &Guard) -> Result<BigInt> {
    let a = inst.coeffs();
    guard.check(leading(a.iter().map(|&al| 2 * isqrt(n / al) + 1).collect()))?;

    fn go(a: &[u64], rest: u64) -> u64 {
        match a {
            [last] => {
                if !rest.is_multiple_of(*last) {
                    return 0;
                }
                let s = rest / last;
                let r = isqrt(s);
                match (r * r == s, r) {
                    (false, _) => 0,
                    (true, 0) => 1,
                    (true, _) => 2,
                }
            }
            [first, tail @ ..] => {
                let kmax = isqrt(rest / first);
                (-(kmax as i64)..=kmax as i64)
                    .map(|k| go(tail, rest - first * (k * k) as u64))
                    .sum()
            }
            [] => u64::from(rest == 0),
        }
    }
    Ok(BigInt::from(go(a, n)))
}

/// Non-negative tuples with `sum g_l(k_l) = n`.
pub fn brute_general(inst: &GeneralInstance, n: u64, guard: &Guard) -> Result<BigInt> {
    // g(0) = 0 is always available, followed by the positive values <= n
    let images: Vec<Vec<u64>> = inst
        .terms()
        .iter()
        .map(|g| {
            let mut v = vec![0];
            let mut k = 1;
            while let Some(x) = g.eval(k) {
                if x > n {
                    break;
                }
                v.push(x);
                k += 1;
            }
            v
        })
        .collect();
    guard.check(leading(images.iter().map(|v| v.len() as u64).collect()))?;

    fn go(images: &[Vec<u64>], rest: u64) -> u64 {
        match images {
            [last] => u64::from(last.binary_search(&rest).is_ok()),
            [first, tail @ ..] => first
                .iter()
                .take_while(|&&x| x <= rest)
                .map(|&x| go(tail, rest - x))
                .sum(),
            [] => u64::from(rest == 0),
        }
    }
    Ok(BigInt::from(go(&images, n)))
}

/// Tables `nu(0..=N)` from any of the single-`n` oracles above.
pub fn brute_table<F>(n_max: usize, mut count: F) -> Result<CountTable>
where
    F: FnMut(u64) -> Result<BigInt>,
{
    let values = (0..=n_max as u64).map(&mut count).collect::<Result<Vec<_>>>()?;
    Ok(CountTable::new(values))
}

/// Partition numbers `p(0..=N)` by Euler's pentagonal recurrence
/// `p(n) = sum_{j>=1} (-1)^(j-1) [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]`.
pub fn partition_pentagonal(n_max: usize) -> CountTable {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let mut term = p[n - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    CountTable::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TermFunction;

    fn g() -> Guard {
        Guard::default()
    }

    #[test]
    fn linear_examples() {
        let inst = LinearInstance::new(vec![1, 2, 3], 0).unwrap();
        assert_eq!(brute_linear(&inst, 6, &g()).unwrap(), BigInt::from(7));
        assert_eq!(brute_linear(&inst, 0, &g()).unwrap(), BigInt::one());
        let seven = LinearInstance::new(vec![7], 0).unwrap();
        assert_eq!(brute_linear(&seven, 6, &g()).unwrap(), BigInt::zero());
    }

    #[test]
    fn quadratic_examples() {
        let two = QuadraticInstance::new(vec![1, 1], 0).unwrap();
        assert_eq!(brute_quadratic(&two, 1, &g()).unwrap(), BigInt::from(4));
        assert_eq!(brute_quadratic(&two, 3, &g()).unwrap(), BigInt::zero());
        assert_eq!(brute_quadratic(&two, 9, &g()).unwrap(), BigInt::from(4));
        let one = QuadraticInstance::new(vec![1], 0).unwrap();
        assert_eq!(brute_quadratic(&one, 4, &g()).unwrap(), BigInt::from(2));
        assert_eq!(brute_quadratic(&one, 0, &g()).unwrap(), BigInt::one());
    }

    #[test]
    fn general_examples() {
        let cube = TermFunction::power(1, 3).unwrap();
        let inst = GeneralInstance::new(vec![cube.clone(), cube], 0).unwrap();
        assert_eq!(brute_general(&inst, 9, &g()).unwrap(), BigInt::from(2));
        assert_eq!(brute_general(&inst, 3, &g()).unwrap(), BigInt::zero());
        assert_eq!(brute_general(&inst, 0, &g()).unwrap(), BigInt::one());
    }

    #[test]
    fn guard_rejects_large_searches() {
        let inst = LinearInstance::new(vec![1, 1, 1, 1], 0).unwrap();
        let tight = Guard::new(1000);
        assert!(brute_linear(&inst, 9, &tight).is_ok());
        assert_eq!(
            brute_linear(&inst, 10, &tight),
            Err(Error::GuardExceeded { size: 1331, limit: 1000 })
        );
        // a single unknown never enumerates
        let single = LinearInstance::new(vec![3], 0).unwrap();
        assert!(brute_linear(&single, 1_000_000, &Guard::new(1)).is_ok());
    }

    #[test]
    fn pentagonal_values() {
        let p = partition_pentagonal(100);
        let head: Vec<BigInt> = [1, 1, 2, 3, 5, 7, 11, 15, 22].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(&p.values()[..9], head.as_slice());
        assert_eq!(p[1], BigInt::one());
        assert_eq!(p[100], BigInt::from(190_569_292u64));
    }

    #[test]
    fn pentagonal_matches_enumeration_at_small_scale() {
        let p = partition_pentagonal(25);
        let inst = LinearInstance::new((1..=25).collect(), 0).unwrap();
        for n in 0..=12u64 {
            assert_eq!(brute_linear(&inst, n, &Guard::new(u128::MAX)).unwrap(), p[n as usize]);
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
