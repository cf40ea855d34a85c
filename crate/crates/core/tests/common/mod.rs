#![allow(dead_code)]

use dcount::{BigInt, BigRational, TermFunction};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> BigRational {
    rat(rng.gen_range(-max..=max), rng.gen_range(1..=max))
}

pub fn random_term(rng: &mut ChaCha8Rng) -> TermFunction {
    match rng.gen_range(0..3) {
        0 => TermFunction::affine(rng.gen_range(1..=5)).unwrap(),
        1 => TermFunction::power(rng.gen_range(1..=3), rng.gen_range(2..=4)).unwrap(),
        _ => {
            let mut v = Vec::new();
            let mut x = 0;
            for _ in 0..rng.gen_range(1..=6) {
                x += rng.gen_range(1..=7);
                v.push(x);
            }
            TermFunction::table(v).unwrap()
        }
    }
}

/// Block counts of every set partition of `{1..n}`, via restricted growth
/// strings: `counts[k]` is the number of partitions into `k` blocks.
pub fn set_partition_block_counts(n: usize) -> Vec<u64> {
    fn go(i: usize, n: usize, blocks: usize, counts: &mut Vec<u64>) {
        if i == n {
            counts[blocks] += 1;
            return;
        }
        for b in 0..=blocks {
            go(i + 1, n, blocks.max(b + 1), counts);
        }
    }
    let mut counts = vec![0; n + 1];
    if n == 0 {
        counts[0] = 1;
    } else {
        go(0, n, 0, &mut counts);
    }
    counts
}

/// Fixed-point arithmetic with `digits` decimal places, for test-side
/// evaluation of transcendental formulas.
pub struct Fixed {
    pub scale: BigInt,
}

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923";

impl Fixed {
    pub fn new(digits: u32) -> Self {
        Fixed { scale: BigInt::from(10).pow(digits) }
    }

    pub fn int(&self, v: i64) -> BigInt {
        BigInt::from(v) * &self.scale
    }

    pub fn pi(&self) -> BigInt {
        let digits = self.scale.to_string().len() - 1;
        assert!(digits < PI_DIGITS.len());
        PI_DIGITS[..=digits].parse().unwrap()
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.scale
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * &self.scale / b
    }

    pub fn sqrt(&self, a: &BigInt) -> BigInt {
        (a * &self.scale).sqrt()
    }

    /// `exp(x)` by halving the argument, a Taylor series, then squaring back.
    pub fn exp(&self, x: &BigInt) -> BigInt {
        let halvings = 12u32;
        let y = x / BigInt::from(1u64 << halvings);
        let mut sum = self.scale.clone();
        let mut term = self.scale.clone();
        let mut k = 1i64;
        loop {
            term = self.mul(&term, &y) / BigInt::from(k);
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        for _ in 0..halvings {
            sum = self.mul(&sum, &sum);
        }
        sum
    }

    pub fn to_f64(&self, a: &BigInt) -> f64 {
        use num_traits::ToPrimitive;
        BigRational::new(a.clone(), self.scale.clone()).to_f64().unwrap()
    }
}

/// `p(n) * 4 n sqrt(3) / exp(pi sqrt(2n/3))` in 40-digit fixed point.
pub fn partition_asymptotic_ratio(p_n: &BigInt, n: i64) -> f64 {
    let fx = Fixed::new(40);
    let sqrt3 = fx.sqrt(&fx.int(3));
    let arg = fx.mul(&fx.pi(), &fx.sqrt(&fx.div(&fx.int(2 * n), &fx.int(3))));
    let numer = p_n * BigInt::from(4 * n) * &sqrt3;
    fx.to_f64(&fx.div(&numer, &fx.exp(&arg)))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
