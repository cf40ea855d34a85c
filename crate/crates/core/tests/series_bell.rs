mod common;

use common::*;
use dcount::bell::{complete_bell, log_polynomial, partial_bell, PartialBellTable};
use dcount::{BigInt, BigRational, TruncatedSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// Series with constant term 1.
fn unit_series(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), 1..=max_order).prop_map(|tail| {
        TruncatedSeries::new(std::iter::once(BigRational::one()).chain(tail).collect())
    })
}

fn series_of_order(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncatedSeries::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_inverts_log(c in unit_series(64)) {
        let d = c.log().unwrap();
        prop_assert!(d.coeff(0).is_zero());
        prop_assert_eq!(d.exp().unwrap(), c);
    }

    #[test]
    fn log_of_product_is_sum_of_logs(
        (a, b) in (1usize..=20).prop_flat_map(|n| (unit_series_exact(n), unit_series_exact(n)))
    ) {
        let lhs = a.mul(&b).unwrap().log().unwrap();
        let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_commutes_and_associates(
        (a, b, c) in (0usize..=12).prop_flat_map(|n| (series_of_order(n), series_of_order(n), series_of_order(n)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn log_derivative_is_scaled_log(c in unit_series(20)) {
        let d = c.log().unwrap();
        let e = c.log_derivative_coeffs().unwrap();
        prop_assert_eq!(e.len(), c.order());
        for (i, v) in e.iter().enumerate() {
            let n = i + 1;
            prop_assert_eq!(v, &(d.coeff(n) * BigRational::from_integer(n.into())));
        }
    }
}

fn unit_series_exact(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order).prop_map(|tail| {
        TruncatedSeries::new(std::iter::once(BigRational::one()).chain(tail).collect())
    })
}

#[test]
fn log_polynomial_equals_scaled_log_coefficient() {
    let mut rng = rng(11);
    for _ in 0..120 {
        let order = 12;
        let tail: Vec<BigRational> = (0..order).map(|_| random_rational(&mut rng, 9)).collect();
        let c = TruncatedSeries::new(std::iter::once(BigRational::one()).chain(tail.clone()).collect());
        let d = c.log().unwrap();
        let k_all = dcount::bell::log_polynomials(&tail, order).unwrap();
        for n in 1..=order {
            let expected = d.coeff(n) * BigRational::from_integer(factorial(n));
            assert_eq!(k_all[n - 1], expected, "n = {n}");
        }
        // single-order entry point agrees with the batched one
        assert_eq!(log_polynomial(7, &tail).unwrap(), k_all[6]);
    }
}

#[test]
fn partial_bell_at_ones_is_stirling_second_kind() {
    for n in 0..=10 {
        let counts = set_partition_block_counts(n);
        let ones = vec![BigRational::one(); n.max(1)];
        for (k, &expected) in counts.iter().enumerate() {
            assert_eq!(
                partial_bell(n, k, &ones).unwrap(),
                BigRational::from_integer(expected.into()),
                "S({n},{k})"
            );
        }
    }
}

#[test]
fn complete_bell_at_ones_is_bell_number() {
    for n in 0..=10 {
        let bell_number: u64 = set_partition_block_counts(n).iter().sum();
        let ones = vec![BigRational::one(); n];
        assert_eq!(
            complete_bell(n, &ones).unwrap(),
            BigRational::from_integer(bell_number.into())
        );
    }
}

#[test]
fn complete_is_sum_of_partials() {
    let mut rng = rng(5);
    for n in 0..=9 {
        let x: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng, 6)).collect();
        let sum: BigRational = (0..=n).map(|k| partial_bell(n, k, &x).unwrap()).sum();
        assert_eq!(complete_bell(n, &x).unwrap(), sum);
        let table = PartialBellTable::new(&x, n);
        assert_eq!(table.complete(n), sum);
    }
}

#[test]
fn complete_bell_recovers_partition_count() {
    // d_k of prod_{l<=4} 1/(1-z^l), then B_4(1! d_1, ..., 4! d_4) / 4! = p(4)
    let n = 4;
    let mut phi = TruncatedSeries::one(n);
    for a in 1..=4usize {
        let geo: Vec<i64> = (0..=n).map(|k| i64::from(k % a == 0)).collect();
        phi = phi.mul(&TruncatedSeries::from_integers(geo)).unwrap();
    }
    let d = phi.log().unwrap();
    let x: Vec<BigRational> = (1..=n)
        .map(|j| d.coeff(j) * BigRational::from_integer(factorial(j)))
        .collect();
    let value = complete_bell(n, &x).unwrap() / BigRational::from_integer(factorial(n));
    assert_eq!(value, BigRational::from_integer(BigInt::from(5)));
}
