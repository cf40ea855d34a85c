use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;

/// Solution counts `nu(0..=N)` produced by any counting route.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountTable {
    values: Vec<BigInt>,
}

impl CountTable {
    pub fn new(values: Vec<BigInt>) -> Self {
        CountTable { values }
    }

    /// Largest `n` held by the table.
    pub fn max_n(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate()
    }
}

impl Index<usize> for CountTable {
    type Output = BigInt;

    fn index(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Exact quotient `numerator / divisor`, or `NonIntegral` when a remainder is left.
pub(crate) fn exact_quotient(
    numerator: &BigInt,
    divisor: &BigInt,
    path: &'static str,
    n: usize,
) -> crate::Result<BigInt> {
    use num_integer::Integer;
    use num_traits::Zero;

    let (q, r) = numerator.div_rem(divisor);
    if !r.is_zero() {
        return Err(crate::Error::NonIntegral {
            path,
            n,
            value: format!("{numerator}/{divisor}"),
        });
    }
    Ok(q)
}

/// Converts a rational that must be an integer, reporting `NonIntegral` otherwise.
pub(crate) fn rational_to_count(
    value: &num_rational::BigRational,
    path: &'static str,
    n: usize,
) -> crate::Result<BigInt> {
    if !value.is_integer() {
        return Err(crate::Error::NonIntegral {
            path,
            n,
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}
