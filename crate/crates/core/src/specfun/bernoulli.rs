use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest supported Bernoulli index.
pub(crate) const MAX_INDEX: usize = 64;

struct Table {
    values: Vec<f64>,
    over_factorial: Vec<f64>,
}

static TABLE: OnceLock<Table> = OnceLock::new();

fn table() -> &'static Table {
    TABLE.get_or_init(|| {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0 in exact rationals.
        let mut exact: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        exact.push(BigRational::one());
        for m in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            exact.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut factorial = BigInt::one();
        let mut values = Vec::with_capacity(MAX_INDEX + 1);
        let mut over_factorial = Vec::with_capacity(MAX_INDEX + 1);
        for (k, b) in exact.iter().enumerate() {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            values.push(b.to_f64().unwrap_or(f64::NAN));
            let scaled = b / BigRational::from_integer(factorial.clone());
            over_factorial.push(scaled.to_f64().unwrap_or(f64::NAN));
        }
        Table {
            values,
            over_factorial,
        }
    })
}

fn check_index(k: usize) -> Result<()> {
    if k > MAX_INDEX {
        return Err(Error::OutOfRange(format!(
            "Bernoulli index {k} > {MAX_INDEX}"
        )));
    }
    if k % 2 == 1 && k != 1 {
        return Err(Error::OutOfRange(format!("odd Bernoulli index {k}")));
    }
    Ok(())
}

/// Bernoulli number `B_k` (convention `B_1 = -1/2`), for `k = 1` or even
/// `k ≤ 64`.
pub fn bernoulli_number(k: usize) -> Result<f64> {
    check_index(k)?;
    Ok(table().values[k])
}

/// `B_k / k!`, rounded once from the exact rational.
pub fn bernoulli_over_factorial(k: usize) -> Result<f64> {
    check_index(k)?;
    Ok(table().over_factorial[k])
}
