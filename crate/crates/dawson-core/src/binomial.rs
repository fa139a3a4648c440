//! Pascal-triangle binomial coefficients over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact binomial coefficients C(n, k) for all n up to a fixed order.
///
/// Built once per operation; callers convert entries into their scalar type
/// at the point of use, so rational runs stay exact and floating runs never
/// hit intermediate factorial overflow.
pub struct PascalTriangle {
    rows: Vec<Vec<BigInt>>,
    zero: BigInt,
}

impl PascalTriangle {
    pub fn up_to(n_max: usize) -> Self {
        let mut rows = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev: &Vec<BigInt> = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        PascalTriangle {
            rows,
            zero: BigInt::zero(),
        }
    }

    /// C(n, k); zero when k > n. Panics if n exceeds the built order.
    pub fn choose(&self, n: usize, k: usize) -> &BigInt {
        let row = &self.rows[n];
        if k > n {
            &self.zero
        } else {
            &row[k]
        }
    }
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        let p = PascalTriangle::up_to(10);
        assert_eq!(p.choose(0, 0), &BigInt::from(1));
        assert_eq!(p.choose(5, 2), &BigInt::from(10));
        assert_eq!(p.choose(10, 5), &BigInt::from(252));
        assert_eq!(p.choose(4, 7), &BigInt::from(0));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), "2432902008176640000".parse().unwrap());
    }
}
