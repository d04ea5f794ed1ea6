//! Exact integer and rational helpers shared by the combinatorial modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1/m!` with the convention that the factorial of a negative integer is
/// infinite, so its reciprocal is zero.
pub fn inverse_factorial(m: i64) -> BigRational {
    if m < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(m as u64))
    }
}

pub fn binomial2(n: i64) -> i64 {
    n * (n - 1) / 2
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Determinant by Gaussian elimination over the rationals.
///
/// The matrix is consumed row-major and must be square.
pub fn determinant(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        let (upper, lower) = rows.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest `f64` to a rational.
pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        return v;
    }
    // Huge numerators/denominators: scale down by bit length first.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn abs_le_one(q: &BigRational) -> bool {
    q.abs() <= BigRational::one()
}
