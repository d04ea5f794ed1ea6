//! Hermite polynomials with leading coefficient `1/n!` and the limiting
//! moments of the spectral measure.
//!
//! Normalization: `H_0 = 1`, `H_1(x) = x`, `(n+1) H_{n+1} = x H_n - H_{n-1}`,
//! so that `Σ t^n H_n(x) = exp(tx - t^2/2)` and `E[H_m(Z) H_n(Z)] = δ_{mn}/n!`
//! for a standard Gaussian `Z`.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

use crate::exact::to_f64;
use crate::{Error, Result};

/// `H_n(x)` by the three-term recurrence, in any field-like scalar
/// (`f64` or `BigRational`).
pub fn hermite<T>(n: usize, x: T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for m in 1..n {
        let next = (x.clone() * cur.clone() - prev) / T::from_usize(m + 1).expect("index fits");
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of `H_n`, lowest degree first.
pub fn hermite_coefficients(n: usize) -> Vec<BigRational> {
    let zero = BigRational::from_integer(0.into());
    let mut prev = vec![BigRational::from_integer(1.into())];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![zero.clone(), BigRational::from_integer(1.into())];
    for m in 1..n {
        let mut next = vec![zero.clone(); m + 2];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        let denom = BigRational::from_integer((m + 1).into());
        for c in next.iter_mut() {
            *c /= &denom;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `(m-1)!!` for even `m`, `0` for odd `m`: the standard Gaussian moments.
pub fn standard_gaussian_moment(m: usize) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut k = m as i64 - 1;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// `E[X^s]` for `X ~ Normal(mean, variance)`.
pub fn gaussian_raw_moment(s: usize, mean: f64, variance: f64) -> Result<f64> {
    if variance < 0.0 || variance.is_nan() {
        return Err(Error::NegativeVariance(variance));
    }
    let sd = variance.sqrt();
    let mut binom = 1.0;
    let mut total = 0.0;
    for k in 0..=s {
        // C(s, k) mean^{s-k} E[(sd Z)^k]
        if k > 0 {
            binom = binom * (s - k + 1) as f64 / k as f64;
        }
        let central = standard_gaussian_moment(k) * sd.powi(k as i32);
        total += binom * mean.powi((s - k) as i32) * central;
    }
    Ok(total)
}

/// `θ` and a realized value `z` of the random mean's Gaussian factor.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitParameters {
    theta: BigRational,
    pub z: f64,
}

impl LimitParameters {
    pub fn new(theta: BigRational, z: f64) -> Result<Self> {
        let one = BigRational::from_integer(1.into());
        if theta > one || theta < -one {
            return Err(Error::OutOfRange {
                what: "theta",
                value: theta.round().to_integer().try_into().unwrap_or(i64::MAX),
                min: -1,
                max: 1,
            });
        }
        Ok(Self { theta, z })
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }
}

/// `Σ_{r=0}^s s(s-1)...(s-r+1) E[Z^{s-r}] θ^r H_r(z)`, the `s`-th moment
/// of `Normal(θz, 1 - θ^2)`.
pub fn limit_moment(s: usize, lp: &LimitParameters) -> f64 {
    let theta = to_f64(&lp.theta);
    let mut falling = 1.0;
    let mut total = 0.0;
    for r in 0..=s {
        if r > 0 {
            falling *= (s - r + 1) as f64;
        }
        let gauss = standard_gaussian_moment(s - r);
        if gauss != 0.0 {
            total += falling * gauss * theta.powi(r as i32) * hermite(r, lp.z);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, integer, rational};
    use num_bigint::BigInt;

    /// `E[p(Z)]` for a polynomial with rational coefficients.
    fn gaussian_expectation(coeffs: &[BigRational]) -> BigRational {
        coeffs
            .iter()
            .enumerate()
            .filter(|(d, _)| d % 2 == 0)
            .map(|(d, c)| {
                let double_fact: BigInt = (1..d as u64).step_by(2).map(BigInt::from).product();
                c * BigRational::from_integer(double_fact)
            })
            .sum()
    }

    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![integer(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn low_degrees() {
        assert_eq!(hermite(0, 3.5), 1.0);
        assert_eq!(hermite(1, 3.5), 3.5);
        // Rodrigues: H_2 = (x^2 - 1)/2, H_3 = (x^3 - 3x)/6
        for x in [-2.0f64, -0.3, 0.0, 1.7] {
            assert!((hermite(2, x) - (x * x - 1.0) / 2.0).abs() < 1e-15);
            assert!((hermite(3, x) - (x * x * x - 3.0 * x) / 6.0).abs() < 1e-14);
        }
        assert_eq!(
            hermite_coefficients(2),
            vec![rational(-1, 2), integer(0), rational(1, 2)]
        );
        assert_eq!(hermite(2, rational(3, 1)), integer(4));
    }

    #[test]
    fn leading_coefficient_and_exact_evaluation() {
        for n in 0..=12 {
            let c = hermite_coefficients(n);
            assert_eq!(c.len(), n + 1);
            assert_eq!(c[n], BigRational::new(1.into(), factorial(n as u64)));
            let x = rational(7, 3);
            let horner = c.iter().rev().fold(integer(0), |acc, a| acc * &x + a);
            assert_eq!(hermite(n, x), horner);
        }
    }

    #[test]
    fn orthogonality_is_exact() {
        let polys: Vec<_> = (0..=10).map(hermite_coefficients).collect();
        for m in 0..=10 {
            for n in 0..=10 {
                let e = gaussian_expectation(&poly_mul(&polys[m], &polys[n]));
                let expected = if m == n {
                    BigRational::new(1.into(), factorial(n as u64))
                } else {
                    integer(0)
                };
                assert_eq!(e, expected, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn generating_function_partial_sums() {
        for &t in &[-0.5f64, -0.25, 0.0, 0.3, 0.5] {
            for &x in &[-2.0, -1.0, 0.0, 0.5, 2.0] {
                let partial: f64 = (0..=30).map(|n| t.powi(n as i32) * hermite(n, x)).sum();
                let exact = (t * x - t * t / 2.0).exp();
                assert!((partial - exact).abs() <= 1e-9, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn raw_moments() {
        assert_eq!(gaussian_raw_moment(0, 1.3, 0.4).unwrap(), 1.0);
        assert_eq!(gaussian_raw_moment(1, 1.3, 0.4).unwrap(), 1.3);
        assert!((gaussian_raw_moment(2, 1.3, 0.4).unwrap() - (1.69 + 0.4)).abs() < 1e-15);
        assert_eq!(gaussian_raw_moment(4, 0.0, 1.0).unwrap(), 3.0);
        assert!(matches!(
            gaussian_raw_moment(2, 0.0, -1.0),
            Err(Error::NegativeVariance(_))
        ));
    }

    #[test]
    fn limit_moment_low_orders() {
        let lp = LimitParameters::new(rational(3, 10), 1.7).unwrap();
        let tz = 0.3 * 1.7;
        assert_eq!(limit_moment(0, &lp), 1.0);
        assert!((limit_moment(1, &lp) - tz).abs() < 1e-15);
        assert!((limit_moment(2, &lp) - (tz * tz + 1.0 - 0.09)).abs() < 1e-14);
        assert!(LimitParameters::new(rational(3, 2), 0.0).is_err());
    }

    #[test]
    fn limit_moments_are_gaussian_moments() {
        let thetas = [
            integer(-1),
            rational(-1, 2),
            integer(0),
            rational(3, 10),
            integer(1),
        ];
        for theta in thetas {
            for z in [-2.0, 0.0, 1.7] {
                let lp = LimitParameters::new(theta.clone(), z).unwrap();
                let th = to_f64(&theta);
                for s in 0..=12 {
                    let lhs = limit_moment(s, &lp);
                    let rhs = gaussian_raw_moment(s, th * z, 1.0 - th * th).unwrap();
                    let scale = rhs.abs().max(1.0);
                    assert!(
                        (lhs - rhs).abs() <= 1e-9 * scale,
                        "θ={theta} z={z} s={s}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_theta_is_point_mass() {
        for sign in [1i64, -1] {
            let lp = LimitParameters::new(integer(sign), 1.3).unwrap();
            for s in 0..=10 {
                let expected = (sign as f64 * 1.3).powi(s as i32);
                assert!((limit_moment(s, &lp) - expected).abs() <= 1e-9 * expected.abs().max(1.0));
            }
        }
    }
}
