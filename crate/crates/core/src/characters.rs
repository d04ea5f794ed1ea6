//! Character ratios on the classes `1^{N-2r} 2^r`.
//!
//! Three routes are available and are cross-checked in tests:
//!
//! - closed forms in the contents of the shape for `r = 1` and `r = 2`;
//! - domino (Murnaghan–Nakayama) recursion for every `r`, see [`ratio_mn`];
//! - traces of products of disjoint generators in Young's orthogonal form
//!   ([`crate::representation::YoungOrthogonal::trace_character`]).
//!
//! Ratios are exact [`BigRational`]s with `|value| <= 1`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{determinant, factorial, format_ratio, integer, inverse_factorial, to_f64};
use crate::partitions::{hook_data, partitions_of, shape_statistics, Partition};
use crate::representation::YoungOrthogonal;
use crate::{Error, Result};

/// Largest `n` accepted by [`plancherel_moments`] by default.
pub const PLANCHEREL_ENUMERATION_CAP: usize = 20;

/// Tolerance for comparing exact closed forms with the floating-point trace oracle.
pub const TRACE_ORACLE_TOLERANCE: f64 = 1e-10;

/// `χ(1^{N-2} 2) / χ(e) = Σ(j - i) / C(N, 2)`.
pub fn ratio_one_transposition(p: &Partition) -> Result<BigRational> {
    shape_statistics(p).theta_ratio()
}

/// `χ(1^{N-4} 2^2) / χ(e)` from the contents:
/// `4 (N-4)!/N! · ((Σc)^2 - 3 Σc^2 + 2 C(N,2))`.
pub fn ratio_two_transpositions(p: &Partition) -> Result<BigRational> {
    let n = p.size();
    if n < 4 {
        return Err(Error::DegenerateShape { size: n, needed: 4 });
    }
    let s = shape_statistics(p);
    let n = n as i64;
    let bracket = s.content_sum * s.content_sum - 3 * s.content_square_sum + 2 * s.pair_count;
    let falling = n * (n - 1) * (n - 2) * (n - 3);
    Ok(BigRational::new(
        BigInt::from(4 * bracket),
        BigInt::from(falling),
    ))
}

/// Compares [`ratio_two_transpositions`] with the trace of `ρ((1,2)(3,4))`.
///
/// Returns the closed form when the two agree within
/// [`TRACE_ORACLE_TOLERANCE`], and a [`Error::FormulaDiscrepancy`] naming both
/// values otherwise.
pub fn checked_ratio_two_transpositions(rep: &YoungOrthogonal) -> Result<BigRational> {
    let closed = ratio_two_transpositions(rep.shape())?;
    let oracle = rep.trace_character(&[1, 3])?;
    if (to_f64(&closed) - oracle).abs() > TRACE_ORACLE_TOLERANCE {
        return Err(Error::FormulaDiscrepancy {
            shape: rep.shape().to_string(),
            closed: format_ratio(&closed),
            oracle,
        });
    }
    Ok(closed)
}

/// Memo table for [`zeta`], keyed on `(inner, outer)`.
///
/// A table belongs to one computation at a time; it is not shared between
/// threads.
#[derive(Debug, Default)]
pub struct ZetaMemo {
    table: HashMap<(Partition, Partition), BigInt>,
}

impl ZetaMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Signed count of domino chains from `inner` up to `outer`.
    pub fn zeta(&mut self, inner: &Partition, outer: &Partition) -> Result<BigInt> {
        let diff = outer.size() as i64 - inner.size() as i64;
        if diff < 0 || diff % 2 != 0 {
            return Err(Error::Parity(diff));
        }
        if !outer.contains(inner) {
            return Err(Error::Containment {
                inner: inner.to_string(),
                outer: outer.to_string(),
            });
        }
        Ok(self.zeta_unchecked(inner, outer))
    }

    fn zeta_unchecked(&mut self, inner: &Partition, outer: &Partition) -> BigInt {
        if inner == outer {
            return BigInt::one();
        }
        let key = (inner.clone(), outer.clone());
        if let Some(v) = self.table.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (smaller, sign) in outer.domino_removals() {
            if smaller.contains(inner) {
                let sub = self.zeta_unchecked(inner, &smaller);
                if sign > 0 {
                    total += sub;
                } else {
                    total -= sub;
                }
            }
        }
        self.table.insert(key, total.clone());
        total
    }
}

/// `ζ(inner, outer)` with a fresh memo table.
pub fn zeta(inner: &Partition, outer: &Partition) -> Result<BigInt> {
    ZetaMemo::new().zeta(inner, outer)
}

/// `χ(1^{N-2r} 2^r) / χ(e) = Σ_{μ ≺ λ, |μ| = N-2r} ζ(μ, λ) f^μ / f^λ`.
pub fn ratio_mn(p: &Partition, r: usize) -> Result<BigRational> {
    let n = p.size();
    if n < 2 * r {
        return Err(Error::DegenerateShape {
            size: n,
            needed: 2 * r,
        });
    }
    // shapes reachable from λ by r domino removals
    let mut level: BTreeSet<Partition> = BTreeSet::from([p.clone()]);
    for _ in 0..r {
        level = level
            .iter()
            .flat_map(|q| q.domino_removals().into_iter().map(|(s, _)| s))
            .collect();
    }
    let mut memo = ZetaMemo::new();
    let mut numer = BigInt::zero();
    for mu in &level {
        let z = memo.zeta_unchecked(mu, p);
        if !z.is_zero() {
            numer += z * hook_data(mu).dimension;
        }
    }
    Ok(BigRational::new(numer, hook_data(p).dimension))
}

/// Skew diagram `outer / inner`; both may carry zero parts as padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl SkewShape {
    pub fn new(outer: Vec<usize>, mut inner: Vec<usize>) -> Result<Self> {
        let decreasing = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing(&outer) || !decreasing(&inner) {
            return Err(Error::InvalidPartition(
                "skew shape parts must be weakly decreasing".into(),
            ));
        }
        while inner.len() > outer.len() && inner.last() == Some(&0) {
            inner.pop();
        }
        let fits = inner.len() <= outer.len() && inner.iter().zip(&outer).all(|(b, a)| b <= a);
        if !fits {
            return Err(Error::Containment {
                inner: format!("{inner:?}"),
                outer: format!("{outer:?}"),
            });
        }
        inner.resize(outer.len(), 0);
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn box_count(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }
}

/// Number of standard skew tableaux, `r! det(1/(α_i - β_j - i + j)!)`.
pub fn skew_count(s: &SkewShape) -> BigInt {
    let k = s.outer.len();
    let rows: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    inverse_factorial(s.outer[i] as i64 - s.inner[j] as i64 - i as i64 + j as i64)
                })
                .collect()
        })
        .collect();
    let value = determinant(rows) * integer(factorial(s.box_count() as u64));
    assert!(value.is_integer(), "skew count is not integral");
    value.to_integer()
}

/// Limits of row and column lengths divided by `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitProfile {
    rows: Vec<BigRational>,
    columns: Vec<BigRational>,
}

impl LimitProfile {
    pub fn new(rows: Vec<BigRational>, columns: Vec<BigRational>) -> Result<Self> {
        for (name, v) in [("row", &rows), ("column", &columns)] {
            if v.iter().any(|x| x.is_negative()) {
                return Err(Error::InvalidProfile(format!("negative {name} limit")));
            }
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidProfile(format!(
                    "{name} limits must be weakly decreasing"
                )));
            }
            if v.iter().cloned().sum::<BigRational>() > BigRational::one() {
                return Err(Error::InvalidProfile(format!("{name} limits sum above 1")));
            }
        }
        Ok(Self { rows, columns })
    }

    pub fn rows(&self) -> &[BigRational] {
        &self.rows
    }

    pub fn columns(&self) -> &[BigRational] {
        &self.columns
    }
}

/// `θ = Σ p_i^2 - Σ q_j^2`.
pub fn theta_from_profiles(profile: &LimitProfile) -> BigRational {
    let sq = |v: &[BigRational]| v.iter().map(|x| x * x).sum::<BigRational>();
    sq(&profile.rows) - sq(&profile.columns)
}

/// Exact moments of the transposition character ratio under Plancherel
/// measure `(f^λ)^2 / n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlancherelSummary {
    pub n: usize,
    pub total_mass: BigRational,
    pub mean: BigRational,
    pub variance: BigRational,
}

pub fn plancherel_moments(n: usize, cap: usize) -> Result<PlancherelSummary> {
    if n < 2 || n > cap {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 2,
            max: cap as i64,
        });
    }
    let n_fact = factorial(n as u64);
    let (mut mass, mut first, mut second) = (
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    );
    for lam in partitions_of(n) {
        let f = hook_data(&lam).dimension;
        let weight = BigRational::new(&f * &f, n_fact.clone());
        let ratio = ratio_one_transposition(&lam)?;
        first += &weight * &ratio;
        second += &weight * &ratio * &ratio;
        mass += weight;
    }
    let variance = &second - &first * &first;
    Ok(PlancherelSummary {
        n,
        total_mass: mass,
        mean: first,
        variance,
    })
}
