//! Exact checks of the staircase determinant identities obtained by letting
//! the row lengths of a `K`-row shape with fixed odd gaps grow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::ratio_mn;
use crate::exact::{determinant, factorial, integer, inverse_factorial};
use crate::partitions::Partition;
use crate::{Error, Result};

/// `K` rows with gaps `λ_i - λ_{i+1} = 2 η_i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StaircaseSpec {
    k: usize,
    eta: Vec<usize>,
}

impl StaircaseSpec {
    pub fn new(k: usize, eta: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("K must be at least 1".into()));
        }
        if eta.len() != k - 1 {
            return Err(Error::InvalidSpec(format!(
                "K = {k} needs {} gap parameters, got {}",
                k - 1,
                eta.len()
            )));
        }
        Ok(Self { k, eta })
    }

    /// All `η_i = 0`.
    pub fn flat(k: usize) -> Result<Self> {
        Self::new(k, vec![0; k.saturating_sub(1)])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    /// `λ̄_i = λ_i - λ_K`, so the last entry is 0.
    pub fn lambda_bar(&self) -> Vec<i64> {
        let mut bar = vec![0i64; self.k];
        for i in (0..self.k - 1).rev() {
            bar[i] = bar[i + 1] + 2 * self.eta[i] as i64 + 1;
        }
        bar
    }

    /// The shape with last row `last`.
    pub fn partition_with_last_row(&self, last: usize) -> Result<Partition> {
        if last == 0 {
            return Err(Error::InvalidSpec("last row must be positive".into()));
        }
        Partition::new(
            self.lambda_bar()
                .iter()
                .map(|&b| b as usize + last)
                .collect(),
        )
    }

    /// The shape with `size` boxes, if the gaps allow one.
    pub fn partition_of_size(&self, size: usize) -> Result<Partition> {
        let base: usize = self.lambda_bar().iter().map(|&b| b as usize).sum();
        if size <= base || !(size - base).is_multiple_of(self.k) {
            return Err(Error::InvalidSpec(format!(
                "no {}-row shape with gaps {:?} has {size} boxes",
                self.k, self.eta
            )));
        }
        self.partition_with_last_row((size - base) / self.k)
    }
}

/// Half-lengths `δ_i` of the horizontal strips removed from each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector {
    delta: Vec<usize>,
}

impl DeltaVector {
    pub fn new(delta: Vec<usize>) -> Self {
        Self { delta }
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn r(&self) -> usize {
        self.delta.iter().sum()
    }

    /// `δ_i <= δ_{i+1} + η_i` for every `i`.
    pub fn satisfies(&self, spec: &StaircaseSpec) -> bool {
        self.delta.len() == spec.k
            && (0..spec.k - 1).all(|i| self.delta[i] <= self.delta[i + 1] + spec.eta[i])
    }

    /// Every vector with sum `r` obeying the gap constraint, in lexicographic order.
    pub fn enumerate(spec: &StaircaseSpec, r: usize) -> Vec<DeltaVector> {
        let mut out = Vec::new();
        let mut current = vec![0; spec.k];
        compositions(spec.k, r, 0, &mut current, &mut |d| {
            let v = DeltaVector::new(d.to_vec());
            if v.satisfies(spec) {
                out.push(v);
            }
        });
        out
    }

    /// Every vector of length `k` with sum `r`, constraint ignored.
    pub fn all(k: usize, r: usize) -> Vec<DeltaVector> {
        let mut out = Vec::new();
        let mut current = vec![0; k];
        compositions(k, r, 0, &mut current, &mut |d| {
            out.push(DeltaVector::new(d.to_vec()))
        });
        out
    }
}

fn compositions(
    k: usize,
    left: usize,
    i: usize,
    current: &mut [usize],
    emit: &mut impl FnMut(&[usize]),
) {
    if i + 1 == k {
        current[i] = left;
        emit(current);
        return;
    }
    for d in 0..=left {
        current[i] = d;
        compositions(k, left - d, i + 1, current, emit);
    }
}

/// How the denominator `Π_{i<j}(λ̄_i - λ̄_j - i + j)` enters the staircase sum:
/// as written, or with each factor replaced by its factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenominatorVariant {
    Plain,
    Factorial,
}

impl DenominatorVariant {
    pub const ALL: [DenominatorVariant; 2] =
        [DenominatorVariant::Plain, DenominatorVariant::Factorial];

    pub fn name(self) -> &'static str {
        match self {
            DenominatorVariant::Plain => "plain",
            DenominatorVariant::Factorial => "factorial",
        }
    }
}

/// Term of the staircase sum for one `δ`, without the leading `r!`.
pub fn staircase_term(
    spec: &StaircaseSpec,
    delta: &DeltaVector,
    variant: DenominatorVariant,
) -> BigRational {
    let k = spec.k;
    let bar = spec.lambda_bar();
    let d: Vec<i64> = delta.delta.iter().map(|&x| x as i64).collect();
    assert_eq!(d.len(), k, "delta vector length differs from K");
    let matrix: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    // i and j are 0-based; the offset j - i is unchanged
                    let twice = bar[i] - bar[j] - i as i64 + j as i64;
                    debug_assert_eq!(twice % 2, 0);
                    inverse_factorial(d[j] + twice / 2)
                })
                .collect()
        })
        .collect();
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for i in 0..k {
        for j in i + 1..k {
            let gap = bar[i] - bar[j] - i as i64 + j as i64;
            numer *= gap - 2 * d[i] + 2 * d[j];
            denom *= match variant {
                DenominatorVariant::Plain => BigInt::from(gap),
                DenominatorVariant::Factorial => factorial(gap as u64),
            };
        }
    }
    determinant(matrix) * BigRational::new(numer, denom)
}

/// `r! Σ_δ det(1/(δ_j + (λ̄_i - λ̄_j - i + j)/2)!) Π_{i<j}(λ̄_i - λ̄_j - 2δ_i + 2δ_j - i + j)
/// / Π_{i<j} D_{ij}` over admissible `δ` with `Σ δ_i = r`, where `D_{ij}` is
/// `λ̄_i - λ̄_j - i + j` or its factorial according to `variant`.
/// The plain variant equals `K^r`.
pub fn staircase_lhs(spec: &StaircaseSpec, r: usize, variant: DenominatorVariant) -> BigRational {
    sum_terms(spec, DeltaVector::enumerate(spec, r), r, variant)
}

/// As [`staircase_lhs`] but summing over every `δ`, ignoring the gap constraint.
pub fn staircase_lhs_unconstrained(
    spec: &StaircaseSpec,
    r: usize,
    variant: DenominatorVariant,
) -> BigRational {
    sum_terms(spec, DeltaVector::all(spec.k, r), r, variant)
}

fn sum_terms(
    spec: &StaircaseSpec,
    deltas: Vec<DeltaVector>,
    r: usize,
    variant: DenominatorVariant,
) -> BigRational {
    let total = deltas.iter().fold(BigRational::zero(), |acc, d| {
        acc + staircase_term(spec, d, variant)
    });
    total * integer(factorial(r as u64))
}

/// `(r!/Π(i-1)!) Σ Π_{i<j}(δ_j - δ_i + j - i)^2 / Π(δ_i + i - 1)!` over
/// `0 <= δ_1 <= ... <= δ_K` with `Σ δ_i = r`; equals `K^r`.
pub fn eta_zero_lhs(k: usize, r: usize) -> Result<BigRational> {
    let spec = StaircaseSpec::flat(k)?;
    let mut total = BigRational::zero();
    for delta in DeltaVector::enumerate(&spec, r) {
        let d = delta.delta();
        let mut numer = BigInt::one();
        let mut term = BigRational::one();
        for i in 0..k {
            for j in i + 1..k {
                let x = BigInt::from((d[j] + j) as i64 - (d[i] + i) as i64);
                numer *= &x * &x;
            }
            term *= inverse_factorial((d[i] + i) as i64);
        }
        total += term * integer(numer);
    }
    let prefactor = (0..k).fold(integer(factorial(r as u64)), |acc, i| {
        acc * inverse_factorial(i as i64)
    });
    Ok(total * prefactor)
}

/// `r! Σ_{q=0}^{⌊r/2⌋} (r - 2q + 1)^2 / (q! (r - q + 1)!)`; equals `2^r`.
pub fn k2_series(r: usize) -> BigRational {
    let r = r as i64;
    let sum = (0..=r / 2).fold(BigRational::zero(), |acc, q| {
        let sq = (r - 2 * q + 1) * (r - 2 * q + 1);
        acc + integer(sq) * inverse_factorial(q) * inverse_factorial(r - q + 1)
    });
    sum * integer(factorial(r as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub size: usize,
    pub shape: Partition,
    pub ratio: BigRational,
    /// `ratio - K^{-r}`.
    pub deviation: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTable {
    pub rows: Vec<ProbeRow>,
    /// `|deviation|` never grows along the sizes, and strictly shrinks while nonzero.
    pub monotone: bool,
}

/// Exact character ratios `χ(1^{N-2r} 2^r)/χ(e)` for the shapes of the given
/// sizes `N`, compared with the limit `K^{-r}`.
pub fn mn_convergence_probe(spec: &StaircaseSpec, r: usize, sizes: &[usize]) -> Result<ProbeTable> {
    let limit = BigRational::new(BigInt::one(), BigInt::from(spec.k).pow(r as u32));
    let rows = sizes
        .iter()
        .map(|&size| {
            let shape = spec.partition_of_size(size)?;
            let ratio = ratio_mn(&shape, r)?;
            let deviation = &ratio - &limit;
            Ok(ProbeRow {
                size,
                shape,
                ratio,
                deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = rows.windows(2).all(|w| {
        let (a, b) = (w[0].deviation.abs(), w[1].deviation.abs());
        if a.is_zero() {
            b.is_zero()
        } else {
            b < a
        }
    });
    Ok(ProbeTable { rows, monotone })
}
