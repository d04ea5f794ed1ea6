//! Random matrices `M = (N-1)^{-1/2} Σ_k Z_k ρ((k, k+1))`, their spectra,
//! and Monte Carlo ensembles of spectral moments.
//!
//! # Random numbers
//!
//! A draw with seed `s` uses `ChaCha20Rng::seed_from_u64(s)` (rand_chacha).
//! Uniforms are `(next_u64() >> 11) * 2^-53`, and standard normals come
//! from the Marsaglia polar method, both variates of each accepted pair
//! used in order, with `libm::log` so results do not depend on the platform
//! math library. Trial `t` of a Monte Carlo run with seed `s` uses the seed
//! [`substream_seed`]`(s, t)`, the `(t + 1)`-th output of a SplitMix64
//! sequence started at `s`; trials are therefore reproducible one by one and
//! independent of execution order.

use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::eigen::symmetric_eigenvalues;
use crate::exact::to_f64;
use crate::hermite::{limit_moment, standard_gaussian_moment, LimitParameters};
use crate::partitions::{shape_statistics, Partition};
use crate::representation::{DenseMatrix, YoungOrthogonal};
use crate::{Error, Result};

/// Default histogram: 81 bins on `[-4.5, 4.5]` plus two overflow bins.
pub const DEFAULT_BINS: usize = 81;
pub const DEFAULT_RANGE: (f64, f64) = (-4.5, 4.5);

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in a run seeded with `seed`.
pub fn substream_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial.wrapping_add(1))))
}

/// Standard normal variates by the polar method on a ChaCha20 stream.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(x) = self.spare.take() {
            return x;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = libm::sqrt(-2.0 * libm::log(s) / s);
                self.spare = Some(v * factor);
                return u * factor;
            }
        }
    }
}

/// The coefficients `Z_1, ..., Z_{N-1}` of one sampled matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianDraw {
    degree: usize,
    seed: u64,
    coefficients: Vec<f64>,
    scaled_sum: f64,
}

impl GaussianDraw {
    /// `N`, the degree of the symmetric group.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `z̄ = (N-1)^{-1/2} Σ Z_k`, itself standard normal.
    pub fn scaled_sum(&self) -> f64 {
        self.scaled_sum
    }
}

pub fn sample_coefficients(degree: usize, seed: u64) -> Result<GaussianDraw> {
    if degree < 2 {
        return Err(Error::DegenerateShape {
            size: degree,
            needed: 2,
        });
    }
    let mut stream = GaussianStream::new(seed);
    let coefficients: Vec<f64> = (0..degree - 1).map(|_| stream.next_normal()).collect();
    let scaled_sum = coefficients.iter().sum::<f64>() / ((degree - 1) as f64).sqrt();
    Ok(GaussianDraw {
        degree,
        seed,
        coefficients,
        scaled_sum,
    })
}

#[derive(Debug, Clone)]
pub struct SampledMatrix {
    shape: Partition,
    draw: GaussianDraw,
    matrix: DenseMatrix,
}

impl SampledMatrix {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn draw(&self) -> &GaussianDraw {
        &self.draw
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// `max(1, max |entry|)`, the scale used by residual tolerances.
    pub fn scale(&self) -> f64 {
        self.matrix.max_abs().max(1.0)
    }
}

/// Builds `M` from the sparse generators in `O((N-1) f)` after zeroing.
pub fn assemble_matrix(rep: &YoungOrthogonal, draw: &GaussianDraw) -> Result<SampledMatrix> {
    if draw.degree != rep.degree() {
        return Err(Error::LengthMismatch {
            expected: rep.degree(),
            actual: draw.degree,
        });
    }
    let f = rep.dim();
    let norm = 1.0 / ((draw.degree - 1) as f64).sqrt();
    let mut matrix = DenseMatrix::zeros(f);
    let data = matrix.as_mut_slice();
    for (g, &z) in rep.generators().iter().zip(&draw.coefficients) {
        let c = z * norm;
        for i in 0..f {
            data[i * f + i] += c * g.diag()[i];
            if let Some((p, w)) = g.partner(i) {
                data[i * f + p] += c * w;
            }
        }
    }
    Ok(SampledMatrix {
        shape: rep.shape().clone(),
        draw: draw.clone(),
        matrix,
    })
}

/// Eigenvalues with weight `1/f` each, plus the residuals of the two
/// spectral identities checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure {
    eigenvalues: Vec<f64>,
    /// `|Σ e_i - trace(M)|`.
    pub trace_residual: f64,
    /// `|Σ e_i^2 - ||M||_F^2|`.
    pub square_residual: f64,
    /// `max(1, max |M_ij|)`.
    pub scale: f64,
}

impl SpectralMeasure {
    /// Sorted ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.eigenvalues.len() as f64
    }

    pub fn into_eigenvalues(self) -> Vec<f64> {
        self.eigenvalues
    }
}

pub fn spectrum(m: &SampledMatrix) -> Result<SpectralMeasure> {
    let f = m.matrix.n();
    let mut work = m.matrix.as_slice().to_vec();
    let eigenvalues = symmetric_eigenvalues(&mut work, f)?;
    let trace_residual = (eigenvalues.iter().sum::<f64>() - m.matrix.trace()).abs();
    let square_residual =
        (eigenvalues.iter().map(|e| e * e).sum::<f64>() - m.matrix.frobenius_squared()).abs();
    Ok(SpectralMeasure {
        eigenvalues,
        trace_residual,
        square_residual,
        scale: m.scale(),
    })
}

/// `∫ x^s Ξ(dx) = (1/f) Σ e_i^s`.
pub fn empirical_moment(xi: &SpectralMeasure, s: usize) -> f64 {
    xi.eigenvalues.iter().map(|e| e.powi(s as i32)).sum::<f64>() / xi.eigenvalues.len() as f64
}

/// Standard normal CDF.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `sample` and
/// the standard normal CDF.
pub fn ks_distance(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(ks_distance_sorted(&sorted))
}

fn ks_distance_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let cdf = standard_normal_cdf(x);
        d.max((i + 1) as f64 / n - cdf).max(cdf - i as f64 / n)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloConfig {
    pub trials: usize,
    pub seed: u64,
    /// Highest moment order tracked.
    pub smax: usize,
    pub bins: usize,
    pub range: (f64, f64),
}

impl MonteCarloConfig {
    pub fn new(trials: usize, seed: u64, smax: usize) -> Self {
        Self {
            trials,
            seed,
            smax,
            bins: DEFAULT_BINS,
            range: DEFAULT_RANGE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    /// `-inf` for the underflow bin.
    pub left: f64,
    /// `+inf` for the overflow bin.
    pub right: f64,
    pub count: u64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub scaled_sum: f64,
    /// `m_0, ..., m_smax`.
    pub moments: Vec<f64>,
    pub scale: f64,
    /// `|m_1 - θ z̄| / scale`.
    pub first_moment_residual: f64,
    /// `|Σ e_i - trace(M)| / scale`.
    pub trace_residual: f64,
    /// `|Σ e_i^2 - ||M||_F^2| / scale`.
    pub square_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub order: usize,
    pub mean: f64,
    /// Standard error of the mean; zero for a single trial.
    pub standard_error: f64,
    pub target: MomentTarget,
    /// Mean over trials of `m_s - limit_moment(s, θ, z̄)`.
    pub limit_gap: f64,
}

/// Expected value of `m_s` at finite `N` when known in closed form,
/// otherwise the moment of the limiting expectation measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTarget {
    pub value: f64,
    pub exact: bool,
}

/// `E[m_s]` over draws: exact for `s <= 4` and every odd `s`, the standard
/// Gaussian moment `(s-1)!!` (limit value) otherwise.
///
/// `E[m_4] = 3 - 2 (N-2)(1 - c_3)/(N-1)^2` with `c_3` the character ratio on
/// a 3-cycle, taken from the trace of `ρ((1,2)) ρ((2,3))`.
pub fn moment_target(rep: &YoungOrthogonal, s: usize) -> Result<MomentTarget> {
    let exact = |value| MomentTarget { value, exact: true };
    Ok(match s {
        _ if s % 2 == 1 => exact(0.0),
        0 | 2 => exact(1.0),
        4 => {
            let n = rep.degree() as f64;
            let c3 = if rep.degree() >= 3 {
                rep.trace_character(&[1, 2])?
            } else {
                1.0
            };
            exact(3.0 - 2.0 * (n - 2.0) * (1.0 - c3) / ((n - 1.0) * (n - 1.0)))
        }
        _ => MomentTarget {
            value: standard_gaussian_moment(s),
            exact: false,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub shape: Partition,
    pub theta: BigRational,
    pub dimension: usize,
    pub config: MonteCarloConfig,
    pub per_trial: Vec<TrialRecord>,
    /// One entry per order `0..=smax`.
    pub estimates: Vec<MomentEstimate>,
    /// Mean over trials of `m_2 - m_1^2`, with target `1 - θ^2`.
    pub conditional_variance: MomentEstimate,
    pub histogram: Vec<HistogramBin>,
    /// KS distance of the pooled eigenvalues to the standard normal.
    pub ks_distance: f64,
}

impl MomentReport {
    pub fn max_first_moment_residual(&self) -> f64 {
        self.per_trial
            .iter()
            .map(|t| t.first_moment_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_trace_residual(&self) -> f64 {
        self.per_trial
            .iter()
            .map(|t| t.trace_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_square_residual(&self) -> f64 {
        self.per_trial
            .iter()
            .map(|t| t.square_residual)
            .fold(0.0, f64::max)
    }
}

fn mean_and_se(values: impl ExactSizeIterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs `config.trials` independent samples for the shape of `rep`.
///
/// Trials run in parallel; the report is assembled in trial order, so it does
/// not depend on scheduling.
pub fn monte_carlo(rep: &YoungOrthogonal, config: &MonteCarloConfig) -> Result<MomentReport> {
    if config.trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    if config.bins == 0
        || config.range.0.partial_cmp(&config.range.1) != Some(std::cmp::Ordering::Less)
    {
        return Err(Error::OutOfRange {
            what: "bins",
            value: config.bins as i64,
            min: 1,
            max: i64::MAX,
        });
    }
    let theta = shape_statistics(rep.shape()).theta_ratio()?;
    let theta_f = to_f64(&theta);
    let smax = config.smax.max(2);

    let outcomes: Vec<(TrialRecord, Vec<f64>)> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| -> Result<(TrialRecord, Vec<f64>)> {
            let seed = substream_seed(config.seed, t);
            let draw = sample_coefficients(rep.degree(), seed)?;
            let m = assemble_matrix(rep, &draw)?;
            let xi = spectrum(&m)?;
            let moments: Vec<f64> = (0..=smax).map(|s| empirical_moment(&xi, s)).collect();
            let scale = xi.scale;
            let record = TrialRecord {
                seed,
                scaled_sum: draw.scaled_sum,
                first_moment_residual: (moments[1] - theta_f * draw.scaled_sum).abs() / scale,
                trace_residual: xi.trace_residual / scale,
                square_residual: xi.square_residual / scale,
                moments,
                scale,
            };
            Ok((record, xi.into_eigenvalues()))
        })
        .collect::<Result<Vec<_>>>()?;

    let (lo, hi) = config.range;
    let width = (hi - lo) / config.bins as f64;
    let mut counts = vec![0u64; config.bins + 2];
    let mut pooled = Vec::with_capacity(config.trials * rep.dim());
    for (_, eigenvalues) in &outcomes {
        for &x in eigenvalues {
            let slot = if x < lo {
                0
            } else if x >= hi {
                config.bins + 1
            } else {
                (((x - lo) / width) as usize).min(config.bins - 1) + 1
            };
            counts[slot] += 1;
        }
        pooled.extend_from_slice(eigenvalues);
    }
    let total = pooled.len() as f64;
    let histogram = counts
        .iter()
        .enumerate()
        .map(|(slot, &count)| {
            let (left, right) = match slot {
                0 => (f64::NEG_INFINITY, lo),
                _ if slot == config.bins + 1 => (hi, f64::INFINITY),
                _ => (lo + (slot - 1) as f64 * width, lo + slot as f64 * width),
            };
            HistogramBin {
                left,
                right,
                count,
                mass: count as f64 / total,
            }
        })
        .collect();
    pooled.sort_by(f64::total_cmp);
    let ks = ks_distance_sorted(&pooled);
    drop(pooled);

    let per_trial: Vec<TrialRecord> = outcomes.into_iter().map(|(r, _)| r).collect();
    let estimates = (0..=config.smax)
        .map(|s| -> Result<MomentEstimate> {
            let (mean, standard_error) = mean_and_se(per_trial.iter().map(|t| t.moments[s]));
            let gap = per_trial
                .iter()
                .map(|t| {
                    let lp = LimitParameters::new(theta.clone(), t.scaled_sum)?;
                    Ok(t.moments[s] - limit_moment(s, &lp))
                })
                .sum::<Result<f64>>()?
                / per_trial.len() as f64;
            Ok(MomentEstimate {
                order: s,
                mean,
                standard_error,
                target: moment_target(rep, s)?,
                limit_gap: gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (cv_mean, cv_se) = mean_and_se(
        per_trial
            .iter()
            .map(|t| t.moments[2] - t.moments[1] * t.moments[1]),
    );
    let conditional_variance = MomentEstimate {
        order: 2,
        mean: cv_mean,
        standard_error: cv_se,
        target: MomentTarget {
            value: 1.0 - theta_f * theta_f,
            exact: true,
        },
        limit_gap: cv_mean - (1.0 - theta_f * theta_f),
    };

    Ok(MomentReport {
        shape: rep.shape().clone(),
        theta,
        dimension: rep.dim(),
        config: config.clone(),
        per_trial,
        estimates,
        conditional_variance,
        histogram,
        ks_distance: ks,
    })
}
