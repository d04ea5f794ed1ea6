//! Representation data for the symmetric group and spectra of random
//! linear combinations of its Coxeter generators.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: Young diagram arithmetic, hooklengths, dimensions, contents.
//! - [`tableaux`]: standard Young tableaux in a fixed canonical order.
//! - [`representation`]: Young's orthogonal form of the adjacent transpositions.
//! - [`characters`]: character ratios on `1^{N-2r} 2^r` by closed forms and by
//!   domino (Murnaghan–Nakayama) recursion, skew tableau counts, Plancherel moments.
//! - [`hermite`]: normalized Hermite polynomials and the limiting spectral moments.
//! - [`spectra`]: sampling, eigenvalues, empirical spectral measures, Monte Carlo.
//! - [`identities`]: exact checks of the staircase determinant identities.
//!
//! All combinatorial quantities are exact (`BigInt` / `BigRational`); floating
//! point only appears in matrices and spectra.

pub mod characters;
pub mod eigen;
mod error;
pub mod exact;
pub mod hermite;
pub mod identities;
pub mod partitions;
pub mod representation;
pub mod spectra;
pub mod tableaux;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use characters::{
    plancherel_moments, ratio_mn, ratio_one_transposition, ratio_two_transpositions, skew_count,
    theta_from_profiles, zeta, LimitProfile, PlancherelSummary, SkewShape, ZetaMemo,
};
pub use hermite::{gaussian_raw_moment, hermite, limit_moment, LimitParameters};
pub use identities::{
    eta_zero_lhs, k2_series, mn_convergence_probe, staircase_lhs, DeltaVector, DenominatorVariant,
    StaircaseSpec,
};
pub use partitions::{
    dimension_determinant, hook_data, partitions_of, shape_statistics, HookData, Partition,
    ShapeStatistics,
};
pub use representation::{
    coxeter_audit, represent_word, trace_character, AdjacentGenerator, CoxeterAudit, DenseMatrix,
    YoungOrthogonal, DEFAULT_DIMENSION_CAP,
};
pub use spectra::{
    assemble_matrix, empirical_moment, ks_distance, monte_carlo, sample_coefficients, spectrum,
    GaussianDraw, MomentReport, MonteCarloConfig, SampledMatrix, SpectralMeasure,
};
pub use tableaux::{enumerate_tableaux, StandardTableau, TableauBasis};
