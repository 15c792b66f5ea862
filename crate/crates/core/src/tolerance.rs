//! Numerical tolerances and enumeration budgets used across the crate.
//!
//! Structural bound comparisons never use these — they are exact rational
//! arithmetic. Everything floating-point compares against one of the
//! constants below, so a verdict's tolerance can always be traced here.

/// State vectors must be normalized to within this L2 deviation.
pub const NORM_TOL: f64 = 1e-12;

/// Maximum absolute entry deviation allowed between a matrix and its adjoint.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Density-matrix traces must equal 1 to within this deviation.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIG_NEG_TOL, 0)` are clamped to 0; anything more
/// negative is treated as an invalid operator, not noise.
pub const EIG_NEG_TOL: f64 = 1e-10;

/// Tolerance for entropic equalities and decoupling verdicts (bits).
pub const EQ_TOL: f64 = 1e-9;

/// A fuzz trial counts as a violation only below this margin (bits).
pub const FUZZ_TOL: f64 = 1e-8;

/// Trace-distance tolerance for the purity bridge (maximally mixed marginals).
pub const PURITY_TOL: f64 = 1e-8;

/// Largest admitted finite-field order p^m.
pub const FIELD_ORDER_MAX: u64 = 1 << 16;

/// Cap on enumerated codeword representatives in the minimum-distance oracle.
pub const WEIGHT_ENUM_MAX: u64 = 1 << 20;

/// Cap on enumerated subsets in block-entropy averages and partition scans.
pub const SUBSET_ENUM_MAX: u64 = 1_000_000;

/// Cap on enumerated Pauli words in the Knill-Laflamme scan.
pub const PAULI_ENUM_MAX: u64 = 1_000_000;

/// Largest dense Hilbert-space dimension for state-level computations.
pub const DENSE_DIM_MAX: usize = 1 << 14;

/// Largest dense dimension q^n for stabilizer projectors.
pub const PROJECTOR_DIM_MAX: usize = 1 << 12;
