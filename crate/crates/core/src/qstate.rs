//! Dense complex multipartite state algebra.
//!
//! States and density matrices carry an ordered list of labeled subsystems.
//! Flat indices are row-major over that order (the first system is the most
//! significant digit), matching the Kronecker-product convention of
//! `nalgebra::DMatrix::kronecker`. Partial traces preserve the original
//! system order of the kept labels regardless of the order they are asked in.
//!
//! All entropies are in bits. Eigenvalues in `[-1e-10, 0)` are clamped to
//! zero (Hermitian eigensolver noise); anything more negative is an error.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::exec::reduce_indexed;
use crate::subsets;
use crate::tolerance::{
    DENSE_DIM_MAX, EIG_NEG_TOL, HERMITIAN_TOL, NORM_TOL, SUBSET_ENUM_MAX, TRACE_TOL,
};

pub type C64 = Complex<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),
    #[error("subsystem dimensions must be at least 1")]
    ZeroDimension,
    #[error("amplitude count {got} does not match total dimension {want}")]
    AmplitudeCount { got: usize, want: usize },
    #[error("state norm deviates from 1 by {0:.3e}")]
    NormNotOne(f64),
    #[error("matrix is {rows}x{cols}, expected square of size {want}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        want: usize,
    },
    #[error("matrix deviates from Hermitian by {0:.3e}")]
    NonHermitianInput(f64),
    #[error("trace deviates from 1 by {0:.3e}")]
    TraceNotOne(f64),
    #[error("eigenvalue {0:.3e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),
    #[error("blocks overlap on label `{0}`")]
    OverlappingBlocks(String),
    #[error("total dimension {got} exceeds the dense cap {cap}")]
    DimensionBudgetExceeded { got: usize, cap: usize },
    #[error("{subsets} subsets of size {block} exceed the enumeration budget")]
    BudgetExceeded { subsets: u64, block: usize },
    #[error("block size {block} is invalid for {n} systems")]
    BadBlockSize { block: usize, n: usize },
    #[error("label count {got} does not match system count {want}")]
    LabelCount { got: usize, want: usize },
}

/// One labeled tensor factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

fn check_systems(systems: &[(&str, usize)]) -> Result<Vec<Subsystem>, StateError> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(systems.len());
    for &(label, dim) in systems {
        if dim == 0 {
            return Err(StateError::ZeroDimension);
        }
        if !seen.insert(label.to_string()) {
            return Err(StateError::DuplicateLabel(label.to_string()));
        }
        out.push(Subsystem {
            label: label.to_string(),
            dim,
        });
    }
    Ok(out)
}

fn total_dim(systems: &[Subsystem]) -> usize {
    systems.iter().map(|s| s.dim).product()
}

/// Positions (in system order) of the requested labels.
fn positions(systems: &[Subsystem], labels: &[&str]) -> Result<Vec<usize>, StateError> {
    let mut out = Vec::with_capacity(labels.len());
    for &l in labels {
        let pos = systems
            .iter()
            .position(|s| s.label == l)
            .ok_or_else(|| StateError::UnknownLabel(l.to_string()))?;
        if out.contains(&pos) {
            return Err(StateError::DuplicateLabel(l.to_string()));
        }
        out.push(pos);
    }
    out.sort_unstable();
    Ok(out)
}

/// Per-position flat-index offsets for a split of the systems into `keep`
/// positions and the rest: flat = keep_off[i_keep] + rest_off[i_rest].
struct SplitOffsets {
    keep_dim: usize,
    rest_dim: usize,
    keep_off: Vec<usize>,
    rest_off: Vec<usize>,
}

fn split_offsets(systems: &[Subsystem], keep: &[usize]) -> SplitOffsets {
    let n = systems.len();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * systems[i + 1].dim;
    }
    let in_keep: Vec<bool> = {
        let mut m = vec![false; n];
        for &p in keep {
            m[p] = true;
        }
        m
    };
    let build = |positions: Vec<usize>| -> (usize, Vec<usize>) {
        let dims: Vec<usize> = positions.iter().map(|&p| systems[p].dim).collect();
        let total: usize = dims.iter().product();
        let mut offsets = vec![0usize; total];
        for (flat, off) in offsets.iter_mut().enumerate() {
            let mut rem = flat;
            let mut acc = 0usize;
            for (axis, &p) in positions.iter().enumerate().rev() {
                let d = dims[axis];
                acc += (rem % d) * strides[p];
                rem /= d;
            }
            *off = acc;
        }
        (total, offsets)
    };
    let keep_positions: Vec<usize> = (0..n).filter(|i| in_keep[*i]).collect();
    let rest_positions: Vec<usize> = (0..n).filter(|i| !in_keep[*i]).collect();
    let (keep_dim, keep_off) = build(keep_positions);
    let (rest_dim, rest_off) = build(rest_positions);
    SplitOffsets {
        keep_dim,
        rest_dim,
        keep_off,
        rest_off,
    }
}

/// A pure state over an ordered list of labeled subsystems.
#[derive(Debug, Clone)]
pub struct TensorState {
    amps: DVector<C64>,
    systems: Vec<Subsystem>,
}

impl TensorState {
    /// Validates normalization, label uniqueness, and the dense-dimension cap.
    pub fn new(amplitudes: Vec<C64>, systems: &[(&str, usize)]) -> Result<Self, StateError> {
        let systems = check_systems(systems)?;
        let dim = total_dim(&systems);
        if dim > DENSE_DIM_MAX {
            return Err(StateError::DimensionBudgetExceeded {
                got: dim,
                cap: DENSE_DIM_MAX,
            });
        }
        if amplitudes.len() != dim {
            return Err(StateError::AmplitudeCount {
                got: amplitudes.len(),
                want: dim,
            });
        }
        let amps = DVector::from_vec(amplitudes);
        let norm_dev = (amps.norm() - 1.0).abs();
        if norm_dev > NORM_TOL {
            return Err(StateError::NormNotOne(norm_dev));
        }
        Ok(TensorState { amps, systems })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn systems(&self) -> &[Subsystem] {
        &self.systems
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amps.as_slice()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.systems.iter().map(|s| s.label.as_str()).collect()
    }

    /// Replace all labels at once (dimension layout unchanged).
    pub fn with_labels(mut self, labels: &[&str]) -> Result<Self, StateError> {
        if labels.len() != self.systems.len() {
            return Err(StateError::LabelCount {
                got: labels.len(),
                want: self.systems.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &l in labels {
            if !seen.insert(l) {
                return Err(StateError::DuplicateLabel(l.to_string()));
            }
        }
        for (s, &l) in self.systems.iter_mut().zip(labels) {
            s.label = l.to_string();
        }
        Ok(self)
    }

    /// Marginal density matrix on `keep`, original system order preserved.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix, StateError> {
        let keep_pos = positions(&self.systems, keep)?;
        let split = split_offsets(&self.systems, &keep_pos);
        // Reshape into A[keep, rest]; the marginal is A A†.
        let mut a = DMatrix::<C64>::zeros(split.keep_dim, split.rest_dim);
        for (ik, &ko) in split.keep_off.iter().enumerate() {
            for (ir, &ro) in split.rest_off.iter().enumerate() {
                a[(ik, ir)] = self.amps[ko + ro];
            }
        }
        let mat = &a * a.adjoint();
        let kept: Vec<Subsystem> = keep_pos.iter().map(|&p| self.systems[p].clone()).collect();
        Ok(DensityMatrix { mat, systems: kept })
    }

    /// Entropy (bits) of the marginal on `labels`.
    pub fn subsystem_entropy(&self, labels: &[&str]) -> Result<f64, StateError> {
        self.partial_trace(labels)?.entropy()
    }

    /// The rank-one density matrix of this state over all systems.
    pub fn to_density(&self) -> DensityMatrix {
        let mat = &self.amps * self.amps.adjoint();
        DensityMatrix {
            mat,
            systems: self.systems.clone(),
        }
    }
}

/// A Hermitian, trace-one, positive-semidefinite matrix over labeled systems.
///
/// Hermiticity and trace are validated at construction; positivity is
/// enforced when a spectrum is taken (eigensolver noise down to `-1e-10` is
/// clamped, anything lower errors).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: DMatrix<C64>,
    systems: Vec<Subsystem>,
}

impl DensityMatrix {
    pub fn new(matrix: DMatrix<C64>, systems: &[(&str, usize)]) -> Result<Self, StateError> {
        let systems = check_systems(systems)?;
        let dim = total_dim(&systems);
        if dim > DENSE_DIM_MAX {
            return Err(StateError::DimensionBudgetExceeded {
                got: dim,
                cap: DENSE_DIM_MAX,
            });
        }
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(StateError::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                want: dim,
            });
        }
        let herm_dev = (&matrix - matrix.adjoint()).map(|z| z.norm()).max();
        if herm_dev > HERMITIAN_TOL {
            return Err(StateError::NonHermitianInput(herm_dev));
        }
        let trace_dev = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if trace_dev > TRACE_TOL {
            return Err(StateError::TraceNotOne(trace_dev));
        }
        Ok(DensityMatrix {
            mat: matrix,
            systems,
        })
    }

    pub(crate) fn new_unchecked(mat: DMatrix<C64>, systems: Vec<Subsystem>) -> Self {
        DensityMatrix { mat, systems }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn systems(&self) -> &[Subsystem] {
        &self.systems
    }

    pub fn labels(&self) -> Vec<&str> {
        self.systems.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Result<Self, StateError> {
        if labels.len() != self.systems.len() {
            return Err(StateError::LabelCount {
                got: labels.len(),
                want: self.systems.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &l in labels {
            if !seen.insert(l) {
                return Err(StateError::DuplicateLabel(l.to_string()));
            }
        }
        for (s, &l) in self.systems.iter_mut().zip(labels) {
            s.label = l.to_string();
        }
        Ok(self)
    }

    /// Marginal on `keep`, original system order preserved, trace preserved.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix, StateError> {
        let keep_pos = positions(&self.systems, keep)?;
        let split = split_offsets(&self.systems, &keep_pos);
        let mut out = DMatrix::<C64>::zeros(split.keep_dim, split.keep_dim);
        for (i, &ro_i) in split.keep_off.iter().enumerate() {
            for (j, &ro_j) in split.keep_off.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &t in &split.rest_off {
                    acc += self.mat[(ro_i + t, ro_j + t)];
                }
                out[(i, j)] = acc;
            }
        }
        let kept: Vec<Subsystem> = keep_pos.iter().map(|&p| self.systems[p].clone()).collect();
        Ok(DensityMatrix {
            mat: out,
            systems: kept,
        })
    }

    /// Eigenvalues clamped to [0, 1]; errors if one is negative beyond
    /// `EIG_NEG_TOL`.
    pub fn spectrum(&self) -> Result<Vec<f64>, StateError> {
        let eigs = self.mat.clone().symmetric_eigenvalues();
        let mut out = Vec::with_capacity(eigs.len());
        for &l in eigs.iter() {
            if l < -EIG_NEG_TOL {
                return Err(StateError::NegativeEigenvalue(l));
            }
            out.push(l.clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// Von Neumann entropy in bits, with 0·log 0 := 0.
    pub fn entropy(&self) -> Result<f64, StateError> {
        let spectrum = self.spectrum()?;
        Ok(entropy_of_spectrum(&spectrum))
    }

    /// S(block | given) = S(block ∪ given) − S(given), in bits.
    pub fn conditional_entropy(&self, block: &[&str], given: &[&str]) -> Result<f64, StateError> {
        for b in block {
            if given.contains(b) {
                return Err(StateError::OverlappingBlocks(b.to_string()));
            }
        }
        let joint: Vec<&str> = block.iter().chain(given.iter()).copied().collect();
        let s_joint = self.partial_trace(&joint)?.entropy()?;
        let s_given = if given.is_empty() {
            0.0
        } else {
            self.partial_trace(given)?.entropy()?
        };
        Ok(s_joint - s_given)
    }

    /// I(a : b) = S(a) + S(b) − S(ab), in bits.
    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<f64, StateError> {
        for x in a {
            if b.contains(x) {
                return Err(StateError::OverlappingBlocks(x.to_string()));
            }
        }
        let s_a = self.partial_trace(a)?.entropy()?;
        let s_b = self.partial_trace(b)?.entropy()?;
        let joint: Vec<&str> = a.iter().chain(b.iter()).copied().collect();
        let s_ab = self.partial_trace(&joint)?.entropy()?;
        Ok(s_a + s_b - s_ab)
    }
}

pub(crate) fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// An entropy value together with the blocks it refers to.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyReport {
    /// Value in bits.
    pub value: f64,
    pub block: Vec<String>,
    pub given: Option<Vec<String>>,
}

/// Labeled entropy S(block) or S(block | given), with the type's range
/// invariants enforced: an unconditioned entropy is nonnegative and any
/// value is bounded by log2 of the block dimension.
pub fn entropy_report(
    dm: &DensityMatrix,
    block: &[&str],
    given: Option<&[&str]>,
) -> Result<EntropyReport, StateError> {
    let value = match given {
        Some(g) => dm.conditional_entropy(block, g)?,
        None => dm.partial_trace(block)?.entropy()?,
    };
    let block_dim: usize = positions(&dm.systems, block)?
        .iter()
        .map(|&p| dm.systems[p].dim)
        .product();
    let cap = (block_dim as f64).log2();
    debug_assert!(value.abs() <= cap + EIG_NEG_TOL.max(1e-9));
    if given.is_none() {
        debug_assert!(value >= -1e-9);
    }
    Ok(EntropyReport {
        value,
        block: block.iter().map(|s| s.to_string()).collect(),
        given: given.map(|g| g.iter().map(|s| s.to_string()).collect()),
    })
}

/// Average entropy per system of a random size-`block_size` block:
/// (1/block_size) · E_{|J|=block_size} S(X_J), the exact mean over all
/// subsets of the systems of `dm`.
pub fn avg_block_entropy(dm: &DensityMatrix, block_size: usize) -> Result<f64, StateError> {
    avg_block_entropy_impl(dm, block_size, true)
}

/// Sequential variant of [`avg_block_entropy`].
pub fn avg_block_entropy_seq(dm: &DensityMatrix, block_size: usize) -> Result<f64, StateError> {
    avg_block_entropy_impl(dm, block_size, false)
}

fn avg_block_entropy_impl(
    dm: &DensityMatrix,
    block_size: usize,
    par: bool,
) -> Result<f64, StateError> {
    let n = dm.systems.len();
    if block_size == 0 || block_size > n {
        return Err(StateError::BadBlockSize {
            block: block_size,
            n,
        });
    }
    let count = subsets::count(n, block_size);
    if count > SUBSET_ENUM_MAX {
        return Err(StateError::BudgetExceeded {
            subsets: count,
            block: block_size,
        });
    }
    let labels = dm.labels();
    let blocks = subsets::enumerate(n, block_size);
    let sum = reduce_indexed(
        par,
        blocks.len(),
        |i| {
            let keep: Vec<&str> = blocks[i].iter().map(|&p| labels[p]).collect();
            dm.partial_trace(&keep).and_then(|m| m.entropy())
        },
        || Ok(0.0),
        |a, b| match (a, b) {
            (Ok(x), Ok(y)) => Ok(x + y),
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    )?;
    Ok(sum / (count as f64 * block_size as f64))
}

fn chacha(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// One standard complex Gaussian entry (Box-Muller on the rng's uniforms,
/// keeping the determinism contract inside this crate).
fn complex_gaussian(rng: &mut ChaCha20Rng) -> C64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    C64::new(r * theta.cos(), r * theta.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state on systems labeled `X1..Xn`, deterministic per seed.
pub fn random_pure_state(dims: &[usize], seed: u64) -> Result<TensorState, StateError> {
    let labels: Vec<String> = (1..=dims.len()).map(|i| format!("X{i}")).collect();
    let pairs: Vec<(&str, usize)> = labels
        .iter()
        .map(|l| l.as_str())
        .zip(dims.iter().copied())
        .collect();
    random_pure_state_labeled(&pairs, seed)
}

/// Haar-random pure state with explicit labels.
pub fn random_pure_state_labeled(
    systems: &[(&str, usize)],
    seed: u64,
) -> Result<TensorState, StateError> {
    let checked = check_systems(systems)?;
    let dim = total_dim(&checked);
    if dim > DENSE_DIM_MAX {
        return Err(StateError::DimensionBudgetExceeded {
            got: dim,
            cap: DENSE_DIM_MAX,
        });
    }
    let mut rng = chacha(seed);
    let mut amps: Vec<C64> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    TensorState::new(amps, systems)
}

/// Random density on systems `X1..Xn`: the ancilla-traced marginal of a
/// Haar-random pure state on dims × ancilla_dim. Deterministic per seed.
pub fn random_density(
    dims: &[usize],
    ancilla_dim: usize,
    seed: u64,
) -> Result<DensityMatrix, StateError> {
    let mut systems: Vec<(String, usize)> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| (format!("X{}", i + 1), d))
        .collect();
    systems.push(("_anc".to_string(), ancilla_dim));
    let pairs: Vec<(&str, usize)> = systems.iter().map(|(l, d)| (l.as_str(), *d)).collect();
    let pure = random_pure_state_labeled(&pairs, seed)?;
    let keep: Vec<&str> = pairs[..dims.len()].iter().map(|(l, _)| *l).collect();
    pure.partial_trace(&keep)
}

/// Trace distance (1/2)·‖a − b‖₁ between two same-shape density matrices.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, StateError> {
    if a.dim() != b.dim() {
        return Err(StateError::MatrixShape {
            rows: b.dim(),
            cols: b.dim(),
            want: a.dim(),
        });
    }
    let diff = &a.mat - &b.mat;
    let eigs = diff.symmetric_eigenvalues();
    Ok(0.5 * eigs.iter().map(|l| l.abs()).sum::<f64>())
}

/// The maximally mixed density I/D on the given systems.
pub fn maximally_mixed(systems: &[(&str, usize)]) -> Result<DensityMatrix, StateError> {
    let checked = check_systems(systems)?;
    let dim = total_dim(&checked);
    let mat = DMatrix::<C64>::identity(dim, dim) / C64::new(dim as f64, 0.0);
    Ok(DensityMatrix {
        mat,
        systems: checked,
    })
}

/// The maximally entangled pair Φ_d on systems A, B.
pub fn bell_state(dim: usize) -> TensorState {
    let mut amps = vec![C64::new(0.0, 0.0); dim * dim];
    let a = (dim as f64).sqrt().recip();
    for i in 0..dim {
        amps[i * dim + i] = C64::new(a, 0.0);
    }
    TensorState::new(amps, &[("A", dim), ("B", dim)]).expect("valid by construction")
}

/// The n-qubit GHZ state on systems X1..Xn.
pub fn ghz(n: usize) -> TensorState {
    let dim = 1usize << n;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    let a = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = C64::new(a, 0.0);
    amps[dim - 1] = C64::new(a, 0.0);
    let labels: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let pairs: Vec<(&str, usize)> = labels.iter().map(|l| (l.as_str(), 2)).collect();
    TensorState::new(amps, &pairs).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let bell = bell_state(2);
        let rho_a = bell.partial_trace(&["A"]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert_relative_eq!(rho_a.matrix()[(i, j)].re, want, epsilon = 1e-12);
                assert_relative_eq!(rho_a.matrix()[(i, j)].im, 0.0, epsilon = 1e-12);
            }
        }
        assert_relative_eq!(rho_a.entropy().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_state_marginal_is_pure() {
        let amps = vec![c(1.0), c(0.0), c(0.0), c(0.0)]; // |0>|0>
        let st = TensorState::new(amps, &[("A", 2), ("B", 2)]).unwrap();
        let rho_a = st.partial_trace(&["A"]).unwrap();
        assert_relative_eq!(rho_a.matrix()[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rho_a.entropy().unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ghz_two_body_marginal() {
        // direct amplitude oracle: (|00><00| + |11><11|)/2
        let g = ghz(3);
        let m = g.partial_trace(&["X1", "X2"]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i == 0 && j == 0) || (i == 3 && j == 3) {
                    0.5
                } else {
                    0.0
                };
                assert_relative_eq!(m.matrix()[(i, j)].re, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_keeps_original_order() {
        // order of requested labels must not matter
        let st = random_pure_state(&[2, 3, 2], 11).unwrap();
        let a = st.partial_trace(&["X1", "X3"]).unwrap();
        let b = st.partial_trace(&["X3", "X1"]).unwrap();
        assert_eq!(a.labels(), vec!["X1", "X3"]);
        assert_eq!(b.labels(), vec!["X1", "X3"]);
        assert!((a.matrix() - b.matrix()).map(|z| z.norm()).max() < 1e-15);
    }

    #[test]
    fn entropy_examples() {
        // maximally mixed on D levels
        let mm = maximally_mixed(&[("A", 8)]).unwrap();
        assert_relative_eq!(mm.entropy().unwrap(), 3.0, epsilon = 1e-12);

        // diag(3/4, 1/4): binary entropy evaluated independently
        let mat = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.75), c(0.25)]));
        let dm = DensityMatrix::new(mat, &[("A", 2)]).unwrap();
        let h = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert_relative_eq!(dm.entropy().unwrap(), h, epsilon = 1e-12);
        assert_relative_eq!(h, 0.8112781244591328, epsilon = 1e-12);
    }

    #[test]
    fn density_validation_errors() {
        let mut mat = DMatrix::<C64>::identity(2, 2) * c(0.5);
        mat[(0, 1)] = C64::new(0.3, 0.1);
        assert!(matches!(
            DensityMatrix::new(mat, &[("A", 2)]),
            Err(StateError::NonHermitianInput(_))
        ));

        let mat = DMatrix::<C64>::identity(2, 2);
        assert!(matches!(
            DensityMatrix::new(mat, &[("A", 2)]),
            Err(StateError::TraceNotOne(_))
        ));

        let mat = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.5), c(-0.5)]));
        let dm = DensityMatrix::new(mat, &[("A", 2)]).unwrap();
        assert!(matches!(
            dm.entropy(),
            Err(StateError::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn conditional_entropy_examples() {
        // Bell: S(A|B) = -1
        let bell = bell_state(2).to_density();
        assert_relative_eq!(
            bell.conditional_entropy(&["A"], &["B"]).unwrap(),
            -1.0,
            epsilon = 1e-9
        );

        // product of maximally mixed qubits: S(A|B) = 1
        let mm = maximally_mixed(&[("A", 2), ("B", 2)]).unwrap();
        assert_relative_eq!(
            mm.conditional_entropy(&["A"], &["B"]).unwrap(),
            1.0,
            epsilon = 1e-9
        );

        // GHZ3: S(X1|X2) = 0
        let g = ghz(3).to_density();
        assert_relative_eq!(
            g.conditional_entropy(&["X1"], &["X2"]).unwrap(),
            0.0,
            epsilon = 1e-9
        );

        assert!(matches!(
            g.conditional_entropy(&["X1"], &["X1"]),
            Err(StateError::OverlappingBlocks(_))
        ));
    }

    #[test]
    fn mutual_information_examples() {
        let bell = bell_state(2).to_density();
        assert_relative_eq!(
            bell.mutual_information(&["A"], &["B"]).unwrap(),
            2.0,
            epsilon = 1e-9
        );

        let amps = vec![c(1.0), c(0.0), c(0.0), c(0.0)];
        let prod = TensorState::new(amps, &[("A", 2), ("B", 2)])
            .unwrap()
            .to_density();
        assert_relative_eq!(
            prod.mutual_information(&["A"], &["B"]).unwrap(),
            0.0,
            epsilon = 1e-9
        );

        let g = ghz(3).to_density();
        assert_relative_eq!(
            g.mutual_information(&["X1"], &["X2"]).unwrap(),
            1.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn avg_block_entropy_trivial_cases() {
        // product of pure qudits: 0
        let amps = vec![c(1.0), c(0.0), c(0.0), c(0.0)];
        let prod = TensorState::new(amps, &[("X1", 2), ("X2", 2)])
            .unwrap()
            .to_density();
        assert_relative_eq!(avg_block_entropy(&prod, 1).unwrap(), 0.0, epsilon = 1e-12);

        // maximally mixed qubits: 1 per system at any block size
        let mm = maximally_mixed(&[("X1", 2), ("X2", 2), ("X3", 2)]).unwrap();
        for b in 1..=3 {
            assert_relative_eq!(avg_block_entropy(&mm, b).unwrap(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(avg_block_entropy_seq(&mm, b).unwrap(), 1.0, epsilon = 1e-12);
        }

        assert!(matches!(
            avg_block_entropy(&mm, 0),
            Err(StateError::BadBlockSize { .. })
        ));
        assert!(matches!(
            avg_block_entropy(&mm, 4),
            Err(StateError::BadBlockSize { .. })
        ));
    }

    #[test]
    fn random_state_determinism_and_norm() {
        let a = random_pure_state(&[2, 2], 7).unwrap();
        let b = random_pure_state(&[2, 2], 7).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes()); // bit-for-bit

        let c_state = random_pure_state(&[2, 2], 8).unwrap();
        assert_ne!(a.amplitudes(), c_state.amplitudes());
        let norm: f64 = c_state.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn random_density_full_rank_over_seeds() {
        for seed in 0..100 {
            let dm = random_density(&[2, 2, 2], 8, seed).unwrap();
            let spec = dm.spectrum().unwrap();
            assert_eq!(spec.len(), 8);
            assert!(
                spec.iter().all(|&l| l > 1e-6),
                "seed {seed} produced a rank-deficient density"
            );
        }
    }

    #[test]
    fn dimension_budget_is_enforced() {
        assert!(matches!(
            random_pure_state(&[2; 15], 0),
            Err(StateError::DimensionBudgetExceeded { .. })
        ));
    }

    #[test]
    fn purification_identity_on_random_states() {
        // S(A) = S(complement) for every subset of a pure state
        let st = random_pure_state(&[2, 3, 2, 2], 42).unwrap();
        let labels = st.labels();
        let n = labels.len();
        for size in 1..n {
            for sub in crate::subsets::enumerate(n, size) {
                let keep: Vec<&str> = sub.iter().map(|&i| labels[i]).collect();
                let comp: Vec<&str> = crate::subsets::complement(n, &sub)
                    .iter()
                    .map(|&i| labels[i])
                    .collect();
                let s1 = st.subsystem_entropy(&keep).unwrap();
                let s2 = st.subsystem_entropy(&comp).unwrap();
                assert_relative_eq!(s1, s2, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn strong_subadditivity_on_random_densities() {
        for seed in 0..40 {
            let dm = random_density(&[2, 2, 2], 8, seed).unwrap();
            let s_ab = dm.partial_trace(&["X1", "X2"]).unwrap().entropy().unwrap();
            let s_bc = dm.partial_trace(&["X2", "X3"]).unwrap().entropy().unwrap();
            let s_abc = dm.entropy().unwrap();
            let s_b = dm.partial_trace(&["X2"]).unwrap().entropy().unwrap();
            assert!(
                s_ab + s_bc - s_abc - s_b >= -1e-9,
                "SSA violated at seed {seed}"
            );
            // subadditivity: mutual information never dips below zero
            let mi = dm.mutual_information(&["X1"], &["X2", "X3"]).unwrap();
            assert!(mi >= -1e-9, "subadditivity violated at seed {seed}");
        }
    }

    #[test]
    fn entropy_report_carries_blocks_and_invariants() {
        let bell = bell_state(2).to_density();
        let r = entropy_report(&bell, &["A"], None).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-9);
        assert_eq!(r.block, vec!["A"]);
        assert!(r.given.is_none());

        let r = entropy_report(&bell, &["A"], Some(&["B"])).unwrap();
        assert_relative_eq!(r.value, -1.0, epsilon = 1e-9);
        assert_eq!(r.given.as_deref(), Some(&["B".to_string()][..]));

        assert!(matches!(
            entropy_report(&bell, &["Q"], None),
            Err(StateError::UnknownLabel(_))
        ));
    }

    #[test]
    fn entropy_is_unitarily_invariant() {
        // conjugate by Haar-ish unitaries from QRs of Gaussian matrices
        for seed in 90..110u64 {
            let dm = random_density(&[2, 2], 4, seed).unwrap();
            let mut rng = chacha(seed ^ 0xdead);
            let g = DMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
            let qr = g.qr();
            let u = qr.q();
            let rotated = &u * dm.matrix() * u.adjoint();
            let rotated = DensityMatrix::new_unchecked(rotated, dm.systems().to_vec());
            assert_relative_eq!(
                dm.entropy().unwrap(),
                rotated.entropy().unwrap(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn partial_trace_composes() {
        let st = random_pure_state(&[2, 2, 3], 5).unwrap();
        let dm = st.to_density();
        let direct = dm.partial_trace(&["X1"]).unwrap();
        let staged = dm
            .partial_trace(&["X1", "X2"])
            .unwrap()
            .partial_trace(&["X1"])
            .unwrap();
        assert!((direct.matrix() - staged.matrix()).map(|z| z.norm()).max() < 1e-12);
        // trace preserved
        assert_relative_eq!(direct.matrix().trace().re, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn unknown_label_errors() {
        let st = random_pure_state(&[2, 2], 1).unwrap();
        assert!(matches!(
            st.partial_trace(&["Q"]),
            Err(StateError::UnknownLabel(_))
        ));
    }
}
