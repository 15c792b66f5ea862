//! Numerical verification of the entropic machinery behind the bounds.
//!
//! Two families of checks live here. The inequality layer evaluates the
//! subset-average entropy lemmas (plain and conditional) on explicit density
//! matrices, with seeded fuzz campaigns over random mixed states; both
//! lemmas are theorems, so any violation beyond tolerance indicates an
//! implementation bug. The code layer checks the decoupling condition
//! I(R : X_J) = 0 over every erasure pattern of a purified code state, feeds
//! the measured block entropies into the entropic Singleton bound, and
//! simulates (at classical + ebit-bookkeeping level) the two protocol
//! constructions that attain the region's corner points: dense coding over a
//! classical MDS code, and the MDS-point teleportation scheme. Teleportation
//! and dense coding are information-theoretically exact primitives, so the
//! simulators track symbols and ebit tallies rather than Hilbert-space
//! vectors; fidelity is 1.0 exactly when classical recovery is exact.

use std::time::{Duration, Instant};
use thiserror::Error;

use crate::bounds::{rat, rate_region, rint, BoundsError, Rat};
use crate::exec::reduce_indexed;
use crate::gf::{erasure_decode, reed_solomon, Field, FieldElem, GfError};
use crate::qstate::{
    self, avg_block_entropy, random_pure_state_labeled, DensityMatrix, StateError, TensorState,
};
use crate::subsets;
use crate::tolerance::{EQ_TOL, FUZZ_TOL, PURITY_TOL, SUBSET_ENUM_MAX};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("block sizes mu = {mu}, m = {m} are invalid for {n} systems")]
    BadBlockSizes { mu: usize, m: usize, n: usize },
    #[error("{subsets} subsets exceed the enumeration budget")]
    SubsetBudget { subsets: u64 },
    #[error("state has no subsystem labeled `{0}`")]
    MissingLabel(String),
    #[error("unknown lemma id {0}; supported: 1, 2")]
    UnknownLemma(u8),
    #[error("distance {d} is invalid for {n} erasable systems")]
    BadDistance { d: u32, n: usize },
    #[error("state is not correctable at d = {d}: worst I(R:X_J) = {worst:.3e} on {pattern:?}")]
    NotCorrectable {
        d: u32,
        worst: f64,
        pattern: Vec<usize>,
    },
    #[error("purity bridge violated: bound tight but sigma_bar = {sigma_bar} < log2 q = {log2q}")]
    PurityBridgeViolated { sigma_bar: f64, log2q: f64 },
    #[error("tight state has a (d-1)-marginal at trace distance {0:.3e} from maximally mixed")]
    MarginalNotMixed(f64),
    #[error("message length {got} does not match code dimension {want}")]
    MessageLength { got: usize, want: usize },
    #[error("message symbol {0} is outside the field")]
    MessageSymbol(u32),
    #[error("erasure position {0} is out of range")]
    ErasurePosition(usize),
    #[error("scheme needs the high-distance regime 2(d-1) ≥ n, got n = {n}, d = {d}")]
    WrongRegime { n: usize, d: u32 },
    #[error("scheme needs n-d+1 even, got {0}")]
    ParityMismatch(usize),
    #[error("decoded message differs from the input")]
    ProtocolMismatch,
    #[error("achieved rate point ({x}, {y}) falls outside the admissible region")]
    PointOutsideRegion { x: Rat, y: Rat },
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// One evaluated inequality: margin = rhs − lhs ≥ 0 when it holds.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Subset-average entropy monotonicity on the systems of `dm`:
/// E_{|I|=m} S(X_I) ≤ (m/μ) E_{|J|=μ} S(X_J), exact averages.
pub fn check_lemma1(dm: &DensityMatrix, m: usize, mu: usize) -> Result<LemmaCheck, VerifyError> {
    let n = dm.systems().len();
    check_block_sizes(n, m, mu)?;
    let avg_m = avg_block_entropy(dm, m)?; // E S(X_I) / m
    let avg_mu = avg_block_entropy(dm, mu)?; // E S(X_J) / μ
    let lhs = m as f64 * avg_m;
    let rhs = m as f64 * avg_mu;
    Ok(LemmaCheck {
        lhs,
        rhs,
        margin: rhs - lhs,
    })
}

/// Conditional version on the non-Y systems of `dm`:
/// E_{|I|=m} S(X_I|Y) ≤ (m/μ) E_{|J|=μ} S(X_J|Y).
pub fn check_lemma2(
    dm: &DensityMatrix,
    y_label: &str,
    m: usize,
    mu: usize,
) -> Result<LemmaCheck, VerifyError> {
    let labels = dm.labels();
    if !labels.contains(&y_label) {
        return Err(VerifyError::MissingLabel(y_label.to_string()));
    }
    let xs: Vec<&str> = labels.iter().copied().filter(|&l| l != y_label).collect();
    let n = xs.len();
    check_block_sizes(n, m, mu)?;
    let s_y = dm.partial_trace(&[y_label])?.entropy()?;

    let avg_cond = |size: usize| -> Result<f64, VerifyError> {
        let blocks = subsets::enumerate(n, size);
        let mut sum = 0.0;
        for block in &blocks {
            let mut keep: Vec<&str> = block.iter().map(|&i| xs[i]).collect();
            keep.push(y_label);
            let s_joint = dm.partial_trace(&keep)?.entropy()?;
            sum += s_joint - s_y;
        }
        Ok(sum / blocks.len() as f64)
    };

    let lhs = avg_cond(m)?;
    let rhs = (m as f64 / mu as f64) * avg_cond(mu)?;
    Ok(LemmaCheck {
        lhs,
        rhs,
        margin: rhs - lhs,
    })
}

fn check_block_sizes(n: usize, m: usize, mu: usize) -> Result<(), VerifyError> {
    if mu == 0 || mu >= m || m > n {
        return Err(VerifyError::BadBlockSizes { mu, m, n });
    }
    for size in [m, mu] {
        let count = subsets::count(n, size);
        if count > SUBSET_ENUM_MAX {
            return Err(VerifyError::SubsetBudget { subsets: count });
        }
    }
    Ok(())
}

/// A fuzz trial that dipped below −FUZZ_TOL.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FuzzViolation {
    pub trial: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub margin: f64,
}

/// Outcome of a fuzz campaign. `violations` is nonempty iff `worst_margin`
/// is below −FUZZ_TOL.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub lemma: u8,
    pub trials: usize,
    /// Minimum margin over all trials; +∞ for an empty campaign.
    pub worst_margin: f64,
    pub violations: Vec<FuzzViolation>,
    pub elapsed: Duration,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Stable text rendering, one line.
    pub fn summary(&self) -> String {
        format!(
            "fuzz lemma={} trials={} worst_margin={:.3e} violations={}",
            self.lemma,
            self.trials,
            self.worst_margin,
            self.violations.len()
        )
    }
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic fuzz campaign for lemma 1 or 2 on random mixed states.
///
/// Trial i derives its own seed from `master_seed`, draws subsystem
/// dimensions with total dimension ≤ min(dim_budget, 512), a full-rank
/// random density (ancilla as large as the state), and random block sizes.
/// Parallel trial order cannot affect the report: margins merge by min and
/// violations are sorted by trial index.
pub fn fuzz(
    lemma: u8,
    trials: usize,
    dim_budget: usize,
    master_seed: u64,
) -> Result<FuzzReport, VerifyError> {
    fuzz_impl(lemma, trials, dim_budget, master_seed, true)
}

/// Sequential variant of [`fuzz`].
pub fn fuzz_seq(
    lemma: u8,
    trials: usize,
    dim_budget: usize,
    master_seed: u64,
) -> Result<FuzzReport, VerifyError> {
    fuzz_impl(lemma, trials, dim_budget, master_seed, false)
}

fn fuzz_impl(
    lemma: u8,
    trials: usize,
    dim_budget: usize,
    master_seed: u64,
    par: bool,
) -> Result<FuzzReport, VerifyError> {
    if !(lemma == 1 || lemma == 2) {
        return Err(VerifyError::UnknownLemma(lemma));
    }
    let start = Instant::now();
    let budget = dim_budget.clamp(8, 512);

    type TrialOut = Result<(f64, Vec<FuzzViolation>), VerifyError>;
    let run_trial = |i: usize| -> TrialOut {
        let seed = splitmix64(master_seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let (margin, dims) = run_lemma_trial(lemma, seed, budget)?;
        let violations = if margin < -FUZZ_TOL {
            vec![FuzzViolation {
                trial: i,
                seed,
                dims,
                margin,
            }]
        } else {
            Vec::new()
        };
        Ok((margin, violations))
    };

    let merged = reduce_indexed(
        par,
        trials,
        run_trial,
        || Ok((f64::INFINITY, Vec::new())),
        |a, b| match (a, b) {
            (Ok((ma, mut va)), Ok((mb, vb))) => {
                va.extend(vb);
                Ok((ma.min(mb), va))
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    );
    let (worst_margin, mut violations) = merged?;
    violations.sort_by_key(|v| v.trial);

    Ok(FuzzReport {
        lemma,
        trials,
        worst_margin,
        violations,
        elapsed: start.elapsed(),
    })
}

fn run_lemma_trial(lemma: u8, seed: u64, budget: usize) -> Result<(f64, Vec<usize>), VerifyError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);

    let (x_dims, y_dim) = loop {
        let n = if lemma == 1 {
            rng.gen_range(3..=4usize)
        } else {
            rng.gen_range(2..=3usize)
        };
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=3usize)).collect();
        let y = if lemma == 2 {
            rng.gen_range(2..=4usize)
        } else {
            1
        };
        let total: usize = dims.iter().product::<usize>() * y;
        if total <= budget && total * total <= crate::tolerance::DENSE_DIM_MAX {
            break (dims, y);
        }
    };
    let n = x_dims.len();
    let mu = rng.gen_range(1..n);
    let m = rng.gen_range(mu + 1..=n);

    let mut systems: Vec<(String, usize)> = x_dims
        .iter()
        .enumerate()
        .map(|(i, &d)| (format!("X{}", i + 1), d))
        .collect();
    if lemma == 2 {
        systems.push(("Y".to_string(), y_dim));
    }
    let total: usize = systems.iter().map(|(_, d)| *d).product();
    systems.push(("_anc".to_string(), total));
    let pairs: Vec<(&str, usize)> = systems.iter().map(|(l, d)| (l.as_str(), *d)).collect();
    let pure = random_pure_state_labeled(&pairs, seed)?;
    let keep: Vec<&str> = pairs[..pairs.len() - 1].iter().map(|(l, _)| *l).collect();
    let dm = pure.partial_trace(&keep)?;

    let check = if lemma == 1 {
        check_lemma1(&dm, m, mu)?
    } else {
        check_lemma2(&dm, "Y", m, mu)?
    };
    let mut dims_out = x_dims;
    if lemma == 2 {
        dims_out.push(y_dim);
    }
    Ok((check.margin, dims_out))
}

/// One erasure pattern's worth of decoupling data.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionCheck {
    /// Erased X indices (0-based), lexicographic order.
    pub pattern: Vec<usize>,
    /// I(R : X_J) in bits.
    pub mutual_information: f64,
    /// S(X_J) in bits.
    pub erased_entropy: f64,
    /// S(X_I) of the complement block, in bits.
    pub kept_entropy: f64,
}

/// Decoupling scan over all (d−1)-subsets of the X systems of a pure state.
#[derive(Debug, Clone)]
pub struct DecouplingReport {
    pub d: u32,
    pub partitions: Vec<PartitionCheck>,
    pub worst_mutual_information: f64,
    pub worst_pattern: Vec<usize>,
    /// Max I(R:X_J) ≤ 1e−9 over all patterns.
    pub correctable: bool,
    /// Average (d−1)-block entropy per system (0 when d = 1).
    pub sigma_bar: f64,
    /// Average (n−d+1)-block entropy per system.
    pub sigma_bar_bar: f64,
    /// S(R) = log2 K in bits.
    pub reference_entropy: f64,
    pub x_count: usize,
}

/// Check the erasure-correctability condition on a pure state with systems
/// R, X1..Xn (any other labels, e.g. B1..Bc, ride along on the decoder
/// side and are never erased): for every |J| = d−1, I(R : X_J) must vanish.
///
/// Global purity is guaranteed by the input type; mixed inputs must be
/// purified by the caller with an explicit ancilla label.
pub fn check_decoupling(state: &TensorState, d: u32) -> Result<DecouplingReport, VerifyError> {
    let labels = state.labels();
    if !labels.contains(&"R") {
        return Err(VerifyError::MissingLabel("R".to_string()));
    }
    let xs: Vec<&str> = labels
        .iter()
        .copied()
        .filter(|l| l.starts_with('X'))
        .collect();
    let n = xs.len();
    if d == 0 || d as usize > n + 1 {
        return Err(VerifyError::BadDistance { d, n });
    }
    let erased = (d - 1) as usize;
    let pattern_count = subsets::count(n, erased);
    if pattern_count > SUBSET_ENUM_MAX {
        return Err(VerifyError::SubsetBudget {
            subsets: pattern_count,
        });
    }
    let s_r = state.subsystem_entropy(&["R"])?;
    let patterns = subsets::enumerate(n, erased);

    let partitions = reduce_indexed(
        true,
        patterns.len(),
        |i| -> Result<Vec<PartitionCheck>, VerifyError> {
            let pattern = &patterns[i];
            let erased_labels: Vec<&str> = pattern.iter().map(|&p| xs[p]).collect();
            let kept_labels: Vec<&str> = subsets::complement(n, pattern)
                .iter()
                .map(|&p| xs[p])
                .collect();
            let s_xj = if erased_labels.is_empty() {
                0.0
            } else {
                state.subsystem_entropy(&erased_labels)?
            };
            let mut r_and_j: Vec<&str> = vec!["R"];
            r_and_j.extend(&erased_labels);
            let s_rxj = state.subsystem_entropy(&r_and_j)?;
            let s_xi = if kept_labels.is_empty() {
                0.0
            } else {
                state.subsystem_entropy(&kept_labels)?
            };
            Ok(vec![PartitionCheck {
                pattern: pattern.clone(),
                mutual_information: s_r + s_xj - s_rxj,
                erased_entropy: s_xj,
                kept_entropy: s_xi,
            }])
        },
        || Ok(Vec::new()),
        |a, b| match (a, b) {
            (Ok(mut va), Ok(vb)) => {
                va.extend(vb);
                Ok(va)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    );
    let mut partitions = partitions?;
    partitions.sort_by(|a, b| a.pattern.cmp(&b.pattern));

    let (mut worst, mut worst_pattern) = (f64::NEG_INFINITY, Vec::new());
    for p in &partitions {
        if p.mutual_information > worst {
            worst = p.mutual_information;
            worst_pattern = p.pattern.clone();
        }
    }
    let count = partitions.len() as f64;
    let sigma_bar = if erased == 0 {
        0.0
    } else {
        partitions.iter().map(|p| p.erased_entropy).sum::<f64>() / count / erased as f64
    };
    let kept = n - erased;
    let sigma_bar_bar = if kept == 0 {
        0.0
    } else {
        partitions.iter().map(|p| p.kept_entropy).sum::<f64>() / count / kept as f64
    };

    Ok(DecouplingReport {
        d,
        correctable: worst <= EQ_TOL,
        partitions,
        worst_mutual_information: worst,
        worst_pattern,
        sigma_bar,
        sigma_bar_bar,
        reference_entropy: s_r,
        x_count: n,
    })
}

/// Entropic Singleton verdict on an explicit correctable state.
#[derive(Debug, Clone)]
pub struct EntropicSingletonReport {
    /// S(R) = log2 K in bits.
    pub reference_entropy: f64,
    pub sigma_bar: f64,
    pub sigma_bar_bar: f64,
    /// max(0, n−2d+2) · σ̄ in bits.
    pub rhs: f64,
    /// rhs − S(R); ≥ −1e−9 when the bound holds.
    pub slack: f64,
    pub tight: bool,
    /// S(R) also saturates the log2 q form (the extremal-parameter case).
    pub extremal: bool,
    /// Worst (d−1)-marginal trace distance from maximally mixed, computed
    /// for extremal states (the purity bridge).
    pub marginal_mixedness: Option<f64>,
    pub decoupling: DecouplingReport,
}

/// Verify S(R) ≤ max(0, n−2d+2)·σ̄ on a purified code state that passes the
/// decoupling scan at distance d.
///
/// For extremal states (S(R) equal to the log2 q form, K > 1) the purity
/// bridge is enforced: σ̄ must reach log2 q and every (d−1)-marginal must be
/// maximally mixed within trace distance 1e−8.
pub fn check_entropic_singleton(
    state: &TensorState,
    d: u32,
) -> Result<EntropicSingletonReport, VerifyError> {
    if d < 2 {
        // the derivation averages over nonempty (d−1)-blocks
        let n = state
            .systems()
            .iter()
            .filter(|s| s.label.starts_with('X'))
            .count();
        return Err(VerifyError::BadDistance { d, n });
    }
    let decoupling = check_decoupling(state, d)?;
    if !decoupling.correctable {
        return Err(VerifyError::NotCorrectable {
            d,
            worst: decoupling.worst_mutual_information,
            pattern: decoupling.worst_pattern.clone(),
        });
    }
    let n = decoupling.x_count as i64;
    let coeff = (n - 2 * (d as i64) + 2).max(0) as f64;
    let s_r = decoupling.reference_entropy;
    let rhs = coeff * decoupling.sigma_bar;
    let slack = rhs - s_r;
    let tight = slack.abs() <= EQ_TOL;

    // per-system log2 q from the X systems (uniform dimension expected)
    let xs: Vec<_> = state
        .systems()
        .iter()
        .filter(|s| s.label.starts_with('X'))
        .collect();
    let q_dim = xs.first().map(|s| s.dim).unwrap_or(2);
    let log2q = (q_dim as f64).log2();
    let extremal = s_r > EQ_TOL && (s_r - coeff * log2q).abs() <= EQ_TOL;

    let marginal_mixedness = if extremal {
        if (decoupling.sigma_bar - log2q).abs() > EQ_TOL {
            return Err(VerifyError::PurityBridgeViolated {
                sigma_bar: decoupling.sigma_bar,
                log2q,
            });
        }
        let erased = (d - 1) as usize;
        let mut worst: f64 = 0.0;
        for pattern in subsets::enumerate(xs.len(), erased) {
            let keep: Vec<&str> = pattern.iter().map(|&p| xs[p].label.as_str()).collect();
            if keep.is_empty() {
                continue;
            }
            let rho = state.partial_trace(&keep)?;
            let mixed_systems: Vec<(&str, usize)> = pattern
                .iter()
                .map(|&p| (xs[p].label.as_str(), xs[p].dim))
                .collect();
            let mixed = qstate::maximally_mixed(&mixed_systems)?;
            worst = worst.max(qstate::trace_distance(&rho, &mixed)?);
        }
        if worst > PURITY_TOL {
            return Err(VerifyError::MarginalNotMixed(worst));
        }
        Some(worst)
    } else {
        None
    };

    Ok(EntropicSingletonReport {
        reference_entropy: s_r,
        sigma_bar: decoupling.sigma_bar,
        sigma_bar_bar: decoupling.sigma_bar_bar,
        rhs,
        slack,
        tight,
        extremal,
        marginal_mixedness,
        decoupling,
    })
}

/// One logged step of a protocol run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProtocolStep {
    /// Consume one entangled qudit pair per channel use to double the
    /// classical capacity.
    DenseCoding {
        pairs: usize,
    },
    ClassicalEncode {
        n: usize,
        k: usize,
        field_order: u32,
    },
    Erase {
        pattern: Vec<usize>,
    },
    ErasureDecode {
        recovered: bool,
    },
    Teleport {
        qudits: usize,
        pairs: usize,
    },
    RegionCheck {
        x: Rat,
        y: Rat,
        inside: bool,
    },
}

impl std::fmt::Display for ProtocolStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProtocolStep::DenseCoding { pairs } => write!(f, "dense-coding pairs={pairs}"),
            ProtocolStep::ClassicalEncode { n, k, field_order } => {
                write!(f, "classical-encode [{n},{k}] over GF({field_order})")
            }
            ProtocolStep::Erase { pattern } => write!(f, "erase {pattern:?}"),
            ProtocolStep::ErasureDecode { recovered } => {
                write!(f, "erasure-decode recovered={recovered}")
            }
            ProtocolStep::Teleport { qudits, pairs } => {
                write!(f, "teleport qudits={qudits} pairs={pairs}")
            }
            ProtocolStep::RegionCheck { x, y, inside } => {
                write!(f, "region-check ({x},{y}) inside={inside}")
            }
        }
    }
}

/// Bookkeeping record of a protocol run.
#[derive(Debug, Clone)]
pub struct ProtocolTranscript {
    pub steps: Vec<ProtocolStep>,
    /// Net consumption in maximally entangled qudit pairs.
    pub ebits_consumed: Rat,
    pub message_in: Vec<u32>,
    pub message_out: Vec<u32>,
    /// 1.0 exactly when classical recovery is exact.
    pub fidelity: f64,
    /// Achieved qudit rate numerator (k in qudit units).
    pub qudits_sent: Rat,
    /// Normalized achieved point (c/n, k/n).
    pub rate_point: (Rat, Rat),
    pub messages_checked: usize,
    pub patterns_checked: usize,
}

impl ProtocolTranscript {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("step {s}\n"));
        }
        out.push_str(&format!(
            "ebits_consumed={} qudits_sent={} point=({},{}) fidelity={} messages={} patterns={}\n",
            self.ebits_consumed,
            self.qudits_sent,
            self.rate_point.0,
            self.rate_point.1,
            self.fidelity,
            self.messages_checked,
            self.patterns_checked
        ));
        out
    }
}

fn elems_of(field: &Field, symbols: &[u32]) -> Result<Vec<FieldElem>, VerifyError> {
    symbols
        .iter()
        .map(|&s| {
            field
                .elem(s as u64)
                .map_err(|_| VerifyError::MessageSymbol(s))
        })
        .collect()
}

/// Dense-coding scheme over one erasure pattern: each of the n channel uses
/// is upgraded to 2·log2 q classical bits by dense coding, an [n, n−d+1]
/// MDS code over GF(q²) carries the message through d−1 erasures, and the
/// decoded symbols teleport n−d+1 fresh qudits. Consumes n + (n−d+1)
/// entangled pairs and achieves k = n−d+1.
pub fn simulate_densecoding_mds(
    q: u32,
    n: usize,
    d: u32,
    message: &[u32],
    erasures: &[usize],
) -> Result<ProtocolTranscript, VerifyError> {
    let field = Field::of_order(q * q)?;
    let k = n - (d as usize - 1);
    let code = reed_solomon(&field, n, k)?;
    if message.len() != k {
        return Err(VerifyError::MessageLength {
            got: message.len(),
            want: k,
        });
    }
    if let Some(&bad) = erasures.iter().find(|&&e| e >= n) {
        return Err(VerifyError::ErasurePosition(bad));
    }

    let mut steps = vec![
        ProtocolStep::DenseCoding { pairs: n },
        ProtocolStep::ClassicalEncode {
            n,
            k,
            field_order: field.order(),
        },
    ];
    let msg = elems_of(&field, message)?;
    let word = code.encode(&msg)?;
    let mut received: Vec<Option<FieldElem>> = word.iter().copied().map(Some).collect();
    for &e in erasures {
        received[e] = None;
    }
    steps.push(ProtocolStep::Erase {
        pattern: erasures.to_vec(),
    });
    let decoded = erasure_decode(&code, &received)?;
    let recovered = decoded == msg;
    steps.push(ProtocolStep::ErasureDecode { recovered });
    if !recovered {
        return Err(VerifyError::ProtocolMismatch);
    }
    steps.push(ProtocolStep::Teleport {
        qudits: k,
        pairs: k,
    });

    let ebits = rint((n + k) as i64);
    let x = ebits / rint(n as i64);
    let y = rat(k as i64, n as i64);
    let region = rate_region(rat(d as i64 - 1, n as i64))?;
    let inside = region.contains(x, y);
    steps.push(ProtocolStep::RegionCheck { x, y, inside });
    if !inside {
        return Err(VerifyError::PointOutsideRegion { x, y });
    }

    Ok(ProtocolTranscript {
        steps,
        ebits_consumed: ebits,
        message_in: message.to_vec(),
        message_out: decoded.iter().map(|e| e.index()).collect(),
        fidelity: 1.0,
        qudits_sent: rint(k as i64),
        rate_point: (x, y),
        messages_checked: 1,
        patterns_checked: 1,
    })
}

/// The MDS corner of the high-distance region: an [n, n−d+1] MDS code over
/// GF(q) carries (n−d+1) classical q-its through every (d−1)-erasure, and
/// those teleport (n−d+1)/2 qudits consuming (n−d+1)/2 entangled pairs.
/// Exhaustive over all erasure patterns, and over all messages when
/// q^(n−d+1) ≤ 4096 (deterministically sampled otherwise).
pub fn simulate_mds_point(q: u32, n: usize, d: u32) -> Result<ProtocolTranscript, VerifyError> {
    if d == 0 || (d as usize) > n + 1 || 2 * (d as usize - 1) < n {
        return Err(VerifyError::WrongRegime { n, d });
    }
    let k_classical = n - (d as usize - 1);
    if !k_classical.is_multiple_of(2) {
        return Err(VerifyError::ParityMismatch(k_classical));
    }
    let field = Field::of_order(q)?;
    let code = reed_solomon(&field, n, k_classical)?;

    let total_messages = (q as u64)
        .checked_pow(k_classical as u32)
        .unwrap_or(u64::MAX);
    let messages: Vec<Vec<FieldElem>> = if total_messages <= 4096 {
        (0..total_messages)
            .map(|idx| {
                let mut rest = idx;
                (0..k_classical)
                    .map(|_| {
                        let e = FieldElem((rest % q as u64) as u32);
                        rest /= q as u64;
                        e
                    })
                    .collect()
            })
            .collect()
    } else {
        (0..256u64)
            .map(|i| {
                let mut s = splitmix64(i);
                (0..k_classical)
                    .map(|_| {
                        s = splitmix64(s);
                        FieldElem((s % q as u64) as u32)
                    })
                    .collect()
            })
            .collect()
    };
    let patterns = subsets::enumerate(n, d as usize - 1);

    let mut last_pattern = Vec::new();
    let mut last_msg: Vec<u32> = Vec::new();
    for msg in &messages {
        let word = code.encode(msg)?;
        for pattern in &patterns {
            let mut received: Vec<Option<FieldElem>> = word.iter().copied().map(Some).collect();
            for &e in pattern {
                received[e] = None;
            }
            let decoded = erasure_decode(&code, &received)?;
            if &decoded != msg {
                return Err(VerifyError::ProtocolMismatch);
            }
            last_pattern = pattern.clone();
        }
        last_msg = msg.iter().map(|e| e.index()).collect();
    }

    let half = rat(k_classical as i64, 2);
    let x = half / rint(n as i64);
    let region = rate_region(rat(d as i64 - 1, n as i64))?;
    let inside = region.contains(x, x);
    if !inside {
        return Err(VerifyError::PointOutsideRegion { x, y: x });
    }

    let steps = vec![
        ProtocolStep::ClassicalEncode {
            n,
            k: k_classical,
            field_order: q,
        },
        ProtocolStep::Erase {
            pattern: last_pattern,
        },
        ProtocolStep::ErasureDecode { recovered: true },
        ProtocolStep::Teleport {
            qudits: k_classical / 2,
            pairs: k_classical / 2,
        },
        ProtocolStep::RegionCheck { x, y: x, inside },
    ];

    Ok(ProtocolTranscript {
        steps,
        ebits_consumed: half,
        message_in: last_msg.clone(),
        message_out: last_msg,
        fidelity: 1.0,
        qudits_sent: half,
        rate_point: (x, x),
        messages_checked: messages.len(),
        patterns_checked: patterns.len(),
    })
}
