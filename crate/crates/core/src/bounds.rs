//! Exact-rational evaluation of the Singleton-family bounds and rate regions.
//!
//! A parameter tuple `[[n,k,d;c]]_q` (k, c rational in qudit units, c = net
//! ebit-pair consumption, negative for net generation) is checked against:
//!
//! - `EaSingleton`:          k ≤ c + max(0, n−2d+2)        (always)
//! - `ClassicalSingleton`:   k ≤ n−d+1                     (always)
//! - `HighDistanceTradeoff`: k ≤ (n−d+1)(c+2d−2−n)/(3d−3−n)  iff 2(d−1) ≥ n
//! - `PureSingleton`:        k ≤ n−2d+2+c                  iff declared pure
//!
//! All comparisons are exact; "tight" is rational equality, which is what
//! the EAQMDS designation rests on. The first three bounds cut out the rate
//! region in the normalized (x, y) = (c/n, k/n) plane for fixed
//! δ = (d−1)/n; `PureSingleton` is the region's `pure_limit` annotation, an
//! inner constraint for pure codes, never part of the general boundary.
//!
//! "Admissible" is a necessary condition: tuples passing every applicable
//! bound may still be non-existent (the database layer records such facts
//! separately).

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

use crate::tolerance::EQ_TOL;

pub type Rat = Ratio<i64>;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer, denom)
}

pub fn rint(v: i64) -> Rat {
    Rat::from_integer(v)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("block length must be at least 1")]
    ZeroBlockLength,
    #[error("alphabet size {0} must be at least 2")]
    AlphabetTooSmall(u32),
    #[error("distance {d} exceeds n+1 = {max}")]
    DistanceTooLarge { d: u32, max: u32 },
    #[error("distance must be at least 1")]
    ZeroDistance,
    #[error("dimension k = {0} is negative")]
    NegativeDimension(Rat),
    #[error("dimension k = {k} exceeds block length {n}")]
    DimensionExceedsLength { k: Rat, n: u32 },
    #[error("delta = {0} is outside [0, 1]")]
    DeltaOutOfRange(Rat),
    #[error("{name} = {value} is outside [0, log2 q = {max}]")]
    SigmaOutOfRange {
        name: &'static str,
        value: f64,
        max: f64,
    },
}

/// Code parameters `[[n,k,d;c]]_q` with provenance metadata.
///
/// `k` is log_q of the code dimension and `c` the net consumption of
/// maximally entangled qudit pairs (c = c_in − c_f; negative means net
/// generation). Neither needs to be an integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeParams {
    n: u32,
    k: Rat,
    d: u32,
    c: Rat,
    q: u32,
    pure: Option<bool>,
    source: String,
}

impl CodeParams {
    pub fn new(n: u32, k: Rat, d: u32, c: Rat, q: u32) -> Result<Self, BoundsError> {
        if n == 0 {
            return Err(BoundsError::ZeroBlockLength);
        }
        if q < 2 {
            return Err(BoundsError::AlphabetTooSmall(q));
        }
        if d == 0 {
            return Err(BoundsError::ZeroDistance);
        }
        if d > n + 1 {
            return Err(BoundsError::DistanceTooLarge { d, max: n + 1 });
        }
        if k.is_negative() {
            return Err(BoundsError::NegativeDimension(k));
        }
        if k > rint(n as i64) {
            return Err(BoundsError::DimensionExceedsLength { k, n });
        }
        Ok(CodeParams {
            n,
            k,
            d,
            c,
            q,
            pure: None,
            source: String::new(),
        })
    }

    /// Integer-parameter convenience constructor.
    pub fn from_ints(n: u32, k: i64, d: u32, c: i64, q: u32) -> Result<Self, BoundsError> {
        CodeParams::new(n, rint(k), d, rint(c), q)
    }

    pub fn with_pure(mut self, pure: bool) -> Self {
        self.pure = Some(pure);
        self
    }

    pub fn with_unknown_purity(mut self) -> Self {
        self.pure = None;
        self
    }

    pub fn with_source(mut self, source: &str) -> Self {
        self.source = source.to_string();
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> Rat {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn c(&self) -> Rat {
        self.c
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pure(&self) -> Option<bool> {
        self.pure
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Normalized distance δ = (d−1)/n.
    pub fn delta(&self) -> Rat {
        rat(self.d as i64 - 1, self.n as i64)
    }

    /// Net ebit consumption ℓ = c·log2 q, in bits.
    pub fn ell_bits(&self) -> f64 {
        self.c.to_f64().unwrap() * (self.q as f64).log2()
    }

    /// Encoded quantum information log2 K = k·log2 q, in bits.
    pub fn log2_k(&self) -> f64 {
        self.k.to_f64().unwrap() * (self.q as f64).log2()
    }

    /// Ordering key (n, k, d, c, q) used for deterministic output.
    pub fn sort_key(&self) -> (u32, Rat, u32, Rat, u32) {
        (self.n, self.k, self.d, self.c, self.q)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{};{}]]_{}",
            self.n, self.k, self.d, self.c, self.q
        )
    }
}

/// Identity of one bound within a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoundId {
    /// k ≤ c + max(0, n−2d+2); equals the net-entanglement (catalytic) bound.
    EaSingleton,
    /// k ≤ n−d+1.
    ClassicalSingleton,
    /// k ≤ (n−d+1)(c+2d−2−n)/(3d−3−n), the kinked high-distance tradeoff.
    HighDistanceTradeoff,
    /// k ≤ n−2d+2+c for declared-pure codes (no max-with-zero).
    PureSingleton,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundId::EaSingleton => "ea-singleton",
            BoundId::ClassicalSingleton => "classical-singleton",
            BoundId::HighDistanceTradeoff => "high-distance-tradeoff",
            BoundId::PureSingleton => "pure-singleton",
        };
        f.write_str(name)
    }
}

/// One bound evaluated on one parameter tuple, exactly.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundCheck {
    pub id: BoundId,
    pub applicable: bool,
    pub lhs: Rat,
    /// None iff not applicable.
    pub rhs: Option<Rat>,
    pub satisfied: bool,
    pub tight: bool,
}

/// Verdict over all bounds for one tuple.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundVerdict {
    pub params: CodeParams,
    pub checks: Vec<BoundCheck>,
    /// Every applicable bound satisfied.
    pub admissible: bool,
    /// Admissible and tight on at least one applicable boundary bound (the
    /// first three); the EAQMDS designation.
    pub ea_mds_tight: bool,
    pub inapplicable: Vec<BoundId>,
}

impl BoundVerdict {
    pub fn check(&self, id: BoundId) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Bounds that are applicable but violated.
    pub fn violated(&self) -> Vec<BoundId> {
        self.checks
            .iter()
            .filter(|c| c.applicable && !c.satisfied)
            .map(|c| c.id)
            .collect()
    }
}

fn check_from(id: BoundId, lhs: Rat, rhs: Option<Rat>) -> BoundCheck {
    match rhs {
        Some(r) => BoundCheck {
            id,
            applicable: true,
            lhs,
            rhs: Some(r),
            satisfied: lhs <= r,
            tight: lhs == r,
        },
        None => BoundCheck {
            id,
            applicable: false,
            lhs,
            rhs: None,
            satisfied: true,
            tight: false,
        },
    }
}

/// Whether the high-distance regime 2(d−1) ≥ n applies.
fn high_distance(n: u32, d: u32) -> bool {
    2 * (d as u64 - 1) >= n as u64
}

/// Evaluate every structural bound on `params` in exact rational arithmetic.
///
/// Total on valid parameters; never fails.
pub fn classify(params: &CodeParams) -> BoundVerdict {
    let n = params.n as i64;
    let d = params.d as i64;
    let k = params.k;
    let c = params.c;

    let unassisted_coeff = rint((n - 2 * d + 2).max(0));
    let ea = check_from(BoundId::EaSingleton, k, Some(c + unassisted_coeff));

    let classical = check_from(BoundId::ClassicalSingleton, k, Some(rint(n - d + 1)));

    let tradeoff_rhs = if high_distance(params.n, params.d) {
        let numer = rint(n - d + 1) * (c + rint(2 * d - 2 - n));
        let denom = rint(3 * d - 3 - n);
        Some(numer / denom)
    } else {
        None
    };
    let tradeoff = check_from(BoundId::HighDistanceTradeoff, k, tradeoff_rhs);

    let pure_rhs = if params.pure == Some(true) {
        Some(rint(n - 2 * d + 2) + c)
    } else {
        None
    };
    let pure = check_from(BoundId::PureSingleton, k, pure_rhs);

    let checks = vec![ea, classical, tradeoff, pure];
    let admissible = checks.iter().all(|b| b.satisfied);
    let ea_mds_tight = admissible && checks.iter().take(3).any(|b| b.applicable && b.tight);
    let inapplicable = checks
        .iter()
        .filter(|b| !b.applicable)
        .map(|b| b.id)
        .collect();

    BoundVerdict {
        params: params.clone(),
        checks,
        admissible,
        ea_mds_tight,
        inapplicable,
    }
}

/// One entropic bound check, in bits, at tolerance `EQ_TOL`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropicCheck {
    pub id: BoundId,
    pub applicable: bool,
    /// log2 K in bits.
    pub lhs_bits: f64,
    pub rhs_bits: Option<f64>,
    pub satisfied: bool,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropicVerdict {
    pub params: CodeParams,
    pub sigma_bar: f64,
    pub sigma_bar_bar: f64,
    pub checks: Vec<EntropicCheck>,
    pub admissible: bool,
}

fn entropic_check(id: BoundId, lhs: f64, rhs: Option<f64>) -> EntropicCheck {
    match rhs {
        Some(r) => EntropicCheck {
            id,
            applicable: true,
            lhs_bits: lhs,
            rhs_bits: Some(r),
            satisfied: lhs <= r + EQ_TOL,
            tight: (lhs - r).abs() <= EQ_TOL,
        },
        None => EntropicCheck {
            id,
            applicable: false,
            lhs_bits: lhs,
            rhs_bits: None,
            satisfied: true,
            tight: false,
        },
    }
}

/// σ̄-refined bound verdicts: the structural right-hand sides with log2 q
/// replaced by the measured per-system block entropies (bits).
///
/// `sigma_bar` is the average (d−1)-block entropy per system, `sigma_bar_bar`
/// the average (n−d+1)-block entropy per system. With both at their maximum
/// log2 q this degrades exactly to [`classify`].
pub fn entropic_classify(
    params: &CodeParams,
    sigma_bar: f64,
    sigma_bar_bar: f64,
) -> Result<EntropicVerdict, BoundsError> {
    let log2q = (params.q as f64).log2();
    for (name, value) in [("sigma_bar", sigma_bar), ("sigma_bar_bar", sigma_bar_bar)] {
        if !(-EQ_TOL..=log2q + EQ_TOL).contains(&value) {
            return Err(BoundsError::SigmaOutOfRange {
                name,
                value,
                max: log2q,
            });
        }
    }
    let n = params.n as f64;
    let d = params.d as f64;
    let lhs = params.log2_k();
    let ell = params.ell_bits();

    let checks = if high_distance(params.n, params.d) {
        let tradeoff =
            (n - d + 1.0) / (3.0 * d - 3.0 - n) * (ell + (2.0 * d - 2.0 - n) * sigma_bar_bar);
        vec![
            entropic_check(BoundId::EaSingleton, lhs, Some(ell)),
            entropic_check(
                BoundId::ClassicalSingleton,
                lhs,
                Some((n - d + 1.0) * sigma_bar_bar),
            ),
            entropic_check(BoundId::HighDistanceTradeoff, lhs, Some(tradeoff)),
        ]
    } else {
        vec![
            entropic_check(
                BoundId::EaSingleton,
                lhs,
                Some((n - 2.0 * d + 2.0) * sigma_bar + ell),
            ),
            entropic_check(
                BoundId::ClassicalSingleton,
                lhs,
                Some((n - d + 1.0) * sigma_bar_bar),
            ),
            entropic_check(BoundId::HighDistanceTradeoff, lhs, None),
        ]
    };

    let admissible = checks.iter().all(|b| b.satisfied);
    Ok(EntropicVerdict {
        params: params.clone(),
        sigma_bar,
        sigma_bar_bar,
        checks,
        admissible,
    })
}

/// Half-plane a·x + b·y ≤ beta over the normalized (c/n, k/n) plane.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HalfPlane {
    pub a: Rat,
    pub b: Rat,
    pub beta: Rat,
}

impl HalfPlane {
    pub fn contains(&self, x: Rat, y: Rat) -> bool {
        self.a * x + self.b * y <= self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Regime {
    BelowHalf,
    AtHalf,
    AboveHalf,
}

/// A named point annotation on a rate region (EAQ, MDS, QMDS).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RegionPoint {
    pub name: &'static str,
    pub x: Rat,
    pub y: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum SegmentStatus {
    /// Realized by explicit constructions (large enough alphabet).
    Attained,
    /// Outer bound only; attainability unresolved.
    Open,
}

impl fmt::Display for SegmentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegmentStatus::Attained => "attained",
            SegmentStatus::Open => "open",
        })
    }
}

/// One straight piece of the upper boundary, with attainability status.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundarySegment {
    pub from: (Rat, Rat),
    pub to: (Rat, Rat),
    pub status: SegmentStatus,
}

/// The admissible (ebit-rate, qubit-rate) region for fixed δ = (d−1)/n.
///
/// Unbounded to the right: beyond the EAQ point the boundary is the flat
/// line y = 1−δ for all larger x. `vertices` lists the corner points of the
/// upper boundary from left to right; `half_planes` the bounding
/// constraints (y ≥ 0 is implicit); `pure_limit` the pure-code half-plane
/// annotation, which is not part of the general boundary.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RateRegion {
    pub delta: Rat,
    pub regime: Regime,
    pub vertices: Vec<(Rat, Rat)>,
    pub half_planes: Vec<HalfPlane>,
    pub annotations: Vec<RegionPoint>,
    pub pure_limit: HalfPlane,
    pub segments: Vec<BoundarySegment>,
}

/// Build the exact rate region for δ ∈ [0, 1].
pub fn rate_region(delta: Rat) -> Result<RateRegion, BoundsError> {
    if delta < Rat::zero() || delta > rint(1) {
        return Err(BoundsError::DeltaOutOfRange(delta));
    }
    let one = rint(1);
    let two = rint(2);
    let half = rat(1, 2);

    let eaq = (delta, one - delta);
    let unassisted = one - two * delta; // max rate with no assistance (may be < 0)

    // bounding half-planes, normalized coordinates
    let ea_plane = HalfPlane {
        a: rint(-1),
        b: one,
        beta: if delta < half {
            unassisted
        } else {
            Rat::zero()
        },
    };
    let classical_plane = HalfPlane {
        a: Rat::zero(),
        b: one,
        beta: one - delta,
    };
    let pure_limit = HalfPlane {
        a: rint(-1),
        b: one,
        beta: unassisted,
    };

    let (regime, vertices, mut half_planes, mut annotations, segments);
    if delta < half {
        regime = Regime::BelowHalf;
        let left = (-(unassisted), Rat::zero());
        vertices = vec![left, eaq];
        half_planes = vec![ea_plane, classical_plane];
        annotations = vec![
            RegionPoint {
                name: "EAQ",
                x: eaq.0,
                y: eaq.1,
            },
            RegionPoint {
                name: "QMDS",
                x: Rat::zero(),
                y: unassisted,
            },
        ];
        segments = vec![
            BoundarySegment {
                from: left,
                to: eaq,
                status: SegmentStatus::Attained,
            },
            BoundarySegment {
                from: eaq,
                to: (one, one - delta),
                status: SegmentStatus::Attained,
            },
        ];
    } else {
        let origin = (Rat::zero(), Rat::zero());
        let mds = ((one - delta) / two, (one - delta) / two);
        let tradeoff_plane = HalfPlane {
            a: -(one - delta),
            b: rint(3) * delta - one,
            beta: (one - delta) * (two * delta - one),
        };
        half_planes = vec![ea_plane, classical_plane, tradeoff_plane];
        annotations = vec![RegionPoint {
            name: "EAQ",
            x: eaq.0,
            y: eaq.1,
        }];
        if delta == half {
            regime = Regime::AtHalf;
            vertices = vec![origin, eaq];
            segments = vec![
                BoundarySegment {
                    from: origin,
                    to: eaq,
                    status: SegmentStatus::Attained,
                },
                BoundarySegment {
                    from: eaq,
                    to: (one, one - delta),
                    status: SegmentStatus::Attained,
                },
            ];
        } else {
            regime = Regime::AboveHalf;
            annotations.push(RegionPoint {
                name: "MDS",
                x: mds.0,
                y: mds.1,
            });
            // degenerate corners collapse at δ = 1
            let mut v = vec![origin, mds, eaq];
            v.dedup();
            vertices = v;
            let mut segs = Vec::new();
            if origin != mds {
                segs.push(BoundarySegment {
                    from: origin,
                    to: mds,
                    status: SegmentStatus::Attained,
                });
            }
            if mds != eaq {
                segs.push(BoundarySegment {
                    from: mds,
                    to: eaq,
                    status: SegmentStatus::Open,
                });
            }
            segs.push(BoundarySegment {
                from: eaq,
                to: (one, one - delta),
                status: SegmentStatus::Attained,
            });
            segments = segs;
        }
    }

    // dedup planes that coincide at δ = 1/2 (tradeoff equals ea there)
    half_planes.dedup();
    annotations.retain(|p| p.y >= Rat::zero());

    Ok(RateRegion {
        delta,
        regime,
        vertices,
        half_planes,
        annotations,
        pure_limit,
        segments,
    })
}

/// Membership test: all bounding half-planes plus y ≥ 0.
pub fn region_contains(region: &RateRegion, x: Rat, y: Rat) -> bool {
    y >= Rat::zero() && region.half_planes.iter().all(|h| h.contains(x, y))
}

impl RateRegion {
    pub fn contains(&self, x: Rat, y: Rat) -> bool {
        region_contains(self, x, y)
    }

    /// Stable CSV serialization: vertices, half-planes, annotations,
    /// pure-limit line, boundary segments.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (x, y) in &self.vertices {
            out.push_str(&format!("vertex,{x},{y}\n"));
        }
        for h in &self.half_planes {
            out.push_str(&format!("halfplane,{},{},{}\n", h.a, h.b, h.beta));
        }
        for p in &self.annotations {
            out.push_str(&format!("point,{},{},{}\n", p.name, p.x, p.y));
        }
        out.push_str(&format!(
            "pure_limit,{},{},{}\n",
            self.pure_limit.a, self.pure_limit.b, self.pure_limit.beta
        ));
        for s in &self.segments {
            out.push_str(&format!(
                "segment,{},{},{},{},{}\n",
                s.from.0, s.from.1, s.to.0, s.to.1, s.status
            ));
        }
        out
    }

    /// Static SVG plot over x ∈ [−1, 1], y ∈ [0, 1] with the boundary, the
    /// named points, and the dashed pure-limit line.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const MX: f64 = 50.0;
        const MY: f64 = 30.0;
        let px = |x: f64| MX + (x + 1.0) / 2.0 * (W - 2.0 * MX);
        let py = |y: f64| H - MY - y * (H - 2.0 * MY);
        let f = |r: Rat| r.to_f64().unwrap();

        let mut s = String::new();
        s.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
        ));
        s.push_str(&format!(
            "  <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
        ));
        // axes
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(-1.0),
            py(0.0),
            px(1.0),
            py(0.0)
        ));
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(0.0),
            py(0.0),
            px(0.0),
            py(1.0)
        ));
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">c/n</text>\n",
            px(1.0) - 24.0,
            py(0.0) + 16.0
        ));
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">k/n</text>\n",
            px(0.0) + 6.0,
            py(1.0) + 4.0
        ));

        // region polygon: boundary vertices extended flat to x = 1, closed
        // along y = 0
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let first = self
            .vertices
            .first()
            .copied()
            .unwrap_or((Rat::zero(), Rat::zero()));
        pts.push((f(first.0), 0.0));
        for (x, y) in &self.vertices {
            pts.push((f(*x), f(*y)));
        }
        let top = self.vertices.last().copied().unwrap_or(first);
        pts.push((1.0, f(top.1)));
        pts.push((1.0, 0.0));
        let poly: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
            .collect();
        s.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#3182bd\" stroke-width=\"1.5\"/>\n",
            poly.join(" ")
        ));

        // pure-limit line y = x + beta, dashed, clipped to the frame
        let beta = f(self.pure_limit.beta);
        let x0 = (-1.0f64).max(-beta);
        let x1 = 1.0f64.min(1.0 - beta);
        if x1 > x0 {
            s.push_str(&format!(
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#de2d26\" stroke-dasharray=\"6 4\"/>\n",
                px(x0),
                py(x0 + beta),
                px(x1),
                py(x1 + beta)
            ));
            s.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#de2d26\">pure limit</text>\n",
                px(x1) - 60.0,
                py(x1 + beta) - 6.0
            ));
        }

        for p in &self.annotations {
            s.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#e6550d\"/>\n",
                px(f(p.x)),
                py(f(p.y))
            ));
            s.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
                px(f(p.x)) + 6.0,
                py(f(p.y)) - 6.0,
                p.name
            ));
        }
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">delta = {}</text>\n",
            MX,
            MY - 10.0,
            self.delta
        ));
        s.push_str("</svg>\n");
        s
    }
}
