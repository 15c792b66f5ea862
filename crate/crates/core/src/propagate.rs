//! Parameter-level propagation rules, database closure, and the state-level
//! certifier for the pure-code-to-EAQECC construction.
//!
//! Rules act on `[[n,k,d;c]]_q` tuples:
//!
//! - `trade_k_for_c`:   `[[n,k,d;c]]` → `[[n,k−1,d;c−1]]`   (purity dropped)
//! - `pure_shorten`:    pure `[[n,k,d;0]]` → `[[n−c,k,d;c]]` for 0 < c < d
//! - `pure_puncture`:   pure `[[n,k,d;0]]` → `[[n−1,k+1,d−1;0]]` (purity kept)
//!
//! `closure` chases these rules to a fixed point over a record database,
//! re-classifying every derived tuple; a derived tuple that violates any
//! bound aborts the run with `SoundnessViolation` carrying its derivation
//! trail. A deliberately corrupted shorten variant (`[[n−c,k+c,d;c]]`) can be
//! enabled to exercise exactly that failure path.
//!
//! `certify_pure_shorten` executes the construction on an explicit
//! stabilizer code: it purifies the code state, declares the last c systems
//! the receiver's entangled side (B1..Bc), and certifies the claimed
//! parameters by checking that the B marginal is maximally mixed and that
//! the reference decouples from every remaining (d−1)-subset. No decoder is
//! materialized; decoupling is the certificate.

use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

use crate::bounds::{classify, rint, BoundsError, CodeParams};
use crate::exec::reduce_indexed;
use crate::qstate::{self, StateError, TensorState};
use crate::stabilizer::{StabilizerCode, StabilizerError};
use crate::subsets;
use crate::tolerance::{DENSE_DIM_MAX, EQ_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropagateError {
    #[error("rule needs k ≥ 1, got k = {0}")]
    KTooSmall(String),
    #[error("rule needs a pure input code")]
    NotPure,
    #[error("rule needs zero prior entanglement, got c = {0}")]
    NonzeroEntanglement(String),
    #[error("shorten amount c = {c} is out of range for d = {d}, n = {n}")]
    CTooLarge { c: u32, d: u32, n: u32 },
    #[error("rule needs d ≥ 2, got d = {0}")]
    DTooSmall(u32),
    #[error("rule needs n ≥ 2, got n = {0}")]
    NTooSmall(u32),
    #[error("derived parameters are invalid: {0}")]
    InvalidDerived(#[from] BoundsError),
    #[error("soundness violation at {params}: {reason} (trail: {trail})")]
    SoundnessViolation {
        params: String,
        reason: String,
        trail: String,
    },
    #[error("code distance is below the requested d = {d}")]
    DistanceTooSmall { d: u32 },
    #[error("receiver-side marginal deviates from maximally mixed by {0:.3e}")]
    NotMaximallyMixedOnBin(f64),
    #[error("decoupling failed on pattern {pattern:?}: I(R:X_J) = {mutual_information:.3e}")]
    DecouplingFailed {
        pattern: Vec<usize>,
        mutual_information: f64,
    },
    #[error("witness dimension q^(n+k) = {dim} exceeds the dense cap {cap}")]
    DimensionBudgetExceeded { dim: u64, cap: usize },
    #[error("database line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Provenance of a database record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Existence {
    /// Built and verified in this crate.
    Constructed,
    /// Taken from the literature.
    Cited,
    /// Produced by a propagation rule.
    Derived,
    /// Known not to exist; recorded for reporting, never used as a parent.
    Nonexistent,
}

impl Existence {
    pub fn as_str(&self) -> &'static str {
        match self {
            Existence::Constructed => "constructed",
            Existence::Cited => "cited",
            Existence::Derived => "derived",
            Existence::Nonexistent => "nonexistent",
        }
    }

    pub fn parse(s: &str) -> Option<Existence> {
        match s {
            "constructed" => Some(Existence::Constructed),
            "cited" => Some(Existence::Cited),
            "derived" => Some(Existence::Derived),
            "nonexistent" => Some(Existence::Nonexistent),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RuleId {
    TradeKForC,
    PureShorten,
    PurePuncture,
    /// Deliberately wrong shorten variant for soundness-path testing.
    CorruptedShorten,
}

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::TradeKForC => "trade-k-for-c",
            RuleId::PureShorten => "pure-shorten",
            RuleId::PurePuncture => "pure-puncture",
            RuleId::CorruptedShorten => "corrupted-shorten",
        }
    }
}

/// One derivation step: which rule, from which parent.
#[derive(Debug, Clone, PartialEq)]
pub struct TrailStep {
    pub rule: RuleId,
    pub parent: CodeParams,
}

/// A parameter tuple with provenance and derivation trail.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeRecord {
    pub params: CodeParams,
    pub existence: Existence,
    pub trail: Vec<TrailStep>,
}

impl CodeRecord {
    pub fn seed(params: CodeParams, existence: Existence) -> Self {
        CodeRecord {
            params,
            existence,
            trail: Vec::new(),
        }
    }
}

/// `[[n,k,d;c]]` → `[[n,k−1,d;c−1]]`: re-encode one logical qudit as half of a
/// recovered entangled pair. Purity does not carry over.
pub fn rule_trade_k_for_c(p: &CodeParams) -> Result<CodeParams, PropagateError> {
    if p.k() < rint(1) {
        return Err(PropagateError::KTooSmall(p.k().to_string()));
    }
    let out = CodeParams::new(p.n(), p.k() - rint(1), p.d(), p.c() - rint(1), p.q())?
        .with_source(&format!("trade-k-for-c <- {p}"));
    Ok(out)
}

/// Pure `[[n,k,d;0]]` → `[[n−c,k,d;c]]` for 0 < c < d: hand the last c systems
/// to the receiver as pre-shared entanglement. Needs n−c ≥ d−1 so the
/// derived distance still fits the shorter block.
pub fn rule_pure_shorten(p: &CodeParams, c: u32) -> Result<CodeParams, PropagateError> {
    if p.pure() != Some(true) {
        return Err(PropagateError::NotPure);
    }
    if p.c() != rint(0) {
        return Err(PropagateError::NonzeroEntanglement(p.c().to_string()));
    }
    if c >= p.d() || p.n() - c < p.d() - 1 || c >= p.n() {
        return Err(PropagateError::CTooLarge {
            c,
            d: p.d(),
            n: p.n(),
        });
    }
    let out = CodeParams::new(p.n() - c, p.k(), p.d(), rint(c as i64), p.q())?
        .with_source(&format!("pure-shorten(c={c}) <- {p}"));
    Ok(out)
}

/// Pure `[[n,k,d;0]]` → `[[n−1,k+1,d−1;0]]`: drop one system, gain one logical,
/// lose one unit of distance. Stated for pure codes; purity is preserved.
pub fn rule_pure_puncture(p: &CodeParams) -> Result<CodeParams, PropagateError> {
    if p.pure() != Some(true) {
        return Err(PropagateError::NotPure);
    }
    if p.c() != rint(0) {
        return Err(PropagateError::NonzeroEntanglement(p.c().to_string()));
    }
    if p.d() < 2 {
        return Err(PropagateError::DTooSmall(p.d()));
    }
    if p.n() < 2 {
        return Err(PropagateError::NTooSmall(p.n()));
    }
    let out = CodeParams::new(p.n() - 1, p.k() + rint(1), p.d() - 1, rint(0), p.q())?
        .with_pure(true)
        .with_source(&format!("pure-puncture <- {p}"));
    Ok(out)
}

/// The historically wrong shorten variant `[[n−c,k+c,d;c]]`; kept only to
/// exercise the closure's soundness check.
pub fn rule_corrupted_shorten(p: &CodeParams, c: u32) -> Result<CodeParams, PropagateError> {
    if p.pure() != Some(true) {
        return Err(PropagateError::NotPure);
    }
    if p.c() != rint(0) {
        return Err(PropagateError::NonzeroEntanglement(p.c().to_string()));
    }
    if c >= p.d() || c >= p.n() {
        return Err(PropagateError::CTooLarge {
            c,
            d: p.d(),
            n: p.n(),
        });
    }
    let out = CodeParams::new(
        p.n() - c,
        p.k() + rint(c as i64),
        p.d(),
        rint(c as i64),
        p.q(),
    )?
    .with_source(&format!("corrupted-shorten(c={c}) <- {p}"));
    Ok(out)
}

/// Which rules a closure run applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub trade_k_for_c: bool,
    pub pure_shorten: bool,
    pub pure_puncture: bool,
    pub corrupted_shorten: bool,
}

impl RuleSet {
    pub fn standard() -> Self {
        RuleSet {
            trade_k_for_c: true,
            pure_shorten: true,
            pure_puncture: true,
            corrupted_shorten: false,
        }
    }

    pub fn with_corrupted_shorten() -> Self {
        RuleSet {
            corrupted_shorten: true,
            ..RuleSet::standard()
        }
    }
}

/// Result of a closure run.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// All records, sorted by parameter key; deterministic.
    pub records: Vec<CodeRecord>,
    pub reached_fixed_point: bool,
    pub steps: usize,
}

// Existence is part of the key: a derived net-zero tuple and a recorded
// non-existence fact for the same parameters are different claims (net
// consumption can be zero while gross consumption is not) and must coexist.
type Key = (
    u32,
    crate::bounds::Rat,
    u32,
    crate::bounds::Rat,
    u32,
    Option<bool>,
    Existence,
);

fn key_of(p: &CodeParams, existence: Existence) -> Key {
    let (n, k, d, c, q) = p.sort_key();
    (n, k, d, c, q, p.pure(), existence)
}

fn trail_string(trail: &[TrailStep]) -> String {
    if trail.is_empty() {
        return "seed".to_string();
    }
    trail
        .iter()
        .map(|s| format!("{}({})", s.rule.as_str(), s.parent))
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Chase the rule set to a fixed point (or until `max_steps` dequeues).
///
/// Every derived tuple must be `classify`-admissible; otherwise the run
/// aborts with the offending trail. Nonexistent records are never parents.
pub fn closure(
    seeds: &[CodeRecord],
    rules: &RuleSet,
    max_steps: usize,
) -> Result<ClosureResult, PropagateError> {
    let mut known: BTreeMap<Key, CodeRecord> = BTreeMap::new();
    let mut queue: VecDeque<CodeRecord> = VecDeque::new();

    let mut sorted_seeds = seeds.to_vec();
    sorted_seeds.sort_by_key(|r| key_of(&r.params, r.existence));
    for seed in sorted_seeds {
        let key = key_of(&seed.params, seed.existence);
        if let std::collections::btree_map::Entry::Vacant(e) = known.entry(key) {
            e.insert(seed.clone());
            queue.push_back(seed);
        }
    }

    let mut steps = 0usize;
    let mut fixed_point = true;
    while let Some(record) = queue.pop_front() {
        if steps >= max_steps {
            fixed_point = false;
            break;
        }
        steps += 1;
        if record.existence == Existence::Nonexistent {
            continue;
        }
        let p = &record.params;

        let mut derived: Vec<(RuleId, Result<CodeParams, PropagateError>)> = Vec::new();
        if rules.trade_k_for_c && p.k() >= rint(1) {
            derived.push((RuleId::TradeKForC, rule_trade_k_for_c(p)));
        }
        if rules.pure_shorten && p.pure() == Some(true) && p.c() == rint(0) {
            for c in 1..p.d() {
                if c < p.n() && p.n() - c >= p.d() - 1 {
                    derived.push((RuleId::PureShorten, rule_pure_shorten(p, c)));
                }
            }
        }
        if rules.pure_puncture
            && p.pure() == Some(true)
            && p.c() == rint(0)
            && p.d() >= 2
            && p.n() >= 2
        {
            derived.push((RuleId::PurePuncture, rule_pure_puncture(p)));
        }
        if rules.corrupted_shorten && p.pure() == Some(true) && p.c() == rint(0) {
            for c in 1..p.d().min(p.n()) {
                derived.push((RuleId::CorruptedShorten, rule_corrupted_shorten(p, c)));
            }
        }

        for (rule, result) in derived {
            let mut trail = record.trail.clone();
            trail.push(TrailStep {
                rule,
                parent: p.clone(),
            });
            let new_params = match result {
                Ok(np) => np,
                Err(e) => {
                    // a rule that yields structurally invalid parameters is
                    // as unsound as a bound violation
                    return Err(PropagateError::SoundnessViolation {
                        params: format!("{rule:?} on {p}"),
                        reason: e.to_string(),
                        trail: trail_string(&trail),
                    });
                }
            };
            let verdict = classify(&new_params);
            if !verdict.admissible {
                let violated: Vec<String> =
                    verdict.violated().iter().map(|b| b.to_string()).collect();
                return Err(PropagateError::SoundnessViolation {
                    params: new_params.to_string(),
                    reason: format!("violates {}", violated.join(", ")),
                    trail: trail_string(&trail),
                });
            }
            let rec = CodeRecord {
                params: new_params,
                existence: Existence::Derived,
                trail,
            };
            let key = key_of(&rec.params, rec.existence);
            // first derivation wins (BFS order, so trails stay short)
            if let std::collections::btree_map::Entry::Vacant(e) = known.entry(key) {
                e.insert(rec.clone());
                queue.push_back(rec);
            }
        }
    }

    Ok(ClosureResult {
        records: known.into_values().collect(),
        reached_fixed_point: fixed_point && queue.is_empty(),
        steps,
    })
}

/// Known non-existence facts, consulted for reporting only.
pub fn nonexistence_facts() -> Vec<CodeRecord> {
    let four = CodeParams::from_ints(4, 0, 3, 0, 2)
        .unwrap()
        .with_source("database: no four-qubit code of distance 3 with K=1 exists");
    let twelve = CodeParams::from_ints(12, 0, 7, 0, 3)
        .unwrap()
        .with_source("database: no twelve-qutrit code of distance 7 with K=1 exists");
    vec![
        CodeRecord::seed(four, Existence::Nonexistent),
        CodeRecord::seed(twelve, Existence::Nonexistent),
    ]
}

/// Witness state certifying a shorten application on an explicit code.
#[derive(Debug, Clone)]
pub struct ShortenWitness {
    /// Pure state on (R, X1..X(n−c), B1..Bc).
    pub state: TensorState,
    /// The certified parameters `[[n−c, k, d; c]]_q`.
    pub params: CodeParams,
    /// Trace distance of the B marginal from maximally mixed.
    pub bin_trace_distance: f64,
    /// Max over all (d−1)-subsets J of I(R : X_J), in bits.
    pub worst_mutual_information: f64,
    pub worst_pattern: Vec<usize>,
    pub partitions_checked: usize,
    /// True when n−c < d−1 leaves nothing to check.
    pub vacuous: bool,
}

/// Execute the pure-shorten construction on a stabilizer code and certify
/// the result by explicit checks.
///
/// Gates: distance ≥ d via the Knill-Laflamme scan, c < d, and the dense
/// witness budget. Purity is certified operationally — the marginal on the
/// relabeled receiver systems must be maximally mixed — so an impure code
/// fails with `NotMaximallyMixedOnBin` rather than at a flag check.
pub fn certify_pure_shorten(
    code: &StabilizerCode,
    d: u32,
    c: u32,
) -> Result<ShortenWitness, PropagateError> {
    let n = code.n() as u32;
    if c >= d || c >= n {
        return Err(PropagateError::CTooLarge { c, d, n });
    }
    let dim = (code.q() as u64)
        .checked_pow(code.n() as u32 + code.k() as u32)
        .unwrap_or(u64::MAX);
    if dim > DENSE_DIM_MAX as u64 {
        return Err(PropagateError::DimensionBudgetExceeded {
            dim,
            cap: DENSE_DIM_MAX,
        });
    }

    let kl = code.knill_laflamme(d)?;
    if !kl.distance_at_least {
        return Err(PropagateError::DistanceTooSmall { d });
    }

    // relabel the last c X systems as the receiver's B side
    let state = code.purified_state()?;
    let n_keep = code.n() - c as usize;
    let mut labels: Vec<String> = vec!["R".to_string()];
    labels.extend((1..=n_keep).map(|i| format!("X{i}")));
    labels.extend((1..=c as usize).map(|i| format!("B{i}")));
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let state = state.with_labels(&label_refs)?;

    // receiver marginal must be maximally mixed
    let bin_trace_distance = if c > 0 {
        let b_labels: Vec<&str> = label_refs[1 + n_keep..].to_vec();
        let rho_b = state.partial_trace(&b_labels)?;
        let b_systems: Vec<(&str, usize)> =
            b_labels.iter().map(|&l| (l, code.q() as usize)).collect();
        let mixed = qstate::maximally_mixed(&b_systems)?;
        qstate::trace_distance(&rho_b, &mixed)?
    } else {
        0.0
    };
    if bin_trace_distance > EQ_TOL {
        return Err(PropagateError::NotMaximallyMixedOnBin(bin_trace_distance));
    }

    // decoupling of R from every (d−1)-subset of the remaining systems
    let erasure = (d - 1) as usize;
    let vacuous = n_keep < erasure;
    let (worst_mutual_information, worst_pattern, partitions_checked) = if vacuous {
        (0.0, Vec::new(), 0)
    } else {
        let patterns = subsets::enumerate(n_keep, erasure);
        let worst = reduce_indexed(
            true,
            patterns.len(),
            |i| {
                let keep: Vec<String> =
                    patterns[i].iter().map(|&p| format!("X{}", p + 1)).collect();
                let mut block: Vec<&str> = vec!["R"];
                block.extend(keep.iter().map(|s| s.as_str()));
                let rho = state.partial_trace(&block).map_err(|e| (i, e))?;
                let x_refs: Vec<&str> = keep.iter().map(|s| s.as_str()).collect();
                let mi = rho
                    .mutual_information(&["R"], &x_refs)
                    .map_err(|e| (i, e))?;
                Ok((mi, i))
            },
            || Ok((f64::NEG_INFINITY, usize::MAX)),
            |a: Result<(f64, usize), (usize, StateError)>, b| match (a, b) {
                (Ok(x), Ok(y)) => Ok(if x.0 >= y.0 { x } else { y }),
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        );
        let (mi, idx) = worst.map_err(|(_, e)| PropagateError::State(e))?;
        let pattern = patterns[idx].clone();
        if mi > EQ_TOL {
            return Err(PropagateError::DecouplingFailed {
                pattern,
                mutual_information: mi,
            });
        }
        (mi, pattern, patterns.len())
    };

    let params = CodeParams::new(n - c, rint(code.k() as i64), d, rint(c as i64), code.q())?
        .with_source(&format!(
            "pure-shorten witness from an [[{} ,{},{}]]_{} stabilizer code, c={c}",
            code.n(),
            code.k(),
            d,
            code.q()
        ));

    Ok(ShortenWitness {
        state,
        params,
        bin_trace_distance,
        worst_mutual_information,
        worst_pattern,
        partitions_checked,
        vacuous,
    })
}

/// Parse a record database: one `n k d c q pure existence source...` per
/// line, `#` comments, whitespace separated; `k` and `c` accept `p/q`
/// rationals; `pure` is `true`, `false`, or `unknown`.
pub fn parse_records(text: &str) -> Result<Vec<CodeRecord>, PropagateError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = |name: &str| {
            fields.next().ok_or_else(|| PropagateError::Parse {
                line: lineno + 1,
                msg: format!("missing field `{name}`"),
            })
        };
        let n: u32 = parse_field(next("n")?, lineno, "n")?;
        let k = parse_rat(next("k")?, lineno, "k")?;
        let d: u32 = parse_field(next("d")?, lineno, "d")?;
        let c = parse_rat(next("c")?, lineno, "c")?;
        let q: u32 = parse_field(next("q")?, lineno, "q")?;
        let pure_tok = next("pure")?;
        let pure = match pure_tok {
            "true" => Some(true),
            "false" => Some(false),
            "unknown" => None,
            other => {
                return Err(PropagateError::Parse {
                    line: lineno + 1,
                    msg: format!("bad purity token `{other}`"),
                })
            }
        };
        let existence_tok = next("existence")?;
        let existence = Existence::parse(existence_tok).ok_or_else(|| PropagateError::Parse {
            line: lineno + 1,
            msg: format!("bad existence token `{existence_tok}`"),
        })?;
        let source: String = fields.collect::<Vec<_>>().join(" ");
        let mut params = CodeParams::new(n, k, d, c, q).map_err(|e| PropagateError::Parse {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        if let Some(p) = pure {
            params = params.with_pure(p);
        }
        out.push(CodeRecord::seed(params.with_source(&source), existence));
    }
    Ok(out)
}

fn parse_field<T: std::str::FromStr>(
    tok: &str,
    lineno: usize,
    name: &str,
) -> Result<T, PropagateError> {
    tok.parse().map_err(|_| PropagateError::Parse {
        line: lineno + 1,
        msg: format!("bad `{name}` value `{tok}`"),
    })
}

fn parse_rat(tok: &str, lineno: usize, name: &str) -> Result<crate::bounds::Rat, PropagateError> {
    tok.parse().map_err(|_| PropagateError::Parse {
        line: lineno + 1,
        msg: format!("bad rational `{name}` value `{tok}`"),
    })
}

/// Serialize records in the database line format, sorted by parameters.
pub fn format_records(records: &[CodeRecord]) -> String {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| key_of(&r.params, r.existence));
    let mut out = String::new();
    for r in sorted {
        let p = &r.params;
        let pure = match p.pure() {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        };
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {}\n",
            p.n(),
            p.k(),
            p.d(),
            p.c(),
            p.q(),
            pure,
            r.existence.as_str(),
            p.source()
        ));
    }
    out
}
