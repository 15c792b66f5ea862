//! Finite fields GF(p^m) and classical linear codes.
//!
//! Fields are constructed with a deterministic canonical modulus (the
//! lexicographically smallest monic irreducible polynomial, comparing
//! little-endian coefficient vectors as base-p integers), so field objects,
//! codes, and tests are stable across runs. Elements are stored as indices
//! in `0..p^m`, read as base-p digit vectors, i.e. polynomial coefficients
//! over GF(p). Multiplication goes through exp/log tables built once per
//! field from a primitive element.
//!
//! The code layer provides generator-matrix linear codes, Reed-Solomon
//! evaluation codes on the first n field elements (MDS for every k ≤ n ≤ q),
//! a brute-force minimum-distance oracle, and erasure decoding by solving the
//! linear system on the unerased coordinates.

use crate::exec::reduce_indexed;
use crate::tolerance::{FIELD_ORDER_MAX, WEIGHT_ENUM_MAX};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("field order {p}^{m} exceeds the cap of 2^16")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power, so no field of that order exists")]
    NonPrimePowerOrder(u32),
    #[error("block length {n} exceeds field order {q}")]
    LengthExceedsField { n: usize, q: u32 },
    #[error("code dimension {k} exceeds block length {n}")]
    DimensionExceedsLength { k: usize, n: usize },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficientGenerator { rank: usize, k: usize },
    #[error("minimum distance is undefined for a zero-dimensional code")]
    ZeroDimensionalCode,
    #[error("enumeration of {candidates} codeword candidates exceeds the budget of {budget}")]
    EnumerationBudgetExceeded { candidates: u64, budget: u64 },
    #[error("{erased} erasures leave the system underdetermined (can correct at most {max})")]
    TooManyErasures { erased: usize, max: usize },
    #[error("received word is inconsistent with the code")]
    InconsistentReceived,
    #[error("element index {0} does not belong to the field")]
    ElementOutOfRange(u64),
    #[error("message length {got} does not match code dimension {want}")]
    MessageLength { got: usize, want: usize },
    #[error("received length {got} does not match block length {want}")]
    ReceivedLength { got: usize, want: usize },
}

/// An element of a concrete [`Field`], stored as its index in `0..q`.
///
/// The index, written in base p, is the little-endian coefficient vector of
/// the element as a polynomial over GF(p). Elements carry no field pointer;
/// all arithmetic goes through the owning [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field GF(p^m), p prime, p^m ≤ 2^16.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, little-endian coefficients, length m+1. For m = 1 this
    /// is the polynomial x.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g, length 2(q-1) so that
    /// products of two logs never index out of range. Empty for q = 2.
    exp: Vec<u32>,
    /// log[v] for v in 1..q; log[0] is unused.
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p) on little-endian coefficient vectors,
/// used only during field construction.
mod poly {
    pub(super) fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub(super) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let deg_m = m.len() - 1;
        while r.len() > deg_m {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - deg_m;
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                let sub = (lead * mi) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }
}

impl Field {
    /// Construct GF(p^m) with the canonical modulus.
    pub fn new(p: u32, m: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= FIELD_ORDER_MAX);
        let q = q.ok_or(GfError::FieldTooLarge { p, m })? as u32;

        let modulus = if m == 1 {
            vec![0, 1] // the polynomial x
        } else {
            Self::smallest_irreducible(p, m)
        };

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// The field of the given order, factoring it as p^m.
    pub fn of_order(q: u32) -> Result<Field, GfError> {
        if q < 2 {
            return Err(GfError::NonPrimePowerOrder(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut m = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(GfError::NonPrimePowerOrder(q));
        }
        Field::new(p, m)
    }

    /// Lexicographically smallest monic irreducible of degree m over GF(p),
    /// scanning candidates x^m + f by the base-p encoding of f.
    fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
        let deg = m as usize;
        let count = (p as u64).pow(m);
        for enc in 0..count {
            let mut cand = vec![0u32; deg + 1];
            let mut v = enc;
            for c in cand.iter_mut().take(deg) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            cand[deg] = 1;
            if Self::is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    /// Exhaustive trial division by all monic polynomials of degree
    /// 1..=deg/2. Adequate for the p^m ≤ 2^16 cap.
    fn is_irreducible(cand: &[u32], p: u32) -> bool {
        let deg = cand.len() - 1;
        for div_deg in 1..=deg / 2 {
            let count = (p as u64).pow(div_deg as u32);
            for enc in 0..count {
                let mut div = vec![0u32; div_deg + 1];
                let mut v = enc;
                for c in div.iter_mut().take(div_deg) {
                    *c = (v % p as u64) as u32;
                    v /= p as u64;
                }
                div[div_deg] = 1;
                if poly::rem(cand, &div, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c;
        }
        v
    }

    fn decode(&self, v: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.m as usize];
        let mut v = v;
        for c in out.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let pa = self.decode(a);
        let pb = self.decode(b);
        let prod = poly::mul(&pa, &pb, self.p);
        let red = poly::rem(&prod, &self.modulus, self.p);
        self.encode(&red)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1, 1];
            self.log = vec![0, 0];
            return;
        }
        let order = q - 1;
        let factors = prime_factors(order);
        let gen = (2..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_raw(g, (order / r) as u64) != 1)
            })
            .expect("every finite field has a primitive element");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for (i, e) in exp.iter_mut().enumerate().take(order as usize) {
            *e = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_raw(acc, gen);
        }
        for i in 0..order as usize {
            exp[order as usize + i] = exp[i];
        }
        self.exp = exp;
        self.log = log;
    }

    fn pow_raw(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The field order q = p^m.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Little-endian coefficients of the canonical modulus, length m+1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem, GfError> {
        if index < self.q as u64 {
            Ok(FieldElem(index as u32))
        } else {
            Err(GfError::ElementOutOfRange(index))
        }
    }

    /// Polynomial coefficients of an element over GF(p), little-endian,
    /// length m.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        self.decode(a.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.m == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (pa, pb) = (self.decode(a.0), self.decode(b.0));
        let sum: Vec<u32> = pa
            .iter()
            .zip(pb.iter())
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElem(self.encode(&sum))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.m == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let pa = self.decode(a.0);
        let neg: Vec<u32> = pa.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem(self.encode(&neg))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[i as usize])
    }

    /// Multiplicative inverse. Panics on zero, like integer division.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(a.0 != 0, "inverse of the zero element");
        if self.q == 2 {
            return FieldElem(1);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        FieldElem(self.exp[((order - l) % order) as usize])
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElem(self.exp[((l * (e % order)) % order) as usize])
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A linear [n, k] code given by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: Vec<Vec<FieldElem>>,
    mds: bool,
}

impl LinearCode {
    /// Build a code from a k×n generator matrix; the rank must be k.
    pub fn new(field: Field, generator: Vec<Vec<FieldElem>>) -> Result<LinearCode, GfError> {
        let k = generator.len();
        let n = generator.first().map_or(0, |r| r.len());
        if k > n {
            return Err(GfError::DimensionExceedsLength { k, n });
        }
        let rank = rank_of(&field, &generator, n);
        if rank != k {
            return Err(GfError::RankDeficientGenerator { rank, k });
        }
        Ok(LinearCode {
            field,
            n,
            k,
            generator,
            mds: false,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[Vec<FieldElem>] {
        &self.generator
    }

    /// Whether the code was constructed from an MDS family.
    pub fn is_mds(&self) -> bool {
        self.mds
    }

    pub fn encode(&self, message: &[FieldElem]) -> Result<Vec<FieldElem>, GfError> {
        if message.len() != self.k {
            return Err(GfError::MessageLength {
                got: message.len(),
                want: self.k,
            });
        }
        let f = &self.field;
        let mut word = vec![FieldElem::ZERO; self.n];
        for (mi, row) in message.iter().zip(self.generator.iter()) {
            if mi.is_zero() {
                continue;
            }
            for (w, g) in word.iter_mut().zip(row.iter()) {
                *w = f.add(*w, f.mul(*mi, *g));
            }
        }
        Ok(word)
    }

    fn encode_weight(&self, message: &[FieldElem]) -> usize {
        let f = &self.field;
        let mut weight = 0;
        for j in 0..self.n {
            let mut acc = FieldElem::ZERO;
            for (mi, row) in message.iter().zip(self.generator.iter()) {
                acc = f.add(acc, f.mul(*mi, row[j]));
            }
            if !acc.is_zero() {
                weight += 1;
            }
        }
        weight
    }
}

// elimination touches two rows at once; index form is the clear one
#[allow(clippy::needless_range_loop)]
fn rank_of(field: &Field, rows: &[Vec<FieldElem>], n: usize) -> usize {
    let mut mat: Vec<Vec<FieldElem>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = field.inv(mat[rank][col]);
        for j in col..n {
            mat[rank][j] = field.mul(mat[rank][j], inv);
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let factor = mat[r][col];
                for j in col..n {
                    let sub = field.mul(factor, mat[rank][j]);
                    mat[r][j] = field.sub(mat[r][j], sub);
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// The [n, k] Reed-Solomon evaluation code on the first n field elements in
/// canonical (index) order. MDS for every k ≤ n ≤ q.
pub fn reed_solomon(field: &Field, n: usize, k: usize) -> Result<LinearCode, GfError> {
    if n > field.order() as usize {
        return Err(GfError::LengthExceedsField {
            n,
            q: field.order(),
        });
    }
    if k > n {
        return Err(GfError::DimensionExceedsLength { k, n });
    }
    let points: Vec<FieldElem> = field.elements().take(n).collect();
    let mut generator = Vec::with_capacity(k);
    for i in 0..k {
        let row: Vec<FieldElem> = points.iter().map(|&x| field.pow(x, i as u64)).collect();
        generator.push(row);
    }
    let mut code = LinearCode::new(field.clone(), generator)?;
    code.mds = true;
    Ok(code)
}

/// Exact minimum Hamming weight over the nonzero codewords, by exhaustive
/// enumeration.
///
/// Weight is invariant under scaling, so only codewords whose first nonzero
/// message coordinate is 1 are visited: (q^k - 1)/(q - 1) candidates, which
/// must stay within [`WEIGHT_ENUM_MAX`]. The full space k = n trivially has
/// distance 1.
pub fn min_distance(code: &LinearCode) -> Result<usize, GfError> {
    min_distance_impl(code, true)
}

/// Sequential variant of [`min_distance`].
pub fn min_distance_seq(code: &LinearCode) -> Result<usize, GfError> {
    min_distance_impl(code, false)
}

fn min_distance_impl(code: &LinearCode, par: bool) -> Result<usize, GfError> {
    let (n, k) = (code.n, code.k);
    if k == 0 {
        return Err(GfError::ZeroDimensionalCode);
    }
    if k == n {
        // full space: contains every weight-1 word
        return Ok(1);
    }
    let q = code.field.order() as u64;
    let candidates = (q.checked_pow(k as u32))
        .map(|t| (t - 1) / (q - 1))
        .filter(|&c| c <= WEIGHT_ENUM_MAX);
    let Some(total) = candidates else {
        return Err(GfError::EnumerationBudgetExceeded {
            candidates: u64::MAX,
            budget: WEIGHT_ENUM_MAX,
        });
    };
    if total > WEIGHT_ENUM_MAX {
        return Err(GfError::EnumerationBudgetExceeded {
            candidates: total,
            budget: WEIGHT_ENUM_MAX,
        });
    }

    // Candidate t-th block: messages with lead coordinate `lead` fixed to 1
    // and q^(k-1-lead) free tail assignments.
    let mut offsets = Vec::with_capacity(k);
    let mut acc = 0u64;
    for lead in 0..k {
        offsets.push(acc);
        acc += q.pow((k - 1 - lead) as u32);
    }
    debug_assert_eq!(acc, total);

    let weight_of = |idx: usize| -> usize {
        let idx = idx as u64;
        let lead = match offsets.binary_search(&idx) {
            Ok(l) => l,
            Err(ins) => ins - 1,
        };
        let mut rest = idx - offsets[lead];
        let mut message = vec![FieldElem::ZERO; k];
        message[lead] = FieldElem::ONE;
        for coord in message.iter_mut().skip(lead + 1) {
            *coord = FieldElem((rest % q) as u32);
            rest /= q;
        }
        code.encode_weight(&message)
    };

    let best = reduce_indexed(par, total as usize, weight_of, || n + 1, std::cmp::min);
    Ok(best)
}

/// Recover the message from a partially erased codeword (`None` = erased),
/// solving the linear system on the unerased coordinates.
#[allow(clippy::needless_range_loop)]
pub fn erasure_decode(
    code: &LinearCode,
    received: &[Option<FieldElem>],
) -> Result<Vec<FieldElem>, GfError> {
    if received.len() != code.n {
        return Err(GfError::ReceivedLength {
            got: received.len(),
            want: code.n,
        });
    }
    let erased = received.iter().filter(|r| r.is_none()).count();
    if erased > code.n - code.k {
        return Err(GfError::TooManyErasures {
            erased,
            max: code.n - code.k,
        });
    }
    let f = &code.field;
    let k = code.k;

    // One equation per unerased coordinate: sum_i m_i G[i][j] = r_j.
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for (j, r) in received.iter().enumerate() {
        let Some(rj) = r else { continue };
        let mut row: Vec<FieldElem> = (0..k).map(|i| code.generator[i][j]).collect();
        row.push(*rj);
        rows.push(row);
    }

    let mut rank = 0usize;
    for col in 0..k {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]);
        for j in col..=k {
            rows[rank][j] = f.mul(rows[rank][j], inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for j in col..=k {
                    let sub = f.mul(factor, rows[rank][j]);
                    rows[r][j] = f.sub(rows[r][j], sub);
                }
            }
        }
        rank += 1;
    }
    if rank < k {
        return Err(GfError::TooManyErasures {
            erased,
            max: code.n - code.k,
        });
    }
    for row in rows.iter().skip(rank) {
        if row[..k].iter().all(|e| e.is_zero()) && !row[k].is_zero() {
            return Err(GfError::InconsistentReceived);
        }
    }

    // After full reduction the pivot rows are ordered by pivot column = index.
    let mut message = vec![FieldElem::ZERO; k];
    for row in rows.iter().take(rank) {
        let lead = row[..k].iter().position(|e| !e.is_zero()).unwrap();
        message[lead] = row[k];
    }
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets;

    #[test]
    fn prime_field_construction() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[0, 1]); // the polynomial x
        assert_eq!(Field::new(4, 1), Err(GfError::NonPrimeCharacteristic(4)));
        assert_eq!(Field::new(2, 0), Err(GfError::ZeroDegree));
        assert!(matches!(
            Field::new(2, 17),
            Err(GfError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn gf4_has_the_unique_irreducible_quadratic() {
        // independent oracle: filter all monic quadratics over GF(2) by
        // brute-force reducibility (product of two linear factors)
        let linears = [vec![0u32, 1], vec![1u32, 1]]; // x, x+1
        let mut irreducible = Vec::new();
        for c0 in 0..2u32 {
            for c1 in 0..2u32 {
                let cand = vec![c0, c1, 1];
                let reducible = linears.iter().any(|l| poly::rem(&cand, l, 2).is_empty());
                if !reducible {
                    irreducible.push(cand);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]); // x^2 + x + 1
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        // every field with order ≤ 64
        let mut fields = Vec::new();
        for p in [
            2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        ] {
            let mut m = 1;
            while (p as u64).pow(m) <= 64 {
                fields.push((p, m));
                m += 1;
            }
        }
        for (p, m) in fields {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            // inverses for all nonzero elements
            for a in f.elements().skip(1) {
                assert_eq!(
                    f.mul(a, f.inv(a)),
                    FieldElem::ONE,
                    "GF({q}) inverse of {a:?}"
                );
            }
            // commutativity and identities on all pairs
            for a in f.elements() {
                assert_eq!(f.add(a, FieldElem::ZERO), a);
                assert_eq!(f.mul(a, FieldElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // associativity/distributivity: exhaustive for q ≤ 8, strided above
            let stride = if q <= 8 { 1 } else { (q / 8).max(1) };
            for a in f.elements().step_by(stride as usize) {
                for b in f.elements().step_by(stride as usize) {
                    for c in f.elements().step_by(stride as usize) {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn field_of_order_factors_prime_powers() {
        assert_eq!(Field::of_order(4).unwrap().characteristic(), 2);
        assert_eq!(Field::of_order(9).unwrap().degree(), 2);
        assert_eq!(Field::of_order(25).unwrap().order(), 25);
        assert_eq!(Field::of_order(6), Err(GfError::NonPrimePowerOrder(6)));
    }

    // independent naive oracle: enumerate every nonzero message directly
    fn naive_min_distance(code: &LinearCode) -> usize {
        let q = code.field().order() as u64;
        let total = q.pow(code.dimension() as u32);
        let mut best = code.block_length() + 1;
        for idx in 1..total {
            let mut rest = idx;
            let msg: Vec<FieldElem> = (0..code.dimension())
                .map(|_| {
                    let e = FieldElem((rest % q) as u32);
                    rest /= q;
                    e
                })
                .collect();
            let w = code
                .encode(&msg)
                .unwrap()
                .iter()
                .filter(|e| !e.is_zero())
                .count();
            best = best.min(w);
        }
        best
    }

    #[test]
    fn rs_4_2_over_gf5_has_distance_3() {
        let f = Field::new(5, 1).unwrap();
        let code = reed_solomon(&f, 4, 2).unwrap();
        assert!(code.is_mds());
        assert_eq!(naive_min_distance(&code), 3);
        assert_eq!(min_distance(&code).unwrap(), 3);
        assert_eq!(min_distance_seq(&code).unwrap(), 3);
    }

    #[test]
    fn rs_full_space_and_length_errors() {
        let f2 = Field::new(2, 1).unwrap();
        let full = reed_solomon(&f2, 2, 2).unwrap();
        assert_eq!(min_distance(&full).unwrap(), 1);

        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(
            reed_solomon(&f3, 4, 2).unwrap_err(),
            GfError::LengthExceedsField { n: 4, q: 3 }
        );
    }

    #[test]
    fn repetition_code_distance() {
        let f = Field::new(2, 1).unwrap();
        let gen = vec![vec![FieldElem::ONE; 3]];
        let code = LinearCode::new(f, gen).unwrap();
        assert_eq!(min_distance(&code).unwrap(), 3);
    }

    #[test]
    fn min_distance_rejects_zero_dimension() {
        let f = Field::new(2, 1).unwrap();
        let code = LinearCode::new(f, Vec::new()).unwrap();
        assert_eq!(min_distance(&code), Err(GfError::ZeroDimensionalCode));
    }

    #[test]
    fn min_distance_budget_is_enforced() {
        let f = Field::new(2, 5).unwrap(); // GF(32)
        let code = reed_solomon(&f, 32, 6).unwrap();
        // (32^6 - 1)/31 ≈ 3.5e7 candidates
        assert!(matches!(
            min_distance(&code),
            Err(GfError::EnumerationBudgetExceeded { .. })
        ));
    }

    #[test]
    fn erasure_decode_recovers_all_patterns_rs_4_2_gf5() {
        let f = Field::new(5, 1).unwrap();
        let code = reed_solomon(&f, 4, 2).unwrap();
        for a in 0..5u32 {
            for b in 0..5u32 {
                let msg = vec![FieldElem(a), FieldElem(b)];
                let word = code.encode(&msg).unwrap();
                for pattern in subsets::enumerate(4, 2) {
                    let mut rx: Vec<Option<FieldElem>> = word.iter().copied().map(Some).collect();
                    for &e in &pattern {
                        rx[e] = None;
                    }
                    assert_eq!(erasure_decode(&code, &rx).unwrap(), msg);
                }
            }
        }
    }

    #[test]
    fn erasure_decode_edges() {
        let f = Field::new(5, 1).unwrap();
        let code = reed_solomon(&f, 4, 2).unwrap();
        let msg = vec![FieldElem(3), FieldElem(1)];
        let word = code.encode(&msg).unwrap();

        // no erasures
        let rx: Vec<Option<FieldElem>> = word.iter().copied().map(Some).collect();
        assert_eq!(erasure_decode(&code, &rx).unwrap(), msg);

        // three of four erased
        let rx = vec![Some(word[0]), None, None, None];
        assert_eq!(
            erasure_decode(&code, &rx),
            Err(GfError::TooManyErasures { erased: 3, max: 2 })
        );

        // corrupted symbol makes the system inconsistent
        let mut rx: Vec<Option<FieldElem>> = word.iter().copied().map(Some).collect();
        rx[0] = Some(f.add(word[0], FieldElem::ONE));
        assert_eq!(
            erasure_decode(&code, &rx),
            Err(GfError::InconsistentReceived)
        );
    }

    #[test]
    fn rs_mds_sweep_small_fields() {
        // distance = n-k+1 for every RS code over small fields
        for q in [2u32, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            for n in 1..=q as usize {
                for k in 1..=n {
                    let code = reed_solomon(&f, n, k).unwrap();
                    assert_eq!(
                        min_distance(&code).unwrap(),
                        n - k + 1,
                        "RS [{n},{k}] over GF({q})"
                    );
                }
            }
        }
    }
}
