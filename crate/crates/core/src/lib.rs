//! Singleton-family bounds for quantum error-correcting codes, executable.
//!
//! This crate turns the Singleton-type bounds for plain, entanglement-assisted
//! (EAQECC), and catalytic quantum codes into runnable machinery:
//!
//! - **[`bounds`]**: exact-rational evaluation of every bound, parameter
//!   classification (`[[n,k,d;c]]_q` tuples), and rate-region polygons in the
//!   (ebit-rate, qubit-rate) plane.
//! - **[`propagate`]**: parameter propagation rules, closure over a code
//!   database with soundness checking, and a state-level executor that
//!   certifies the pure-code-to-EAQECC construction by explicit decoupling
//!   checks.
//! - **[`stabilizer`]**: qudit stabilizer codes over prime alphabets, dense
//!   code projectors, and a brute-force Knill-Laflamme distance/purity oracle.
//! - **[`qstate`]**: dense multipartite state algebra — partial traces,
//!   von Neumann / conditional entropies, mutual information, block-entropy
//!   averages, and seeded random states.
//! - **[`verify`]**: numerical verification of the entropic inequalities the
//!   bounds rest on (subset-average lemmas, decoupling, entropic Singleton),
//!   plus bookkeeping-level simulators for the dense-coding and MDS-point
//!   protocols.
//! - **[`gf`]**: finite fields GF(p^m) and Reed-Solomon codes with erasure
//!   decoding, the classical layer of the protocol constructions.
//!
//! Entropies are in bits (log base 2) everywhere internally; q-ary values are
//! produced only at reporting boundaries. Structural bound comparisons are
//! exact rational arithmetic; entropic ones use the tolerances in
//! [`tolerance`].
//!
//! With the default `parallel` feature the heavy enumerations (codeword
//! weights, Pauli scans, subset entropies, fuzz trials) fan out over rayon;
//! disabling it yields a fully sequential build. The `*_seq` function
//! variants are always sequential, so the two paths can be compared directly
//! (see `benches/parallel.rs`).

pub mod bounds;
pub mod gf;
pub mod propagate;
pub mod qstate;
pub mod stabilizer;
pub mod tolerance;
pub mod verify;

mod exec;
mod subsets;

pub use bounds::{classify, entropic_classify, rate_region, region_contains, CodeParams};
pub use qstate::{DensityMatrix, TensorState};
pub use stabilizer::StabilizerCode;
