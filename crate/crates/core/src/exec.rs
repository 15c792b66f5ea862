//! Map-reduce driver for the crate's brute-force enumerations.
//!
//! Every hot loop maps an index range through a pure function and merges the
//! results with an associative fold. With the `parallel` feature the merge
//! runs on rayon; without it (or when `par` is false) it is a plain
//! sequential fold. Callers that derive verdicts or witnesses must merge with
//! exact operations (min/max/index picks); floating-point sums may differ in
//! the last bits between parallel runs, which every consumer absorbs inside
//! its stated tolerance.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn reduce_indexed<R, M, I, F>(par: bool, len: usize, map: M, identity: I, fold: F) -> R
where
    R: Send,
    M: Fn(usize) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par {
        return (0..len).into_par_iter().map(&map).reduce(&identity, &fold);
    }
    let _ = par;
    (0..len).map(map).fold(identity(), fold)
}
