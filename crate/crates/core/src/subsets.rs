//! Lexicographic enumeration of fixed-size index subsets.

use num_integer::binomial;

/// Number of size-`k` subsets of `{0..n}`, saturating at `u64::MAX`.
pub(crate) fn count(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    binomial(n as u64, k as u64)
}

/// All size-`k` subsets of `{0..n}` in lexicographic order.
///
/// Callers are responsible for budget checks via [`count`] before
/// materializing the list.
pub(crate) fn enumerate(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance to the next lexicographic combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Complement of `subset` (sorted) within `{0..n}`.
pub(crate) fn complement(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; n];
    for &i in subset {
        mask[i] = true;
    }
    (0..n).filter(|&i| !mask[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lexicographic_order() {
        let subs = enumerate(4, 2);
        assert_eq!(
            subs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subs.len() as u64, count(4, 2));
    }

    #[test]
    fn edge_sizes() {
        assert_eq!(enumerate(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(enumerate(3, 3), vec![vec![0, 1, 2]]);
        assert!(enumerate(2, 3).is_empty());
        assert_eq!(count(10, 5), 252);
    }

    #[test]
    fn complement_partitions_ground_set() {
        let c = complement(5, &[1, 3]);
        assert_eq!(c, vec![0, 2, 4]);
    }
}
