//! Deterministic enumeration of coordinate subsets.

use alloc::vec::Vec;

/// All size-`k` subsets of `{0, ..., n-1}` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    debug_assert!(k <= n);
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k == 0 {
        out.push(current);
        return out;
    }
    loop {
        out.push(current.clone());
        // advance to the next subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// All subsets of `{0, ..., n-1}`, ordered by bitmask value, each ascending.
pub(crate) fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    debug_assert!(n < usize::BITS as usize);
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            alloc::vec![
                alloc::vec![0, 1],
                alloc::vec![0, 2],
                alloc::vec![0, 3],
                alloc::vec![1, 2],
                alloc::vec![1, 3],
                alloc::vec![2, 3],
            ]
        );
    }

    #[test]
    fn k_subsets_edge_sizes() {
        assert_eq!(k_subsets(3, 0).len(), 1);
        assert_eq!(k_subsets(3, 3), alloc::vec![alloc::vec![0, 1, 2]]);
        assert_eq!(k_subsets(5, 1).len(), 5);
        assert_eq!(k_subsets(6, 4).len(), 15);
    }

    #[test]
    fn all_subsets_counts_and_order() {
        let subs = all_subsets(3);
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], alloc::vec![] as Vec<usize>);
        assert_eq!(subs[3], alloc::vec![0, 1]);
        assert_eq!(subs[7], alloc::vec![0, 1, 2]);
    }
}
