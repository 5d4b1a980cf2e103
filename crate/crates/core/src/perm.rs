//! In-place lexicographic permutation stepping.

use num_bigint::BigUint;

/// Advances `values` to the next permutation in lexicographic order.
/// Returns `false` (leaving `values` sorted descending) when `values` was the
/// last permutation.
pub fn next_permutation<T: Ord>(values: &mut [T]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Calls `visit` on every permutation of `[1, n]` whose first entry is `first`,
/// in lexicographic order, reusing a single buffer.
pub fn for_each_with_first(n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    debug_assert!((1..=n).contains(&first));
    let mut buf: Vec<usize> = std::iter::once(first)
        .chain((1..=n).filter(|&v| v != first))
        .collect();
    loop {
        visit(&buf);
        if !next_permutation(&mut buf[1..]) {
            break;
        }
    }
}

/// Calls `visit` on every permutation of `[1, n]` in lexicographic order.
pub fn for_each(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut buf: Vec<usize> = (1..=n).collect();
    loop {
        visit(&buf);
        if !next_permutation(&mut buf) {
            break;
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_all_in_order() {
        let mut seen = Vec::new();
        for_each(3, |p| seen.push(p.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
    }

    #[test]
    fn chunks_by_first_entry_concatenate_to_full_order() {
        for n in 1..=6 {
            let mut full = Vec::new();
            for_each(n, |p| full.push(p.to_vec()));
            let mut chunked = Vec::new();
            for first in 1..=n {
                for_each_with_first(n, first, |p| chunked.push(p.to_vec()));
            }
            assert_eq!(full, chunked);
            assert_eq!(BigUint::from(full.len()), factorial(n));
        }
    }

    #[test]
    fn single_element() {
        let mut v = [7];
        assert!(!next_permutation(&mut v));
        let mut count = 0;
        for_each(1, |_| count += 1);
        assert_eq!(count, 1);
    }
}
