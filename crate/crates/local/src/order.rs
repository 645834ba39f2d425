//! The parity preference order on colors and the even/odd ceilings.

use std::cmp::Ordering;

/// Compares colors by how much Player A likes them: odds descending, then
/// evens ascending. So 3 < 1 < 0 < 2 < 4.
pub fn parity_cmp(m: usize, n: usize) -> Ordering {
    match (m % 2, n % 2) {
        (1, 0) => Ordering::Less,
        (0, 1) => Ordering::Greater,
        (1, 1) => n.cmp(&m),
        _ => m.cmp(&n),
    }
}

/// The parity-order maximum of a set of colors; None on an empty set.
pub fn max_par(colors: impl IntoIterator<Item = usize>) -> Option<usize> {
    colors.into_iter().max_by(|&a, &b| parity_cmp(a, b))
}

/// Smallest even integer >= n.
pub fn even_ceil_val(n: usize) -> usize {
    n + n % 2
}

/// Smallest odd integer >= n.
pub fn odd_ceil_val(n: usize) -> usize {
    n + 1 - n % 2
}

/// Smallest even integer >= every element (0 on an empty set).
pub fn even_ceil(colors: impl IntoIterator<Item = usize>) -> usize {
    even_ceil_val(colors.into_iter().max().unwrap_or(0))
}

/// Smallest odd integer >= every element (1 on an empty set).
pub fn odd_ceil(colors: impl IntoIterator<Item = usize>) -> usize {
    odd_ceil_val(colors.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(parity_cmp(3, 1), Ordering::Less);
        assert_eq!(parity_cmp(1, 0), Ordering::Less);
        assert_eq!(parity_cmp(0, 2), Ordering::Less);
        assert_eq!(parity_cmp(2, 2), Ordering::Equal);
        assert_eq!(parity_cmp(4, 1), Ordering::Greater);
    }

    #[test]
    fn maxima_and_ceilings() {
        assert_eq!(max_par([0, 1, 2, 3]), Some(2));
        assert_eq!(max_par([3, 1]), Some(1));
        assert_eq!(max_par([]), None);
        assert_eq!(even_ceil([1, 2]), 2);
        assert_eq!(odd_ceil([1, 2]), 3);
        assert_eq!(even_ceil([3]), 4);
        assert_eq!(even_ceil_val(0), 0);
        assert_eq!(odd_ceil_val(0), 1);
    }
}
