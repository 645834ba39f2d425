//! Virtual colorings over a slice and the orders used on them.

use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A (virtual) color in [0, e] for every slice state.
pub type VirtualColoring = BTreeMap<String, usize>;

/// Same color classes for every color in [n, e].
pub fn equivalent_down_to(a: &VirtualColoring, b: &VirtualColoring, n: usize) -> bool {
    a.iter().all(|(q, &c)| {
        let d = b[q];
        (c < n && d < n) || c == d
    })
}

/// `newer` is k-prevailing compared to `older`: equivalent down to k+1 and
/// the k-class only grows.
pub fn prevailing(newer: &VirtualColoring, older: &VirtualColoring, k: usize) -> bool {
    equivalent_down_to(newer, older, k + 1)
        && older
            .iter()
            .filter(|&(_, &c)| c == k)
            .all(|(q, _)| newer[q] == k)
}

/// Lexicographic order on per-color population counts, highest color first.
pub fn lex_compare(a: &VirtualColoring, b: &VirtualColoring, e: usize) -> Ordering {
    let count = |v: &VirtualColoring, k: usize| v.values().filter(|&&c| c == k).count();
    for k in (0..=e).rev() {
        match count(a, k).cmp(&count(b, k)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}
