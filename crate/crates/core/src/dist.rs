//! Finite probability distributions with exact rational weights.

use crate::error::{domain, Result};
use crate::rational::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A discrete probability distribution over values of type `T`.
///
/// The support map stores only strictly positive probabilities and they sum
/// to exactly 1; both are enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Distribution<T: Ord> {
    support: BTreeMap<T, Q>,
}

impl<T: Ord + Clone + std::fmt::Debug> Distribution<T> {
    pub fn new(weights: impl IntoIterator<Item = (T, Q)>) -> Result<Distribution<T>> {
        let mut support = BTreeMap::new();
        let mut total = Q::zero();
        for (t, p) in weights {
            if p.is_zero() {
                continue;
            }
            if p.is_negative() {
                return Err(domain(format!("negative probability {p} for {t:?}")));
            }
            total += &p;
            if let Some(prev) = support.insert(t.clone(), p) {
                let entry = support.get_mut(&t).unwrap();
                *entry += prev;
            }
        }
        if !total.is_one() {
            return Err(domain(format!("probabilities sum to {total}, expected 1/1")));
        }
        Ok(Distribution { support })
    }

    pub fn dirac(t: T) -> Distribution<T> {
        let mut support = BTreeMap::new();
        support.insert(t, Q::one());
        Distribution { support }
    }

    pub fn uniform(items: impl IntoIterator<Item = T>) -> Distribution<T> {
        let items: Vec<T> = items.into_iter().collect();
        assert!(!items.is_empty(), "uniform distribution over empty set");
        let p = Q::one() / Q::from_int(items.len() as i64);
        let mut support = BTreeMap::new();
        for t in items {
            *support.entry(t).or_insert_with(Q::zero) += &p;
        }
        Distribution { support }
    }

    /// True iff the whole mass sits on a single element.
    pub fn is_deterministic(&self) -> bool {
        self.support.len() == 1
    }

    /// Probability of a single element (0 if outside the support).
    pub fn prob(&self, t: &T) -> Q {
        self.support.get(t).cloned().unwrap_or_else(Q::zero)
    }

    /// Mass of a subset: mu[S] = sum over t in S of mu(t).
    pub fn mass<F: Fn(&T) -> bool>(&self, in_set: F) -> Q {
        let mut total = Q::zero();
        for (t, p) in &self.support {
            if in_set(t) {
                total += p;
            }
        }
        total
    }

    pub fn support(&self) -> impl Iterator<Item = (&T, &Q)> {
        self.support.iter()
    }

    pub fn support_set(&self) -> Vec<&T> {
        self.support.keys().collect()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Pushes the distribution through a mapping of elements.
    pub fn map<U: Ord + Clone + std::fmt::Debug, F: Fn(&T) -> U>(&self, f: F) -> Distribution<U> {
        let mut support: BTreeMap<U, Q> = BTreeMap::new();
        for (t, p) in &self.support {
            *support.entry(f(t)).or_insert_with(Q::zero) += p;
        }
        Distribution { support }
    }

    /// Expectation of a rational-valued function under the distribution.
    pub fn expect<F: Fn(&T) -> Q>(&self, f: F) -> Q {
        let mut total = Q::zero();
        for (t, p) in &self.support {
            total += f(t) * p;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rejects_bad_mass() {
        assert!(Distribution::new([("a", q(1, 2)), ("b", q(1, 3))]).is_err());
        assert!(Distribution::new([("a", q(3, 2)), ("b", q(-1, 2))]).is_err());
    }

    #[test]
    fn merges_duplicates_and_drops_zeros() {
        let d = Distribution::new([("a", q(1, 2)), ("a", q(1, 2)), ("b", q(0, 1))]).unwrap();
        assert!(d.is_deterministic());
        assert_eq!(d.prob(&"a"), q(1, 1));
    }

    #[test]
    fn mass_and_expectation() {
        let d = Distribution::new([("a", q(1, 4)), ("b", q(3, 4))]).unwrap();
        assert_eq!(d.mass(|t| *t == "b"), q(3, 4));
        assert_eq!(d.expect(|t| if *t == "a" { q(1, 1) } else { q(0, 1) }), q(1, 4));
        let pushed = d.map(|_| "x");
        assert!(pushed.is_deterministic());
    }
}
