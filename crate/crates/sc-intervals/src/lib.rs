//! A set of closed intervals in which no interval contains another.
//!
//! Sorted by `lo` such a set is also sorted by `hi`, so the greedy
//! earliest-finish schedule is a sequence of successor jumps. Intervals that
//! share a single endpoint do not overlap.

use ordered_float::OrderedFloat;
use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Included, Unbounded};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IntervalError {
    #[error("interval ({0}, {1}) is not a valid closed interval")]
    Invalid(f64, f64),
    #[error("inserting ({0}, {1}) would break monotonicity against ({2}, {3})")]
    Containment(f64, f64, f64, f64),
    #[error("interval ({0}, {1}) is not present")]
    Missing(f64, f64),
}

type Key = OrderedFloat<f64>;

#[derive(Debug, Clone, Default)]
pub struct MonotoneIntervalStore {
    // lo -> (hi, multiplicity)
    map: BTreeMap<Key, (f64, usize)>,
    len: usize,
}

impl MonotoneIntervalStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn clear(&mut self) {
        self.map.clear();
        self.len = 0;
    }

    pub fn contains(&self, lo: f64, hi: f64) -> bool {
        self.map.get(&OrderedFloat(lo)).is_some_and(|&(h, _)| h == hi)
    }

    /// Intervals in increasing order, repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.map
            .iter()
            .flat_map(|(k, &(h, c))| std::iter::repeat_n((k.0, h), c))
    }

    pub fn insert(&mut self, lo: f64, hi: f64) -> Result<(), IntervalError> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::Invalid(lo, hi));
        }
        let k = OrderedFloat(lo);
        if let Some(&(h, _)) = self.map.get(&k) {
            if h != hi {
                return Err(IntervalError::Containment(lo, hi, lo, h));
            }
        } else {
            if let Some((pk, &(ph, _))) = self.map.range(..k).next_back() {
                if ph >= hi {
                    return Err(IntervalError::Containment(lo, hi, pk.0, ph));
                }
            }
            if let Some((sk, &(sh, _))) = self.map.range((Excluded(k), Unbounded)).next() {
                if sh <= hi {
                    return Err(IntervalError::Containment(lo, hi, sk.0, sh));
                }
            }
        }
        self.map.entry(k).or_insert((hi, 0)).1 += 1;
        self.len += 1;
        Ok(())
    }

    pub fn remove(&mut self, lo: f64, hi: f64) -> Result<(), IntervalError> {
        let k = OrderedFloat(lo);
        match self.map.get_mut(&k) {
            Some((h, c)) if *h == hi => {
                *c -= 1;
                if *c == 0 {
                    self.map.remove(&k);
                }
                self.len -= 1;
                Ok(())
            }
            _ => Err(IntervalError::Missing(lo, hi)),
        }
    }

    /// Size of a largest pairwise non-overlapping subset.
    pub fn max_nonoverlapping(&self) -> usize {
        self.schedule(|_, _| {})
    }

    /// One largest non-overlapping subset, in increasing order.
    pub fn witness(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        self.schedule(|lo, hi| out.push((lo, hi)));
        out
    }

    fn schedule(&self, mut take: impl FnMut(f64, f64)) -> usize {
        let mut count = 0;
        let mut from = Unbounded;
        while let Some((k, &(h, c))) = self.map.range((from, Unbounded)).next() {
            let copies = if k.0 == h { c } else { 1 };
            for _ in 0..copies {
                take(k.0, h);
            }
            count += copies;
            from = if k.0 == h { Excluded(*k) } else { Included(OrderedFloat(h)) };
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let mut s = MonotoneIntervalStore::new();
        assert_eq!(s.max_nonoverlapping(), 0);
        s.insert(1.0, 3.0).unwrap();
        assert!(matches!(s.insert(0.0, 10.0), Err(IntervalError::Containment(..))));
        s.insert(2.0, 4.0).unwrap();
        s.insert(5.0, 6.0).unwrap();
        assert_eq!(s.max_nonoverlapping(), 2);
        assert_eq!(s.witness(), vec![(1.0, 3.0), (5.0, 6.0)]);
    }

    #[test]
    fn insert_remove_roundtrip() {
        let mut s = MonotoneIntervalStore::new();
        s.insert(1.0, 3.0).unwrap();
        s.remove(1.0, 3.0).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.remove(1.0, 3.0), Err(IntervalError::Missing(1.0, 3.0)));
    }

    #[test]
    fn touching_intervals_do_not_overlap() {
        let mut s = MonotoneIntervalStore::new();
        s.insert(0.0, 1.0).unwrap();
        s.insert(1.0, 2.0).unwrap();
        s.insert(2.0, 3.0).unwrap();
        assert_eq!(s.max_nonoverlapping(), 3);
        assert!(s.insert(2.0, 2.0).is_err());
        s.insert(5.0, 5.0).unwrap();
        s.insert(5.0, 5.0).unwrap();
        assert_eq!(s.max_nonoverlapping(), 5);
    }

    #[test]
    fn contained_inside_rejected() {
        let mut s = MonotoneIntervalStore::new();
        s.insert(0.0, 10.0).unwrap();
        assert!(s.insert(1.0, 3.0).is_err());
        assert!(s.insert(0.0, 5.0).is_err());
        assert!(s.insert(f64::NAN, 1.0).is_err());
    }
}
