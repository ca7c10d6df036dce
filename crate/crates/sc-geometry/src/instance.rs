use crate::{Point2, Trajectory};
use serde::{Deserialize, Serialize};

/// One subtrajectory-clustering decision instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SCInstance {
    pub t: Trajectory,
    pub m: usize,
    pub ell: f64,
    pub d: f64,
}

impl SCInstance {
    pub fn new(t: Trajectory, m: usize, ell: f64, d: f64) -> Self {
        SCInstance { t, m, ell, d }
    }
}

/// Reference `(s, t)` and the `m − 1` monotone paths from `l_s` to `l_t`.
/// All coordinates are 1-based trajectory parameters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SCWitness {
    pub reference: (f64, f64),
    pub paths: Vec<Vec<Point2>>,
    pub intervals: Vec<(f64, f64)>,
}

impl SCWitness {
    /// Checks the interval conditions: pairwise overlaps and overlaps with
    /// `[s, t]` are at most one point (up to `tol`).
    pub fn intervals_ok(&self, tol: f64) -> bool {
        let (s, t) = self.reference;
        let mut iv = self.intervals.clone();
        if iv.iter().any(|&(lo, hi)| lo > hi + tol) {
            return false;
        }
        if iv.iter().any(|&(lo, hi)| lo < t - tol && hi > s + tol) {
            return false;
        }
        iv.sort_by(|a, b| a.0.total_cmp(&b.0));
        iv.windows(2).all(|w| w[1].0 >= w[0].1 - tol)
    }
}
