use crate::{slack, Point2};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ParamInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "reversed interval [{lo}, {hi}]");
        ParamInterval { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Affine image `base + μ` for edge-local parameters.
    pub fn shifted(&self, base: f64) -> ParamInterval {
        ParamInterval::new(base + self.lo, base + self.hi)
    }
}

/// `{μ ∈ [0,1] : ‖p − ((1−μ)a + μb)‖ ≤ d}` with the closed-space slack.
pub fn free_interval_point_vs_segment(
    p: Point2,
    a: Point2,
    b: Point2,
    d: f64,
) -> Option<ParamInterval> {
    let r = d + slack(d);
    let v = b - a;
    let w = a - p;
    let qa = v.norm2();
    let qb = 2.0 * w.dot(v);
    let qc = w.norm2() - r * r;
    let scale = w.norm2().max(r * r).max(1.0);
    if qa <= 1e-300 || qa <= f64::EPSILON * f64::EPSILON * scale {
        return (qc <= 0.0).then_some(ParamInterval::new(0.0, 1.0));
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let sgn = if qb >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (qb + sgn * sq);
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / qa, qc / q) };
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let lo = lo.max(0.0);
    let hi = hi.min(1.0);
    (lo <= hi).then(|| ParamInterval::new(lo, hi))
}
