//! Instance families from the lower-bound constructions: the reduction
//! from discrete Fréchet distance, the critical-point density family, the
//! OR and AND gadgets, and the full reduction from three orthogonal
//! vectors.

mod bringmann;
mod density;
mod gadgets;
mod threeov;

pub use bringmann::gen_bringmann;
pub use density::{gen_density, DensityInstance};
pub use gadgets::{gen_and_gadget, gen_or_gadget, GadgetPair};
pub use threeov::{gen_3ov, gen_3ov_with, ThreeOVInput, ThreeOVInstance, ThreeOVParams};

use sc_geometry::{Point2, Trajectory};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("empty input trajectory")]
    Empty,
    #[error("radii must satisfy 10·r < r′, got r = {r}, r′ = {r_prime}")]
    Radii { r: f64, r_prime: f64 },
    #[error("ε = {eps} must lie in (0, δ/100) with δ = {delta}")]
    Epsilon { eps: f64, delta: f64 },
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("malformed 3OV input: {0}")]
    BadInput(String),
    #[error("length calibration failed at block {block}: needs {needed}, room {room}")]
    Calibration { block: usize, needed: f64, room: f64 },
}

fn polyline(v: Vec<Point2>) -> Trajectory {
    Trajectory::new(v).expect("generated vertices are finite and non-empty")
}

/// Smallest nonzero gap `|‖a − b‖ − d|` over vertex pairs of `ta × tb`.
/// Gaps below `1e-9·d` are designed contacts and are skipped.
pub fn vertex_margin(ta: &Trajectory, tb: &Trajectory, d: f64) -> f64 {
    let mut m = f64::INFINITY;
    for a in ta.vertices() {
        for b in tb.vertices() {
            let g = (a.dist(*b) - d).abs();
            if g > 1e-9 * d.max(1.0) {
                m = m.min(g);
            }
        }
    }
    m
}
