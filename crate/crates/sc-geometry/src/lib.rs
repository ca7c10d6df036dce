//! Planar geometry for free-space computations.
//!
//! Trajectory parameters follow the usual `[1, n]` convention in the public
//! functions (`point_at`, `arclength_between`, `advance_by_length`). The
//! `*0` helpers take 0-based offsets `u = p - 1`, which is what free-space
//! diagrams use as their coordinates.

mod instance;
mod interval;
mod point;
mod tol;
mod trajectory;

pub use instance::{SCInstance, SCWitness};
pub use interval::{free_interval_point_vs_segment, ParamInterval};
pub use point::Point2;
pub use tol::{eps, slack, within};
pub use trajectory::Trajectory;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("trajectory has no vertices")]
    Empty,
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("parameter {p} outside [1, {n}]")]
    OutOfRange { p: f64, n: usize },
    #[error("reversed parameter range: {a} > {b}")]
    Reversed { a: f64, b: f64 },
    #[error("negative length {0}")]
    NegativeLength(f64),
}
