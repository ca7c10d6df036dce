//! Independent, obviously-correct reference procedures.
//!
//! Nothing here uses the free-space diagram, the reach graph or the
//! link-cut forest; only points, trajectories and the shared tolerance.

mod altgodau;
mod discrete;
mod grid;

pub use altgodau::{continuous_frechet_decide_oracle, sc_witness_frechet_ok};
pub use discrete::{candidate_end, discrete_frechet_dp, discrete_min_ends, sc_discrete_bruteforce, DiscreteOracleResult};
pub use grid::{
    line_to_line_path_grid, sc_continuous_bruteforce, sc_continuous_gated, sc_continuous_grid, GridPaths,
    GridResolution, MarginCertificate,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("instance too large for the oracle: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("no margin certificate supplied")]
    NoCertificate,
    #[error("resolution too coarse: grid error {needed} exceeds certified slack {slack}")]
    ResolutionTooCoarse { needed: f64, slack: f64 },
    #[error("grid answers disagree between d and d + margin; no ground truth")]
    Inconclusive,
    #[error("answers differ between res and 2·res")]
    Unstable,
    #[error("resolution must be a power of two ≥ 4, got {0}")]
    BadResolution(usize),
}
