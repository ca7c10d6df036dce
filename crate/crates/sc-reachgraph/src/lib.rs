//! The graph G′ whose directed reachability equals monotone reachability
//! between critical points of a continuous free-space diagram.

mod graph;
mod lane;
mod sparse;
mod tree;

pub use graph::{
    build_reach_graph, frechet_decide_continuous, frechet_decide_with, reach_graph_for, NodeKind, ReachError,
    ReachGraph, Role,
};
pub use lane::Lane;
pub use sparse::SparseTable;
pub use tree::LineTree;

/// Rightmost exit coordinate from the lowest free point of every vertical
/// line of row `j`.
pub fn rightmost_reach_row(fsd: &sc_freespace::FreeSpaceDiagram, j: usize) -> Vec<Option<f64>> {
    let lane = Lane::row(fsd, j);
    (0..fsd.n1())
        .map(|e| {
            let s = lane.cross(e);
            if s.is_empty() { None } else { lane.farthest(e as f64, s.lo) }
        })
        .collect()
}

/// Topmost exit coordinate from the leftmost free point of every horizontal
/// line of column `i`.
pub fn topmost_reach_column(fsd: &sc_freespace::FreeSpaceDiagram, i: usize) -> Vec<Option<f64>> {
    let lane = Lane::column(fsd, i);
    (0..fsd.n2())
        .map(|k| {
            let s = lane.cross(k);
            if s.is_empty() { None } else { lane.farthest(k as f64, s.lo) }
        })
        .collect()
}
