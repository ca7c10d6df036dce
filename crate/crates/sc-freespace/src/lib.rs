//! Discrete free grids, continuous free-space diagrams and their critical points.

pub mod exec;

mod cell;
mod critical;
mod diagram;
mod grid;

pub use cell::{quad_roots, CellGeom};
pub use critical::{enumerate_internal_critical_points, InternalCriticalPoint, InternalKind, InternalScan};
pub use diagram::{
    build_continuous_fsd, CellFreeSpace, ExternalCriticalPoint, ExternalKind, FreeSpaceDiagram, Span,
};
pub use exec::Exec;
pub use grid::{build_discrete_grid, build_discrete_grid_with, DiscreteFreeGrid};
