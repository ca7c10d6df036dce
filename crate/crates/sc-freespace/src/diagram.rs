use crate::cell::CellGeom;
use crate::exec::{map_range, Exec};
use sc_geometry::{free_interval_point_vs_segment, within, ParamInterval, Point2, Trajectory};
use serde::{Deserialize, Serialize};

/// Closed interval in absolute diagram coordinates; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
}

impl Span {
    pub const EMPTY: Span = Span { lo: f64::INFINITY, hi: f64::NEG_INFINITY };

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    #[inline]
    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn interval(&self) -> Option<ParamInterval> {
        (!self.is_empty()).then(|| ParamInterval::new(self.lo, self.hi))
    }

    fn from_local(iv: Option<ParamInterval>, base: f64) -> Span {
        match iv {
            Some(iv) => Span { lo: base + iv.lo, hi: base + iv.hi },
            None => Span::EMPTY,
        }
    }
}

/// The four edge intervals of a cell, in edge-local parameters `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellFreeSpace {
    pub cell: (usize, usize),
    pub left: Option<ParamInterval>,
    pub right: Option<ParamInterval>,
    pub bottom: Option<ParamInterval>,
    pub top: Option<ParamInterval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExternalKind {
    VerticalEndpoint,
    HorizontalEndpoint,
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExternalCriticalPoint {
    pub x: f64,
    pub y: f64,
    pub cell: (usize, usize),
    pub kind: ExternalKind,
}

/// Continuous free-space diagram `F_d(T₁, T₂)`. The x-axis runs along `T₁`
/// and the y-axis along `T₂`; coordinates are 0-based vertex offsets.
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    t1: Trajectory,
    t2: Trajectory,
    d: f64,
    n1: usize,
    n2: usize,
    vert: Vec<Span>,
    horiz: Vec<Span>,
    corners: Vec<bool>,
    external: Vec<ExternalCriticalPoint>,
}

pub fn build_continuous_fsd(t1: &Trajectory, t2: &Trajectory, d: f64) -> FreeSpaceDiagram {
    FreeSpaceDiagram::build_with(t1, t2, d, Exec::default())
}

impl FreeSpaceDiagram {
    pub fn build_with(t1: &Trajectory, t2: &Trajectory, d: f64, exec: Exec) -> Self {
        let (n1, n2) = (t1.len(), t2.len());
        let rows = n2.saturating_sub(1);
        let cols = n1.saturating_sub(1);
        let corners: Vec<bool> = map_range(exec, n1, |e| {
            let p = t1.vertex(e);
            (0..n2).map(|k| within(p.dist(t2.vertex(k)), d)).collect::<Vec<_>>()
        })
        .concat();
        let vert: Vec<Span> = map_range(exec, n1, |e| {
            let p = t1.vertex(e);
            (0..rows)
                .map(|j| {
                    let raw = free_interval_point_vs_segment(p, t2.vertex(j), t2.vertex(j + 1), d);
                    let mut s = Span::from_local(raw, j as f64);
                    snap(&mut s, j as f64, corners[e * n2 + j], (j + 1) as f64, corners[e * n2 + j + 1]);
                    s
                })
                .collect::<Vec<_>>()
        })
        .concat();
        let horiz: Vec<Span> = map_range(exec, n2, |k| {
            let p = t2.vertex(k);
            (0..cols)
                .map(|i| {
                    let raw = free_interval_point_vs_segment(p, t1.vertex(i), t1.vertex(i + 1), d);
                    let mut s = Span::from_local(raw, i as f64);
                    snap(&mut s, i as f64, corners[i * n2 + k], (i + 1) as f64, corners[(i + 1) * n2 + k]);
                    s
                })
                .collect::<Vec<_>>()
        })
        .concat();
        let mut fsd = FreeSpaceDiagram {
            t1: t1.clone(),
            t2: t2.clone(),
            d,
            n1,
            n2,
            vert,
            horiz,
            corners,
            external: Vec::new(),
        };
        fsd.external = fsd.collect_external();
        fsd
    }

    fn collect_external(&self) -> Vec<ExternalCriticalPoint> {
        let mut out = Vec::new();
        let cell_of = |x: usize, y: usize| {
            (x.min(self.cols().saturating_sub(1)), y.min(self.rows().saturating_sub(1)))
        };
        for e in 0..self.n1 {
            for k in 0..self.n2 {
                if self.corner_free(e, k) {
                    out.push(ExternalCriticalPoint {
                        x: e as f64,
                        y: k as f64,
                        cell: cell_of(e, k),
                        kind: ExternalKind::Corner,
                    });
                }
            }
            for j in 0..self.rows() {
                let s = self.vert(e, j);
                if s.is_empty() {
                    continue;
                }
                for y in [s.lo, s.hi] {
                    if y != j as f64 && y != (j + 1) as f64 {
                        out.push(ExternalCriticalPoint {
                            x: e as f64,
                            y,
                            cell: cell_of(e, j),
                            kind: ExternalKind::VerticalEndpoint,
                        });
                    }
                }
            }
        }
        for k in 0..self.n2 {
            for i in 0..self.cols() {
                let s = self.horiz(k, i);
                if s.is_empty() {
                    continue;
                }
                for x in [s.lo, s.hi] {
                    if x != i as f64 && x != (i + 1) as f64 {
                        out.push(ExternalCriticalPoint {
                            x,
                            y: k as f64,
                            cell: cell_of(i, k),
                            kind: ExternalKind::HorizontalEndpoint,
                        });
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(a.kind.cmp(&b.kind))
        });
        out.dedup_by(|a, b| a.x == b.x && a.y == b.y);
        out
    }

    #[inline]
    pub fn t1(&self) -> &Trajectory {
        &self.t1
    }

    #[inline]
    pub fn t2(&self) -> &Trajectory {
        &self.t2
    }

    #[inline]
    pub fn d(&self) -> f64 {
        self.d
    }

    #[inline]
    pub fn n1(&self) -> usize {
        self.n1
    }

    #[inline]
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Number of cell columns (`n1 − 1`).
    #[inline]
    pub fn cols(&self) -> usize {
        self.n1.saturating_sub(1)
    }

    /// Number of cell rows (`n2 − 1`).
    #[inline]
    pub fn rows(&self) -> usize {
        self.n2.saturating_sub(1)
    }

    /// Free span of the vertical edge `x = e`, row `j` (absolute y).
    #[inline]
    pub fn vert(&self, e: usize, j: usize) -> Span {
        self.vert[e * self.rows() + j]
    }

    /// Free span of the horizontal edge `y = k`, column `i` (absolute x).
    #[inline]
    pub fn horiz(&self, k: usize, i: usize) -> Span {
        self.horiz[k * self.cols() + i]
    }

    #[inline]
    pub fn corner_free(&self, e: usize, k: usize) -> bool {
        self.corners[e * self.n2 + k]
    }

    pub fn external(&self) -> &[ExternalCriticalPoint] {
        &self.external
    }

    pub fn cell(&self, i: usize, j: usize) -> CellFreeSpace {
        let local = |s: Span, base: usize| {
            s.interval().map(|iv| ParamInterval::new(iv.lo - base as f64, iv.hi - base as f64))
        };
        CellFreeSpace {
            cell: (i, j),
            left: local(self.vert(i, j), j),
            right: local(self.vert(i + 1, j), j),
            bottom: local(self.horiz(j, i), i),
            top: local(self.horiz(j + 1, i), i),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = CellFreeSpace> + '_ {
        (0..self.rows()).flat_map(move |j| (0..self.cols()).map(move |i| self.cell(i, j)))
    }

    pub fn cell_geom(&self, i: usize, j: usize) -> CellGeom {
        CellGeom::new(
            self.t1.vertex(i),
            self.t1.vertex(i + 1),
            self.t2.vertex(j),
            self.t2.vertex(j + 1),
            self.d,
        )
    }

    /// Free span of the vertical line through `x` (any real offset) in row `j`.
    pub fn vline_span(&self, x: f64, j: usize) -> Span {
        if x.fract() == 0.0 && (x as usize) < self.n1 {
            return self.vert(x as usize, j);
        }
        let p = self.t1.eval0(x);
        let raw = free_interval_point_vs_segment(p, self.t2.vertex(j), self.t2.vertex(j + 1), self.d);
        Span::from_local(raw, j as f64)
    }

    /// Free span of the horizontal line through `y` in column `i`.
    pub fn hline_span(&self, y: f64, i: usize) -> Span {
        if y.fract() == 0.0 && (y as usize) < self.n2 {
            return self.horiz(y as usize, i);
        }
        let p = self.t2.eval0(y);
        let raw = free_interval_point_vs_segment(p, self.t1.vertex(i), self.t1.vertex(i + 1), self.d);
        Span::from_local(raw, i as f64)
    }

    pub fn point(&self, x: f64, y: f64) -> (Point2, Point2) {
        (self.t1.eval0(x), self.t2.eval0(y))
    }

    pub fn is_free(&self, x: f64, y: f64) -> bool {
        let (p, q) = self.point(x, y);
        within(p.dist(q), self.d)
    }

    /// Row index containing `y`, with the top line assigned to the last row.
    pub fn row_of(&self, y: f64) -> usize {
        (y.max(0.0).floor() as usize).min(self.rows().saturating_sub(1))
    }

    /// Column index containing `x`, with the right line assigned to the last column.
    pub fn col_of(&self, x: f64) -> usize {
        (x.max(0.0).floor() as usize).min(self.cols().saturating_sub(1))
    }
}

/// Makes an edge span agree with the freeness of its end corners.
fn snap(s: &mut Span, lo_end: f64, lo_free: bool, hi_end: f64, hi_free: bool) {
    if !s.is_empty() {
        if !lo_free && s.lo == lo_end {
            s.lo = next_up(lo_end);
        }
        if !hi_free && s.hi == hi_end {
            s.hi = next_down(hi_end);
        }
        if s.lo > s.hi {
            *s = Span::EMPTY;
        }
    }
    if lo_free {
        if s.is_empty() {
            *s = Span { lo: lo_end, hi: lo_end };
        } else {
            s.lo = lo_end;
        }
    }
    if hi_free {
        if s.is_empty() {
            *s = Span { lo: hi_end, hi: hi_end };
        } else {
            s.hi = hi_end;
        }
    }
}

fn next_up(v: f64) -> f64 {
    v + f64::EPSILON * v.abs().max(1.0)
}

fn next_down(v: f64) -> f64 {
    v - f64::EPSILON * v.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    #[test]
    fn self_segment_all_edges_free() {
        let t = traj(&[(0., 0.), (1., 0.)]);
        let f = build_continuous_fsd(&t, &t, 0.1);
        let c = f.cell(0, 0);
        for iv in [c.left, c.right, c.bottom, c.top] {
            assert!(iv.is_some());
        }
        assert_eq!(c.left.unwrap().lo, 0.0);
        assert_eq!(c.right.unwrap().hi, 1.0);
    }

    #[test]
    fn parallel_far_segments_all_empty() {
        let a = traj(&[(0., 0.), (1., 0.)]);
        let b = traj(&[(0., 2.), (1., 2.)]);
        let f = build_continuous_fsd(&a, &b, 1.0);
        let c = f.cell(0, 0);
        assert!(c.left.is_none() && c.right.is_none() && c.bottom.is_none() && c.top.is_none());
        assert!(f.external().is_empty());
    }

    #[test]
    fn corners_agree_with_point_tests() {
        let a = traj(&[(0., 0.), (2., 0.5), (3., 3.)]);
        let b = traj(&[(0.5, 0.2), (1.5, 1.0), (3.2, 2.5), (2.0, 0.0)]);
        let f = build_continuous_fsd(&a, &b, 1.0);
        for e in 0..f.n1() {
            for k in 0..f.n2() {
                let free = f.is_free(e as f64, k as f64);
                assert_eq!(free, f.corner_free(e, k));
                if k < f.rows() {
                    assert_eq!(f.vert(e, k).contains(k as f64), free);
                }
                if e < f.cols() {
                    assert_eq!(f.horiz(k, e).contains(e as f64), free);
                }
            }
        }
    }

    #[test]
    fn external_points_sorted_and_free() {
        let a = traj(&[(0., 0.), (2., 0.5), (3., 3.)]);
        let b = traj(&[(0.5, 0.2), (1.5, 1.0), (3.2, 2.5), (2.0, 0.0)]);
        let f = build_continuous_fsd(&a, &b, 1.0);
        let ext = f.external();
        assert!(!ext.is_empty());
        for w in ext.windows(2) {
            assert!((w[0].x, w[0].y) < (w[1].x, w[1].y));
        }
        for p in ext {
            let (u, v) = f.point(p.x, p.y);
            assert!(u.dist(v) <= 1.0 + 1e-8);
        }
    }

    #[test]
    fn fractional_line_spans() {
        let a = traj(&[(0., 0.), (2., 0.)]);
        let b = traj(&[(0., 0.), (2., 0.)]);
        let f = build_continuous_fsd(&a, &b, 0.5);
        let s = f.vline_span(0.5, 0);
        assert!((s.lo - 0.25).abs() < 1e-9 && (s.hi - 0.75).abs() < 1e-9);
        let h = f.hline_span(0.5, 0);
        assert!((h.lo - 0.25).abs() < 1e-9 && (h.hi - 0.75).abs() < 1e-9);
    }
}
