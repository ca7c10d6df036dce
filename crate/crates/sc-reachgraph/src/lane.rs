//! One row (or column) of the diagram seen as a lane of cells crossed by
//! perpendicular lines. For a row the along-coordinate is x, the cross
//! coordinate is y, the crossing lines are the vertical lines and the exit
//! edges are the cells' top edges. A column is the transpose.

use crate::sparse::SparseTable;
use sc_freespace::{FreeSpaceDiagram, Span};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Lane {
    lo: Vec<f64>,
    hi: Vec<f64>,
    lo_max: SparseTable,
    hi_min: SparseTable,
    exit: Vec<Span>,
    prev_exit: Vec<usize>,
    memo: Vec<f64>,
}

impl Lane {
    pub fn new(cross: Vec<Span>, exit: Vec<Span>) -> Self {
        debug_assert_eq!(cross.len(), exit.len() + 1);
        let lo: Vec<f64> = cross.iter().map(|s| s.lo).collect();
        let hi: Vec<f64> = cross.iter().map(|s| s.hi).collect();
        let mut prev_exit = Vec::with_capacity(exit.len());
        let mut last = NONE;
        for (i, s) in exit.iter().enumerate() {
            if !s.is_empty() {
                last = i;
            }
            prev_exit.push(last);
        }
        let mut lane = Lane {
            lo_max: SparseTable::new(&lo, true),
            hi_min: SparseTable::new(&hi, false),
            lo,
            hi,
            exit,
            prev_exit,
            memo: Vec::new(),
        };
        let n = lane.lo.len();
        lane.memo = vec![f64::NAN; n];
        for k in (0..n).rev() {
            if lane.lo[k] <= lane.hi[k] {
                lane.memo[k] = lane.farthest(k as f64, lane.lo[k]).unwrap_or(f64::NAN);
            }
        }
        lane
    }

    /// Lane of row `j`.
    pub fn row(fsd: &FreeSpaceDiagram, j: usize) -> Self {
        let cross = (0..fsd.n1()).map(|e| fsd.vert(e, j)).collect();
        let exit = (0..fsd.cols()).map(|i| fsd.horiz(j + 1, i)).collect();
        Lane::new(cross, exit)
    }

    /// Lane of column `i`.
    pub fn column(fsd: &FreeSpaceDiagram, i: usize) -> Self {
        let cross = (0..fsd.n2()).map(|k| fsd.horiz(k, i)).collect();
        let exit = (0..fsd.rows()).map(|j| fsd.vert(i + 1, j)).collect();
        Lane::new(cross, exit)
    }

    pub fn cells(&self) -> usize {
        self.exit.len()
    }

    pub fn cross(&self, k: usize) -> Span {
        Span { lo: self.lo[k], hi: self.hi[k] }
    }

    /// Intersection of the cross spans of lines `a..=b`.
    pub fn cross_range(&self, a: usize, b: usize) -> Span {
        Span { lo: self.lo_max.query(a, b), hi: self.hi_min.query(a, b) }
    }

    /// First crossing line at or after `from` that either lifts or blocks a
    /// path travelling at height `h`.
    fn trigger(&self, from: usize, h: f64) -> Option<usize> {
        match (self.lo_max.first_past(from, h), self.hi_min.first_past(from, h)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn start_cell(&self, pos: f64) -> Option<usize> {
        let n = self.cells();
        let c0 = (pos.max(0.0).floor() as usize).min(n.saturating_sub(1));
        (n > 0 && pos <= n as f64).then_some(c0)
    }

    /// Largest exit coordinate among cells `c0..=m` (exit must be `≥ pos`).
    fn fallback(&self, c0: usize, m: usize, pos: f64) -> Option<f64> {
        let c = self.prev_exit[m];
        if c == NONE || c < c0 {
            return None;
        }
        let s = self.exit[c];
        (s.hi >= pos).then_some(s.hi)
    }

    /// Farthest exit coordinate reachable by a path that starts at along
    /// position `pos` and cross height `h`, stays in the lane and leaves
    /// through an exit edge.
    pub fn farthest(&self, pos: f64, h: f64) -> Option<f64> {
        let c0 = self.start_cell(pos)?;
        match self.trigger(c0 + 1, h) {
            None => self.fallback(c0, self.cells() - 1, pos),
            Some(k) if self.hi[k] < h.max(self.lo[k]) => self.fallback(c0, k - 1, pos),
            Some(k) => {
                let m = self.memo[k];
                if m.is_nan() { self.fallback(c0, k - 1, pos) } else { Some(m) }
            }
        }
    }

    /// Lowest height at which a path from `(pos, h)` reaches crossing line
    /// `line > pos`, or `None` when blocked.
    pub fn lowest_at_line(&self, pos: f64, mut h: f64, line: usize) -> Option<f64> {
        let c0 = self.start_cell(pos)?;
        if line <= c0 || line > self.cells() {
            return None;
        }
        let mut from = c0 + 1;
        while let Some(k) = self.trigger(from, h) {
            if k > line {
                break;
            }
            if self.hi[k] < h.max(self.lo[k]) {
                return None;
            }
            h = self.lo[k];
            from = k + 1;
        }
        Some(h)
    }
}
