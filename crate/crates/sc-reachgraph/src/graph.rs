use crate::lane::Lane;
use crate::tree::LineTree;
use sc_freespace::exec::{map_range, Exec};
use sc_freespace::{build_continuous_fsd, FreeSpaceDiagram};
use sc_geometry::{within, Trajectory};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ReachError {
    #[error("point ({0}, {1}) is not in free space")]
    NotFree(f64, f64),
    #[error("unknown node {0}")]
    UnknownNode(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Critical,
    /// Internal node of the tree on horizontal line `k`.
    HTree(u32),
    /// Internal node of the tree on vertical line `e`.
    VTree(u32),
    Extra,
}

/// Which outgoing basic paths a node gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Rightward through its row, exiting on a horizontal line.
    Vertical,
    /// Upward through its column, exiting on a vertical line.
    Horizontal,
    /// Vertical if on a vertical line, horizontal if on a horizontal line.
    Auto,
}

#[derive(Debug, Clone)]
pub struct ReachGraph {
    fsd: FreeSpaceDiagram,
    xs: Vec<f64>,
    ys: Vec<f64>,
    kinds: Vec<NodeKind>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    extra: Vec<Vec<u32>>,
    base_len: usize,
    htrees: Vec<LineTree>,
    vtrees: Vec<LineTree>,
    rows: Vec<Lane>,
    cols: Vec<Lane>,
}

pub fn build_reach_graph(fsd: FreeSpaceDiagram) -> ReachGraph {
    ReachGraph::build_with(fsd, Exec::default())
}

fn is_int(v: f64) -> bool {
    v.fract() == 0.0
}

impl ReachGraph {
    pub fn build_with(fsd: FreeSpaceDiagram, exec: Exec) -> Self {
        let (n1, n2) = (fsd.n1(), fsd.n2());
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut kinds = Vec::new();
        let mut vl: Vec<Vec<u32>> = vec![Vec::new(); n1];
        let mut hl: Vec<Vec<u32>> = vec![Vec::new(); n2];
        for p in fsd.external() {
            let id = xs.len() as u32;
            xs.push(p.x);
            ys.push(p.y);
            kinds.push(NodeKind::Critical);
            if is_int(p.x) {
                vl[p.x as usize].push(id);
            }
            if is_int(p.y) {
                hl[p.y as usize].push(id);
            }
        }
        let critical = xs.len();
        let mut next = critical as u32;
        let mut mk = |ids: Vec<u32>, along: &[f64]| {
            let coords: Vec<f64> = ids.iter().map(|&v| along[v as usize]).collect();
            let t = LineTree::new(ids, coords, next);
            next += t.internal_count() as u32;
            t
        };
        let vtrees: Vec<LineTree> = vl.into_iter().map(|ids| mk(ids, &ys)).collect();
        let htrees: Vec<LineTree> = hl.into_iter().map(|ids| mk(ids, &xs)).collect();
        let total = next as usize;
        xs.resize(total, 0.0);
        ys.resize(total, 0.0);
        kinds.resize(total, NodeKind::Critical);
        for (k, t) in htrees.iter().enumerate() {
            for (id, _, hi) in t.internal_extents() {
                xs[id as usize] = hi;
                ys[id as usize] = k as f64;
                kinds[id as usize] = NodeKind::HTree(k as u32);
            }
        }
        for (e, t) in vtrees.iter().enumerate() {
            for (id, lo, _) in t.internal_extents() {
                xs[id as usize] = e as f64;
                ys[id as usize] = lo;
                kinds[id as usize] = NodeKind::VTree(e as u32);
            }
        }
        let rows = map_range(exec, fsd.rows(), |j| Lane::row(&fsd, j));
        let cols = map_range(exec, fsd.cols(), |i| Lane::column(&fsd, i));
        let mut g = ReachGraph {
            fsd,
            xs,
            ys,
            kinds,
            offsets: Vec::new(),
            targets: Vec::new(),
            extra: Vec::new(),
            base_len: total,
            htrees,
            vtrees,
            rows,
            cols,
        };
        let mut outs: Vec<Vec<u32>> = map_range(exec, critical, |v| g.basic_targets(g.xs[v], g.ys[v], Role::Auto));
        outs.resize(total, Vec::new());
        for t in g.htrees.iter().chain(g.vtrees.iter()) {
            for (id, kids) in t.internal_edges() {
                outs[id as usize] = kids;
            }
        }
        let mut offsets = Vec::with_capacity(total + 1);
        offsets.push(0u32);
        let mut targets = Vec::with_capacity(outs.iter().map(Vec::len).sum());
        for o in outs {
            targets.extend_from_slice(&o);
            offsets.push(targets.len() as u32);
        }
        g.offsets = offsets;
        g.targets = targets;
        g
    }

    /// Canonical target nodes of every basic path leaving `(x, y)`.
    pub fn basic_targets(&self, x: f64, y: f64, role: Role) -> Vec<u32> {
        let mut out = Vec::new();
        let (vert, horiz) = match role {
            Role::Vertical => (true, false),
            Role::Horizontal => (false, true),
            Role::Auto => (is_int(x), is_int(y)),
        };
        if vert {
            for j in self.lanes_through(y, self.fsd.rows()) {
                if let Some(xq) = self.rows[j].farthest(x, y) {
                    out.extend(self.htrees[j + 1].canonical(x, xq));
                }
            }
        }
        if horiz {
            for i in self.lanes_through(x, self.fsd.cols()) {
                if let Some(yq) = self.cols[i].farthest(y, x) {
                    out.extend(self.vtrees[i + 1].canonical(y, yq));
                }
            }
        }
        out
    }

    /// Rows (or columns) whose closure contains cross coordinate `c`.
    pub fn lanes_through(&self, c: f64, lanes: usize) -> impl Iterator<Item = usize> {
        let f = c.floor();
        let lo = if is_int(c) && f >= 1.0 { f as usize - 1 } else { f.max(0.0) as usize };
        let hi = (f.max(0.0) as usize).min(lanes.saturating_sub(1));
        (lo..=hi).filter(move |&j| j < lanes)
    }

    pub fn fsd(&self) -> &FreeSpaceDiagram {
        &self.fsd
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() + self.extra.iter().map(Vec::len).sum::<usize>()
    }

    #[inline]
    pub fn coords(&self, v: u32) -> (f64, f64) {
        (self.xs[v as usize], self.ys[v as usize])
    }

    #[inline]
    pub fn kind(&self, v: u32) -> NodeKind {
        self.kinds[v as usize]
    }

    #[inline]
    pub fn out(&self, v: u32) -> &[u32] {
        let v = v as usize;
        if v < self.base_len {
            &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
        } else {
            &self.extra[v - self.base_len]
        }
    }

    pub fn row_lane(&self, j: usize) -> &Lane {
        &self.rows[j]
    }

    pub fn column_lane(&self, i: usize) -> &Lane {
        &self.cols[i]
    }

    pub fn htree(&self, k: usize) -> &LineTree {
        &self.htrees[k]
    }

    pub fn vtree(&self, e: usize) -> &LineTree {
        &self.vtrees[e]
    }

    /// Existing critical node at exactly `(x, y)`.
    pub fn node_at(&self, x: f64, y: f64) -> Option<u32> {
        let (tree, along) = if is_int(x) && (x as usize) < self.vtrees.len() {
            (&self.vtrees[x as usize], y)
        } else if is_int(y) && (y as usize) < self.htrees.len() {
            (&self.htrees[y as usize], x)
        } else {
            return None;
        };
        let i = tree.coords().partition_point(|&c| c < along);
        (i < tree.coords().len() && tree.coords()[i] == along).then(|| tree.leaves()[i])
    }

    /// Adds a node at a free point with its basic-path edges.
    pub fn insert_extra_node(&mut self, x: f64, y: f64, role: Role) -> Result<u32, ReachError> {
        if !self.fsd.is_free(x, y) {
            return Err(ReachError::NotFree(x, y));
        }
        let out = self.basic_targets(x, y, role);
        Ok(self.push_extra(x, y, out))
    }

    /// Adds a node with caller-supplied edges.
    pub fn push_extra(&mut self, x: f64, y: f64, out: Vec<u32>) -> u32 {
        let id = self.xs.len() as u32;
        self.xs.push(x);
        self.ys.push(y);
        self.kinds.push(NodeKind::Extra);
        self.extra.push(out);
        id
    }

    /// Drops every extra node, restoring the base graph.
    pub fn clear_extra(&mut self) {
        self.xs.truncate(self.base_len);
        self.ys.truncate(self.base_len);
        self.kinds.truncate(self.base_len);
        self.extra.clear();
    }

    /// Whether a monotone path inside row `j` joins the two free points.
    pub fn direct_in_row(&self, j: usize, from: (f64, f64), to: (f64, f64)) -> bool {
        direct(&self.rows[j], from, to)
    }

    /// Whether a monotone path inside column `i` joins the two free points.
    pub fn direct_in_column(&self, i: usize, from: (f64, f64), to: (f64, f64)) -> bool {
        direct(&self.cols[i], (from.1, from.0), (to.1, to.0))
    }

    /// Graph nodes reachable from `src`, as a visited mask.
    pub fn reachable_from(&self, src: u32) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![src];
        seen[src as usize] = true;
        while let Some(v) = stack.pop() {
            for &w in self.out(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Monotone reachability from node `src` to an arbitrary free point.
    pub fn reaches_point(&self, src: u32, to: (f64, f64)) -> bool {
        let seen = self.reachable_from(src);
        (0..self.len() as u32).filter(|&v| seen[v as usize]).any(|v| {
            if matches!(self.kind(v), NodeKind::HTree(_) | NodeKind::VTree(_)) {
                return false;
            }
            let from = self.coords(v);
            if from == to {
                return true;
            }
            let row_hit = self
                .lanes_through(to.1, self.fsd.rows())
                .any(|j| covers(j, from.1) && self.direct_in_row(j, from, to));
            row_hit
                || self
                    .lanes_through(to.0, self.fsd.cols())
                    .any(|i| covers(i, from.0) && self.direct_in_column(i, from, to))
        })
    }
}

fn covers(lane: usize, c: f64) -> bool {
    c >= lane as f64 && c <= (lane + 1) as f64
}

fn direct(lane: &Lane, from: (f64, f64), to: (f64, f64)) -> bool {
    if to.0 < from.0 || to.1 < from.1 {
        return false;
    }
    let c0 = from.0.max(0.0).floor();
    if to.0 <= c0 + 1.0 {
        return true;
    }
    let m = to.0.floor() as usize;
    match lane.lowest_at_line(from.0, from.1, m) {
        Some(h) => to.1 >= h,
        None => false,
    }
}

/// Continuous Fréchet decision via depth-first search in G′.
pub fn frechet_decide_continuous(t1: &Trajectory, t2: &Trajectory, d: f64) -> bool {
    frechet_decide_with(t1, t2, d, Exec::default())
}

pub fn frechet_decide_with(t1: &Trajectory, t2: &Trajectory, d: f64, exec: Exec) -> bool {
    if t1.len() == 1 {
        return t2.vertices().iter().all(|q| within(q.dist(t1.vertex(0)), d));
    }
    if t2.len() == 1 {
        return t1.vertices().iter().all(|p| within(p.dist(t2.vertex(0)), d));
    }
    let fsd = FreeSpaceDiagram::build_with(t1, t2, d, exec);
    let (ex, ey) = ((fsd.n1() - 1) as f64, (fsd.n2() - 1) as f64);
    if !fsd.corner_free(0, 0) || !fsd.corner_free(fsd.n1() - 1, fsd.n2() - 1) {
        return false;
    }
    let g = ReachGraph::build_with(fsd, exec);
    let (Some(src), Some(dst)) = (g.node_at(0.0, 0.0), g.node_at(ex, ey)) else {
        return false;
    };
    let mut seen = vec![false; g.len()];
    let mut stack = vec![src];
    seen[src as usize] = true;
    while let Some(v) = stack.pop() {
        if v == dst {
            return true;
        }
        for &w in g.out(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Builds the diagram and graph in one step.
pub fn reach_graph_for(t1: &Trajectory, t2: &Trajectory, d: f64) -> ReachGraph {
    build_reach_graph(build_continuous_fsd(t1, t2, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    #[test]
    fn identical_is_close() {
        let t = traj(&[(0., 0.), (1., 2.), (3., 1.), (4., 4.)]);
        assert!(frechet_decide_continuous(&t, &t, 0.0));
        assert!(frechet_decide_continuous(&t, &t, 0.5));
    }

    #[test]
    fn parallel_segments() {
        let a = traj(&[(0., 0.), (1., 0.)]);
        let b = traj(&[(0., 2.), (1., 2.)]);
        assert!(!frechet_decide_continuous(&a, &b, 1.0));
        assert!(frechet_decide_continuous(&a, &b, 2.0));
    }

    #[test]
    fn one_cell_all_free() {
        let a = traj(&[(0., 0.), (1., 0.)]);
        let g = reach_graph_for(&a, &a, 5.0);
        let s = g.node_at(0.0, 0.0).unwrap();
        let t = g.node_at(1.0, 1.0).unwrap();
        assert!(g.reachable_from(s)[t as usize]);
    }

    #[test]
    fn wall_column_disconnects() {
        let a = traj(&[(0., 0.), (1., 0.), (1., 10.), (2., 10.)]);
        let b = traj(&[(0., 0.), (1., 0.)]);
        let g = reach_graph_for(&a, &b, 0.5);
        let s = g.node_at(0.0, 0.0).unwrap();
        assert!(!g.reaches_point(s, (3.0, 1.0)));
        assert!(!frechet_decide_continuous(&a, &b, 0.5));
    }

    #[test]
    fn extra_node_rules() {
        let a = traj(&[(0., 0.), (2., 0.), (4., 0.)]);
        let mut g = reach_graph_for(&a, &a, 0.5);
        assert_eq!(g.insert_extra_node(0.0, 1.5, Role::Vertical), Err(ReachError::NotFree(0.0, 1.5)));
        let c = g.node_at(1.0, 1.0).unwrap();
        let before: Vec<u32> = g.out(c).to_vec();
        let e = g.insert_extra_node(1.0, 1.0, Role::Auto).unwrap();
        assert_eq!(g.out(e), &before[..]);
        assert!(g.reaches_point(e, (2.0, 2.0)));
    }
}
