//! Greedy lowest-path chains from `l_s` to `l_t` on G′ for one reference
//! `(s, t)` at a time. The link-cut forest, the dead-end marks and the
//! neighbour cursors persist between calls as long as `t` never decreases.

use sc_freespace::{FreeSpaceDiagram, Span};
use sc_linkcut::{LinkCutForest, NodeId};
use sc_reachgraph::{NodeKind, ReachGraph, Role};

const NO_ID: u32 = 0;

fn is_int(v: f64) -> bool {
    v.fract() == 0.0
}

/// Step used to move strictly above a point on `l_s`.
fn nudge(y: f64) -> f64 {
    1e-9 * y.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub evaluations: u64,
    pub searches: u64,
    pub links: u64,
    pub cuts: u64,
    pub dead: u64,
    pub bands: u64,
}

/// One monotone path from `(s, lo)` to `(t, hi)` through G′ nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainPath {
    pub points: Vec<(f64, f64)>,
    pub lo: f64,
    pub hi: f64,
}

/// Result of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub paths: Vec<ChainPath>,
    /// A positive-length family of horizontal paths exists, so any number
    /// of pairwise disjoint paths does.
    pub band: Option<(f64, f64)>,
}

impl Chain {
    pub fn count(&self) -> usize {
        if self.band.is_some() { usize::MAX } else { self.paths.len() }
    }
}

enum Halt {
    Reached { root: Option<NodeId>, end: f64 },
    Band,
    Dead,
}

struct Start {
    x: f64,
    y: f64,
    role: Role,
    targets: Vec<u32>,
    cursor: usize,
    choice: Option<u32>,
}

pub struct Evaluator {
    g: ReachGraph,
    forest: LinkCutForest,
    fid: Vec<u32>,
    gid: Vec<u32>,
    dead: Vec<bool>,
    stuck: Vec<u64>,
    order: Vec<Option<Box<[u32]>>>,
    cursor: Vec<u32>,
    stamp: u64,
    stats: EvalStats,
}

impl Evaluator {
    pub fn new(g: ReachGraph) -> Self {
        let n = g.len();
        Evaluator {
            g,
            forest: LinkCutForest::new(),
            fid: vec![NO_ID; n],
            gid: Vec::new(),
            dead: vec![false; n],
            stuck: vec![0; n],
            order: vec![None; n],
            cursor: vec![0; n],
            stamp: 0,
            stats: EvalStats::default(),
        }
    }

    pub fn graph(&self) -> &ReachGraph {
        &self.g
    }

    fn fsd(&self) -> &FreeSpaceDiagram {
        self.g.fsd()
    }

    pub fn stats(&self) -> EvalStats {
        let c = self.forest.counters();
        EvalStats { links: c.links, cuts: c.cuts, ..self.stats }
    }

    pub fn forest_nodes(&self) -> usize {
        self.forest.len()
    }

    fn fnode(&mut self, v: u32) -> NodeId {
        let slot = self.fid[v as usize];
        if slot != NO_ID {
            return slot - 1;
        }
        let (x, y) = self.g.coords(v);
        let id = self.forest.make_node(x, y);
        self.gid.push(v);
        self.fid[v as usize] = id + 1;
        id
    }

    fn sort_targets(&self, mut out: Vec<u32>) -> Vec<u32> {
        out.sort_by(|&a, &b| {
            let (ax, ay) = self.g.coords(a);
            let (bx, by) = self.g.coords(b);
            ay.total_cmp(&by).then(bx.total_cmp(&ax))
        });
        out.dedup();
        out
    }

    fn usable(&self, w: u32, t: f64) -> Result<bool, ()> {
        if self.dead[w as usize] {
            return Err(());
        }
        Ok(self.stuck[w as usize] != self.stamp && self.g.coords(w).0 <= t + nudge(t))
    }

    /// First usable out-neighbour of `v` in greedy order, and whether some
    /// live neighbour was skipped. Neighbours already below `v` in the
    /// forest lead back to `v` and are passed over.
    fn next_valid(&mut self, v: u32, cur: NodeId, t: f64) -> (Option<u32>, bool) {
        let vi = v as usize;
        if self.order[vi].is_none() {
            let sorted = self.sort_targets(self.g.out(v).to_vec());
            self.order[vi] = Some(sorted.into_boxed_slice());
        }
        let list = self.order[vi].take().expect("sorted above");
        let mut c = self.cursor[vi] as usize;
        while c < list.len() && self.dead[list[c] as usize] {
            c += 1;
        }
        self.cursor[vi] = c as u32;
        let mut skipped = false;
        let mut found = None;
        for (k, &w) in list.iter().enumerate().skip(c) {
            match self.usable(w, t) {
                Ok(true) => {
                    let slot = self.fid[w as usize];
                    if slot != NO_ID && self.forest.find_root(slot - 1).expect("known node") == cur {
                        if k == c {
                            c += 1;
                            self.cursor[vi] = c as u32;
                        }
                        continue;
                    }
                    found = Some(w);
                    break;
                }
                Ok(false) => skipped = true,
                Err(()) => {}
            }
        }
        self.order[vi] = Some(list);
        (found, skipped)
    }

    fn start_root(&mut self, st: &mut Start, t: f64) -> Option<NodeId> {
        while st.cursor < st.targets.len() && self.dead[st.targets[st.cursor] as usize] {
            st.cursor += 1;
        }
        let w = (st.cursor..st.targets.len())
            .map(|k| st.targets[k])
            .find(|&w| self.usable(w, t) == Ok(true))?;
        st.choice = Some(w);
        let f = self.fnode(w);
        Some(self.forest.find_root(f).expect("known node"))
    }

    /// Lowest point of `l_t` reachable from `(x, y)` by a monotone path that
    /// stays inside one row or column lane of the point.
    pub fn direct_end(&self, x: f64, y: f64, role: Role, t: f64) -> Option<f64> {
        if x > t {
            return None;
        }
        if x == t {
            return Some(y);
        }
        let fsd = self.fsd();
        let (vert, horiz) = match role {
            Role::Vertical => (true, false),
            Role::Horizontal => (false, true),
            Role::Auto => (is_int(x), is_int(y)),
        };
        let mut best: Option<f64> = None;
        let mut offer = |e: f64| {
            if best.is_none_or(|b| e < b) {
                best = Some(e);
            }
        };
        if vert {
            let c0 = x.floor();
            let c = t.floor();
            for j in self.g.lanes_through(y, fsd.rows()) {
                let lane = self.g.row_lane(j);
                let h = if c <= c0 {
                    Some(y)
                } else {
                    lane.lowest_at_line(x, y, c as usize)
                };
                let Some(h) = h else { continue };
                if is_int(t) {
                    offer(h);
                } else {
                    let sp = fsd.vline_span(t, j);
                    let e = h.max(sp.lo);
                    if !sp.is_empty() && e <= sp.hi {
                        offer(e);
                    }
                }
            }
        }
        if horiz {
            for i in self.g.lanes_through(x, fsd.cols()) {
                if t > (i + 1) as f64 || x < i as f64 {
                    continue;
                }
                let lane = self.g.column_lane(i);
                let (mut hx, mut yin) = (x, y);
                let mut j = fsd.row_of(y);
                while j < fsd.rows() {
                    let sp = fsd.vline_span(t, j);
                    let e = yin.max(sp.lo);
                    if !sp.is_empty() && e <= sp.hi {
                        offer(e);
                        break;
                    }
                    match lane.lowest_at_line(j as f64, hx, j + 1) {
                        Some(h) if h <= t => hx = h,
                        _ => break,
                    }
                    j += 1;
                    yin = j as f64;
                }
            }
        }
        best
    }

    fn cut_children(&mut self, v: NodeId) {
        for c in self.forest.children(v).to_vec() {
            self.forest.cut(c).expect("child has a parent");
        }
    }

    fn search(&mut self, st: &mut Start, s: f64, t: f64, lower: bool) -> Halt {
        self.stats.searches += 1;
        if let Some(e) = self.direct_end(st.x, st.y, st.role, t) {
            st.choice = None;
            return if lower && e > s { Halt::Band } else { Halt::Reached { root: None, end: e } };
        }
        let Some(mut cur) = self.start_root(st, t) else { return Halt::Dead };
        loop {
            let v = self.gid[cur as usize];
            let (x, y) = self.g.coords(v);
            if lower && y > s {
                return Halt::Band;
            }
            if matches!(self.g.kind(v), NodeKind::Critical | NodeKind::Extra) {
                if let Some(e) = self.direct_end(x, y, Role::Auto, t) {
                    if lower && e > s {
                        return Halt::Band;
                    }
                    return Halt::Reached { root: Some(cur), end: e };
                }
            }
            match self.next_valid(v, cur, t) {
                (Some(w), _) => {
                    let fw = self.fnode(w);
                    self.forest.link(cur, fw).expect("current node is a root");
                    cur = self.forest.find_root(fw).expect("known node");
                }
                (None, skipped) => {
                    if skipped {
                        self.stuck[v as usize] = self.stamp;
                    } else {
                        self.dead[v as usize] = true;
                        self.stats.dead += 1;
                    }
                    self.cut_children(cur);
                    match self.start_root(st, t) {
                        Some(r) => cur = r,
                        None => return Halt::Dead,
                    }
                }
            }
        }
    }

    fn start_role(s: f64, y: f64) -> Role {
        if is_int(s) {
            Role::Auto
        } else if is_int(y) {
            Role::Horizontal
        } else {
            Role::Vertical
        }
    }

    /// Lowest free point of `l_s` at or (when `strict`) strictly above `bound`.
    fn lowest_free(&self, s: f64, bound: f64, strict: bool) -> Option<f64> {
        let fsd = self.fsd();
        for j in fsd.row_of(bound.max(0.0))..fsd.rows() {
            let sp = fsd.vline_span(s, j);
            if sp.is_empty() {
                continue;
            }
            let mut c = sp.lo.max(bound);
            if strict && c <= bound {
                c = bound + nudge(bound);
            }
            if c <= sp.hi {
                return Some(c);
            }
        }
        None
    }

    /// Top of the connected free part of `l_s` containing `y`.
    fn run_top(&self, s: f64, y: f64) -> f64 {
        let fsd = self.fsd();
        let mut j = fsd.row_of(y);
        loop {
            let sp = fsd.vline_span(s, j);
            let edge = (j + 1) as f64;
            if sp.hi >= edge && j + 1 < fsd.rows() && fsd.vline_span(s, j + 1).lo <= edge {
                j += 1;
                continue;
            }
            return sp.hi.max(y);
        }
    }

    /// Positive-length interval of heights `y` whose horizontal segment from
    /// `(s, y)` to `(t, y)` is free and lies in one of the two regions.
    pub fn horizontal_band(&self, s: f64, t: f64) -> Option<(f64, f64)> {
        self.band_in(s, t, true)
    }

    fn band_in(&self, s: f64, t: f64, regions: bool) -> Option<(f64, f64)> {
        let fsd = self.fsd();
        let first = s.floor() as usize + 1;
        let last = if is_int(t) { t as usize - 1 } else { t.floor() as usize };
        for j in 0..fsd.rows() {
            let (a, b) = (fsd.vline_span(s, j), fsd.vline_span(t, j));
            let mut sp = Span { lo: a.lo.max(b.lo), hi: a.hi.min(b.hi) };
            if sp.is_empty() {
                continue;
            }
            if first <= last {
                let mid = self.g.row_lane(j).cross_range(first, last);
                sp = Span { lo: sp.lo.max(mid.lo), hi: sp.hi.min(mid.hi) };
            }
            let parts = if regions { [(sp.lo, sp.hi.min(s)), (sp.lo.max(t), sp.hi)] } else { [(sp.lo, sp.hi); 2] };
            for (lo, hi) in parts {
                if hi - lo > 1e-9 * hi.abs().max(1.0) {
                    return Some((lo, hi));
                }
            }
        }
        None
    }

    fn chain_points(&self, st: &Start, root: Option<NodeId>, end: f64, t: f64) -> Vec<(f64, f64)> {
        let mut pts = vec![(st.x, st.y)];
        if let (Some(first), Some(_)) = (st.choice, root) {
            let mut cur = Some(self.fid[first as usize] - 1);
            while let Some(f) = cur {
                let v = self.gid[f as usize];
                if matches!(self.g.kind(v), NodeKind::Critical | NodeKind::Extra) {
                    pts.push(self.g.coords(v));
                }
                cur = self.forest.parent(f);
            }
        }
        pts.push((t, end));
        pts.dedup();
        pts
    }

    /// Greedy chain of up to `need` paths for reference `(s, t)`. The `t`
    /// values of successive calls must be nondecreasing.
    pub fn evaluate(&mut self, s: f64, t: f64, need: usize) -> Chain {
        self.run(s, t, need, true)
    }

    /// Greedy chain from `l_s` to `l_t` on a diagram of two different
    /// curves: every height is allowed and no reference interval is kept
    /// clear.
    pub fn evaluate_pair(&mut self, s: f64, t: f64, need: usize) -> Chain {
        self.run(s, t, need, false)
    }

    fn run(&mut self, s: f64, t: f64, need: usize, regions: bool) -> Chain {
        self.stamp += 1;
        self.stats.evaluations += 1;
        let mut paths = Vec::new();
        if need == 0 {
            return Chain { paths, band: None };
        }
        if let Some(b) = self.band_in(s, t, regions) {
            self.stats.bands += 1;
            return Chain { paths, band: Some(b) };
        }
        let (mut bound, mut strict, mut lower) = (0.0f64, false, regions);
        while paths.len() < need {
            let Some(y0) = self.lowest_free(s, bound, strict) else { break };
            if lower && y0 > s {
                lower = false;
                if y0 < t {
                    bound = t;
                    strict = false;
                    continue;
                }
            }
            let mut st = Start {
                x: s,
                y: y0,
                role: Self::start_role(s, y0),
                targets: Vec::new(),
                cursor: 0,
                choice: None,
            };
            st.targets = self.sort_targets(self.g.basic_targets(s, y0, st.role));
            match self.search(&mut st, s, t, lower) {
                Halt::Dead => {
                    bound = self.run_top(s, y0);
                    strict = true;
                }
                Halt::Band => {
                    lower = false;
                    bound = bound.max(t);
                    strict = false;
                }
                Halt::Reached { root, end } => {
                    let points = self.chain_points(&st, root, end, t);
                    paths.push(ChainPath { points, lo: y0, hi: end });
                    if end > y0 {
                        bound = end;
                        strict = false;
                    } else {
                        bound = y0;
                        strict = true;
                    }
                }
            }
        }
        Chain { paths, band: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sc_freespace::Exec;
    use sc_geometry::Trajectory;

    fn evaluator(tx: &[(f64, f64)], ty: &[(f64, f64)], d: f64) -> Evaluator {
        let (tx, ty) = (Trajectory::from_xy(tx).unwrap(), Trajectory::from_xy(ty).unwrap());
        Evaluator::new(ReachGraph::build_with(FreeSpaceDiagram::build_with(&tx, &ty, d, Exec::Sequential), Exec::Sequential))
    }

    #[test]
    fn band_when_everything_is_free() {
        let line = [(0., 0.), (1., 0.), (2., 0.)];
        let ev = evaluator(&line, &line, 5.0);
        assert_eq!(ev.horizontal_band(0.0, 1.0), Some((1.0, 2.0)));
        assert_eq!(ev.band_in(0.0, 1.0, false), Some((0.0, 1.0)));
        let ev = evaluator(&line, &line, 0.1);
        assert_eq!(ev.horizontal_band(0.0, 1.0), None);
    }

    #[test]
    fn direct_end_inside_one_lane() {
        let ev = evaluator(&[(0., 0.), (1., 0.)], &[(0., 0.), (1., 0.)], 0.1);
        let e = ev.direct_end(0.0, 0.0, Role::Vertical, 0.5).unwrap();
        assert!((e - 0.4).abs() < 1e-6);
        assert_eq!(ev.direct_end(0.5, 0.5, Role::Vertical, 0.25), None);
    }

    #[test]
    fn forward_passes_of_a_zigzag_are_the_paths() {
        let mut ev = evaluator(&[(0., 0.), (1., 0.)], &[(0., 0.), (1., 0.), (0., 0.), (1., 0.)], 0.1);
        let chain = ev.evaluate_pair(0.0, 1.0, usize::MAX);
        let iv: Vec<(f64, f64)> = chain.paths.iter().map(|p| (p.lo, p.hi)).collect();
        assert_eq!(iv.len(), 2, "{iv:?}");
        assert!(iv[0].0 < 1e-9 && (iv[0].1 - 0.9).abs() < 1e-6, "{iv:?}");
        assert!((iv[1].0 - 1.9).abs() < 1e-6 && (iv[1].1 - 2.9).abs() < 1e-6, "{iv:?}");
    }
}
