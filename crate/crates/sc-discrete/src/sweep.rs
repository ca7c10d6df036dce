use sc_freespace::DiscreteFreeGrid;
use sc_linkcut::{LinkCutForest, NodeId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DiscreteStats {
    pub links: u64,
    pub cuts: u64,
    pub subproblems: u64,
    /// Largest revisit count seen in one subproblem.
    pub max_revisits: u64,
    /// Subproblems whose revisits exceeded `2·m·(t−s)`.
    pub revisit_violations: u64,
    pub nodes: u64,
}

impl DiscreteStats {
    pub fn link_cut_budget_ok(&self, n: usize) -> bool {
        self.links + self.cuts <= 6 * (n as u64) * (n as u64)
    }
}

enum Halt {
    Reached(NodeId),
    Band,
    Dead,
}

/// Persistent sweep state: link-cut forest over explored grid points and
/// the invalid marks. Reused across increasing `(s, t)`.
pub struct Sweep<'g> {
    grid: &'g DiscreteFreeGrid,
    n: usize,
    forest: LinkCutForest,
    // Forest id + 1 per grid point; 0 = not created.
    ids: Vec<u32>,
    invalid: Vec<bool>,
    // (subproblem, path index) of the last visit, per forest node.
    tag: Vec<(u64, u32)>,
    stats: DiscreteStats,
    revisits: u64,
}

impl<'g> Sweep<'g> {
    pub fn new(grid: &'g DiscreteFreeGrid) -> Self {
        assert_eq!(grid.n1, grid.n2, "self free-space grid expected");
        let n = grid.n1;
        Sweep {
            grid,
            n,
            forest: LinkCutForest::new(),
            ids: vec![0; n * n],
            invalid: vec![false; n * n],
            tag: Vec::new(),
            stats: DiscreteStats::default(),
            revisits: 0,
        }
    }

    pub fn stats(&self) -> DiscreteStats {
        let c = self.forest.counters();
        DiscreteStats { links: c.links, cuts: c.cuts, nodes: self.forest.len() as u64, ..self.stats }
    }

    #[inline]
    fn valid(&self, x: usize, y: usize) -> bool {
        self.grid.is_free(x, y) && !self.invalid[x * self.n + y]
    }

    fn node(&mut self, x: usize, y: usize) -> NodeId {
        let k = x * self.n + y;
        if self.ids[k] == 0 {
            let v = self.forest.make_node(x as f64, y as f64);
            self.tag.push((0, 0));
            self.ids[k] = v + 1;
        }
        self.ids[k] - 1
    }

    fn xy(&self, v: NodeId) -> (usize, usize) {
        let (x, y) = self.forest.coords(v);
        (x as usize, y as usize)
    }

    fn root(&mut self, v: NodeId) -> NodeId {
        self.forest.find_root(v).expect("node exists")
    }

    fn visit(&mut self, v: NodeId, path: u32) {
        let sub = self.stats.subproblems;
        let tag = &mut self.tag[v as usize];
        if tag.0 == sub && tag.1 < path {
            self.revisits += 1;
        }
        *tag = (sub, path);
    }

    fn next_move(&self, x: usize, y: usize, t: usize) -> Option<(usize, usize)> {
        let up = y + 1 < self.n;
        [(x + 1, y, x < t), (x + 1, y + 1, x < t && up), (x, y + 1, up)]
            .into_iter()
            .find(|&(a, b, ok)| ok && self.valid(a, b))
            .map(|(a, b, _)| (a, b))
    }

    /// Greedy DFS from start `gs`, jumping to link-cut roots.
    fn search(&mut self, gs: NodeId, s: usize, t: usize, lower: bool, path: u32) -> Halt {
        let mut cur = self.root(gs);
        loop {
            self.visit(cur, path);
            let (x, y) = self.xy(cur);
            if lower && y > s {
                return Halt::Band;
            }
            if x == t {
                return Halt::Reached(cur);
            }
            if let Some((a, b)) = self.next_move(x, y, t) {
                let nb = self.node(a, b);
                self.forest.link(cur, nb).expect("current node is a root");
                cur = self.root(nb);
            } else {
                self.invalid[x * self.n + y] = true;
                for c in self.forest.children(cur).to_vec() {
                    self.forest.cut(c).expect("child has a parent");
                }
                if cur == gs {
                    return Halt::Dead;
                }
                cur = self.root(gs);
            }
        }
    }

    /// Up to `m − 1` paths from `l_s` to `l_t` with pairwise overlaps and
    /// overlaps with `[s, t]` of at most one point; `None` if fewer exist.
    pub fn subproblem(&mut self, s: usize, t: usize, m: usize) -> Option<Vec<Vec<(usize, usize)>>> {
        assert!(s < t && t < self.n);
        self.stats.subproblems += 1;
        self.revisits = 0;
        let need = m.saturating_sub(1);
        let mut found: Vec<(NodeId, NodeId)> = Vec::new();
        let (mut bound, mut lower) = (0, true);
        let result = loop {
            if found.len() == need {
                break true;
            }
            let Some(y0) = (bound..self.n).find(|&y| self.valid(s, y)) else { break false };
            if lower && y0 > s {
                lower = false;
                if y0 < t {
                    bound = t;
                    continue;
                }
            }
            let gs = self.node(s, y0);
            match self.search(gs, s, t, lower, found.len() as u32) {
                Halt::Reached(r) => {
                    let yr = self.xy(r).1;
                    found.push((gs, r));
                    bound = if yr > y0 { yr } else { y0 + 1 };
                }
                Halt::Band => {
                    lower = false;
                    bound = bound.max(t);
                }
                Halt::Dead => bound = y0 + 1,
            }
        };
        self.stats.max_revisits = self.stats.max_revisits.max(self.revisits);
        if self.revisits > 2 * m as u64 * (t - s) as u64 {
            self.stats.revisit_violations += 1;
        }
        debug_assert!(self.revisits <= 2 * m as u64 * (t - s) as u64, "revisit bound");
        result.then(|| found.iter().map(|&(g, r)| self.chain(g, r)).collect())
    }

    fn chain(&self, g: NodeId, r: NodeId) -> Vec<(usize, usize)> {
        let mut out = vec![self.xy(g)];
        let mut v = g;
        while v != r {
            v = self.forest.parent(v).expect("chain reaches its root");
            out.push(self.xy(v));
        }
        out
    }
}

/// One subproblem on a fresh sweep state.
pub fn solve_subproblem_discrete(
    grid: &DiscreteFreeGrid,
    m: usize,
    s: usize,
    t: usize,
) -> Option<Vec<Vec<(usize, usize)>>> {
    Sweep::new(grid).subproblem(s, t, m)
}
