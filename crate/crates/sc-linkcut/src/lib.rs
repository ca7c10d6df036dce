//! Splay-based link-cut forest.
//!
//! Besides the usual `link`/`cut`/`find_root`, every root carries the
//! highest marked node of its tree. Marks are ordered by `(epoch, y)` so a
//! sweep can retire all earlier marks by bumping the epoch.

use thiserror::Error;

pub type NodeId = u32;

const NIL: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkCutError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {0} already has a parent")]
    NotARoot(NodeId),
    #[error("node {0} has no parent")]
    IsRoot(NodeId),
    #[error("nodes {0} and {1} are already in the same tree")]
    SameTree(NodeId, NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Mark {
    epoch: u32,
    y: f64,
    node: NodeId,
}

fn better(a: Option<Mark>, b: Option<Mark>) -> Option<Mark> {
    match (a, b) {
        (Some(x), Some(y)) => {
            if (y.epoch, y.y) > (x.epoch, x.y) {
                Some(y)
            } else {
                Some(x)
            }
        }
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub links: u64,
    pub cuts: u64,
    /// Aggregates rebuilt by a subtree traversal after a cut.
    pub recomputes: u64,
}

#[derive(Debug, Clone, Default)]
pub struct LinkCutForest {
    // Splay forest; `sp` is the splay parent or the path parent.
    ch: Vec<[u32; 2]>,
    sp: Vec<u32>,
    // Explicit represented tree.
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    slot: Vec<u32>,
    coords: Vec<(f64, f64)>,
    mark: Vec<Option<Mark>>,
    agg: Vec<Option<Mark>>,
    dirty: Vec<bool>,
    epoch: u32,
    counters: Counters,
}

impl LinkCutForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut f = Self::default();
        f.ch.reserve(n);
        f.sp.reserve(n);
        f.parent.reserve(n);
        f.children.reserve(n);
        f.slot.reserve(n);
        f.coords.reserve(n);
        f.mark.reserve(n);
        f.agg.reserve(n);
        f.dirty.reserve(n);
        f
    }

    pub fn len(&self) -> usize {
        self.sp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sp.is_empty()
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn epoch(&self) -> u32 {
        self.epoch
    }

    /// Starts a new epoch; marks made earlier stop being reported.
    pub fn next_epoch(&mut self) -> u32 {
        self.epoch += 1;
        self.epoch
    }

    pub fn make_node(&mut self, x: f64, y: f64) -> NodeId {
        let id = self.sp.len() as u32;
        self.ch.push([NIL, NIL]);
        self.sp.push(NIL);
        self.parent.push(NIL);
        self.children.push(Vec::new());
        self.slot.push(NIL);
        self.coords.push((x, y));
        self.mark.push(None);
        self.agg.push(None);
        self.dirty.push(false);
        id
    }

    pub fn coords(&self, v: NodeId) -> (f64, f64) {
        self.coords[v as usize]
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v as usize];
        (p != NIL).then_some(p)
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v as usize]
    }

    fn check(&self, v: NodeId) -> Result<(), LinkCutError> {
        if (v as usize) < self.sp.len() {
            Ok(())
        } else {
            Err(LinkCutError::UnknownNode(v))
        }
    }

    /// Marks `v` as lying on the start line at height `y` in the current epoch.
    pub fn mark(&mut self, v: NodeId, y: f64) -> Result<(), LinkCutError> {
        self.check(v)?;
        let m = Some(Mark { epoch: self.epoch, y, node: v });
        self.mark[v as usize] = better(self.mark[v as usize], m);
        let r = self.root_of(v) as usize;
        if !self.dirty[r] {
            self.agg[r] = better(self.agg[r], m);
        }
        Ok(())
    }

    pub fn link(&mut self, child: NodeId, parent: NodeId) -> Result<(), LinkCutError> {
        self.check(child)?;
        self.check(parent)?;
        if self.parent[child as usize] != NIL {
            return Err(LinkCutError::NotARoot(child));
        }
        let pr = self.root_of(parent);
        if pr == child {
            return Err(LinkCutError::SameTree(child, parent));
        }
        let ca = self.aggregate(child);
        let pa = self.aggregate(pr);
        self.agg[pr as usize] = better(pa, ca);
        self.agg[child as usize] = None;

        self.access(child);
        self.sp[child as usize] = parent;

        let c = child as usize;
        self.parent[c] = parent;
        self.slot[c] = self.children[parent as usize].len() as u32;
        self.children[parent as usize].push(child);
        self.counters.links += 1;
        Ok(())
    }

    pub fn cut(&mut self, child: NodeId) -> Result<(), LinkCutError> {
        self.check(child)?;
        let c = child as usize;
        let p = self.parent[c];
        if p == NIL {
            return Err(LinkCutError::IsRoot(child));
        }
        let old_root = self.root_of(child) as usize;
        self.access(child);
        let l = self.ch[c][0];
        if l != NIL {
            self.sp[l as usize] = NIL;
            self.ch[c][0] = NIL;
        }

        let s = self.slot[c] as usize;
        let sib = &mut self.children[p as usize];
        sib.swap_remove(s);
        if s < sib.len() {
            let moved = sib[s] as usize;
            self.slot[moved] = s as u32;
        }
        self.parent[c] = NIL;
        self.slot[c] = NIL;

        self.dirty[c] = true;
        self.dirty[old_root] = true;
        self.counters.cuts += 1;
        Ok(())
    }

    pub fn find_root(&mut self, v: NodeId) -> Result<NodeId, LinkCutError> {
        self.check(v)?;
        Ok(self.root_of(v))
    }

    /// Highest current-epoch marked node in the tree rooted at `root`.
    pub fn highest_marked_descendant(&mut self, root: NodeId) -> Result<Option<(NodeId, f64)>, LinkCutError> {
        self.check(root)?;
        if self.parent[root as usize] != NIL {
            return Err(LinkCutError::NotARoot(root));
        }
        Ok(self
            .aggregate(root)
            .filter(|m| m.epoch == self.epoch)
            .map(|m| (m.node, m.y)))
    }

    fn aggregate(&mut self, root: NodeId) -> Option<Mark> {
        let r = root as usize;
        if self.dirty[r] {
            self.counters.recomputes += 1;
            let mut best = None;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                best = better(best, self.mark[u as usize]);
                stack.extend_from_slice(&self.children[u as usize]);
            }
            self.agg[r] = best;
            self.dirty[r] = false;
        }
        self.agg[r]
    }

    fn root_of(&mut self, v: NodeId) -> NodeId {
        self.access(v);
        let mut r = v;
        while self.ch[r as usize][0] != NIL {
            r = self.ch[r as usize][0];
        }
        self.splay(r);
        r
    }

    #[inline]
    fn is_splay_root(&self, x: u32) -> bool {
        let p = self.sp[x as usize];
        p == NIL || (self.ch[p as usize][0] != x && self.ch[p as usize][1] != x)
    }

    fn rotate(&mut self, x: u32) {
        let p = self.sp[x as usize];
        let g = self.sp[p as usize];
        let dir = (self.ch[p as usize][1] == x) as usize;
        let b = self.ch[x as usize][1 - dir];
        if !self.is_splay_root(p) {
            let gd = (self.ch[g as usize][1] == p) as usize;
            self.ch[g as usize][gd] = x;
        }
        self.sp[x as usize] = g;
        self.ch[x as usize][1 - dir] = p;
        self.sp[p as usize] = x;
        self.ch[p as usize][dir] = b;
        if b != NIL {
            self.sp[b as usize] = p;
        }
    }

    fn splay(&mut self, x: u32) {
        while !self.is_splay_root(x) {
            let p = self.sp[x as usize];
            if !self.is_splay_root(p) {
                let g = self.sp[p as usize];
                let zigzig = (self.ch[g as usize][1] == p) == (self.ch[p as usize][1] == x);
                self.rotate(if zigzig { p } else { x });
            }
            self.rotate(x);
        }
    }

    fn access(&mut self, v: u32) {
        let mut last = NIL;
        let mut x = v;
        while x != NIL {
            self.splay(x);
            self.ch[x as usize][1] = last;
            last = x;
            x = self.sp[x as usize];
        }
        self.splay(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_is_own_root() {
        let mut f = LinkCutForest::new();
        let a = f.make_node(0.0, 0.0);
        let b = f.make_node(1.0, 0.0);
        assert_ne!(a, b);
        assert_eq!(f.find_root(a), Ok(a));
        assert_eq!(f.find_root(b), Ok(b));
    }

    #[test]
    fn link_and_cut() {
        let mut f = LinkCutForest::new();
        let a = f.make_node(0.0, 0.0);
        let b = f.make_node(1.0, 1.0);
        f.link(a, b).unwrap();
        assert_eq!(f.find_root(a), Ok(b));
        f.cut(a).unwrap();
        assert_eq!(f.find_root(a), Ok(a));
        assert_eq!(f.cut(a), Err(LinkCutError::IsRoot(a)));
    }

    #[test]
    fn contract_violations() {
        let mut f = LinkCutForest::new();
        let a = f.make_node(0.0, 0.0);
        let b = f.make_node(0.0, 0.0);
        let c = f.make_node(0.0, 0.0);
        f.link(a, b).unwrap();
        assert_eq!(f.link(a, c), Err(LinkCutError::NotARoot(a)));
        assert_eq!(f.link(b, a), Err(LinkCutError::SameTree(b, a)));
        assert_eq!(f.find_root(9), Err(LinkCutError::UnknownNode(9)));
        assert_eq!(f.highest_marked_descendant(a), Err(LinkCutError::NotARoot(a)));
    }

    #[test]
    fn long_chain() {
        let mut f = LinkCutForest::new();
        let ids: Vec<_> = (0..1000).map(|i| f.make_node(i as f64, 0.0)).collect();
        for w in ids.windows(2) {
            f.link(w[1], w[0]).unwrap();
        }
        assert_eq!(f.find_root(ids[999]), Ok(ids[0]));
        f.cut(ids[500]).unwrap();
        assert_eq!(f.find_root(ids[999]), Ok(ids[500]));
        assert_eq!(f.find_root(ids[499]), Ok(ids[0]));
    }

    #[test]
    fn aggregate_merges_and_epochs() {
        let mut f = LinkCutForest::new();
        let a = f.make_node(0.0, 1.0);
        let b = f.make_node(0.0, 3.0);
        let r = f.make_node(1.0, 4.0);
        f.mark(a, 1.0).unwrap();
        assert_eq!(f.highest_marked_descendant(a), Ok(Some((a, 1.0))));
        f.mark(b, 3.0).unwrap();
        f.link(a, r).unwrap();
        f.link(b, r).unwrap();
        assert_eq!(f.highest_marked_descendant(r), Ok(Some((b, 3.0))));
        f.cut(b).unwrap();
        assert_eq!(f.highest_marked_descendant(r), Ok(Some((a, 1.0))));
        assert_eq!(f.counters().recomputes, 1);
        f.next_epoch();
        assert_eq!(f.highest_marked_descendant(r), Ok(None));
        f.mark(a, 1.0).unwrap();
        assert_eq!(f.highest_marked_descendant(r), Ok(Some((a, 1.0))));
    }
}
