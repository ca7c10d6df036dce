/// Static balanced tree over the sorted critical points of one line. Leaves
/// are graph nodes that already exist; internal tree nodes get fresh ids.
#[derive(Debug, Clone, Default)]
pub struct LineTree {
    leaves: Vec<u32>,
    coords: Vec<f64>,
    size: usize,
    base: u32,
    count: Vec<u32>,
}

impl LineTree {
    /// `leaves` sorted by `coords`; internal nodes take ids `base..`.
    pub fn new(leaves: Vec<u32>, coords: Vec<f64>, base: u32) -> Self {
        let c = leaves.len();
        let size = if c == 0 { 0 } else { c.next_power_of_two() };
        let mut count = vec![0u32; 2 * size];
        for i in 0..c {
            count[size + i] = 1;
        }
        for i in (1..size).rev() {
            count[i] = count[2 * i] + count[2 * i + 1];
        }
        LineTree { leaves, coords, size, base, count }
    }

    /// Number of internal node ids this tree uses.
    pub fn internal_count(&self) -> usize {
        self.size.saturating_sub(1)
    }

    pub fn leaves(&self) -> &[u32] {
        &self.leaves
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn id(&self, idx: usize) -> u32 {
        if idx >= self.size {
            self.leaves[idx - self.size]
        } else {
            self.base + idx as u32 - 1
        }
    }

    /// Internal node ids with their children, for wiring tree edges.
    pub fn internal_edges(&self) -> impl Iterator<Item = (u32, Vec<u32>)> + '_ {
        (1..self.size).filter(|&i| self.count[i] > 0).map(move |i| {
            let kids = [2 * i, 2 * i + 1]
                .into_iter()
                .filter(|&k| self.count[k] > 0)
                .map(|k| self.id(k))
                .collect();
            (self.id(i), kids)
        })
    }

    /// Smallest and largest leaf coordinate below each internal node,
    /// as `(id, min, max)`.
    pub fn internal_extents(&self) -> Vec<(u32, f64, f64)> {
        let mut lo = vec![f64::INFINITY; 2 * self.size];
        let mut hi = vec![f64::NEG_INFINITY; 2 * self.size];
        for (i, &c) in self.coords.iter().enumerate() {
            lo[self.size + i] = c;
            hi[self.size + i] = c;
        }
        for i in (1..self.size).rev() {
            lo[i] = lo[2 * i].min(lo[2 * i + 1]);
            hi[i] = hi[2 * i].max(hi[2 * i + 1]);
        }
        (1..self.size).map(|i| (self.id(i), lo[i], hi[i])).collect()
    }

    /// Leaf index range with coordinates in `[lo, hi]`.
    pub fn leaf_range(&self, lo: f64, hi: f64) -> (usize, usize) {
        let a = self.coords.partition_point(|&c| c < lo);
        let b = self.coords.partition_point(|&c| c <= hi);
        (a, b.max(a))
    }

    /// Nodes whose leaf sets partition the leaves with coordinates in `[lo, hi]`.
    pub fn canonical(&self, lo: f64, hi: f64) -> Vec<u32> {
        let (a, b) = self.leaf_range(lo, hi);
        let mut out = Vec::new();
        if a >= b {
            return out;
        }
        // Padding leaves past the end are empty, so a suffix range may
        // extend over them and use higher nodes.
        let end = if b == self.leaves.len() { 2 * self.size } else { b + self.size };
        let (mut l, mut r) = (a + self.size, end);
        while l < r {
            if l & 1 == 1 {
                if self.count[l] > 0 {
                    out.push(self.id(l));
                }
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                if self.count[r] > 0 {
                    out.push(self.id(r));
                }
            }
            l >>= 1;
            r >>= 1;
        }
        out
    }
}
