/// Static range-max (or range-min) table with "first index past a threshold" search.
#[derive(Debug, Clone)]
pub struct SparseTable {
    levels: Vec<Vec<f64>>,
    is_max: bool,
}

impl SparseTable {
    pub fn new(values: &[f64], is_max: bool) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut w = 1;
        while 2 * w <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<f64> = (0..=values.len() - 2 * w)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + w]);
                    if is_max { a.max(b) } else { a.min(b) }
                })
                .collect();
            levels.push(next);
            w *= 2;
        }
        SparseTable { levels, is_max }
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    fn passes(&self, v: f64, h: f64) -> bool {
        if self.is_max { v > h } else { v < h }
    }

    /// Max (or min) over `a..=b`.
    pub fn query(&self, a: usize, b: usize) -> f64 {
        debug_assert!(a <= b && b < self.len());
        let lvl = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let (x, y) = (self.levels[lvl][a], self.levels[lvl][b + 1 - (1 << lvl)]);
        if self.is_max { x.max(y) } else { x.min(y) }
    }

    /// First index `k ≥ from` whose value exceeds `h` (max table) or falls
    /// below `h` (min table).
    pub fn first_past(&self, from: usize, h: f64) -> Option<usize> {
        let n = self.len();
        let mut pos = from;
        if pos >= n {
            return None;
        }
        for lvl in (0..self.levels.len()).rev() {
            let w = 1usize << lvl;
            if pos + w <= n && !self.passes(self.levels[lvl][pos], h) {
                pos += w;
            }
        }
        (pos < n).then_some(pos)
    }
}
