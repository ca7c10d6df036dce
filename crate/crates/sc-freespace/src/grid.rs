use crate::exec::{map_range, Exec};
use sc_geometry::{within, Trajectory};

/// Vertex-pair membership matrix, `free[x][y] ⟺ ‖T₁(x) − T₂(y)‖ ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteFreeGrid {
    pub n1: usize,
    pub n2: usize,
    free: Vec<bool>,
}

impl DiscreteFreeGrid {
    pub fn from_fn(n1: usize, n2: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut free = Vec::with_capacity(n1 * n2);
        for x in 0..n1 {
            for y in 0..n2 {
                free.push(f(x, y));
            }
        }
        DiscreteFreeGrid { n1, n2, free }
    }

    #[inline]
    pub fn is_free(&self, x: usize, y: usize) -> bool {
        self.free[x * self.n2 + y]
    }

    pub fn column(&self, x: usize) -> &[bool] {
        &self.free[x * self.n2..(x + 1) * self.n2]
    }

    pub fn count_free(&self) -> usize {
        self.free.iter().filter(|&&b| b).count()
    }
}

pub fn build_discrete_grid(t1: &Trajectory, t2: &Trajectory, d: f64) -> DiscreteFreeGrid {
    build_discrete_grid_with(t1, t2, d, Exec::default())
}

pub fn build_discrete_grid_with(t1: &Trajectory, t2: &Trajectory, d: f64, exec: Exec) -> DiscreteFreeGrid {
    let (n1, n2) = (t1.len(), t2.len());
    let cols = map_range(exec, n1, |x| {
        let p = t1.vertex(x);
        t2.vertices().iter().map(|q| within(p.dist(*q), d)).collect::<Vec<bool>>()
    });
    DiscreteFreeGrid { n1, n2, free: cols.concat() }
}
