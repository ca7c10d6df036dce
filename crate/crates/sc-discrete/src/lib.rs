//! Subtrajectory clustering under the discrete Fréchet distance.
//!
//! Vertex indices and grid points are 0-based here. `SCWitness` reports
//! 1-based trajectory parameters.

mod sweep;

pub use sweep::{solve_subproblem_discrete, DiscreteStats, Sweep};

use sc_freespace::{build_discrete_grid, DiscreteFreeGrid};
use sc_geometry::{eps, Point2, SCInstance, SCWitness, Trajectory};

/// For each start vertex `s`, the minimal `t > s` with
/// `len(T[s..t]) ≥ ell`. Sorted by `s`; both coordinates nondecreasing.
pub fn candidate_references_discrete(t: &Trajectory, ell: f64) -> Vec<(usize, usize)> {
    let n = t.len();
    let prefix = t.prefix();
    let tol = eps() * ell.max(1.0);
    let mut out = Vec::new();
    let mut e = 1;
    for s in 0..n {
        e = e.max(s + 1);
        while e < n && prefix[e] - prefix[s] < ell - tol {
            e += 1;
        }
        if e >= n {
            break;
        }
        out.push((s, e));
    }
    out
}

#[derive(Debug, Clone)]
pub struct DiscreteDecision {
    pub yes: bool,
    pub witness: Option<SCWitness>,
    pub stats: DiscreteStats,
}

pub fn sc_decide_discrete(inst: &SCInstance) -> DiscreteDecision {
    let grid = build_discrete_grid(&inst.t, &inst.t, inst.d);
    sc_decide_discrete_on(&grid, &candidate_references_discrete(&inst.t, inst.ell), inst.m)
}

/// Sweep over the given candidate references on a prebuilt grid.
pub fn sc_decide_discrete_on(grid: &DiscreteFreeGrid, refs: &[(usize, usize)], m: usize) -> DiscreteDecision {
    let mut sweep = Sweep::new(grid);
    for &(s, t) in refs {
        if let Some(paths) = sweep.subproblem(s, t, m) {
            let witness = witness_from(s, t, &paths);
            return DiscreteDecision { yes: true, witness: Some(witness), stats: sweep.stats() };
        }
    }
    DiscreteDecision { yes: false, witness: None, stats: sweep.stats() }
}

fn witness_from(s: usize, t: usize, paths: &[Vec<(usize, usize)>]) -> SCWitness {
    let p = |v: usize| v as f64 + 1.0;
    SCWitness {
        reference: (p(s), p(t)),
        paths: paths.iter().map(|path| path.iter().map(|&(x, y)| Point2::new(p(x), p(y))).collect()).collect(),
        intervals: paths.iter().map(|path| (p(path[0].1), p(path[path.len() - 1].1))).collect(),
    }
}

/// Discrete Fréchet decision: a monotone staircase of free vertex pairs
/// from `(0, 0)` to `(n₁−1, n₂−1)`.
pub fn frechet_decide_discrete(t1: &Trajectory, t2: &Trajectory, d: f64) -> bool {
    let grid = build_discrete_grid(t1, t2, d);
    let (n1, n2) = (t1.len(), t2.len());
    let mut prev = vec![false; n2];
    for x in 0..n1 {
        let mut cur = vec![false; n2];
        for y in 0..n2 {
            let from = (x == 0 && y == 0) || prev[y] || (y > 0 && (cur[y - 1] || prev[y - 1]));
            cur[y] = from && grid.is_free(x, y);
        }
        prev = cur;
    }
    prev[n2 - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    #[test]
    fn discrete_frechet_on_small_curves() {
        let a = traj(&[(0., 0.), (1., 0.), (2., 0.)]);
        let b = traj(&[(0., 0.5), (2., 0.5)]);
        assert!(frechet_decide_discrete(&a, &b, 1.2));
        assert!(!frechet_decide_discrete(&a, &b, 1.0));
        assert!(frechet_decide_discrete(&a, &a, 0.0));
    }

    #[test]
    fn discrete_frechet_needs_monotone_coupling() {
        let a = traj(&[(0., 0.), (1., 0.)]);
        let b = traj(&[(1., 0.), (0., 0.)]);
        assert!(!frechet_decide_discrete(&a, &b, 0.5));
    }
}
