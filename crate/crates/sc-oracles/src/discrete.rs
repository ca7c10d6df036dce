use crate::OracleError;
use sc_geometry::{eps, within, SCInstance, Trajectory};

const MAX_N: usize = 14;

/// Discrete Fréchet distance by the three-predecessor DP.
pub fn discrete_frechet_dp(t1: &Trajectory, t2: &Trajectory) -> f64 {
    let (n1, n2) = (t1.len(), t2.len());
    let mut prev = vec![f64::INFINITY; n2];
    let mut cur = vec![f64::INFINITY; n2];
    for i in 0..n1 {
        let p = t1.vertex(i);
        for j in 0..n2 {
            let dist = p.dist(t2.vertex(j));
            let best = match (i, j) {
                (0, 0) => dist,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = dist.max(best);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n2 - 1]
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOracleResult {
    pub yes: bool,
    /// First satisfying reference, 0-based vertex indices.
    pub reference: Option<(usize, usize)>,
    /// Candidate references examined, 0-based.
    pub candidates: Vec<(usize, usize)>,
}

/// Minimal end vertex `t > s` with `len(T[s..t]) ≥ ell`, by direct scan.
pub fn candidate_end(t: &Trajectory, s: usize, ell: f64) -> Option<usize> {
    let tol = eps() * ell.max(1.0);
    let mut len = 0.0;
    for k in s + 1..t.len() {
        len += t.segment_length(k - 1);
        if len >= ell - tol {
            return Some(k);
        }
    }
    None
}

/// For each start row `y` on column `s`, the lowest row where a monotone
/// grid path from `(s, y)` first meets column `te`, staying in the lower
/// region `y ≤ s` or the upper region `y ≥ te`. Rows strictly inside
/// `(s, te)` and unreachable starts give `None`.
pub fn discrete_min_ends(t: &Trajectory, d: f64, s: usize, te: usize) -> Vec<Option<usize>> {
    let n = t.len();
    let free = |x: usize, y: usize| within(t.vertex(x).dist(t.vertex(y)), d);
    let w = te - s + 1;
    let mut out = vec![None; n];
    for (y0, slot) in out.iter_mut().enumerate() {
        let (lo, hi) = if y0 <= s {
            (0, s)
        } else if y0 >= te {
            (te, n - 1)
        } else {
            continue;
        };
        if !free(s, y0) {
            continue;
        }
        let h = hi - lo + 1;
        let mut reach = vec![false; w * h];
        let at = |x: usize, y: usize| (x - s) * h + (y - lo);
        for x in s..=te {
            for y in y0.max(lo)..=hi {
                let r = if x == s && y == y0 {
                    true
                } else {
                    let prev_x = x > s && (reach[at(x - 1, y)] || (y > lo && reach[at(x - 1, y - 1)]));
                    let below = y > y0 && reach[at(x, y - 1)];
                    (prev_x || below) && free(x, y)
                };
                reach[at(x, y)] = r;
            }
        }
        *slot = (y0..=hi).find(|&y| reach[at(te, y)]);
    }
    out
}

/// Largest set of intervals whose pairwise overlaps are at most a point.
pub(crate) fn schedule(mut iv: Vec<(f64, f64)>, tol: f64) -> usize {
    iv.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    let mut last = f64::NEG_INFINITY;
    let mut count = 0;
    for (lo, hi) in iv {
        if lo >= last - tol {
            count += 1;
            last = hi;
        }
    }
    count
}

/// Exhaustive discrete SC decision for `n ≤ 14`.
pub fn sc_discrete_bruteforce(inst: &SCInstance) -> Result<DiscreteOracleResult, OracleError> {
    let n = inst.t.len();
    if n > MAX_N {
        return Err(OracleError::TooLarge { n, limit: MAX_N });
    }
    let candidates: Vec<(usize, usize)> =
        (0..n).filter_map(|s| candidate_end(&inst.t, s, inst.ell).map(|e| (s, e))).collect();
    let need = inst.m.saturating_sub(1);
    for &(s, e) in &candidates {
        let iv: Vec<(f64, f64)> = discrete_min_ends(&inst.t, inst.d, s, e)
            .into_iter()
            .enumerate()
            .filter_map(|(y, r)| r.map(|r| (y as f64, r as f64)))
            .collect();
        if schedule(iv, 0.0) >= need {
            return Ok(DiscreteOracleResult { yes: true, reference: Some((s, e)), candidates });
        }
    }
    Ok(DiscreteOracleResult { yes: false, reference: None, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    fn square_laps(k: usize) -> Trajectory {
        let sq = [(0., 0.), (1., 0.), (1., 1.), (0., 1.)];
        let mut v: Vec<(f64, f64)> = (0..4 * k).map(|i| sq[i % 4]).collect();
        v.push((0., 0.));
        traj(&v)
    }

    #[test]
    fn translation_by_one() {
        let a = traj(&[(0., 0.), (1., 0.)]);
        let b = traj(&[(0., 1.), (1., 1.)]);
        assert_eq!(discrete_frechet_dp(&a, &b), 1.0);
        assert_eq!(discrete_frechet_dp(&a, &a), 0.0);
    }

    #[test]
    fn three_laps_yes() {
        let inst = SCInstance::new(square_laps(3), 3, 4.0, 0.1);
        let r = sc_discrete_bruteforce(&inst).unwrap();
        assert!(r.yes);
        assert_eq!(r.reference, Some((0, 4)));
    }

    #[test]
    fn two_laps_no_for_three() {
        let inst = SCInstance::new(square_laps(2), 3, 4.0, 0.1);
        assert!(!sc_discrete_bruteforce(&inst).unwrap().yes);
    }

    #[test]
    fn all_far_is_no() {
        let t = traj(&[(0., 0.), (10., 0.), (20., 0.), (30., 0.)]);
        assert!(!sc_discrete_bruteforce(&SCInstance::new(t, 2, 5.0, 1.0)).unwrap().yes);
    }

    #[test]
    fn large_d_is_yes() {
        let t = traj(&[(0., 0.), (1., 0.), (2., 0.), (3., 0.), (4., 0.), (5., 0.)]);
        assert!(sc_discrete_bruteforce(&SCInstance::new(t, 3, 1.0, 100.0)).unwrap().yes);
    }

    #[test]
    fn size_guard() {
        let v: Vec<(f64, f64)> = (0..15).map(|i| (i as f64, 0.0)).collect();
        let e = sc_discrete_bruteforce(&SCInstance::new(traj(&v), 2, 1.0, 1.0)).unwrap_err();
        assert_eq!(e, OracleError::TooLarge { n: 15, limit: 14 });
    }

    #[test]
    fn unit_spacing_candidates() {
        let v: Vec<(f64, f64)> = (0..8).map(|i| (i as f64, 0.0)).collect();
        let t = traj(&v);
        for s in 0..5 {
            assert_eq!(candidate_end(&t, s, 2.5), Some(s + 3));
        }
        assert_eq!(candidate_end(&t, 5, 2.5), None);
    }
}
