use sc_geometry::{slack, within, Point2, SCInstance, SCWitness, Trajectory};

/// `{μ ∈ [0,1] : ‖p − (a + μ(b−a))‖ ≤ d}` at the slackened radius.
fn free_iv(p: Point2, a: Point2, b: Point2, d: f64) -> Option<(f64, f64)> {
    let r = d + slack(d);
    let u = b - a;
    let w = a - p;
    let uu = u.dot(u);
    if uu == 0.0 {
        return (w.norm() <= r).then_some((0.0, 1.0));
    }
    // uu μ² + 2 (u·w) μ + (w·w − r²) ≤ 0
    let half_b = u.dot(w);
    let c = w.dot(w) - r * r;
    let disc = half_b * half_b - uu * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let lo = ((-half_b - sq) / uu).max(0.0);
    let hi = ((-half_b + sq) / uu).min(1.0);
    (lo <= hi).then_some((lo, hi))
}

type Iv = Option<(f64, f64)>;

/// Reachable part of the far edge given reachable parts of the near edges.
fn prop(free: Iv, from_side: Iv, from_below: Iv) -> Iv {
    let f = free?;
    if from_below.is_some() {
        return Some(f);
    }
    let (lo, _) = from_side?;
    let lo = lo.max(f.0);
    (lo <= f.1).then_some((lo, f.1))
}

/// Alt–Godau cell-by-cell propagation of reachable edge intervals.
pub fn continuous_frechet_decide_oracle(t1: &Trajectory, t2: &Trajectory, d: f64) -> bool {
    let (n1, n2) = (t1.len(), t2.len());
    if n1 == 1 || n2 == 1 {
        return t1
            .vertices()
            .iter()
            .all(|p| t2.vertices().iter().all(|q| within(p.dist(*q), d)));
    }
    let (p, q) = (t1.vertices(), t2.vertices());
    if !within(p[0].dist(q[0]), d) || !within(p[n1 - 1].dist(q[n2 - 1]), d) {
        return false;
    }
    // left[e][j]: reachable part of the vertical edge x = e, row j (local).
    // bottom[k][i]: reachable part of the horizontal edge y = k, column i.
    let mut left = vec![vec![None; n2 - 1]; n1];
    let mut bottom = vec![vec![None; n1 - 1]; n2];
    let mut ok = true;
    for j in 0..n2 - 1 {
        let f = free_iv(p[0], q[j], q[j + 1], d);
        left[0][j] = if ok { f.filter(|iv| iv.0 == 0.0) } else { None };
        ok = left[0][j].is_some_and(|iv| iv.1 == 1.0);
    }
    ok = true;
    for i in 0..n1 - 1 {
        let f = free_iv(q[0], p[i], p[i + 1], d);
        bottom[0][i] = if ok { f.filter(|iv| iv.0 == 0.0) } else { None };
        ok = bottom[0][i].is_some_and(|iv| iv.1 == 1.0);
    }
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            let (l, b) = (left[i][j], bottom[j][i]);
            left[i + 1][j] = prop(free_iv(p[i + 1], q[j], q[j + 1], d), l, b);
            bottom[j + 1][i] = prop(free_iv(q[j + 1], p[i], p[i + 1], d), b, l);
        }
    }
    left[n1 - 1][n2 - 2].is_some_and(|iv| iv.1 == 1.0) || bottom[n2 - 1][n1 - 2].is_some_and(|iv| iv.1 == 1.0)
}

/// Checks a clustering witness through its intervals only: `m − 1`
/// disjoint intervals off the reference, reference length `ℓ`, and every
/// interval within Fréchet distance `d` of the reference. The witness paths
/// are ignored. Interval endpoints sit on the slackened free-space boundary,
/// so the check allows one more slack.
pub fn sc_witness_frechet_ok(inst: &SCInstance, w: &SCWitness) -> bool {
    let tol = 1e-9 * inst.ell.max(1.0);
    let (s, t) = w.reference;
    let need = inst.m.saturating_sub(1);
    if w.intervals.len() < need || !w.intervals_ok(1e-9) {
        return false;
    }
    let Ok(len) = inst.t.arclength_between(s, t) else { return false };
    if len < inst.ell - tol {
        return false;
    }
    let Ok(r) = inst.t.subtrajectory(s, t) else { return false };
    w.intervals.iter().take(need).all(|&(lo, hi)| {
        inst.t.subtrajectory(lo, hi).is_ok_and(|c| continuous_frechet_decide_oracle(&r, &c, inst.d + slack(inst.d)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    #[test]
    fn basic_cases() {
        let t = traj(&[(0., 0.), (1., 3.), (2., -1.)]);
        assert!(continuous_frechet_decide_oracle(&t, &t, 0.0));
        let a = traj(&[(0., 0.), (1., 0.)]);
        let b = traj(&[(0., 2.), (1., 2.)]);
        assert!(!continuous_frechet_decide_oracle(&a, &b, 1.0));
        assert!(continuous_frechet_decide_oracle(&a, &b, 2.0));
    }

    #[test]
    fn backtracking_curve_needs_larger_d() {
        let a = traj(&[(0., 0.), (2., 0.)]);
        let b = traj(&[(0., 0.), (1.5, 0.), (0.5, 0.), (2., 0.)]);
        assert!(!continuous_frechet_decide_oracle(&a, &b, 0.4));
        assert!(continuous_frechet_decide_oracle(&a, &b, 0.5));
    }

    #[test]
    fn witness_on_repeated_square() {
        let sq = [(0., 0.), (1., 0.), (1., 1.), (0., 1.)];
        let v: Vec<(f64, f64)> = (0..9).map(|i| sq[i % 4]).collect();
        let inst = SCInstance::new(traj(&v), 2, 4.0, 0.1);
        let good = SCWitness { reference: (1.0, 5.0), intervals: vec![(5.0, 9.0)], paths: vec![] };
        assert!(sc_witness_frechet_ok(&inst, &good));
        let shifted = SCWitness { intervals: vec![(6.0, 9.0)], ..good.clone() };
        assert!(!sc_witness_frechet_ok(&inst, &shifted));
        let overlapping = SCWitness { intervals: vec![(4.0, 8.0)], ..good };
        assert!(!sc_witness_frechet_ok(&inst, &overlapping));
    }
}
