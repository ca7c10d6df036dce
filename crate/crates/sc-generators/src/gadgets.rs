use crate::{polyline, vertex_margin, GenError};
use sc_geometry::{Point2, Trajectory};
use std::f64::consts::{FRAC_PI_2, PI};

const R: f64 = 1.0;
const R_PRIME: f64 = 16.0;

/// Two curves whose diagram `F_d(t2, t1)` is read between the lines over
/// the start and the end of `t2`.
#[derive(Debug, Clone)]
pub struct GadgetPair {
    pub t1: Trajectory,
    pub t2: Trajectory,
    pub d: f64,
    pub w: usize,
    /// Smallest nonzero vertex-pair gap to `d`.
    pub margin: f64,
}

impl GadgetPair {
    fn new(t1: Trajectory, t2: Trajectory, d: f64, w: usize) -> Self {
        let margin = vertex_margin(&t2, &t1, d);
        GadgetPair { t1, t2, d, w, margin }
    }
}

/// A path from `l_s` to `l_t` exists exactly when `x·z = 0`.
pub fn gen_or_gadget(x: bool, z: bool) -> GadgetPair {
    let phi = FRAC_PI_2;
    let ring = |k: f64| Point2::cis(R, k * phi);
    let far = |k: f64| Point2::cis(R_PRIME, PI + k * phi);
    let o = Point2::new(0.0, 0.0);
    let d = far(0.0).dist(ring(1.0));
    let (a, b, c, dd) = (far(0.0), far(1.0), far(2.0), far(3.0));
    let bx = if x { b } else { o };
    let dz = if z { dd } else { o };
    let t1 = polyline((0..4).map(|k| ring(k as f64)).collect());
    let t2 = polyline(vec![b, o, c, o, dd, o, a, o, bx, o, c, o, dz]);
    GadgetPair::new(t1, t2, d, 1)
}

/// The most pairwise disjoint paths from `l_s` to `l_t` is `W` when `x`
/// and `z` are orthogonal and `W − 1` otherwise.
pub fn gen_and_gadget(x: &[bool], z: &[bool]) -> Result<GadgetPair, GenError> {
    if x.len() != z.len() {
        return Err(GenError::LengthMismatch(x.len(), z.len()));
    }
    let w = x.len();
    if w == 0 {
        return Err(GenError::Empty);
    }
    let phi = 2.0 * PI / (2 * w + 4) as f64;
    let d = Point2::cis(R, phi).dist(Point2::cis(R_PRIME, PI));
    let eps = R + R_PRIME - d;
    let near = |rad: f64, k: usize| Point2::cis(rad, k as f64 * phi);
    let far = |rad: f64, k: usize| Point2::cis(rad, PI + k as f64 * phi);
    let o = Point2::new(0.0, 0.0);
    let shrink = 2.0 * eps / 3.0;

    let mut v1 = Vec::new();
    for h in 1..=w {
        v1.push(near(R, 0));
        for u in 1..=2 * w + 1 {
            v1.push(near(if u == 2 * h { R - shrink } else { R }, u));
        }
        v1.push(near(if z[h - 1] { R } else { R - shrink }, 2 * w + 2));
        v1.push(near(R, 2 * w + 3));
    }
    v1.push(near(R, 0));

    let b0 = |u: usize| far(R_PRIME, u);
    let b1 = |u: usize| far(if u % 2 == 0 && !x[u / 2 - 1] { R_PRIME - shrink } else { R_PRIME }, u);
    let (a_plus, c0, c1, d_plus) =
        (far(R_PRIME, 0), far(R_PRIME, 2 * w + 2), far(R_PRIME - shrink, 2 * w + 2), far(R_PRIME, 2 * w + 3));
    let mut v2 = Vec::new();
    let run = |v2: &mut Vec<Point2>, f: &dyn Fn(usize) -> Point2| {
        for u in 1..=2 * w + 1 {
            v2.extend([f(u), o]);
        }
    };
    run(&mut v2, &b0);
    v2.extend([c0, o, a_plus, o]);
    run(&mut v2, &b1);
    v2.extend([c1, o, a_plus, o]);
    run(&mut v2, &b0);
    v2.extend([d_plus, o, a_plus, o, c0, o, d_plus, o]);
    Ok(GadgetPair::new(polyline(v1), polyline(v2), d, w))
}
