use crate::polyline;
use sc_geometry::{Point2, Trajectory};
use std::f64::consts::FRAC_PI_2;

const R: f64 = 1.0;
const R_PRIME: f64 = 16.0;

/// Curve whose self free space holds `n` copies of a diagram with `2n²`
/// same-height crossings.
#[derive(Debug, Clone)]
pub struct DensityInstance {
    pub t: Trajectory,
    pub t1: Trajectory,
    pub t2: Trajectory,
    pub d: f64,
    pub expected_kind2_per_copy: usize,
}

/// `T = (T₁)ⁿ ∘ T₂` with `T₁ = A∘B∘C∘D` on radius `r` and
/// `T₂ = ⊙(Bᵢ⁺∘O) ∘ ⊙(C⁺∘O)`.
pub fn gen_density(n: usize) -> DensityInstance {
    let n = n.max(1);
    let phi = FRAC_PI_2;
    let ring = |k: f64| Point2::cis(R, k * phi);
    let far = |k: f64| Point2::cis(R_PRIME, std::f64::consts::PI + k * phi);
    let d = far(0.0).dist(ring(1.0));
    let t1 = polyline((0..4).map(|k| ring(k as f64)).collect());
    let b_minus = Point2::cis(d - R, std::f64::consts::PI + phi);
    let (b_plus, c_plus) = (far(1.0), far(2.0));
    let o = Point2::new(0.0, 0.0);
    let mut v = Vec::with_capacity(4 * n);
    for i in 1..=n {
        v.push(b_minus.lerp(b_plus, i as f64 / (n + 1) as f64));
        v.push(o);
    }
    for _ in 0..n {
        v.extend([c_plus, o]);
    }
    let t2 = polyline(v);
    let t = Trajectory::concat(std::iter::repeat_n(&t1, n).chain([&t2])).expect("non-empty parts");
    DensityInstance { t, t1, t2, d, expected_kind2_per_copy: 2 * n * n }
}
