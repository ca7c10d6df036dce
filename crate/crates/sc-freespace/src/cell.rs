use sc_geometry::{slack, Point2};

/// Sorted real roots of `a x² + b x + c`, or `None`.
pub fn quad_roots(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    if a == 0.0 {
        if b == 0.0 {
            return None;
        }
        let x = -c / b;
        return Some((x, x));
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc < -1e-12 * (b * b + (4.0 * a * c).abs()) {
            return None;
        }
        disc = 0.0;
    }
    let sq = disc.sqrt();
    let sgn = if b >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (b + sgn * sq);
    if q == 0.0 {
        return Some((0.0, 0.0));
    }
    let (x1, x2) = (q / a, c / q);
    Some(if x1 <= x2 { (x1, x2) } else { (x2, x1) })
}

/// Geometry of one cell: the x-axis segment `a→b`, the y-axis segment
/// `c→e`, and the slackened radius. Local coordinates `(μ, ν) ∈ [0,1]²`.
#[derive(Debug, Clone, Copy)]
pub struct CellGeom {
    w: Point2,
    u: Point2,
    v: Point2,
    pub r: f64,
}

impl CellGeom {
    pub fn new(a: Point2, b: Point2, c: Point2, e: Point2, d: f64) -> Self {
        CellGeom { w: a - c, u: b - a, v: e - c, r: d + slack(d) }
    }

    /// Squared distance minus r² at local coordinates.
    #[inline]
    pub fn f(&self, mu: f64, nu: f64) -> f64 {
        (self.w + self.u * mu - self.v * nu).norm2() - self.r * self.r
    }

    pub fn x_degenerate(&self) -> bool {
        self.u.norm2() <= 1e-300
    }

    pub fn y_degenerate(&self) -> bool {
        self.v.norm2() <= 1e-300
    }

    /// Boundary ν values on the vertical line at `mu` (unclamped).
    pub fn nu_roots(&self, mu: f64) -> Option<(f64, f64)> {
        let p = self.w + self.u * mu;
        let vv = self.v.norm2();
        if vv <= 1e-300 {
            return None;
        }
        quad_roots(vv, -2.0 * p.dot(self.v), p.norm2() - self.r * self.r)
    }

    /// Boundary μ values on the horizontal line at `nu` (unclamped).
    pub fn mu_roots(&self, nu: f64) -> Option<(f64, f64)> {
        let q = self.w - self.v * nu;
        let uu = self.u.norm2();
        if uu <= 1e-300 {
            return None;
        }
        quad_roots(uu, 2.0 * q.dot(self.u), q.norm2() - self.r * self.r)
    }

    /// Leftmost and rightmost points of the free ellipse (unclamped), when
    /// the two segments are not parallel.
    pub fn x_extremes(&self) -> Option<[(f64, f64); 2]> {
        let vl = self.v.norm();
        if vl <= 1e-150 {
            return None;
        }
        let n = Point2::new(-self.v.y / vl, self.v.x / vl);
        let un = self.u.dot(n);
        if un.abs() <= 1e-12 * self.u.norm().max(1e-300) {
            return None;
        }
        let wn = self.w.dot(n);
        let m1 = (-self.r - wn) / un;
        let m2 = (self.r - wn) / un;
        let (lo, hi) = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
        let nu_at = |mu: f64| (self.w + self.u * mu).dot(self.v) / (vl * vl);
        Some([(lo, nu_at(lo)), (hi, nu_at(hi))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_simple_quadratics() {
        assert_eq!(quad_roots(1.0, -3.0, 2.0), Some((1.0, 2.0)));
        assert_eq!(quad_roots(1.0, 0.0, 1.0), None);
        assert_eq!(quad_roots(0.0, 2.0, -4.0), Some((2.0, 2.0)));
    }

    #[test]
    fn extremes_are_tangent_points() {
        let g = CellGeom::new(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.2, -0.5),
            Point2::new(0.9, 0.6),
            0.3,
        );
        for (mu, nu) in g.x_extremes().unwrap() {
            assert!(g.f(mu, nu).abs() < 1e-9);
            let (a, b) = g.nu_roots(mu).unwrap();
            assert!((a - b).abs() < 1e-6);
        }
    }
}
