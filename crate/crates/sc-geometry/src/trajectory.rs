use crate::{eps, GeometryError, Point2};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Trajectory {
    vertices: Vec<Point2>,
    prefix: Vec<f64>,
}

impl TryFrom<Vec<Point2>> for Trajectory {
    type Error = GeometryError;
    fn try_from(v: Vec<Point2>) -> Result<Self, Self::Error> {
        Trajectory::new(v)
    }
}

impl From<Trajectory> for Vec<Point2> {
    fn from(t: Trajectory) -> Self {
        t.vertices
    }
}

impl Trajectory {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.is_empty() {
            return Err(GeometryError::Empty);
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        let mut prefix = Vec::with_capacity(vertices.len());
        let mut acc = 0.0;
        prefix.push(0.0);
        for w in vertices.windows(2) {
            acc += w[0].dist(w[1]);
            prefix.push(acc);
        }
        Ok(Trajectory { vertices, prefix })
    }

    pub fn from_xy(pts: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Trajectory::new(pts.iter().map(|&p| p.into()).collect())
    }

    /// Joins trajectories end to end with connecting segments.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Trajectory>) -> Result<Self, GeometryError> {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.vertices);
        }
        Trajectory::new(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    /// Cumulative arclength at each vertex.
    #[inline]
    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    #[inline]
    pub fn total_length(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    #[inline]
    pub fn segment_length(&self, i: usize) -> f64 {
        self.prefix[i + 1] - self.prefix[i]
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max(a.dist(*b));
            }
        }
        best
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    fn check(&self, p: f64) -> Result<(), GeometryError> {
        let n = self.len();
        if !(p >= 1.0 && p <= n as f64) {
            return Err(GeometryError::OutOfRange { p, n });
        }
        Ok(())
    }

    fn split0(&self, u: f64) -> (usize, f64) {
        let last = self.len() - 1;
        if last == 0 || u <= 0.0 {
            return (0, 0.0);
        }
        if u >= last as f64 {
            return (last - 1, 1.0);
        }
        let i = u.floor() as usize;
        (i, u - i as f64)
    }

    /// Point at 0-based offset `u ∈ [0, n−1]` (clamped).
    pub fn eval0(&self, u: f64) -> Point2 {
        if self.len() == 1 {
            return self.vertices[0];
        }
        let (i, mu) = self.split0(u);
        if mu == 0.0 {
            return self.vertices[i];
        }
        if mu == 1.0 {
            return self.vertices[i + 1];
        }
        self.vertices[i].lerp(self.vertices[i + 1], mu)
    }

    /// Cumulative arclength at 0-based offset `u`.
    pub fn arclen0(&self, u: f64) -> f64 {
        if self.len() == 1 {
            return 0.0;
        }
        let (i, mu) = self.split0(u);
        self.prefix[i] + mu * self.segment_length(i)
    }

    /// Smallest 0-based offset whose cumulative arclength equals `len`;
    /// `None` if `len` exceeds the total by more than the tolerance.
    pub fn offset_at_arclen0(&self, len: f64) -> Option<f64> {
        let total = self.total_length();
        let tol = eps() * total.max(1.0) * 1e-3;
        if len > total + tol || len < -tol {
            return None;
        }
        if len <= 0.0 {
            return Some(0.0);
        }
        let len = len.min(total);
        let k = self.prefix.partition_point(|&x| x < len);
        if k < self.len() && self.prefix[k] == len {
            return Some(k as f64);
        }
        if k == 0 {
            return Some(0.0);
        }
        if k >= self.len() {
            return Some((self.len() - 1) as f64);
        }
        let i = k - 1;
        let seg = self.segment_length(i);
        let mu = ((len - self.prefix[i]) / seg).clamp(0.0, 1.0);
        Some(i as f64 + mu)
    }

    /// 0-based counterpart of `advance_by_length`.
    pub fn advance0(&self, u: f64, ell: f64) -> Option<f64> {
        self.offset_at_arclen0(self.arclen0(u) + ell)
    }

    /// Smallest 0-based offset `s` with `arclen(s..u) = ell`.
    pub fn retreat0(&self, u: f64, ell: f64) -> Option<f64> {
        let target = self.arclen0(u) - ell;
        let tol = eps() * self.total_length().max(1.0) * 1e-3;
        if target < -tol {
            return None;
        }
        self.offset_at_arclen0(target.max(0.0))
    }

    /// Minimal vertex index `t ≥ s` whose subtrajectory from vertex `s` has
    /// length at least `ell` (0-based indices).
    pub fn advance_vertex(&self, s: usize, ell: f64) -> Option<usize> {
        let tol = eps() * ell.max(1.0);
        let target = self.prefix[s] + ell - tol;
        let k = s + self.prefix[s..].partition_point(|&x| x < target);
        (k < self.len()).then_some(k)
    }

    pub fn point_at(&self, p: f64) -> Result<Point2, GeometryError> {
        self.check(p)?;
        Ok(self.eval0(p - 1.0))
    }

    pub fn arclength_between(&self, a: f64, b: f64) -> Result<f64, GeometryError> {
        self.check(a)?;
        self.check(b)?;
        if a > b {
            return Err(GeometryError::Reversed { a, b });
        }
        if a == b {
            return Ok(0.0);
        }
        Ok((self.arclen0(b - 1.0) - self.arclen0(a - 1.0)).max(0.0))
    }

    pub fn advance_by_length(&self, start: f64, ell: f64) -> Result<Option<f64>, GeometryError> {
        self.check(start)?;
        if !(ell >= 0.0) {
            return Err(GeometryError::NegativeLength(ell));
        }
        Ok(self.advance0(start - 1.0, ell).map(|u| u + 1.0))
    }

    /// The subtrajectory between 1-based offsets `a ≤ b`.
    pub fn subtrajectory(&self, a: f64, b: f64) -> Result<Trajectory, GeometryError> {
        self.check(a)?;
        self.check(b)?;
        if a > b {
            return Err(GeometryError::Reversed { a, b });
        }
        let (a0, b0) = (a - 1.0, b - 1.0);
        let mut v = vec![self.eval0(a0)];
        let first = a0.floor() as usize + 1;
        v.extend((first..self.len()).take_while(|&k| (k as f64) < b0).map(|k| self.vertices[k]));
        v.push(self.eval0(b0));
        Trajectory::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(pts: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(pts).unwrap()
    }

    #[test]
    fn point_at_examples() {
        let t = traj(&[(0., 0.), (2., 0.)]);
        assert_eq!(t.point_at(1.0).unwrap(), Point2::new(0., 0.));
        assert_eq!(t.point_at(1.5).unwrap(), Point2::new(1., 0.));
        let t = traj(&[(0., 0.), (1., 0.), (1., 1.)]);
        assert_eq!(t.point_at(2.25).unwrap(), Point2::new(1., 0.25));
        assert!(t.point_at(0.5).is_err());
        assert!(t.point_at(3.01).is_err());
    }

    #[test]
    fn arclength_examples() {
        let t = traj(&[(0., 0.), (1., 0.), (1., 1.)]);
        assert_eq!(t.arclength_between(1.0, 3.0).unwrap(), 2.0);
        assert_eq!(t.arclength_between(2.0, 2.0).unwrap(), 0.0);
        assert!(t.arclength_between(2.5, 2.0).is_err());
        let t = traj(&[(0., 0.), (1., 0.)]);
        assert_eq!(t.arclength_between(1.25, 1.75).unwrap(), 0.5);
    }

    #[test]
    fn advance_examples() {
        let t = traj(&[(0., 0.), (3., 0.)]);
        assert_eq!(t.advance_by_length(1.0, 1.5).unwrap(), Some(1.5));
        assert_eq!(t.advance_by_length(1.0, 3.5).unwrap(), None);
        let t = traj(&[(0., 0.), (1., 0.), (1., 2.)]);
        let b = t.advance_by_length(1.0, 2.0).unwrap().unwrap();
        assert!((b - 2.5).abs() < 1e-12);
    }

    #[test]
    fn subtrajectory_examples() {
        let t = traj(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let s = t.subtrajectory(1.5, 3.5).unwrap();
        assert_eq!(s.vertices(), &[Point2::new(0.5, 0.), Point2::new(1., 0.), Point2::new(1., 1.), Point2::new(0.5, 1.)]);
        assert_eq!(t.subtrajectory(2.0, 3.0).unwrap().len(), 2);
        assert_eq!(t.subtrajectory(2.0, 2.0).unwrap().total_length(), 0.0);
        assert!(t.subtrajectory(3.0, 2.0).is_err());
    }

    #[test]
    fn advance_skips_to_first_of_repeated_vertices() {
        let t = traj(&[(0., 0.), (1., 0.), (1., 0.), (2., 0.)]);
        assert_eq!(t.advance0(0.0, 1.0), Some(1.0));
        assert_eq!(t.advance0(0.0, 1.5), Some(2.5));
    }

    #[test]
    fn retreat_undoes_advance() {
        let t = traj(&[(0., 0.), (1., 0.), (1., 2.), (4., 2.)]);
        let b = t.advance0(0.3, 2.2).unwrap();
        let a = t.retreat0(b, 2.2).unwrap();
        assert!((a - 0.3).abs() < 1e-12);
        assert_eq!(t.retreat0(0.2, 1.0), None);
    }

    #[test]
    fn discrete_advance() {
        let t = traj(&[(0., 0.), (1., 0.), (2., 0.), (3., 0.), (4., 0.), (5., 0.)]);
        assert_eq!(t.advance_vertex(0, 2.5), Some(3));
        assert_eq!(t.advance_vertex(2, 2.5), Some(5));
        assert_eq!(t.advance_vertex(3, 2.5), None);
        assert_eq!(t.advance_vertex(1, 2.0), Some(3));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Trajectory::new(vec![]), Err(GeometryError::Empty));
        assert_eq!(traj_err(&[(0., 0.), (f64::NAN, 1.)]), GeometryError::NonFinite(1));
    }

    fn traj_err(pts: &[(f64, f64)]) -> GeometryError {
        Trajectory::from_xy(pts).unwrap_err()
    }

    #[test]
    fn single_vertex_trajectory() {
        let t = traj(&[(2., 3.)]);
        assert_eq!(t.point_at(1.0).unwrap(), Point2::new(2., 3.));
        assert_eq!(t.total_length(), 0.0);
        assert_eq!(t.advance_by_length(1.0, 0.0).unwrap(), Some(1.0));
    }
}
