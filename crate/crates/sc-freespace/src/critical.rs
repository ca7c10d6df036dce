use crate::diagram::{ExternalKind, FreeSpaceDiagram};
use crate::exec::{map_range, Exec};
use sc_geometry::{slack, Trajectory};
use serde::{Deserialize, Serialize};

/// How far inside `(0,1)` a local coordinate must be to count as interior.
const INTERIOR: f64 = 1e-9;
/// Largest local offset from a vertex that the radius slack can explain.
const CONTACT: f64 = 1e-6;
const OFFSET_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InternalKind {
    LeftmostFree,
    RightmostFree,
    SharesYWithExternal,
    EllOffsetPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InternalCriticalPoint {
    pub x: f64,
    pub y: f64,
    pub cell: (usize, usize),
    pub kind: InternalKind,
    /// For `EllOffsetPair`, the boundary point `ℓ` to the left.
    pub partner: Option<(f64, f64)>,
}

fn interior(t: f64) -> bool {
    t > INTERIOR && t < 1.0 - INTERIOR
}

/// An endpoint displaced off a vertex only by the radius slack: the vertex
/// itself is at distance `d` up to that slack.
fn vertex_contact(fsd: &FreeSpaceDiagram, x: f64, y: f64) -> bool {
    let k = y.round();
    if (y - k).abs() > CONTACT {
        return false;
    }
    let gap = fsd.t1().eval0(x).dist(fsd.t2().vertex(k as usize)) - fsd.d();
    gap.abs() <= 2.0 * slack(fsd.d())
}

fn cmp_points(a: &InternalCriticalPoint, b: &InternalCriticalPoint) -> std::cmp::Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(a.kind.cmp(&b.kind))
}

/// Column-by-column enumeration of internal critical points of a diagram.
/// With `ell = None` the offset pairs are skipped.
pub struct InternalScan<'a> {
    fsd: &'a FreeSpaceDiagram,
    ell: Option<f64>,
    row_ys: Vec<Vec<f64>>,
}

impl<'a> InternalScan<'a> {
    pub fn new(fsd: &'a FreeSpaceDiagram, ell: Option<f64>) -> Self {
        let mut row_ys = vec![Vec::new(); fsd.rows()];
        for p in fsd.external() {
            if p.kind != ExternalKind::VerticalEndpoint {
                continue;
            }
            let j = fsd.row_of(p.y);
            if interior(p.y - j as f64) && !vertex_contact(fsd, p.x, p.y) {
                row_ys[j].push(p.y);
            }
        }
        for ys in &mut row_ys {
            ys.sort_by(f64::total_cmp);
            ys.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        InternalScan { fsd, ell, row_ys }
    }

    /// Distinct external y values strictly inside row `j`.
    pub fn row_ys(&self, j: usize) -> &[f64] {
        &self.row_ys[j]
    }

    pub fn diagram(&self) -> &FreeSpaceDiagram {
        self.fsd
    }

    /// All internal points whose cell lies in column `i`, sorted.
    pub fn column(&self, i: usize) -> Vec<InternalCriticalPoint> {
        let mut out = Vec::new();
        if self.fsd.t1().segment_length(i) > 0.0 {
            for j in 0..self.fsd.rows() {
                self.extremes(i, j, &mut out);
                self.shares_y(i, j, &mut out);
                if let Some(ell) = self.ell {
                    self.offset_pairs(i, j, ell, &mut out);
                }
            }
        }
        out.sort_by(cmp_points);
        out
    }

    /// Streams every internal point in `(x, y, kind)` order.
    pub fn stream(&self) -> impl Iterator<Item = InternalCriticalPoint> + '_ {
        (0..self.fsd.cols()).flat_map(move |i| self.column(i))
    }

    pub fn collect_with(&self, exec: Exec) -> Vec<InternalCriticalPoint> {
        map_range(exec, self.fsd.cols(), |i| self.column(i)).concat()
    }

    /// Counts indexed by `InternalKind as usize`.
    pub fn count_by_kind(&self, exec: Exec) -> [usize; 4] {
        let per = map_range(exec, self.fsd.cols(), |i| {
            let mut c = [0usize; 4];
            for p in self.column(i) {
                c[p.kind as usize] += 1;
            }
            c
        });
        per.iter().fold([0; 4], |mut acc, c| {
            for k in 0..4 {
                acc[k] += c[k];
            }
            acc
        })
    }

    fn extremes(&self, i: usize, j: usize, out: &mut Vec<InternalCriticalPoint>) {
        let g = self.fsd.cell_geom(i, j);
        if g.x_degenerate() || g.y_degenerate() {
            return;
        }
        if let Some(ext) = g.x_extremes() {
            for ((mu, nu), kind) in ext.into_iter().zip([InternalKind::LeftmostFree, InternalKind::RightmostFree]) {
                if interior(mu) && interior(nu) {
                    out.push(InternalCriticalPoint {
                        x: i as f64 + mu,
                        y: j as f64 + nu,
                        cell: (i, j),
                        kind,
                        partner: None,
                    });
                }
            }
        }
    }

    fn shares_y(&self, i: usize, j: usize, out: &mut Vec<InternalCriticalPoint>) {
        let g = self.fsd.cell_geom(i, j);
        if g.x_degenerate() || g.y_degenerate() {
            return;
        }
        for &y in &self.row_ys[j] {
            let Some((a, b)) = g.mu_roots(y - j as f64) else { continue };
            let roots: &[f64] = if (a - b).abs() <= 1e-12 { &[a][..] } else { &[a, b][..] };
            for &mu in roots {
                if interior(mu) {
                    out.push(InternalCriticalPoint {
                        x: i as f64 + mu,
                        y,
                        cell: (i, j),
                        kind: InternalKind::SharesYWithExternal,
                        partner: None,
                    });
                }
            }
        }
    }

    /// Pairs whose right member lies in column `b`, row `j`.
    fn offset_pairs(&self, b: usize, j: usize, ell: f64, out: &mut Vec<InternalCriticalPoint>) {
        let t = self.fsd.t1();
        let pre = t.prefix();
        let (lb0, lb1) = (pre[b], pre[b + 1]);
        let gb = self.fsd.cell_geom(b, j);
        if gb.y_degenerate() {
            return;
        }
        // Left columns a with [pre[a], pre[a+1]] meeting [lb0 − ℓ, lb1 − ℓ].
        let lo = lb0 - ell;
        let hi = lb1 - ell;
        let start = pre.partition_point(|&v| v <= lo).saturating_sub(1);
        for a in start..self.fsd.cols() {
            if pre[a] > hi {
                break;
            }
            let len_a = pre[a + 1] - pre[a];
            if len_a <= 0.0 {
                continue;
            }
            let l0 = pre[a].max(lo);
            let l1 = pre[a + 1].min(hi);
            if l1 <= l0 {
                continue;
            }
            let ga = self.fsd.cell_geom(a, j);
            let len_b = lb1 - lb0;
            let mu_a = |l: f64| (l - pre[a]) / len_a;
            let mu_b = |l: f64| (l + ell - lb0) / len_b;
            let side = |l: f64| -> Option<[(f64, f64); 2]> {
                let ra = ga.nu_roots(mu_a(l))?;
                let rb = gb.nu_roots(mu_b(l))?;
                Some([ra, rb])
            };
            for (sa, sb) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let h = |l: f64| -> Option<f64> {
                    let [ra, rb] = side(l)?;
                    let na = if sa == 0 { ra.0 } else { ra.1 };
                    let nb = if sb == 0 { rb.0 } else { rb.1 };
                    Some(na - nb)
                };
                let step = (l1 - l0) / OFFSET_SAMPLES as f64;
                let mut prev: Option<(f64, f64)> = None;
                for k in 0..=OFFSET_SAMPLES {
                    let l = if k == OFFSET_SAMPLES { l1 } else { l0 + step * k as f64 };
                    let cur = h(l).map(|v| (l, v));
                    if let (Some((pl, pv)), Some((cl, cv))) = (prev, cur) {
                        let root = if cv == 0.0 {
                            Some(cl)
                        } else if pv != 0.0 && (pv < 0.0) != (cv < 0.0) {
                            Some(bisect(&h, pl, pv, cl))
                        } else {
                            None
                        };
                        if let Some(r) = root {
                            if let Some(p) = self.offset_point(a, b, j, r, ell, sa, sb, len_a, len_b) {
                                out.push(p);
                            }
                        }
                    }
                    prev = cur;
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn offset_point(
        &self,
        a: usize,
        b: usize,
        j: usize,
        l: f64,
        ell: f64,
        sa: usize,
        sb: usize,
        len_a: f64,
        len_b: f64,
    ) -> Option<InternalCriticalPoint> {
        let pre = self.fsd.t1().prefix();
        let mua = (l - pre[a]) / len_a;
        let mub = (l + ell - pre[b]) / len_b;
        let ra = self.fsd.cell_geom(a, j).nu_roots(mua)?;
        let rb = self.fsd.cell_geom(b, j).nu_roots(mub)?;
        let na = if sa == 0 { ra.0 } else { ra.1 };
        let nb = if sb == 0 { rb.0 } else { rb.1 };
        if !(interior(mua) && interior(mub) && interior(na) && interior(nb)) {
            return None;
        }
        Some(InternalCriticalPoint {
            x: b as f64 + mub,
            y: j as f64 + nb,
            cell: (b, j),
            kind: InternalKind::EllOffsetPair,
            partner: Some((a as f64 + mua, j as f64 + na)),
        })
    }
}

fn bisect(h: &impl Fn(f64) -> Option<f64>, mut lo: f64, lo_val: f64, mut hi: f64) -> f64 {
    let neg = lo_val < 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match h(mid) {
            Some(v) if v == 0.0 => return mid,
            Some(v) if (v < 0.0) == neg => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    0.5 * (lo + hi)
}

/// All internal critical points of `F_d(T, T)`, sorted by `(x, y, kind)`.
pub fn enumerate_internal_critical_points(t: &Trajectory, d: f64, ell: f64) -> Vec<InternalCriticalPoint> {
    let fsd = crate::build_continuous_fsd(t, t, d);
    InternalScan::new(&fsd, Some(ell)).collect_with(Exec::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(p: &[(f64, f64)]) -> Trajectory {
        Trajectory::from_xy(p).unwrap()
    }

    #[test]
    fn large_d_has_none() {
        let t = traj(&[(0., 0.), (1., 1.), (2., 0.), (0., 3.)]);
        let d = t.diameter() * 1.01;
        assert!(enumerate_internal_critical_points(&t, d, 0.7).is_empty());
    }

    #[test]
    fn points_lie_on_boundary() {
        let t = traj(&[(0., 0.), (2., 1.), (3., -1.), (0.5, 2.), (2.5, 2.5), (0., 0.5)]);
        let pts = enumerate_internal_critical_points(&t, 0.6, 1.3);
        assert!(!pts.is_empty());
        for p in &pts {
            let (a, b) = (t.eval0(p.x), t.eval0(p.y));
            assert!((a.dist(b) - 0.6).abs() < 1e-6, "{p:?}");
            assert!(p.x.fract() > 0.0 && p.y.fract() > 0.0);
            if let Some((px, py)) = p.partner {
                let (c, e) = (t.eval0(px), t.eval0(py));
                assert!((c.dist(e) - 0.6).abs() < 1e-6);
                assert!(((t.arclen0(p.x) - t.arclen0(px)) - 1.3).abs() < 1e-7);
                assert!((py - p.y).abs() < 1e-7);
            }
        }
        for w in pts.windows(2) {
            assert!(cmp_points(&w[0], &w[1]).is_le());
        }
    }

    #[test]
    fn extremes_are_tangent() {
        let t = traj(&[(0., 0.), (3., 0.2), (0.2, 1.0), (3.1, 1.3)]);
        let fsd = crate::build_continuous_fsd(&t, &t, 0.4);
        let scan = InternalScan::new(&fsd, None);
        let pts: Vec<_> = scan
            .stream()
            .filter(|p| matches!(p.kind, InternalKind::LeftmostFree | InternalKind::RightmostFree))
            .collect();
        assert!(!pts.is_empty());
        for p in pts {
            let (i, j) = p.cell;
            let g = fsd.cell_geom(i, j);
            let (a, b) = g.nu_roots(p.x - i as f64).unwrap();
            assert!((a - b).abs() < 1e-5);
        }
    }

    #[test]
    fn stream_matches_parallel_collect() {
        let t = traj(&[(0., 0.), (2., 1.), (3., -1.), (0.5, 2.), (2.5, 2.5)]);
        let fsd = crate::build_continuous_fsd(&t, &t, 0.8);
        let scan = InternalScan::new(&fsd, Some(0.9));
        let a: Vec<_> = scan.stream().collect();
        let b = scan.collect_with(Exec::Parallel);
        assert_eq!(a, b);
    }
}
