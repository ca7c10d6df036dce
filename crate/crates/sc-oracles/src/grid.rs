use crate::discrete::schedule;
use crate::OracleError;
use sc_freespace::exec::{any_range, map_range, Exec};
use sc_geometry::{within, Point2, SCInstance, Trajectory};
use std::borrow::Cow;

const MAX_N: usize = 10;
const NONE: u32 = u32::MAX;

/// Subdivisions per free-space cell side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridResolution(usize);

impl GridResolution {
    pub fn new(res: usize) -> Result<Self, OracleError> {
        if res < 4 || !res.is_power_of_two() {
            return Err(OracleError::BadResolution(res));
        }
        Ok(GridResolution(res))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn doubled(self) -> Self {
        GridResolution(self.0 * 2)
    }
}

impl Default for GridResolution {
    fn default() -> Self {
        GridResolution(64)
    }
}

/// Distance slack below which the instance's answer is guaranteed not to
/// change: the answer at `d` equals the answer at every `d′` in
/// `[d − slack, d + slack]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginCertificate {
    pub slack: f64,
}

/// Free-space samples of `F_d(tx, ty)` on the lattice `(a/res, b/res)`,
/// with monotone staircase reachability between arbitrary columns.
pub struct GridPaths<'a> {
    tx: &'a Trajectory,
    ty: &'a Trajectory,
    d: f64,
    res: usize,
    ny: usize,
    free: Vec<bool>,
}

impl<'a> GridPaths<'a> {
    pub fn new(tx: &'a Trajectory, ty: &'a Trajectory, d: f64, res: GridResolution, exec: Exec) -> Self {
        let res = res.get();
        let nx = (tx.len() - 1) * res + 1;
        let ny = (ty.len() - 1) * res + 1;
        let ys: Vec<Point2> = (0..ny).map(|b| ty.eval0(b as f64 / res as f64)).collect();
        let cols = map_range(exec, nx, |a| {
            let p = tx.eval0(a as f64 / res as f64);
            ys.iter().map(|q| within(p.dist(*q), d)).collect::<Vec<bool>>()
        });
        GridPaths { tx, ty, d, res, ny, free: cols.concat() }
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn y(&self, b: usize) -> f64 {
        b as f64 / self.res as f64
    }

    fn column(&self, x: f64) -> Cow<'_, [bool]> {
        let r = x * self.res as f64;
        if (r - r.round()).abs() <= 1e-9 {
            let a = r.round() as usize;
            return Cow::Borrowed(&self.free[a * self.ny..(a + 1) * self.ny]);
        }
        let p = self.tx.eval0(x);
        Cow::Owned((0..self.ny).map(|b| within(p.dist(self.ty.eval0(self.y(b))), self.d)).collect())
    }

    /// Column abscissae from `xa` to `xb`: both ends plus every lattice x
    /// strictly between.
    fn xs_between(&self, xa: f64, xb: f64) -> Vec<f64> {
        let r = self.res as f64;
        let first = (xa * r + 1e-9).floor() as usize + 1;
        let mut xs = vec![xa];
        let mut a = first;
        while (a as f64) < xb * r - 1e-9 {
            xs.push(a as f64 / r);
            a += 1;
        }
        if xb > xa {
            xs.push(xb);
        }
        xs
    }

    /// For each start row `b ∈ [b_lo, b_hi]` on `l_xa`, the lowest row at
    /// which a staircase confined to rows `[b_lo, b_hi]` first meets `l_xb`.
    pub fn min_ends(&self, xa: f64, xb: f64, b_lo: usize, b_hi: usize) -> Vec<Option<usize>> {
        if b_lo > b_hi || b_hi >= self.ny {
            return Vec::new();
        }
        let xs = self.xs_between(xa, xb);
        let h = b_hi - b_lo + 1;
        let last = self.column(*xs.last().unwrap());
        let mut next: Vec<u32> =
            (0..h).map(|i| if last[b_lo + i] { (b_lo + i) as u32 } else { NONE }).collect();
        let mut cur = vec![NONE; h];
        for &x in xs.iter().rev().skip(1) {
            let col = self.column(x);
            for i in (0..h).rev() {
                cur[i] = if col[b_lo + i] {
                    let mut v = next[i];
                    if i + 1 < h {
                        v = v.min(next[i + 1]).min(cur[i + 1]);
                    }
                    v
                } else {
                    NONE
                };
            }
            std::mem::swap(&mut cur, &mut next);
        }
        next.into_iter().map(|v| (v != NONE).then_some(v as usize)).collect()
    }

    pub fn nx(&self) -> usize {
        self.free.len() / self.ny
    }

    pub fn lattice_free(&self, a: usize, b: usize) -> bool {
        self.free[a * self.ny + b]
    }

    pub fn point_free(&self, x: f64, y: f64) -> bool {
        within(self.tx.eval0(x).dist(self.ty.eval0(y)), self.d)
    }

    /// Lattice points reachable by staircases from lattice point `from`.
    pub fn lattice_reach_from(&self, from: (usize, usize)) -> LatticeReach {
        let (a0, b0) = from;
        let (w, h) = (self.nx() - a0, self.ny - b0);
        let mut mask = vec![false; w * h];
        for i in 0..w {
            for j in 0..h {
                let pred = (i == 0 && j == 0)
                    || (i > 0 && mask[(i - 1) * h + j])
                    || (j > 0 && mask[i * h + j - 1])
                    || (i > 0 && j > 0 && mask[(i - 1) * h + j - 1]);
                mask[i * h + j] = pred && self.lattice_free(a0 + i, b0 + j);
            }
        }
        LatticeReach { a0, b0, h, mask }
    }

    fn floor_idx(&self, v: f64) -> usize {
        (v * self.res as f64 + 1e-9).floor() as usize
    }

    fn ceil_idx(&self, v: f64) -> usize {
        (v * self.res as f64 - 1e-9).ceil().max(0.0) as usize
    }

    /// Sound witness of reachability from `p` to each of `targets`: both
    /// points free and a free staircase from the lattice point just above
    /// `p` to the one just below the target, or a single small square.
    pub fn reaches_strict(&self, p: (f64, f64), targets: &[(f64, f64)]) -> Vec<bool> {
        let start = (self.ceil_idx(p.0), self.ceil_idx(p.1));
        let ok = self.point_free(p.0, p.1);
        let reach = (ok && start.0 < self.nx() && start.1 < self.ny).then(|| self.lattice_reach_from(start));
        targets
            .iter()
            .map(|&q| {
                if !ok || q.0 < p.0 || q.1 < p.1 || !self.point_free(q.0, q.1) {
                    return false;
                }
                let r = self.res as f64;
                let (pa, pb) = (self.floor_idx(p.0) as f64, self.floor_idx(p.1) as f64);
                if q.0 * r <= pa + 1.0 + 1e-9 && q.1 * r <= pb + 1.0 + 1e-9 {
                    return true;
                }
                let (fa, fb) = (self.floor_idx(q.0), self.floor_idx(q.1));
                fa >= start.0 && fb >= start.1 && reach.as_ref().is_some_and(|r| r.get(fa, fb))
            })
            .collect()
    }

    /// Relaxed reachability: a free staircase from the lattice point just
    /// below `p` to the one just above each target. Built on a grid at
    /// `d + μ`, a `false` proves that no monotone path exists at `d`.
    pub fn reaches_relaxed(&self, p: (f64, f64), targets: &[(f64, f64)]) -> Vec<bool> {
        let reach = self.lattice_reach_from((self.floor_idx(p.0), self.floor_idx(p.1)));
        targets
            .iter()
            .map(|&q| {
                let (ca, cb) = (self.ceil_idx(q.0).min(self.nx() - 1), self.ceil_idx(q.1).min(self.ny - 1));
                q.0 >= p.0 && q.1 >= p.1 && reach.get(ca, cb)
            })
            .collect()
    }

    pub fn path_exists(&self, xa: f64, xb: f64) -> bool {
        self.min_ends(xa, xb, 0, self.ny - 1).iter().any(Option::is_some)
    }

    /// Most staircases from `l_xa` to `l_xb` whose y-intervals pairwise
    /// share at most an endpoint.
    pub fn max_disjoint_paths(&self, xa: f64, xb: f64) -> usize {
        let iv = self
            .min_ends(xa, xb, 0, self.ny - 1)
            .into_iter()
            .enumerate()
            .filter_map(|(b, e)| e.map(|e| (self.y(b), self.y(e))))
            .collect();
        schedule(iv, 0.0)
    }
}

pub struct LatticeReach {
    a0: usize,
    b0: usize,
    h: usize,
    mask: Vec<bool>,
}

impl LatticeReach {
    pub fn get(&self, a: usize, b: usize) -> bool {
        a >= self.a0 && b >= self.b0 && b - self.b0 < self.h && self.mask.get((a - self.a0) * self.h + b - self.b0) == Some(&true)
    }
}

/// Whether some staircase path of `F_d(tx, ty)` at resolution `res` joins
/// the vertical lines at 0-based `xa` and `xb`.
pub fn line_to_line_path_grid(tx: &Trajectory, ty: &Trajectory, d: f64, xa: f64, xb: f64, res: GridResolution) -> bool {
    GridPaths::new(tx, ty, d, res, Exec::default()).path_exists(xa, xb)
}

/// x-offsets where `T(x)` is at distance exactly `d` from a vertex.
fn vertex_circle_xs(t: &Trajectory, d: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..t.len() - 1 {
        let (a, b) = (t.vertex(i), t.vertex(i + 1));
        let u = b - a;
        let uu = u.dot(u);
        if uu == 0.0 {
            continue;
        }
        for q in t.vertices() {
            let w = a - *q;
            let hb = u.dot(w);
            let disc = hb * hb - uu * (w.dot(w) - d * d);
            if disc < 0.0 {
                continue;
            }
            for mu in [(-hb - disc.sqrt()) / uu, (-hb + disc.sqrt()) / uu] {
                if (0.0..=1.0).contains(&mu) {
                    out.push(i as f64 + mu);
                }
            }
        }
    }
    out
}

fn candidate_starts(t: &Trajectory, ell: f64, d: f64, res: usize) -> Vec<f64> {
    let r = res as f64;
    let nx = (t.len() - 1) * res + 1;
    let mut s: Vec<f64> = (0..nx).map(|a| a as f64 / r).collect();
    s.extend((0..nx).filter_map(|a| t.retreat0(a as f64 / r, ell)));
    s.extend(vertex_circle_xs(t, d));
    s.sort_by(f64::total_cmp);
    s.dedup();
    s
}

/// Grid SC decision at a fixed `d`. `strict` counts only exactly
/// admissible staircases. Otherwise every condition is relaxed by the grid
/// error, so that a true YES at a smaller threshold cannot be missed.
fn grid_sc(inst: &SCInstance, d: f64, res: usize, strict: bool, exec: Exec) -> bool {
    let t = &inst.t;
    let grid = GridPaths::new(t, t, d, GridResolution(res), exec);
    let r = res as f64;
    let tol = if strict { 0.0 } else { 2.0 / r };
    let need = inst.m.saturating_sub(1);
    let starts = candidate_starts(t, inst.ell, inst.d, res);
    any_range(exec, starts.len(), |k| {
        let s = starts[k];
        let Some(e) = t.advance0(s, inst.ell) else { return false };
        if e <= s {
            return false;
        }
        let lower_hi = ((s * r + 1e-9).floor() as usize).min(grid.ny - 1);
        let upper_lo = ((e - tol) * r - 1e-9).ceil().max(0.0) as usize;
        let mut iv = Vec::new();
        for (lo, hi) in [(0, lower_hi), (upper_lo, grid.ny - 1)] {
            for (i, end) in grid.min_ends(s, e, lo, hi).into_iter().enumerate() {
                if let Some(end) = end {
                    let (y0, y1) = (grid.y(lo + i), grid.y(end));
                    if !strict && y1 - y0 <= 3.0 / r + 1e-12 {
                        return true;
                    }
                    iv.push((y0, y1));
                }
            }
        }
        schedule(iv, tol) >= need
    })
}

/// Fine-grid continuous SC decision.
///
/// A strict staircase YES at `d` is always a true YES. A relaxed NO at
/// `d + μ`, `μ = 4·L_max/res`, is always a true NO. Anything else is
/// `Inconclusive`. The certificate must cover `μ`.
pub fn sc_continuous_bruteforce(
    inst: &SCInstance,
    res: GridResolution,
    cert: Option<&MarginCertificate>,
) -> Result<bool, OracleError> {
    let n = inst.t.len();
    if n > MAX_N {
        return Err(OracleError::TooLarge { n, limit: MAX_N });
    }
    sc_continuous_grid(inst, res, cert)
}

/// `sc_continuous_bruteforce` without the size guard.
pub fn sc_continuous_grid(
    inst: &SCInstance,
    res: GridResolution,
    cert: Option<&MarginCertificate>,
) -> Result<bool, OracleError> {
    let cert = cert.ok_or(OracleError::NoCertificate)?;
    let t = &inst.t;
    if t.len() < 2 {
        return Ok(false);
    }
    let lmax = (0..t.len() - 1).map(|i| t.segment_length(i)).fold(0.0, f64::max);
    let mu = 4.0 * lmax / res.get() as f64;
    if mu > cert.slack {
        return Err(OracleError::ResolutionTooCoarse { needed: mu, slack: cert.slack });
    }
    let exec = Exec::default();
    if grid_sc(inst, inst.d, res.get(), true, exec) {
        return Ok(true);
    }
    if !grid_sc(inst, inst.d + mu, res.get(), false, exec) {
        return Ok(false);
    }
    Err(OracleError::Inconclusive)
}

/// Runs at `res` and `2·res`; both must be conclusive and agree.
pub fn sc_continuous_gated(
    inst: &SCInstance,
    res: GridResolution,
    cert: Option<&MarginCertificate>,
) -> Result<bool, OracleError> {
    let a = sc_continuous_grid(inst, res, cert)?;
    let b = sc_continuous_grid(inst, res.doubled(), cert)?;
    if a != b {
        return Err(OracleError::Unstable);
    }
    Ok(a)
}
