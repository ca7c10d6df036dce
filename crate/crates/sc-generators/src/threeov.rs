use crate::{polyline, GenError};
use sc_freespace::quad_roots;
use sc_geometry::{Point2, SCInstance, Trajectory};
use sc_oracles::MarginCertificate;
use std::f64::consts::PI;

const BASE_COPIES: usize = 41;

/// Three families of `n` binary vectors of length `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeOVInput {
    pub x: Vec<Vec<bool>>,
    pub y: Vec<Vec<bool>>,
    pub z: Vec<Vec<bool>>,
}

impl ThreeOVInput {
    pub fn new(x: Vec<Vec<bool>>, y: Vec<Vec<bool>>, z: Vec<Vec<bool>>) -> Result<Self, GenError> {
        let n = x.len();
        if n == 0 || y.len() != n || z.len() != n {
            return Err(GenError::BadInput(format!("set sizes {}, {}, {}", x.len(), y.len(), z.len())));
        }
        let w = x[0].len();
        if w == 0 || x.iter().chain(&y).chain(&z).any(|v| v.len() != w) {
            return Err(GenError::BadInput("vectors must share one positive length".into()));
        }
        Ok(ThreeOVInput { x, y, z })
    }

    /// Input whose bit `(s·n + i)·W + h` of `bits` is entry `h` of vector
    /// `i` of set `s` (X, Y, Z in that order).
    pub fn from_bits(n: usize, w: usize, bits: u64) -> Self {
        let set = |s: usize| -> Vec<Vec<bool>> {
            (0..n).map(|i| (0..w).map(|h| bits >> ((s * n + i) * w + h) & 1 == 1).collect()).collect()
        };
        ThreeOVInput { x: set(0), y: set(1), z: set(2) }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn w(&self) -> usize {
        self.x[0].len()
    }

    /// First orthogonal triple `(i, j, k)`, 0-based, by exhaustive search.
    pub fn orthogonal_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if (0..self.w()).all(|h| !(self.x[i][h] && self.y[j][h] && self.z[k][h])) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Derived constants of the construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeOVParams {
    pub n: usize,
    pub w: usize,
    pub r: f64,
    pub r_prime: f64,
    pub phi: f64,
    pub d: f64,
    pub delta: f64,
    pub eps: f64,
    pub lambda: f64,
    pub m: usize,
    pub ell: f64,
}

impl ThreeOVParams {
    /// Everything but `λ` and `ℓ`, which come out of the length calibration.
    pub fn new(n: usize, w: usize, r: f64, r_prime: f64, eps: Option<f64>) -> Result<Self, GenError> {
        if !(r > 0.0 && 10.0 * r < r_prime) {
            return Err(GenError::Radii { r, r_prime });
        }
        let phi = PI / (4 * w + 6) as f64;
        let d = Point2::cis(r, PI).dist(Point2::cis(r_prime, phi));
        let delta = r + r_prime - d;
        let eps = eps.unwrap_or(delta / 1000.0);
        if !(eps > 0.0 && eps < delta / 100.0) {
            return Err(GenError::Epsilon { eps, delta });
        }
        Ok(ThreeOVParams { n, w, r, r_prime, phi, d, delta, eps, lambda: f64::NAN, m: 2 * n * w + 2, ell: f64::NAN })
    }
}

/// Generated instance with its bookkeeping.
#[derive(Debug, Clone)]
pub struct ThreeOVInstance {
    pub instance: SCInstance,
    pub params: ThreeOVParams,
    pub margin: MarginCertificate,
    /// Number of vertices of `T₁`; the joining vertex `D⁻` follows.
    pub t1_len: usize,
    /// Declared antipodes `(v⁺, v)`: a vertex index at or after `t1_len`
    /// and one before it.
    pub antipodes: Vec<(usize, usize)>,
    /// The `n²` calibrated references `(s, t)`, 0-based offsets of
    /// `J⁺_{2i−1,2j−1}` and `L⁺_{2i+3,2j+1}`.
    pub references: Vec<(f64, f64)>,
}

impl ThreeOVInstance {
    /// `|length(s → t) − ℓ|` for every calibrated reference.
    pub fn calibration_residuals(&self) -> Vec<f64> {
        let t = &self.instance.t;
        self.references.iter().map(|&(s, e)| (t.arclen0(e) - t.arclen0(s) - self.params.ell).abs()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fam {
    A(usize),
    B,
    C,
    D,
    E,
    F(usize),
    G,
    H,
    Plain,
}

#[derive(Debug, Clone, Copy)]
struct Vx {
    p: Point2,
    fam: Fam,
    plus: bool,
}

/// Positive `g` with `‖g·dir − p‖ = d`, `dir` a unit vector and `‖p‖ < d`.
fn ray_root(dir: Point2, p: Point2, d: f64) -> f64 {
    let b = dir.dot(p);
    b + (b * b - p.norm2() + d * d).max(0.0).sqrt()
}

/// Point of segment `ab` at distance exactly `d` from `p`, when the
/// distance crosses `d` between the endpoints.
fn segment_root(a: Point2, b: Point2, p: Point2, d: f64) -> Option<Point2> {
    let (fa, fb) = (a.dist(p) - d, b.dist(p) - d);
    if fa == 0.0 {
        return Some(a);
    }
    if (fa < 0.0) == (fb < 0.0) && fb != 0.0 {
        return None;
    }
    let (u, w) = (b - a, a - p);
    let (m1, m2) = quad_roots(u.norm2(), 2.0 * u.dot(w), w.norm2() - d * d)?;
    let mu = if (0.0..=1.0).contains(&m1) && (fa < 0.0) != (fb < 0.0) { m1 } else { m2 };
    Some(a.lerp(b, mu.clamp(0.0, 1.0)))
}

struct Layout {
    verts: Vec<Vx>,
    t1_len: usize,
    a_first: Vec<usize>,
    d_plus: Vec<usize>,
}

struct Builder<'a> {
    input: &'a ThreeOVInput,
    p: ThreeOVParams,
    b: Vec<f64>,
    c: Vec<f64>,
    e: Vec<f64>,
    g: Vec<f64>,
}

impl<'a> Builder<'a> {
    fn new(input: &'a ThreeOVInput, p: ThreeOVParams) -> Self {
        let (n, w, r, rp, d, delta) = (p.n, p.w, p.r, p.r_prime, p.d, p.delta);
        let near = |rad: f64, k: usize| Point2::cis(rad, k as f64 * p.phi);
        let dir = |k: usize| Point2::cis(1.0, PI + k as f64 * p.phi);
        let (c_pt, b_eps) = (near(r, 4 * w + 6), near(r - p.eps, 4 * w + 5));
        let i_pts: Vec<Point2> = (1..=2 * n + 3).map(|i| c_pt.lerp(b_eps, i as f64 / (2 * n + 4) as f64)).collect();
        let mut b = vec![0.0];
        b.extend(i_pts.iter().map(|&q| ray_root(dir(4 * w + 5), q, d)));
        let mut c = vec![0.0; 2 * n + 4];
        for i in 1..=2 * n + 1 {
            c[i + 2] = ray_root(dir(4 * w + 6), i_pts[i - 1], d);
        }
        c[1] = c[3];
        c[2] = c[3];
        let steps = (2 * n + 2) as f64;
        let (g_pt, a11) = (near(r, 2 * w + 3), near(r, 2 * w + 4));
        let k_pts: Vec<Point2> = (0..=2 * n + 1)
            .map(|j| {
                let jp = Point2::cis(rp - j as f64 / steps * delta, PI + (2 * w + 4) as f64 * p.phi);
                segment_root(g_pt, a11, jp, d).unwrap_or(g_pt)
            })
            .collect();
        let (d_pt, e_pt) = (near(r, 0), near(r, 1));
        let m_pts: Vec<Point2> = (0..=2 * n + 1)
            .map(|j| {
                let lp = Point2::cis(rp - (2 * n + 4 - j) as f64 / steps * delta, PI);
                segment_root(d_pt, e_pt, lp, d).unwrap_or(d_pt)
            })
            .collect();
        let mut g = vec![0.0];
        let mut e = vec![0.0];
        for j in 1..=2 * n + 1 {
            g.push(ray_root(dir(2 * w + 3), k_pts[2 * n + 2 - j], d));
            e.push(ray_root(dir(1), m_pts[2 * n + 2 - j], d));
        }
        Builder { input, p, b, c, e, g }
    }

    /// Vertex sequence with the P/Q runs of block `i` at fraction
    /// `frac[i]` of `B⁻G⁻` (block `2n + 1` always uses the long base run).
    fn layout(&self, frac: &[f64]) -> Layout {
        let ThreeOVParams { n, w, r, r_prime: rp, delta, eps, phi, .. } = self.p;
        let (x, y, z) = (&self.input.x, &self.input.y, &self.input.z);
        let t1 = |p: Point2, fam: Fam| Vx { p, fam, plus: false };
        let plus = |p: Point2, fam: Fam| Vx { p, fam, plus: true };
        let plain = |p: Point2| Vx { p, fam: Fam::Plain, plus: false };
        let near = |rad: f64, k: usize| Point2::cis(rad, k as f64 * phi);
        let far = |rad: f64, k: usize| Point2::cis(rad, PI + k as f64 * phi);
        let low = 2.0 * delta / 3.0;
        let mut v = Vec::new();

        let a = |h: usize, u: usize| near(if h <= w && u == 2 * h { r - low } else { r }, 2 * w + 3 + u);
        let f = |h: usize, u: usize| near(if u == 2 * h { r - low } else { r }, u + 1);
        let (c_pt, d_pt, e_pt, g_pt) = (near(r, 4 * w + 6), near(r, 0), near(r, 1), near(r, 2 * w + 3));
        for k in 0..n {
            let bk = |h: usize| near(if h <= w && !z[k][h - 1] { r - eps } else { r }, 4 * w + 5);
            for h in 1..=w {
                v.push(t1(g_pt, Fam::G));
                v.extend((1..=2 * w + 1).map(|u| t1(a(h, u), Fam::A(u))));
                v.push(t1(bk(h), Fam::B));
                v.extend([t1(c_pt, Fam::C), t1(d_pt, Fam::D), t1(c_pt, Fam::C), t1(d_pt, Fam::D), t1(e_pt, Fam::E)]);
                v.extend((1..=2 * w + 1).map(|u| t1(f(h, u), Fam::F(u))));
            }
            v.push(t1(g_pt, Fam::G));
            v.extend((1..=2 * w + 1).map(|u| t1(a(w + 1, u), Fam::A(u))));
            v.push(t1(bk(w + 1), Fam::B));
            v.extend([t1(c_pt, Fam::C), t1(d_pt, Fam::D), t1(c_pt, Fam::C), t1(d_pt, Fam::D), t1(c_pt, Fam::C)]);
            v.push(t1(near(4.0 * rp, 3 * w + 4), Fam::H));
            v.push(t1(near(8.0 * rp, 2 * w + 3), Fam::H));
        }
        let t1_len = v.len();

        let m = rp - delta;
        let (am, fm) = (|u: usize| plain(far(m, 2 * w + 3 + u)), |u: usize| plain(far(m, u + 1)));
        let (bm, cm, dm, em, gm) =
            (plain(far(m, 4 * w + 5)), plain(far(m, 4 * w + 6)), plain(far(m, 0)), plain(far(m, 1)), plain(far(m, 2 * w + 3)));
        let hm = plain(near(m, 2 * w + 3));
        let ap = |i: usize, u: usize| {
            let cut = i % 2 == 0 && u % 2 == 0 && !x[i / 2 - 1][u / 2 - 1];
            plus(far(if cut { rp - low } else { rp }, 2 * w + 3 + u), Fam::A(u))
        };
        let fp = |j: usize, u: usize| {
            let cut = j % 2 == 0 && u % 2 == 0 && !y[j / 2 - 1][u / 2 - 1];
            plus(far(if cut { rp - low } else { rp }, u + 1), Fam::F(u))
        };
        let bp = |i: usize| plus(far(self.b[i], 4 * w + 5), Fam::B);
        let cp = |i: usize| plus(far(self.c[i], 4 * w + 6), Fam::C);
        let dp = plus(far(rp, 0), Fam::D);
        let ep = |j: usize| plus(far(self.e[j], 1), Fam::E);
        let gp = |j: usize| plus(far(self.g[j], 2 * w + 3), Fam::G);

        v.push(dm);
        let mut a_first = vec![usize::MAX; 2 * n + 2];
        let mut d_plus = vec![usize::MAX; 2 * n + 4];
        for i in 1..=2 * n + 1 {
            v.extend([gm, gp(i), gm]);
            for u in 1..=2 * w + 1 {
                if u == 1 {
                    a_first[i] = v.len() + 1;
                }
                v.extend([am(u), ap(i, u), am(u)]);
            }
            v.extend([bm, bp(i), bm]);
            if i == 2 * n + 1 {
                for _ in 0..BASE_COPIES {
                    v.extend([bm, gm]);
                }
            } else {
                let pq = plain(bm.p.lerp(gm.p, frac[i]));
                for _ in 0..3 {
                    v.extend([pq, bm]);
                }
            }
        }
        let f_block = |v: &mut Vec<Vx>, j: usize| {
            v.extend([em, ep(j), em]);
            for u in 1..=2 * w + 1 {
                v.extend([fm(u), fp(j, u), fm(u)]);
            }
            v.extend([gm, gp(j), gm]);
        };
        for j in 1..=2 * n {
            f_block(&mut v, j);
        }
        for i in 1..=2 {
            v.extend([cm, cp(i), cm, dm]);
            d_plus[i] = v.len();
            v.extend([dp, dm]);
        }
        v.push(hm);
        f_block(&mut v, 2 * n + 1);
        for i in 3..=2 * n + 2 {
            v.extend([cm, cp(i), cm, gm, dm]);
            d_plus[i] = v.len();
            v.extend([dp, dm, gm]);
        }
        v.extend([cm, cp(2 * n + 3), cm, gm, dm]);
        d_plus[2 * n + 3] = v.len();
        v.push(dp);
        Layout { verts: v, t1_len, a_first, d_plus }
    }
}

fn prefix(v: &[Vx]) -> Vec<f64> {
    let mut out = vec![0.0];
    for w in v.windows(2) {
        out.push(out.last().unwrap() + w[0].p.dist(w[1].p));
    }
    out
}

/// Construction with `r = 1`, `r′ = 16`, `ε = δ/1000`.
pub fn gen_3ov(input: &ThreeOVInput) -> Result<ThreeOVInstance, GenError> {
    gen_3ov_with(input, 1.0, 16.0, None)
}

pub fn gen_3ov_with(input: &ThreeOVInput, r: f64, r_prime: f64, eps: Option<f64>) -> Result<ThreeOVInstance, GenError> {
    ThreeOVInput::new(input.x.clone(), input.y.clone(), input.z.clone())?;
    let (n, w) = (input.n(), input.w());
    let mut params = ThreeOVParams::new(n, w, r, r_prime, eps)?;
    let builder = Builder::new(input, params);
    let mut frac = vec![0.0; 2 * n + 2];
    let span = |lay: &Layout, i: usize| {
        let pre = prefix(&lay.verts);
        pre[lay.d_plus[2 * i + 3]] - pre[lay.a_first[2 * i - 1]]
    };
    let lambda = span(&builder.layout(&frac), n);
    let minus = |k: usize| Point2::cis(r_prime - params.delta, PI + k as f64 * params.phi);
    let side = 6.0 * minus(4 * w + 5).dist(minus(2 * w + 3));
    for i in (1..n).rev() {
        let needed = lambda - span(&builder.layout(&frac), i);
        if !(0.0..=side).contains(&needed) {
            return Err(GenError::Calibration { block: 2 * i - 1, needed, room: side });
        }
        frac[2 * i - 1] = needed / side;
    }
    let lay = builder.layout(&frac);
    params.lambda = lambda;
    params.ell = lambda - params.delta;

    let mut map = Vec::with_capacity(lay.verts.len());
    let mut kept: Vec<Vx> = Vec::with_capacity(lay.verts.len());
    for vx in &lay.verts {
        if kept.last().is_none_or(|l| l.p != vx.p) {
            kept.push(*vx);
        }
        map.push(kept.len() - 1);
    }
    let t1_len = map[lay.t1_len];
    let mut antipodes = Vec::new();
    let mut gap = f64::INFINITY;
    for (ia, va) in kept.iter().enumerate().skip(t1_len) {
        for (ib, vb) in kept.iter().enumerate().take(t1_len) {
            if vb.fam == Fam::H || (va.plus && va.fam == vb.fam) {
                antipodes.push((ia, ib));
            }
            let g = (va.p.dist(vb.p) - params.d).abs();
            if g > 1e-9 * params.d {
                gap = gap.min(g);
            }
        }
    }
    let slack = (params.delta / 3.0).min(params.eps / 2.0).min(gap);
    let steps = (2 * n + 2) as f64;
    let mut references = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let f = (2 * j - 1) as f64 / steps;
            let s = map[lay.a_first[2 * i - 1]] as f64 + f;
            let t = map[lay.d_plus[2 * i + 3]] as f64 - 1.0 + f;
            references.push((s, t));
        }
    }
    let t: Trajectory = polyline(kept.iter().map(|v| v.p).collect());
    Ok(ThreeOVInstance {
        instance: SCInstance::new(t, params.m, params.ell, params.d),
        params,
        margin: MarginCertificate { slack },
        t1_len,
        antipodes,
        references,
    })
}
