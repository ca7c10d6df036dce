//! Sweep positions: every `s` at which the greedy chain for `(s, t(s))`
//! can change, with `t(s)` the offset `ℓ` further along `T`.

use sc_freespace::exec::{map_range, Exec};
use sc_freespace::{FreeSpaceDiagram, InternalKind, InternalScan};
use sc_geometry::Trajectory;

const ROOT_SAMPLES: usize = 32;

/// Event counts by source.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EventCounts {
    pub vertex: usize,
    pub external: usize,
    pub leftmost: usize,
    pub rightmost: usize,
    pub shares_y: usize,
    pub offset_pairs: usize,
    pub tightness: usize,
}

impl EventCounts {
    pub fn total(&self) -> usize {
        self.vertex
            + self.external
            + self.leftmost
            + self.rightmost
            + self.shares_y
            + self.offset_pairs
            + self.tightness
    }
}

/// Largest start offset whose reference still fits inside `T`.
pub fn last_start(t: &Trajectory, ell: f64) -> Option<f64> {
    let total = t.total_length();
    t.offset_at_arclen0(total - ell).filter(|_| total >= ell - 1e-9 * ell.max(1.0))
}

fn bisect(f: &impl Fn(f64) -> Option<f64>, mut lo: f64, lo_val: f64, mut hi: f64) -> f64 {
    let neg = lo_val < 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match f(mid) {
            Some(v) if v == 0.0 => return mid,
            Some(v) if (v < 0.0) == neg => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    0.5 * (lo + hi)
}

fn sign_changes(f: impl Fn(f64) -> Option<f64>, a: f64, b: f64, out: &mut Vec<f64>) {
    let step = (b - a) / ROOT_SAMPLES as f64;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=ROOT_SAMPLES {
        let x = if k == ROOT_SAMPLES { b } else { a + step * k as f64 };
        let cur = f(x).map(|v| (x, v));
        if let (Some((px, pv)), Some((cx, cv))) = (prev, cur) {
            if cv == 0.0 {
                out.push(cx);
            } else if pv != 0.0 && (pv < 0.0) != (cv < 0.0) {
                out.push(bisect(&f, px, pv, cx));
            }
        }
        prev = cur;
    }
}

/// Positions where a moving free-boundary height on `l_s` or `l_t` meets
/// `s` or `t(s)`; these decide whether a path endpoint touches the
/// reference interval.
fn tightness(fsd: &FreeSpaceDiagram, ell: f64, pieces: &[f64]) -> Vec<f64> {
    let t = fsd.t1();
    let mut out = Vec::new();
    for w in pieces.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 1e-12 {
            continue;
        }
        let mid = 0.5 * (a + b);
        let Some(tm) = t.advance0(mid, ell) else { continue };
        let (rs, rt) = (fsd.row_of(mid), fsd.row_of(tm));
        for on_t in [false, true] {
            for row in [rs, rt] {
                for lower_side in [true, false] {
                    for against_t in [false, true] {
                        let f = |s: f64| -> Option<f64> {
                            let ts = t.advance0(s, ell)?;
                            let x = if on_t { ts } else { s };
                            let sp = fsd.vline_span(x, row);
                            if sp.is_empty() {
                                return None;
                            }
                            let h = if lower_side { sp.lo } else { sp.hi };
                            Some(h - if against_t { ts } else { s })
                        };
                        sign_changes(f, a, b, &mut out);
                    }
                }
            }
        }
    }
    out
}

/// Sorted, deduplicated event positions in `[0, last_start]`.
pub fn event_positions(fsd: &FreeSpaceDiagram, ell: f64, exec: Exec) -> (Vec<f64>, EventCounts) {
    let t = fsd.t1();
    let mut counts = EventCounts::default();
    let Some(smax) = last_start(t, ell) else { return (Vec::new(), counts) };
    let both = |x: f64, out: &mut Vec<f64>| {
        out.push(x);
        if let Some(s) = t.retreat0(x, ell) {
            out.push(s);
        }
    };
    let mut ev = Vec::new();
    for v in 0..t.len() {
        both(v as f64, &mut ev);
    }
    counts.vertex = ev.len();
    let before = ev.len();
    for p in fsd.external() {
        both(p.x, &mut ev);
        both(p.y, &mut ev);
    }
    counts.external = ev.len() - before;
    let scan = InternalScan::new(fsd, Some(ell));
    let per_col = map_range(exec, fsd.cols(), |i| {
        let mut xs = Vec::new();
        let mut c = EventCounts::default();
        for p in scan.column(i) {
            let n0 = xs.len();
            match p.kind {
                InternalKind::EllOffsetPair => {
                    if let Some((px, _)) = p.partner {
                        xs.push(px);
                    }
                }
                _ => both(p.x, &mut xs),
            }
            let added = xs.len() - n0;
            match p.kind {
                InternalKind::LeftmostFree => c.leftmost += added,
                InternalKind::RightmostFree => c.rightmost += added,
                InternalKind::SharesYWithExternal => c.shares_y += added,
                InternalKind::EllOffsetPair => c.offset_pairs += added,
            }
        }
        (xs, c)
    });
    for (xs, c) in per_col {
        ev.extend(xs);
        counts.leftmost += c.leftmost;
        counts.rightmost += c.rightmost;
        counts.shares_y += c.shares_y;
        counts.offset_pairs += c.offset_pairs;
    }
    let mut pieces: Vec<f64> = vec![0.0, smax];
    for v in 0..t.len() {
        both(v as f64, &mut pieces);
    }
    pieces.retain(|&x| (0.0..=smax).contains(&x));
    pieces.sort_by(f64::total_cmp);
    pieces.dedup();
    let tight = tightness(fsd, ell, &pieces);
    counts.tightness = tight.len();
    ev.extend(tight);
    ev.push(0.0);
    ev.push(smax);
    ev.retain(|&x| (0.0..=smax).contains(&x));
    ev.sort_by(f64::total_cmp);
    ev.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * b.abs().max(1.0));
    (ev, counts)
}

/// Event positions interleaved with the midpoints between them.
pub fn sweep_positions(fsd: &FreeSpaceDiagram, ell: f64, exec: Exec) -> (Vec<f64>, EventCounts) {
    let (ev, counts) = event_positions(fsd, ell, exec);
    let mut out = Vec::with_capacity(2 * ev.len());
    for (k, &x) in ev.iter().enumerate() {
        if k > 0 {
            let mid = 0.5 * (ev[k - 1] + x);
            if mid > ev[k - 1] && mid < x {
                out.push(mid);
            }
        }
        out.push(x);
    }
    (out, counts)
}
