use sc_freespace::{Exec, FreeSpaceDiagram, InternalKind, InternalScan};
use sc_generators::{gen_density, DensityInstance};
use sc_geometry::Trajectory;

const SAMPLES: usize = 20_000;

/// Roots of `f` on `(0, 1)` located by sign changes on a dense sample.
fn sampled_roots(f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = f(0.0);
    for k in 1..=SAMPLES {
        let (a, b) = ((k - 1) as f64 / SAMPLES as f64, k as f64 / SAMPLES as f64);
        let cur = f(b);
        if (prev <= 0.0) != (cur <= 0.0) {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (f(mid) <= 0.0) == (prev <= 0.0) { lo = mid } else { hi = mid }
            }
            out.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    out
}

/// Kind-2 points of `F_d(tx, ty)` counted without the free-space module:
/// heights where a vertex column's free set ends inside a row, then
/// boundary crossings of those heights in the same row.
fn sampled_kind2(tx: &Trajectory, ty: &Trajectory, d: f64) -> usize {
    let inside = |t: f64| t > 1e-6 && t < 1.0 - 1e-6;
    let mut count = 0;
    for j in 0..ty.len() - 1 {
        let mut ys: Vec<f64> = Vec::new();
        for i in 0..tx.len() {
            let p = tx.vertex(i);
            ys.extend(sampled_roots(|nu| p.dist(ty.eval0(j as f64 + nu)) - d).into_iter().filter(|&nu| inside(nu)));
        }
        ys.sort_by(f64::total_cmp);
        ys.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        for nu in ys {
            let q = ty.eval0(j as f64 + nu);
            for i in 0..tx.len() - 1 {
                count += sampled_roots(|mu| tx.eval0(i as f64 + mu).dist(q) - d).into_iter().filter(|&m| inside(m)).count();
            }
        }
    }
    count
}

fn kind2(fsd: &FreeSpaceDiagram) -> usize {
    InternalScan::new(fsd, None).count_by_kind(Exec::Sequential)[InternalKind::SharesYWithExternal as usize]
}

fn per_copy(g: &DensityInstance) -> FreeSpaceDiagram {
    FreeSpaceDiagram::build_with(&g.t2, &g.t1, g.d, Exec::Sequential)
}

#[test]
fn per_copy_count_matches_sampled_enumeration() {
    for n in 1..=4 {
        let g = gen_density(n);
        assert_eq!(kind2(&per_copy(&g)), sampled_kind2(&g.t2, &g.t1, g.d), "n = {n}");
    }
}

/// Each copy holds the `2n²` crossings of raised-copy heights with the `C⁺`
/// diamonds, plus `2n(n−1)` crossings of those heights with the larger
/// raised-copy diamonds.
#[test]
fn per_copy_count_splits_into_c_and_b_crossings() {
    for n in [1, 2, 4, 8] {
        let g = gen_density(n);
        let fsd = per_copy(&g);
        let pts: Vec<_> = InternalScan::new(&fsd, None)
            .stream()
            .filter(|p| p.kind == InternalKind::SharesYWithExternal)
            .collect();
        let near_c = pts.iter().filter(|p| p.x.round() as usize >= 2 * n).count();
        assert_eq!(near_c, g.expected_kind2_per_copy, "n = {n}");
        assert_eq!(pts.len() - near_c, 2 * n * (n - 1), "n = {n}");
    }
}

#[test]
fn total_count_grows_cubically() {
    let totals: Vec<usize> = [2, 4, 8]
        .iter()
        .map(|&n| {
            let g = gen_density(n);
            kind2(&FreeSpaceDiagram::build_with(&g.t, &g.t, g.d, Exec::Sequential))
        })
        .collect();
    for w in totals.windows(2) {
        let ratio = w[1] as f64 / w[0] as f64;
        assert!((6.8..=9.2).contains(&ratio), "{totals:?}");
    }
}
