use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sc_continuous::line_paths;
use sc_generators::*;
use sc_geometry::{slack, SCInstance, Trajectory};
use sc_oracles::{continuous_frechet_decide_oracle, discrete_frechet_dp, line_to_line_path_grid, GridResolution};

fn lmax(t: &Trajectory) -> f64 {
    (0..t.len() - 1).map(|i| t.segment_length(i)).fold(0.0, f64::max)
}

/// Path existence by the grid: a staircase at `d` proves YES, none at
/// `d + μ` proves NO.
fn grid_path(g: &GadgetPair, res: usize) -> Option<bool> {
    let end = (g.t2.len() - 1) as f64;
    let mu = 4.0 * lmax(&g.t2).max(lmax(&g.t1)) / res as f64;
    let res = GridResolution::new(res).unwrap();
    if line_to_line_path_grid(&g.t2, &g.t1, g.d, 0.0, end, res) {
        Some(true)
    } else if !line_to_line_path_grid(&g.t2, &g.t1, g.d + mu, 0.0, end, res) {
        Some(false)
    } else {
        None
    }
}

#[test]
fn or_gadget_truth_table() {
    for (x, z) in [(false, false), (false, true), (true, false), (true, true)] {
        let g = gen_or_gadget(x, z);
        let want = !(x && z);
        let chain = line_paths(&g.t2, &g.t1, g.d, 1);
        assert_eq!(chain.count() >= 1, want, "x = {x}, z = {z}");
        assert_eq!(grid_path(&g, 256), Some(want), "x = {x}, z = {z}");
    }
}

fn bits(w: usize, k: usize) -> Vec<bool> {
    (0..w).map(|h| k >> h & 1 == 1).collect()
}

fn check_and(x: &[bool], z: &[bool]) {
    let g = gen_and_gadget(x, z).unwrap();
    let orth = x.iter().zip(z).all(|(a, b)| !(a & b));
    let chain = line_paths(&g.t2, &g.t1, g.d, usize::MAX);
    let want = if orth { g.w } else { g.w - 1 };
    assert_eq!(chain.count(), want, "x = {x:?}, z = {z:?}");
    let mut last = f64::NEG_INFINITY;
    for p in &chain.paths {
        assert!(p.lo >= last - 1e-9);
        last = p.hi;
        let piece = g.t1.subtrajectory(p.lo + 1.0, p.hi + 1.0).unwrap();
        assert!(continuous_frechet_decide_oracle(&g.t2, &piece, g.d + slack(g.d)), "x = {x:?}, z = {z:?}");
    }
}

#[test]
fn and_gadget_counts_at_w2() {
    for kx in 0..4 {
        for kz in 0..4 {
            check_and(&bits(2, kx), &bits(2, kz));
        }
    }
}

#[test]
fn and_gadget_counts_at_w3() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let (kx, kz) = (rng.random_range(0..8), rng.random_range(0..8));
        check_and(&bits(3, kx), &bits(3, kz));
    }
}

fn random_curve(rng: &mut ChaCha8Rng, n: usize) -> Trajectory {
    let v: Vec<(f64, f64)> = (0..n).map(|_| (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
    Trajectory::from_xy(&v).unwrap()
}

#[test]
fn bringmann_matches_discrete_frechet() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut yes, mut no) = (0, 0);
    for k in 0..200 {
        let (n1, n2) = (rng.random_range(1..=10), rng.random_range(1..=10));
        let t1 = random_curve(&mut rng, n1);
        // Every other pair is a small perturbation so both answers occur.
        let t2 = if k % 2 == 0 {
            let s = rng.random_range(0.0..1.5);
            let v: Vec<(f64, f64)> =
                t1.vertices().iter().map(|p| (p.x + rng.random_range(-s..=s), p.y + rng.random_range(-s..=s))).collect();
            Trajectory::from_xy(&v).unwrap()
        } else {
            random_curve(&mut rng, n2)
        };
        let inst: SCInstance = gen_bringmann(&t1, &t2).unwrap();
        let want = discrete_frechet_dp(&t1, &t2) <= 1.0;
        assert_eq!(sc_discrete::sc_decide_discrete(&inst).yes, want, "{t1:?} {t2:?}");
        if want { yes += 1 } else { no += 1 }
    }
    assert!(yes > 20 && no > 20, "{yes} yes, {no} no");
}
