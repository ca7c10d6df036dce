//! Doubling-experiment harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sc_continuous::{sc_decide_continuous, sc_decide_continuous_v2v};
use sc_discrete::sc_decide_discrete;
use sc_generators::gen_density;
use sc_geometry::{SCInstance, Trajectory};
use serde::Serialize;
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Discrete,
    Continuous,
    Vertex2Vertex,
}

impl std::str::FromStr for Algo {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "discrete" => Ok(Algo::Discrete),
            "continuous" => Ok(Algo::Continuous),
            "v2v" | "vertex2vertex" => Ok(Algo::Vertex2Vertex),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Discrete => "discrete",
            Algo::Continuous => "continuous",
            Algo::Vertex2Vertex => "v2v",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub wall_nanos: u128,
    pub answer: bool,
    pub links: u64,
    pub cuts: u64,
    pub events: u64,
}

/// Walk drifting in `+x`, retraced three times with jitter so the free grid
/// has long diagonal runs. The walk never returns to itself, so no cluster
/// has more than three members and `m = 5` makes the sweep run to the end.
pub fn walk_instance(n: usize, seed: u64) -> SCInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n.div_ceil(3).max(2);
    let (mut x, mut y) = (0.0, 0.0);
    let base: Vec<(f64, f64)> = (0..k)
        .map(|_| {
            x += rng.random_range(0.3..1.0);
            y += rng.random_range(-1.0..1.0);
            (x, y)
        })
        .collect();
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let (bx, by) = base[i % k];
            (bx + rng.random_range(-0.1..0.1), by + rng.random_range(-0.1..0.1))
        })
        .collect();
    SCInstance::new(Trajectory::from_xy(&pts).expect("finite"), 5, 4.0, 0.5)
}

/// Density-family curve with about `n` vertices. `m` is one more than the
/// number of `T₁` copies, so the answer is NO and the sweep runs to the end.
pub fn density_instance(n: usize) -> SCInstance {
    let k = (n / 8).max(1);
    let g = gen_density(k);
    SCInstance::new(g.t, k + 2, g.t1.total_length(), g.d)
}

pub fn structured_instance(algo: Algo, n: usize, seed: u64) -> SCInstance {
    match algo {
        Algo::Discrete => walk_instance(n, seed),
        Algo::Continuous | Algo::Vertex2Vertex => density_instance(n),
    }
}

pub fn run_one(algo: Algo, inst: &SCInstance) -> BenchRecord {
    let start = Instant::now();
    let (answer, links, cuts, events) = match algo {
        Algo::Discrete => {
            let r = sc_decide_discrete(inst);
            (r.yes, r.stats.links, r.stats.cuts, r.stats.subproblems)
        }
        Algo::Continuous => {
            let r = sc_decide_continuous(inst);
            (r.yes, r.stats.eval.links, r.stats.eval.cuts, r.stats.events.total() as u64)
        }
        Algo::Vertex2Vertex => {
            let r = sc_decide_continuous_v2v(inst);
            (r.yes, r.stats.eval.links, r.stats.eval.cuts, r.stats.positions as u64)
        }
    };
    BenchRecord {
        algorithm: algo.name().into(),
        n: inst.t.len(),
        m: inst.m,
        seed: 0,
        wall_nanos: start.elapsed().as_nanos(),
        answer,
        links,
        cuts,
        events,
    }
}

/// One record per (size, seed) cell, in input order.
pub fn sweep(algo: Algo, sizes: &[usize], seeds: u64) -> Vec<BenchRecord> {
    let cells: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| (0..seeds).map(move |s| (n, s))).collect();
    let cell = |&(n, seed): &(usize, u64)| BenchRecord { seed, ..run_one(algo, &structured_instance(algo, n, seed)) };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cells.par_iter().map(cell).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cells.iter().map(cell).collect()
    }
}

/// Appends rows; the header is written only when the file is new or empty.
pub fn append_csv(records: &[BenchRecord], path: &Path) -> Result<(), csv::Error> {
    let fresh = std::fs::metadata(path).map_or(true, |m| m.len() == 0);
    let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
