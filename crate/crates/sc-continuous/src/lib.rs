//! Subtrajectory clustering under the continuous Fréchet distance.
//!
//! Both deciders run a greedy lowest-path chain on the reach graph G′ of
//! `F_d(T, T)`. The vertex-to-vertex decider evaluates it at vertex
//! references only. The general decider evaluates it at every event
//! position of the sweep, and between consecutive events. One link-cut
//! forest and one set of dead-end marks serve the whole sweep.

mod eval;
mod events;

pub use eval::{Chain, ChainPath, EvalStats, Evaluator};
pub use events::{event_positions, last_start, sweep_positions, EventCounts};

use sc_freespace::exec::Exec;
use sc_freespace::FreeSpaceDiagram;
use sc_geometry::{eps, Point2, SCInstance, SCWitness, Trajectory};
use sc_reachgraph::ReachGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ContinuousStats {
    pub eval: EvalStats,
    pub events: EventCounts,
    pub positions: usize,
    pub graph_nodes: usize,
    pub graph_edges: usize,
}

#[derive(Debug, Clone)]
pub struct ContinuousDecision {
    pub yes: bool,
    pub witness: Option<SCWitness>,
    pub stats: ContinuousStats,
}

fn trivial(inst: &SCInstance) -> Option<ContinuousDecision> {
    let need = inst.m.saturating_sub(1);
    if inst.t.len() >= 2 {
        return None;
    }
    let yes = need == 0 && inst.ell <= eps() * inst.ell.max(1.0);
    let witness = yes.then(|| SCWitness { reference: (1.0, 1.0), ..Default::default() });
    Some(ContinuousDecision { yes, witness, stats: ContinuousStats::default() })
}

/// Builds the sweep machinery for an instance.
pub fn evaluator_for(inst: &SCInstance, exec: Exec) -> Evaluator {
    let fsd = FreeSpaceDiagram::build_with(&inst.t, &inst.t, inst.d, exec);
    Evaluator::new(ReachGraph::build_with(fsd, exec))
}

fn witness(s: f64, t: f64, chain: &Chain, need: usize) -> SCWitness {
    let p = |(x, y): (f64, f64)| Point2::new(x + 1.0, y + 1.0);
    let mut w = SCWitness { reference: (s + 1.0, t + 1.0), ..Default::default() };
    if let Some((lo, hi)) = chain.band {
        for k in 0..need {
            let y = lo + (hi - lo) * (k as f64 + 0.5) / need as f64;
            w.paths.push(vec![p((s, y)), p((t, y))]);
            w.intervals.push((y + 1.0, y + 1.0));
        }
    } else {
        for path in chain.paths.iter().take(need) {
            w.paths.push(path.points.iter().map(|&q| p(q)).collect());
            w.intervals.push((path.lo + 1.0, path.hi + 1.0));
        }
    }
    w
}

fn finish(ev: &Evaluator, found: Option<SCWitness>, mut stats: ContinuousStats) -> ContinuousDecision {
    stats.eval = ev.stats();
    stats.graph_nodes = ev.graph().len();
    stats.graph_edges = ev.graph().edge_count();
    ContinuousDecision { yes: found.is_some(), witness: found, stats }
}

/// Decision restricted to references that start and end at vertices.
pub fn sc_decide_continuous_v2v(inst: &SCInstance) -> ContinuousDecision {
    sc_decide_continuous_v2v_with(inst, Exec::default())
}

pub fn sc_decide_continuous_v2v_with(inst: &SCInstance, exec: Exec) -> ContinuousDecision {
    if let Some(d) = trivial(inst) {
        return d;
    }
    let need = inst.m.saturating_sub(1);
    let mut ev = evaluator_for(inst, exec);
    let mut stats = ContinuousStats::default();
    for s in 0..inst.t.len() {
        let Some(e) = inst.t.advance_vertex(s, inst.ell) else { break };
        let e = e.max(s);
        stats.positions += 1;
        let chain = ev.evaluate(s as f64, e as f64, need);
        if chain.count() >= need {
            let w = witness(s as f64, e as f64, &chain, need);
            return finish(&ev, Some(w), stats);
        }
    }
    finish(&ev, None, stats)
}

/// Decision over all references of length `ℓ`.
pub fn sc_decide_continuous(inst: &SCInstance) -> ContinuousDecision {
    sc_decide_continuous_with(inst, Exec::default())
}

pub fn sc_decide_continuous_with(inst: &SCInstance, exec: Exec) -> ContinuousDecision {
    if let Some(d) = trivial(inst) {
        return d;
    }
    let need = inst.m.saturating_sub(1);
    let mut ev = evaluator_for(inst, exec);
    let (positions, counts) = sweep_positions(ev.graph().fsd(), inst.ell, exec);
    let stats = ContinuousStats { events: counts, positions: positions.len(), ..Default::default() };
    let mut last_t = f64::NEG_INFINITY;
    for s in positions {
        let Some(t) = inst.t.advance0(s, inst.ell) else { break };
        let t = t.max(s).max(last_t);
        last_t = t;
        let chain = ev.evaluate(s, t, need);
        if chain.count() >= need {
            let w = witness(s, t, &chain, need);
            return finish(&ev, Some(w), stats);
        }
    }
    finish(&ev, None, stats)
}

/// Greedy chain at one sweep position with a fresh graph and forest.
pub fn chain_from_scratch(inst: &SCInstance, s: f64, need: usize) -> Option<Chain> {
    let t = inst.t.advance0(s, inst.ell)?;
    let mut ev = evaluator_for(inst, Exec::Sequential);
    Some(ev.evaluate(s, t.max(s), need))
}

/// Greedy chain of up to `need` pairwise disjoint monotone paths of
/// `F_d(tx, ty)` from the line over the start of `tx` to the line over its
/// end. With `need = usize::MAX` the count is the maximum.
pub fn line_paths(tx: &Trajectory, ty: &Trajectory, d: f64, need: usize) -> Chain {
    let exec = Exec::default();
    let fsd = FreeSpaceDiagram::build_with(tx, ty, d, exec);
    let mut ev = Evaluator::new(ReachGraph::build_with(fsd, exec));
    ev.evaluate_pair(0.0, (tx.len() - 1) as f64, need)
}
