//! The update engine.

mod check;
mod cleanup;
mod fixup;
mod metrics;
pub mod reshape;

use std::collections::{BTreeMap, HashSet};

pub use check::Violation;
pub use metrics::Metrics;

use crate::graph::{Graph, UpdateEvent, VertexId};
use crate::level::{LevelClock, StarStore};
use crate::tuple::{CenterArray, Count, Triple, TripleKey, Tuple, TupleStore};
use crate::weight::{EdgeWeight, Weight};
use crate::Fault;

/// A queued triple: either a reference copy of a resident triple or an
/// in-flight delta produced by an extension.
#[derive(Clone, Debug)]
pub(crate) struct Work {
    pub a: VertexId,
    pub b: VertexId,
    pub centers: CenterArray,
    pub fresh: bool,
}

pub(crate) type WorkHeap<W> = BTreeMap<TripleKey<W>, Vec<Work>>;

pub(crate) fn push<W: EdgeWeight>(heap: &mut WorkHeap<W>, key: TripleKey<W>, w: Work) {
    heap.entry(key).or_default().push(w);
}

/// All queued entries sharing the least key.
pub fn extract_min_key_set<K: Ord + Copy, V>(heap: &mut BTreeMap<K, Vec<V>>) -> Option<(K, Vec<V>)> {
    heap.pop_first()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

/// Outcome of one call to [`DynamicApasp::update`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateReport<W> {
    pub step: u64,
    pub level: usize,
    pub dummies: Vec<VertexId>,
    /// An epoch reset ran before this update.
    pub reset: bool,
    pub metrics: Metrics,
    /// First extraction weight of every pair in the current-graph pass of
    /// every fixup of this update, as (x, y, wt). Filled only when probing.
    pub first_extractions: Vec<(VertexId, VertexId, W)>,
    /// Center arrays of the paths each fixup created, per triple. Filled only
    /// when probing.
    pub creations: Vec<(Tuple, W, CenterArray)>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Probe<W> {
    pub first: Vec<(VertexId, VertexId, W)>,
    pub created: Vec<(Tuple, W, CenterArray)>,
}

/// Fully dynamic all-pairs all-shortest-paths under vertex updates.
#[derive(Clone, Debug)]
pub struct DynamicApasp<W: EdgeWeight> {
    graph: Graph<W>,
    clock: LevelClock,
    p: TupleStore<W>,
    star: StarStore<W>,
    metrics: Metrics,
    step_metrics: Metrics,
    update_num: u64,
    resets: u64,
    probe: Option<Probe<W>>,
}

impl<W: EdgeWeight> DynamicApasp<W> {
    /// An engine over `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Self::from_graph(&Graph::new(n)).expect("building an empty graph cannot fail")
    }

    fn blank(n: usize) -> Self {
        let clock = LevelClock::new(n);
        let slots = clock.slots();
        DynamicApasp {
            graph: Graph::new(n),
            clock,
            p: TupleStore::new(n),
            star: StarStore::new(n, slots),
            metrics: Metrics::default(),
            step_metrics: Metrics::default(),
            update_num: 0,
            resets: 0,
            probe: None,
        }
    }

    /// Builds the system for `g` with one insert update per vertex.
    pub fn from_graph(g: &Graph<W>) -> Result<Self, Fault> {
        let mut e = Self::blank(g.n());
        e.build(g)?;
        Ok(e)
    }

    fn build(&mut self, g: &Graph<W>) -> Result<(), Fault> {
        for v in 0..g.n() {
            let v = VertexId::from(v);
            let ins = g.in_arcs(v).filter(|(u, _)| *u < v);
            let outs = g.out_arcs(v).filter(|(u, _)| *u < v);
            self.step(&UpdateEvent::new(v, ins, outs))?;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph<W> {
        &self.graph
    }

    pub fn clock(&self) -> &LevelClock {
        &self.clock
    }

    pub fn tuples(&self) -> &TupleStore<W> {
        &self.p
    }

    pub fn shortest(&self) -> &StarStore<W> {
        &self.star
    }

    /// Cumulative counters since construction.
    pub fn metrics(&self) -> Metrics {
        self.metrics
    }

    pub fn resets(&self) -> u64 {
        self.resets
    }

    /// Records first extractions and creations during fixups.
    pub fn set_probe(&mut self, on: bool) {
        self.probe = on.then(Probe::default);
    }

    pub fn distance(&self, x: VertexId, y: VertexId) -> Weight<W> {
        if x == y {
            return Weight::Finite(W::zero());
        }
        self.star.min_weight(x, y).into()
    }

    pub fn sigma(&self, x: VertexId, y: VertexId) -> Count {
        if x == y {
            return 1;
        }
        let Some(d) = self.star.min_weight(x, y) else { return 0 };
        self.star.pair(x, y).take_while(|(_, wt, _)| *wt == d).map(|(_, _, c)| c.total().expect("count overflow")).sum()
    }

    /// Paths stored per level over all triples of P: the resident triple-pairs.
    pub fn triple_pairs(&self) -> usize {
        self.p.iter().map(|t| t.centers.support().count()).sum()
    }

    /// Applies one vertex update, resetting the epoch first if it is full.
    pub fn update(&mut self, e: &UpdateEvent<W>) -> Result<UpdateReport<W>, Fault> {
        self.graph.validate_event(e)?;
        let reset = self.clock.exhausted();
        if reset {
            self.reset_epoch()?;
        }
        let mut r = self.step(e)?;
        r.reset = reset;
        Ok(r)
    }

    /// Clears every store and rebuilds the current graph from scratch.
    pub fn reset_epoch(&mut self) -> Result<(), Fault> {
        let g = self.graph.clone();
        let (metrics, resets, probe) = (self.metrics, self.resets + 1, self.probe.is_some());
        *self = Self::blank(g.n());
        self.build(&g)?;
        self.metrics.absorb(&metrics);
        self.resets = resets;
        self.set_probe(probe);
        Ok(())
    }

    fn step(&mut self, e: &UpdateEvent<W>) -> Result<UpdateReport<W>, Fault> {
        self.step_metrics = Metrics::default();
        if let Some(p) = &mut self.probe {
            *p = Probe::default();
        }
        let plan = self.clock.advance_step(e.v)?;
        let prev = self.clock.active_levels().get(1).copied();
        self.star.open_level(plan.k, prev);
        self.ff_update(e, plan.k)?;
        for &u in &plan.dummies {
            let same = self.graph.snapshot_event(u);
            self.ff_update(&same, plan.k)?;
        }
        for j in 0..plan.k {
            if self.clock.is_active(j) {
                if let Some(t) = self.p.iter().find(|t| t.centers.get(j) > 0) {
                    return Err(Fault::Inconsistent(format!("{} wt {} left at retired level {j}", t.tuple, t.wt)));
                }
                self.star.retire_level(j)?;
            }
        }
        self.clock.deactivate_below(plan.k)?;
        self.metrics.absorb(&self.step_metrics);
        Ok(UpdateReport {
            step: plan.t,
            level: plan.k,
            dummies: plan.dummies,
            reset: false,
            metrics: self.step_metrics,
            first_extractions: self.probe.as_ref().map(|p| p.first.clone()).unwrap_or_default(),
            creations: self.probe.as_ref().map(|p| p.created.clone()).unwrap_or_default(),
        })
    }

    fn ff_update(&mut self, e: &UpdateEvent<W>, k: usize) -> Result<(), Fault> {
        self.update_num += 1;
        let dirty = self.cleanup(e.v)?;
        self.clock.set_center(e.v, k);
        self.graph.apply(e)?;
        self.fixup(e.v, k, dirty)
    }

    pub(crate) fn arc(&self, u: VertexId, v: VertexId) -> Result<W, Fault> {
        self.graph
            .arc_weight(u, v)
            .finite()
            .ok_or_else(|| Fault::Inconsistent(format!("stored path uses missing arc ({u}, {v})")))
    }

    pub(crate) fn set_star_level(&mut self, t: &Tuple, wt: W, level: usize, value: Count) -> Result<(), Fault> {
        let clock = &self.clock;
        self.star.set_level(t, wt, level, value, &|u| clock.center(u))?;
        self.p.set_beta(t, wt, self.star.get(t, wt).is_some());
        Ok(())
    }

    pub(crate) fn center_of(&self, u: VertexId) -> Result<usize, Fault> {
        self.clock.center(u).ok_or_else(|| Fault::Inconsistent(format!("vertex {u} has no center")))
    }

    /// Canonical dump of P, one triple per line, sorted by (x, y, wt, a, b).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for t in self.p.iter() {
            let Tuple { x, a, b, y } = t.tuple;
            out.push_str(&format!("{x} {a} {b} {y} {} {} {} centers={}\n", t.wt, t.count, u8::from(t.beta), t.centers));
        }
        out
    }

    /// Test hook: adds a phantom path to one shortest triple of (x, y).
    #[doc(hidden)]
    pub fn inject_count_fault(&mut self, x: VertexId, y: VertexId) -> bool {
        let Some((t, wt, c)) = self.star.pair(x, y).next().map(|(t, wt, c)| (t, wt, c.clone())) else {
            return false;
        };
        let lvl = c.support().next().unwrap();
        self.set_star_level(&t, wt, lvl, c.get(lvl) + 1).is_ok()
    }
}

pub(crate) fn marked_set<W: EdgeWeight>() -> HashSet<(Tuple, W)> {
    HashSet::new()
}

pub(crate) fn new_triple<W: EdgeWeight>(
    t: Tuple,
    wt: W,
    count: Count,
    centers: CenterArray,
    update_num: u64,
) -> Triple<W> {
    Triple { tuple: t, wt, count, beta: false, centers, update_num, num_v_paths: 0 }
}
