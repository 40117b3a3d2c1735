//! Regrowth of shortest and locally shortest paths after a cleanup, one
//! level graph at a time from the oldest.
//!
//! Removing a vertex from an older level graph only lengthens distances
//! there; the newest level graph is the current graph and also gains the
//! paths through the vertex's new arcs. Within one level the pairs settle in
//! distance order, and every new locally shortest path is generated once,
//! from whichever of its two maximal subpaths settles last.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::cleanup::Dirty;
use super::reshape::fixup_center_reshape;
use super::{marked_set, new_triple, push, DynamicApasp, Side, Work, WorkHeap};
use crate::graph::VertexId;
use crate::tuple::{CenterArray, Count, MergeReport, TripleKey, Tuple};
use crate::weight::EdgeWeight;
use crate::Fault;

type Pair = (VertexId, VertexId);

/// Paths of one triple selected for extension.
#[derive(Clone, Debug)]
struct Selected {
    t: Tuple,
    centers: CenterArray,
}

/// An extension waiting for its other subpath's pair to settle.
#[derive(Clone, Debug)]
struct Pending<W> {
    t: Tuple,
    wt: W,
    part_wt: W,
    count: Count,
}

enum Settled<W> {
    /// Final distance in the level graph.
    At(Option<W>),
    Open,
}

struct LevelRun<W> {
    level: usize,
    insertion: bool,
    dirty: HashSet<Pair>,
    done: HashMap<Pair, (W, bool)>,
    pending: HashMap<Pair, Vec<Pending<W>>>,
    marked: HashSet<(Tuple, W)>,
    heap: WorkHeap<W>,
}

impl<W: EdgeWeight> DynamicApasp<W> {
    /// Runs after the new weights of `v` are in the graph and `v` is centered at `k`.
    pub(crate) fn fixup(&mut self, v: VertexId, k: usize, mut dirty: Dirty) -> Result<(), Fault> {
        let mut levels = self.clock.active_levels();
        levels.reverse();
        for i in levels {
            let d = dirty.remove(&i).unwrap_or_default();
            if i == k || !d.is_empty() {
                self.fixup_level(v, i, i == k, d)?;
            }
        }
        Ok(())
    }

    fn fixup_level(&mut self, v: VertexId, i: usize, insertion: bool, dirty: HashSet<Pair>) -> Result<(), Fault> {
        let mut run = LevelRun {
            level: i,
            insertion,
            dirty,
            done: HashMap::new(),
            pending: HashMap::new(),
            marked: marked_set(),
            heap: WorkHeap::new(),
        };
        self.populate(&mut run, v)?;
        while let Some((key, group)) = super::extract_min_key_set(&mut run.heap) {
            self.step_metrics.heap_ops += 1;
            let TripleKey { wt, x, y } = key;
            if run.done.contains_key(&(x, y)) {
                continue;
            }
            if insertion {
                if let Some(p) = &mut self.probe {
                    p.first.push((x, y, wt));
                }
            }
            let old = self.star.distances(x, y).at(i);
            let changed = run.dirty.contains(&(x, y)) || old.is_none_or(|o| wt < o);
            if !changed && old != Some(wt) {
                // A longer path of a pair whose distance stands.
                run.done.insert((x, y), (old.unwrap_or(wt), false));
                self.resolve_pending(&mut run, (x, y))?;
                continue;
            }
            run.done.insert((x, y), (wt, changed));
            if changed {
                self.star.set_distance(x, y, i, Some(wt));
            }
            let selected = self.select_extendable(&run, key, &group, changed)?;
            self.resolve_pending(&mut run, (x, y))?;
            self.fixup_extend(&mut run, key, &selected, Side::Left)?;
            self.fixup_extend(&mut run, key, &selected, Side::Right)?;
        }
        for &(x, y) in &run.dirty {
            if !run.done.contains_key(&(x, y)) {
                self.star.set_distance(x, y, i, None);
            }
        }
        Ok(())
    }

    /// Seeds the heap: the new arcs and every pair on the insertion level,
    /// the pairs that lost their distance elsewhere.
    fn populate(&mut self, run: &mut LevelRun<W>, v: VertexId) -> Result<(), Fault> {
        let slots = self.clock.slots();
        let i = run.level;
        if run.insertion {
            let arcs: Vec<(Tuple, W)> = self
                .graph
                .in_arcs(v)
                .map(|(u, w)| (Tuple::arc(u, v), w))
                .chain(self.graph.out_arcs(v).map(|(u, w)| (Tuple::arc(v, u), w)))
                .collect();
            for (t, wt) in arcs {
                let centers = CenterArray::unit(slots, i, 1);
                if let Some(p) = &mut self.probe {
                    p.created.push((t, wt, centers.clone()));
                }
                let mut triple = new_triple(t, wt, 1, centers.clone(), self.update_num);
                triple.num_v_paths = 1;
                if self.p.insert_or_merge(triple)? == MergeReport::Merged {
                    return Err(Fault::Inconsistent(format!("arc {t} survived cleanup")));
                }
                self.step_metrics.triple_pairs_created += 1;
                self.step_metrics.heap_ops += 1;
                push(&mut run.heap, TripleKey { wt, x: t.x, y: t.y }, Work { a: t.a, b: t.b, centers, fresh: true });
            }
            let n = self.n();
            for x in 0..n {
                for y in 0..n {
                    let (x, y) = (VertexId::from(x), VertexId::from(y));
                    if let Some(m) = self.p.min_triple(x, y) {
                        let w = Work { a: m.tuple.a, b: m.tuple.b, centers: m.centers.clone(), fresh: false };
                        let key = m.key();
                        self.step_metrics.heap_ops += 1;
                        push(&mut run.heap, key, w);
                    }
                }
            }
        } else {
            let it = self.clock.time(i);
            for &(x, y) in &run.dirty {
                let seed =
                    self.p.pair(x, y).find(|m| m.centers.support().any(|l| self.clock.time(l) <= it)).map(|m| {
                        (m.key(), Work { a: m.tuple.a, b: m.tuple.b, centers: m.centers.clone(), fresh: false })
                    });
                if let Some((key, w)) = seed {
                    self.step_metrics.heap_ops += 1;
                    push(&mut run.heap, key, w);
                }
            }
        }
        Ok(())
    }

    /// Records the paths of pair (x, y) at its settled distance `wt` as
    /// shortest in this level, and returns those whose extensions may be
    /// missing: all of them if the distance changed, else the new ones.
    fn select_extendable(
        &mut self,
        run: &LevelRun<W>,
        key: TripleKey<W>,
        group: &[Work],
        changed: bool,
    ) -> Result<Vec<Selected>, Fault> {
        let TripleKey { wt, x, y } = key;
        let i = run.level;
        let it = self.clock.time(i);
        let slots = self.clock.slots();
        let triples: Vec<(Tuple, CenterArray)> =
            self.p.pair(x, y).filter(|r| r.wt == wt).map(|r| (r.tuple, r.centers.clone())).collect();
        let mut out = Vec::new();
        for (t, c) in triples {
            if c.get(i) > 0 {
                self.set_star_level(&t, wt, i, c.get(i))?;
            }
            let mut part = CenterArray::zeros(slots);
            for l in c.support().filter(|&l| self.clock.time(l) <= it) {
                if l != i && self.star.get(&t, wt).map_or(0, |s| s.get(l)) != c.get(l) {
                    return Err(Fault::Inconsistent(format!(
                        "{t} wt {wt} shortest at level {i} but not at older level {l}"
                    )));
                }
                part.set(l, c.get(l));
            }
            self.step_metrics.triples_touched += 1;
            if changed && !part.is_empty() {
                out.push(Selected { t, centers: part });
            }
        }
        if !changed {
            let mut fresh: BTreeMap<(VertexId, VertexId), CenterArray> = BTreeMap::new();
            for w in group.iter().filter(|w| w.fresh) {
                fresh.entry((w.a, w.b)).or_insert_with(|| CenterArray::zeros(slots)).add(&w.centers)?;
            }
            out.extend(fresh.into_iter().map(|((a, b), centers)| Selected { t: Tuple { x, a, b, y }, centers }));
        }
        Ok(out)
    }

    fn settled(&self, run: &LevelRun<W>, pair: Pair, now: W) -> Settled<W> {
        if let Some(&(d, _)) = run.done.get(&pair) {
            return Settled::At(Some(d));
        }
        if run.dirty.contains(&pair) {
            return Settled::Open;
        }
        let old = self.star.distances(pair.0, pair.1).at(run.level);
        if !run.insertion {
            return Settled::At(old);
        }
        // Only paths through the new vertex can still shorten it, and those
        // settle in distance order.
        match old {
            Some(o) if o <= now => Settled::At(old),
            _ => Settled::Open,
        }
    }

    fn resolve_pending(&mut self, run: &mut LevelRun<W>, pair: Pair) -> Result<(), Fault> {
        let Some(list) = run.pending.remove(&pair) else { return Ok(()) };
        let (d, changed) = run.done[&pair];
        // A pair whose distance changed extends all its paths itself.
        if changed {
            return Ok(());
        }
        for pd in list {
            if pd.part_wt == d {
                self.generate(run, pd.t, pd.wt, pd.count)?;
            }
        }
        Ok(())
    }

    fn fixup_extend(
        &mut self,
        run: &mut LevelRun<W>,
        key: TripleKey<W>,
        selected: &[Selected],
        side: Side,
    ) -> Result<(), Fault> {
        let TripleKey { wt, x, y } = key;
        let i = run.level;
        let it = self.clock.time(i);
        let slots = self.clock.slots();
        let mut by_end: BTreeMap<VertexId, CenterArray> = BTreeMap::new();
        for s in selected {
            let end = if side == Side::Left { s.t.b } else { s.t.a };
            by_end.entry(end).or_insert_with(|| CenterArray::zeros(slots)).add(&s.centers)?;
        }
        let levels: Vec<usize> =
            self.clock.active_indices().into_iter().filter(|&l| self.clock.time(l) <= it).collect();
        for (end, through) in by_end {
            // Paths held at older levels gain this level only through a
            // vertex centered here.
            let own = through.get(i) > 0;
            let inner = match side {
                Side::Left => wt.checked_sub(&self.arc(end, y)?),
                Side::Right => wt.checked_sub(&self.arc(x, end)?),
            }
            .ok_or_else(|| Fault::Inconsistent(format!("({x}, {y}) wt {wt} shorter than its end arc")))?;
            let mut exts = BTreeSet::new();
            for &l in levels.iter().filter(|&&l| own || l == i) {
                let local = self.star.local(l);
                let cands = match (side, own) {
                    (Side::Left, true) => local.shortest_left(x, end),
                    (Side::Left, false) => local.centered_left(x, end),
                    (Side::Right, true) => local.shortest_right(end, y),
                    (Side::Right, false) => local.centered_right(end, y),
                };
                self.step_metrics.he_lookups += 1;
                for z in cands {
                    let (part, step) = match side {
                        Side::Left => ((z, end), self.arc(z, x)?),
                        Side::Right => ((end, z), self.arc(y, z)?),
                    };
                    let part_wt = inner.checked_add(&step).ok_or(Fault::WeightOverflow)?;
                    if local.weight(part.0, part.1) == Some(part_wt) {
                        exts.insert((z, part, part_wt, step));
                    }
                }
            }
            for (z, part, part_wt, step) in exts {
                if z == if side == Side::Left { y } else { x } {
                    continue;
                }
                let t = match side {
                    Side::Left => Tuple { x: z, a: x, b: end, y },
                    Side::Right => Tuple { x, a: end, b: y, y: z },
                };
                let wt2 = wt.checked_add(&step).ok_or(Fault::WeightOverflow)?;
                let count = fixup_center_reshape(&self.clock, &through, self.center_of(z)?).get(i);
                if count == 0 {
                    continue;
                }
                match self.settled(run, part, wt) {
                    Settled::At(d) => {
                        if d == Some(part_wt) {
                            self.generate(run, t, wt2, count)?;
                        }
                    }
                    Settled::Open => run.pending.entry(part).or_default().push(Pending { t, wt: wt2, part_wt, count }),
                }
            }
        }
        Ok(())
    }

    /// Adds `count` new locally shortest paths of (t, wt) at the run's level.
    fn generate(&mut self, run: &mut LevelRun<W>, t: Tuple, wt: W, count: Count) -> Result<(), Fault> {
        if !run.marked.insert((t, wt)) {
            return Ok(());
        }
        let i = run.level;
        self.step_metrics.triples_touched += 1;
        if self.p.get(&t, wt).is_none_or(|r| r.centers.get(i) == 0) {
            self.step_metrics.triple_pairs_created += 1;
        }
        let centers = CenterArray::unit(self.clock.slots(), i, count);
        if let Some(p) = &mut self.probe {
            p.created.push((t, wt, centers.clone()));
        }
        self.p.insert_or_merge(new_triple(t, wt, count, centers.clone(), self.update_num))?;
        self.step_metrics.heap_ops += 1;
        push(&mut run.heap, TripleKey { wt, x: t.x, y: t.y }, Work { a: t.a, b: t.b, centers, fresh: true });
        Ok(())
    }
}
