//! Removal of every stored path through the updated vertex.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::reshape::cleanup_center_reshape;
use super::{marked_set, push, DynamicApasp, Side, Work, WorkHeap};
use crate::graph::VertexId;
use crate::tuple::{CenterArray, TripleKey, Tuple};
use crate::weight::EdgeWeight;
use crate::Fault;

/// Per level, the pairs whose shortest paths in that level graph all went
/// through the removed vertex.
pub(crate) type Dirty = BTreeMap<usize, HashSet<(VertexId, VertexId)>>;

impl<W: EdgeWeight> DynamicApasp<W> {
    /// Runs on the graph and centers as they were before the update.
    pub(crate) fn cleanup(&mut self, v: VertexId) -> Result<Dirty, Fault> {
        let mut heap = WorkHeap::new();
        let mut marked = marked_set();
        let mut touched = BTreeSet::new();
        let arcs: Vec<(Tuple, W)> = self
            .graph
            .in_arcs(v)
            .map(|(u, w)| (Tuple::arc(u, v), w))
            .chain(self.graph.out_arcs(v).map(|(u, w)| (Tuple::arc(v, u), w)))
            .collect();
        // The trivial path v extends to exactly its incident arcs.
        for (t, wt) in arcs {
            let resident =
                self.p.get(&t, wt).ok_or_else(|| Fault::Inconsistent(format!("arc {t} wt {wt} missing from P")))?;
            let centers = resident.centers.clone();
            self.remove_paths(&mut heap, &mut marked, &mut touched, t, wt, centers)?;
        }
        while let Some((key, group)) = super::extract_min_key_set(&mut heap) {
            self.step_metrics.heap_ops += 1;
            self.cleanup_extend(&mut heap, &mut marked, &mut touched, key, &group, Side::Left)?;
            self.cleanup_extend(&mut heap, &mut marked, &mut touched, key, &group, Side::Right)?;
        }
        Ok(self.dirty_pairs(&touched))
    }

    fn cleanup_extend(
        &mut self,
        heap: &mut WorkHeap<W>,
        marked: &mut HashSet<(Tuple, W)>,
        touched: &mut BTreeSet<(VertexId, VertexId)>,
        key: TripleKey<W>,
        group: &[Work],
        side: Side,
    ) -> Result<(), Fault> {
        let TripleKey { wt, x, y } = key;
        // Group by last-arc tail b (left) or first-arc head a (right).
        let mut by_end: BTreeMap<VertexId, CenterArray> = BTreeMap::new();
        for w in group {
            let end = if side == Side::Left { w.b } else { w.a };
            by_end.entry(end).or_insert_with(|| CenterArray::zeros(w.centers.len())).add(&w.centers)?;
        }
        for (end, through) in by_end {
            let exts = match side {
                Side::Left => self.p.left_ext(x, end, y),
                Side::Right => self.p.right_ext(x, end, y),
            };
            for z in exts {
                if z == if side == Side::Left { y } else { x } {
                    continue;
                }
                let (t, step) = match side {
                    Side::Left => (Tuple { x: z, a: x, b: end, y }, self.arc(z, x)?),
                    Side::Right => (Tuple { x, a: end, b: y, y: z }, self.arc(y, z)?),
                };
                let wt2 = wt.checked_add(&step).ok_or(Fault::WeightOverflow)?;
                if marked.contains(&(t, wt2)) {
                    continue;
                }
                self.step_metrics.triples_touched += 1;
                let Some(resident) = self.p.get(&t, wt2) else { continue };
                let kz = self.center_of(z)?;
                let delta = cleanup_center_reshape(&self.clock, &resident.centers, &through, kz)?;
                if !delta.is_empty() {
                    self.remove_paths(heap, marked, touched, t, wt2, delta)?;
                }
            }
        }
        Ok(())
    }

    /// Removes the paths of (t, wt) split per level as `delta` from P and
    /// P*, and queues the shortest among them for further extension.
    fn remove_paths(
        &mut self,
        heap: &mut WorkHeap<W>,
        marked: &mut HashSet<(Tuple, W)>,
        touched: &mut BTreeSet<(VertexId, VertexId)>,
        t: Tuple,
        wt: W,
        delta: CenterArray,
    ) -> Result<(), Fault> {
        marked.insert((t, wt));
        let resident = self.p.get(&t, wt).map(|r| r.centers.clone()).unwrap_or_default();
        let shortest = self.star.get(&t, wt).cloned();
        let report = self.p.decrement(&t, wt, delta.total()?, &delta)?;
        if report.removed {
            self.step_metrics.triples_removed += 1;
        }
        let mut gone = CenterArray::zeros(delta.len());
        if let Some(sp) = shortest {
            for level in delta.support() {
                let have = sp.get(level);
                if have == 0 {
                    continue;
                }
                if have != resident.get(level) {
                    return Err(Fault::Inconsistent(format!(
                        "{t} wt {wt}: {have} shortest of {} paths at level {level}",
                        resident.get(level)
                    )));
                }
                gone.set(level, delta.get(level));
                self.set_star_level(&t, wt, level, have - delta.get(level))?;
            }
        }
        if !gone.is_empty() {
            touched.insert((t.x, t.y));
            self.step_metrics.heap_ops += 1;
            push(heap, TripleKey { wt, x: t.x, y: t.y }, Work { a: t.a, b: t.b, centers: gone, fresh: true });
        }
        Ok(())
    }

    fn dirty_pairs(&self, touched: &BTreeSet<(VertexId, VertexId)>) -> Dirty {
        let mut out = Dirty::new();
        let levels = self.clock.active_indices();
        for &(x, y) in touched {
            for &i in &levels {
                let Some(d) = self.star.distances(x, y).at(i) else { continue };
                let it = self.clock.time(i);
                let kept = self
                    .star
                    .pair(x, y)
                    .filter(|(_, wt, _)| *wt == d)
                    .any(|(_, _, c)| c.support().any(|l| self.clock.time(l) <= it));
                if !kept {
                    out.entry(i).or_default().insert((x, y));
                }
            }
        }
        out
    }
}
