//! Level clock, per-level local stores, distance history and the store of
//! shortest triples.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::graph::VertexId;
use crate::tuple::{CenterArray, Count, Tuple};
use crate::weight::EdgeWeight;
use crate::Fault;

/// Number of level slots for an `n`-vertex epoch: step `t ≤ 2n` opens level
/// `lsb(t)`, which is at most `floor(log2(2n))`.
pub fn level_slots(n: usize) -> usize {
    let cap = 2 * n.max(1);
    (usize::BITS - cap.leading_zeros()) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPlan {
    pub t: u64,
    pub k: usize,
    /// Vertices still centered below `k`, most recently updated first.
    pub dummies: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct LevelClock {
    n: usize,
    t: u64,
    time_of: Vec<Option<u64>>,
    center_of: Vec<Option<usize>>,
    last_update: Vec<u64>,
}

impl LevelClock {
    pub fn new(n: usize) -> Self {
        LevelClock { n, t: 0, time_of: vec![None; level_slots(n)], center_of: vec![None; n], last_update: vec![0; n] }
    }

    pub fn step(&self) -> u64 {
        self.t
    }

    pub fn slots(&self) -> usize {
        self.time_of.len()
    }

    pub fn capacity(&self) -> u64 {
        2 * self.n as u64
    }

    pub fn exhausted(&self) -> bool {
        self.t >= self.capacity()
    }

    pub fn advance_step(&mut self, v: VertexId) -> Result<StepPlan, Fault> {
        if self.exhausted() {
            return Err(Fault::EpochExhausted);
        }
        self.t += 1;
        let k = self.t.trailing_zeros() as usize;
        self.time_of[k] = Some(self.t);
        self.last_update[v.index()] = self.t;
        let mut dummies: Vec<VertexId> = (0..self.n)
            .map(VertexId::from)
            .filter(|&u| u != v && matches!(self.center_of[u.index()], Some(j) if j < k))
            .collect();
        dummies.sort_by_key(|u| std::cmp::Reverse(self.last_update[u.index()]));
        Ok(StepPlan { t: self.t, k, dummies })
    }

    pub fn deactivate_below(&mut self, k: usize) -> Result<(), Fault> {
        if let Some(u) = self.center_of.iter().position(|c| matches!(c, Some(j) if *j < k)) {
            return Err(Fault::Inconsistent(format!("vertex {u} still centered below level {k}")));
        }
        for slot in &mut self.time_of[..k] {
            *slot = None;
        }
        Ok(())
    }

    pub fn set_center(&mut self, v: VertexId, k: usize) {
        self.center_of[v.index()] = Some(k);
    }

    pub fn center(&self, v: VertexId) -> Option<usize> {
        self.center_of[v.index()]
    }

    pub fn is_active(&self, level: usize) -> bool {
        self.time_of[level].is_some()
    }

    /// Opening step of an active level.
    pub fn time(&self, level: usize) -> u64 {
        self.time_of[level].expect("inactive level")
    }

    /// Active levels, most recent first.
    pub fn active_levels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.slots()).filter(|&i| self.is_active(i)).collect();
        v.sort_by_key(|&i| std::cmp::Reverse(self.time(i)));
        v
    }

    /// Active levels in index order.
    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.slots()).filter(|&i| self.is_active(i)).collect()
    }

    /// The most recent level in the support of `c`.
    pub fn newest(&self, c: &CenterArray) -> Option<usize> {
        c.support().max_by_key(|&i| self.time(i))
    }

    /// The oldest level in the support of `c`.
    pub fn oldest(&self, c: &CenterArray) -> Option<usize> {
        c.support().min_by_key(|&i| self.time(i))
    }
}

/// Shortest tuples of one pair at one level, as (a, b) -> wt.
pub type PairStar<W> = BTreeMap<(VertexId, VertexId), W>;

/// Stores of one level: P*_i with its local index, and the extension sets
/// L*_i, R*_i with their centered subsets LC*_i, RC*_i.
#[derive(Clone, Debug, Default)]
pub struct LevelLocalStore<W> {
    // P*_i(x,y) as (a, b) -> wt; doubles as the [x,y,a,b] local index.
    star: HashMap<(VertexId, VertexId), PairStar<W>>,
    shortest_left: HashMap<(VertexId, VertexId), BTreeMap<VertexId, u32>>,
    shortest_right: HashMap<(VertexId, VertexId), BTreeMap<VertexId, u32>>,
    centered_left: HashMap<(VertexId, VertexId), BTreeSet<VertexId>>,
    centered_right: HashMap<(VertexId, VertexId), BTreeSet<VertexId>>,
}

fn set_of<K: std::hash::Hash + Eq, V: Ord + Copy>(m: &HashMap<K, BTreeSet<V>>, k: &K) -> Vec<V> {
    m.get(k).map(|s| s.iter().copied().collect()).unwrap_or_default()
}

impl<W: EdgeWeight> LevelLocalStore<W> {
    fn insert(&mut self, t: &Tuple, wt: W, left_centered: bool, right_centered: bool) -> Result<(), Fault> {
        let entries = self.star.entry((t.x, t.y)).or_default();
        if let Some(&other) = entries.values().next() {
            if other != wt {
                return Err(Fault::Inconsistent(format!("level store mixes weights {other} and {wt} for {t}")));
            }
        }
        if entries.insert((t.a, t.b), wt).is_some() {
            return Err(Fault::Inconsistent(format!("{t} already in its level store")));
        }
        let c = self.shortest_left.entry((t.a, t.y)).or_default().entry(t.x).or_insert(0);
        *c += 1;
        if *c == 1 && left_centered {
            self.centered_left.entry((t.a, t.y)).or_default().insert(t.x);
        }
        let c = self.shortest_right.entry((t.x, t.b)).or_default().entry(t.y).or_insert(0);
        *c += 1;
        if *c == 1 && right_centered {
            self.centered_right.entry((t.x, t.b)).or_default().insert(t.y);
        }
        Ok(())
    }

    fn remove(&mut self, t: &Tuple) {
        if let Some(entries) = self.star.get_mut(&(t.x, t.y)) {
            entries.remove(&(t.a, t.b));
            if entries.is_empty() {
                self.star.remove(&(t.x, t.y));
            }
        }
        for (counts, centered, key, v) in
            [(&mut self.shortest_left, &mut self.centered_left, (t.a, t.y), t.x), (&mut self.shortest_right, &mut self.centered_right, (t.x, t.b), t.y)]
        {
            let Some(m) = counts.get_mut(&key) else { continue };
            let Some(c) = m.get_mut(&v) else { continue };
            *c -= 1;
            if *c > 0 {
                continue;
            }
            m.remove(&v);
            if m.is_empty() {
                counts.remove(&key);
            }
            if let Some(s) = centered.get_mut(&key) {
                s.remove(&v);
                if s.is_empty() {
                    centered.remove(&key);
                }
            }
        }
    }

    /// Entries of P*_i(x,y) as ((a, b), wt).
    pub fn star(&self, x: VertexId, y: VertexId) -> Vec<((VertexId, VertexId), W)> {
        self.star.get(&(x, y)).map(|m| m.iter().map(|(&k, &w)| (k, w)).collect()).unwrap_or_default()
    }

    pub fn star_pairs(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &PairStar<W>)> {
        self.star.iter()
    }

    /// The single weight of P*_i(x, y).
    pub fn weight(&self, x: VertexId, y: VertexId) -> Option<W> {
        self.star.get(&(x, y)).and_then(|m| m.values().next()).copied()
    }

    pub fn lookup(&self, x: VertexId, y: VertexId, a: VertexId, b: VertexId) -> Option<W> {
        self.star.get(&(x, y)).and_then(|m| m.get(&(a, b))).copied()
    }

    /// L*_i(x, y): vertices x' with a triple (x'x, ·y) in P*_i(x', y).
    pub fn shortest_left(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        self.shortest_left.get(&(x, y)).map(|m| m.keys().copied().collect()).unwrap_or_default()
    }

    /// R*_i(x, y): vertices y' with a triple (x·, yy') in P*_i(x, y').
    pub fn shortest_right(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        self.shortest_right.get(&(x, y)).map(|m| m.keys().copied().collect()).unwrap_or_default()
    }

    pub fn centered_left(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        set_of(&self.centered_left, &(x, y))
    }

    pub fn centered_right(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        set_of(&self.centered_right, &(x, y))
    }

    pub fn has_shortest_left(&self, x: VertexId, y: VertexId) -> bool {
        self.shortest_left.contains_key(&(x, y))
    }

    pub fn has_shortest_right(&self, x: VertexId, y: VertexId) -> bool {
        self.shortest_right.contains_key(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.star.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.star.is_empty() && self.shortest_left.is_empty() && self.shortest_right.is_empty()
    }

    /// Total memberships of L*_i, R*_i, LC*_i and RC*_i.
    pub fn extension_sizes(&self) -> [usize; 4] {
        [
            self.shortest_left.values().map(BTreeMap::len).sum(),
            self.shortest_right.values().map(BTreeMap::len).sum(),
            self.centered_left.values().map(BTreeSet::len).sum(),
            self.centered_right.values().map(BTreeSet::len).sum(),
        ]
    }
}

/// Distance of one pair in every active level graph that connects it.
///
/// Level graphs are nested by age, so the distance can only shrink from an
/// older level to a newer one; the records list each distinct distance with
/// the newest level at which it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DistanceHistory<W> {
    by_level: Vec<(usize, W)>,
}

impl<W: EdgeWeight> DistanceHistory<W> {
    pub fn at(&self, level: usize) -> Option<W> {
        self.by_level.iter().find(|e| e.0 == level).map(|e| e.1)
    }

    pub fn set(&mut self, level: usize, wt: Option<W>) {
        self.by_level.retain(|e| e.0 != level);
        if let Some(wt) = wt {
            self.by_level.push((level, wt));
        }
    }

    /// The distance in the current graph.
    pub fn min(&self) -> Option<W> {
        self.by_level.iter().map(|e| e.1).min()
    }

    /// (weight, level) records, most recent first.
    pub fn list(&self, clock: &LevelClock) -> Vec<(W, usize)> {
        let mut v = self.by_level.clone();
        v.sort_by_key(|&(l, _)| std::cmp::Reverse(clock.time(l)));
        let mut out: Vec<(W, usize)> = Vec::new();
        for (l, w) in v {
            if out.last().is_none_or(|r| r.0 != w) {
                out.push((w, l));
            }
        }
        out
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, W)> + '_ {
        self.by_level.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.by_level.is_empty()
    }
}

type StarKey<W> = (W, VertexId, VertexId);

/// P*(x,y) for every pair, each triple carrying the per-level split of its
/// shortest paths, plus the per-level local stores and DM derived from it.
#[derive(Clone, Debug)]
pub struct StarStore<W> {
    n: usize,
    slots: usize,
    star: Vec<BTreeMap<StarKey<W>, CenterArray>>,
    locals: Vec<LevelLocalStore<W>>,
    distances: Vec<DistanceHistory<W>>,
}

impl<W: EdgeWeight> StarStore<W> {
    pub fn new(n: usize, slots: usize) -> Self {
        StarStore {
            n,
            slots,
            star: vec![BTreeMap::new(); n * n],
            locals: (0..slots).map(|_| LevelLocalStore::default()).collect(),
            distances: vec![DistanceHistory::default(); n * n],
        }
    }

    fn idx(&self, x: VertexId, y: VertexId) -> usize {
        x.index() * self.n + y.index()
    }

    pub fn get(&self, t: &Tuple, wt: W) -> Option<&CenterArray> {
        self.star[self.idx(t.x, t.y)].get(&(wt, t.a, t.b))
    }

    pub fn count(&self, t: &Tuple, wt: W) -> Count {
        self.get(t, wt).map_or(0, |c| c.total().unwrap_or(Count::MAX))
    }

    /// Triples of P*(x,y) in weight order as (tuple, wt, centers).
    pub fn pair(&self, x: VertexId, y: VertexId) -> impl Iterator<Item = (Tuple, W, &CenterArray)> {
        self.star[self.idx(x, y)].iter().map(move |(&(wt, a, b), c)| (Tuple { x, a, b, y }, wt, c))
    }

    pub fn min_weight(&self, x: VertexId, y: VertexId) -> Option<W> {
        self.star[self.idx(x, y)].first_key_value().map(|(k, _)| k.0)
    }

    pub fn pair_is_empty(&self, x: VertexId, y: VertexId) -> bool {
        self.star[self.idx(x, y)].is_empty()
    }

    pub fn len(&self) -> usize {
        self.star.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn local(&self, level: usize) -> &LevelLocalStore<W> {
        &self.locals[level]
    }

    pub fn distances(&self, x: VertexId, y: VertexId) -> &DistanceHistory<W> {
        &self.distances[self.idx(x, y)]
    }

    pub fn set_distance(&mut self, x: VertexId, y: VertexId, level: usize, wt: Option<W>) {
        let i = self.idx(x, y);
        self.distances[i].set(level, wt);
    }

    /// A level opening over the whole current graph inherits the distances
    /// of the previous newest level.
    pub fn open_level(&mut self, level: usize, previous: Option<usize>) {
        for distances in &mut self.distances {
            let wt = previous.and_then(|p| distances.at(p));
            distances.set(level, wt);
        }
    }

    /// Sets the shortest paths of (t, wt) at `level` to `value`.
    ///
    /// `centers` gives each vertex's current level, deciding membership in
    /// the centered extension subsets.
    pub fn set_level(
        &mut self,
        t: &Tuple,
        wt: W,
        level: usize,
        value: Count,
        centers: &dyn Fn(VertexId) -> Option<usize>,
    ) -> Result<(), Fault> {
        let i = self.idx(t.x, t.y);
        let key = (wt, t.a, t.b);
        let old = self.star[i].get(&key).map_or(0, |c| c.get(level));
        if old == value {
            return Ok(());
        }
        if old == 0 {
            self.locals[level].insert(t, wt, centers(t.x) == Some(level), centers(t.y) == Some(level))?;
        } else if value == 0 {
            self.locals[level].remove(t);
        }
        let slots = self.slots;
        let entry = self.star[i].entry(key).or_insert_with(|| CenterArray::zeros(slots));
        entry.set(level, value);
        if entry.is_empty() {
            self.star[i].remove(&key);
        }
        Ok(())
    }

    /// Drops the stores of a deactivated level, which must be empty.
    pub fn retire_level(&mut self, level: usize) -> Result<(), Fault> {
        if !self.locals[level].is_empty() {
            return Err(Fault::Inconsistent(format!(
                "level {level} retired with {} shortest triples",
                self.locals[level].len()
            )));
        }
        self.locals[level] = LevelLocalStore::default();
        for distances in &mut self.distances {
            distances.set(level, None);
        }
        Ok(())
    }
}
