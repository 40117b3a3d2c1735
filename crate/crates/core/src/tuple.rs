//! Tuples, triples and the global store of locally historical triples.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::graph::VertexId;
use crate::weight::EdgeWeight;
use crate::Fault;

pub type Count = u128;

/// First arc (x, a) and last arc (b, y) of a group of paths from x to y.
/// A single arc (u, v) is the tuple (uv, uv): a = v and b = u.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    pub x: VertexId,
    pub a: VertexId,
    pub b: VertexId,
    pub y: VertexId,
}

impl Tuple {
    pub fn arc(u: VertexId, v: VertexId) -> Self {
        Tuple { x: u, a: v, b: u, y: v }
    }

    pub fn pair(&self) -> (VertexId, VertexId) {
        (self.x, self.y)
    }

    pub fn is_arc(&self) -> bool {
        self.a == self.y && self.b == self.x
    }

    /// Prepends the arc (x', x).
    pub fn extend_left(&self, x2: VertexId) -> Self {
        Tuple { x: x2, a: self.x, b: self.b, y: self.y }
    }

    /// Appends the arc (y, y').
    pub fn extend_right(&self, y2: VertexId) -> Self {
        Tuple { x: self.x, a: self.a, b: self.y, y: y2 }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}, {} {})", self.x, self.a, self.b, self.y)
    }
}

/// Number of represented paths per level.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct CenterArray(Vec<Count>);

impl CenterArray {
    pub fn zeros(levels: usize) -> Self {
        CenterArray(vec![0; levels])
    }

    pub fn unit(levels: usize, level: usize, count: Count) -> Self {
        let mut c = Self::zeros(levels);
        c.0[level] = count;
        c
    }

    pub fn from_vec(v: Vec<Count>) -> Self {
        CenterArray(v)
    }

    pub fn as_slice(&self) -> &[Count] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn get(&self, level: usize) -> Count {
        self.0[level]
    }

    pub fn set(&mut self, level: usize, value: Count) {
        self.0[level] = value;
    }

    pub fn total(&self) -> Result<Count, Fault> {
        self.0.iter().try_fold(0u128, |acc, &c| acc.checked_add(c).ok_or(Fault::CountOverflow))
    }

    /// Levels with a nonzero entry.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i)
    }

    pub fn add(&mut self, other: &CenterArray) -> Result<(), Fault> {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.checked_add(*b).ok_or(Fault::CountOverflow)?;
        }
        Ok(())
    }

    pub fn sub(&mut self, other: &CenterArray) -> Result<(), Fault> {
        if self.0.iter().zip(&other.0).any(|(a, b)| a < b) {
            return Err(Fault::Inconsistent(format!("center array {:?} minus {:?} underflows", self.0, other.0)));
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
        Ok(())
    }
}

impl fmt::Display for CenterArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Count::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Lexicographic (wt, x, y) heap key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleKey<W> {
    pub wt: W,
    pub x: VertexId,
    pub y: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple<W> {
    pub tuple: Tuple,
    pub wt: W,
    pub count: Count,
    pub beta: bool,
    pub centers: CenterArray,
    pub update_num: u64,
    pub num_v_paths: Count,
}

impl<W: EdgeWeight> Triple<W> {
    pub fn key(&self) -> TripleKey<W> {
        TripleKey { wt: self.wt, x: self.tuple.x, y: self.tuple.y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeReport {
    Inserted,
    Merged,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemovalReport {
    /// The triple itself is gone.
    pub removed: bool,
    /// No triple with this tuple remains at any weight.
    pub tuple_gone: bool,
}

type SlotKey<W> = (W, VertexId, VertexId);

#[derive(Clone, Debug)]
struct PairSlot<W> {
    triples: BTreeMap<SlotKey<W>, Triple<W>>,
    // (wt, beta, a, b): beta = 0 sorts first at equal weight.
    order: BTreeSet<(W, bool, VertexId, VertexId)>,
}

impl<W> Default for PairSlot<W> {
    fn default() -> Self {
        PairSlot { triples: BTreeMap::new(), order: BTreeSet::new() }
    }
}

/// RN(x,y,wt): last-arc tails b, LN(x,y,wt): first-arc heads a, over the
/// triples of P(x,y) of weight wt. Each member keeps its witness count.
#[derive(Clone, Debug, Default)]
pub struct HistoricalExtensionSets<W> {
    last_tails: HashMap<(VertexId, VertexId, W), BTreeMap<VertexId, u32>>,
    first_heads: HashMap<(VertexId, VertexId, W), BTreeMap<VertexId, u32>>,
}

fn bump<K: std::hash::Hash + Eq>(m: &mut HashMap<K, BTreeMap<VertexId, u32>>, key: K, v: VertexId) {
    *m.entry(key).or_default().entry(v).or_insert(0) += 1;
}

fn drop_one<K: std::hash::Hash + Eq>(m: &mut HashMap<K, BTreeMap<VertexId, u32>>, key: K, v: VertexId) {
    if let Some(set) = m.get_mut(&key) {
        if let Some(c) = set.get_mut(&v) {
            *c -= 1;
            if *c == 0 {
                set.remove(&v);
            }
        }
        if set.is_empty() {
            m.remove(&key);
        }
    }
}

impl<W: EdgeWeight> HistoricalExtensionSets<W> {
    fn add(&mut self, t: &Tuple, wt: W) {
        bump(&mut self.last_tails, (t.x, t.y, wt), t.b);
        bump(&mut self.first_heads, (t.x, t.y, wt), t.a);
    }

    fn remove(&mut self, t: &Tuple, wt: W) {
        drop_one(&mut self.last_tails, (t.x, t.y, wt), t.b);
        drop_one(&mut self.first_heads, (t.x, t.y, wt), t.a);
    }

    pub fn last_tails(&self, x: VertexId, y: VertexId, wt: W) -> Vec<VertexId> {
        self.last_tails.get(&(x, y, wt)).map(|s| s.keys().copied().collect()).unwrap_or_default()
    }

    pub fn first_heads(&self, x: VertexId, y: VertexId, wt: W) -> Vec<VertexId> {
        self.first_heads.get(&(x, y, wt)).map(|s| s.keys().copied().collect()).unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.last_tails.values().map(BTreeMap::len).sum::<usize>() + self.first_heads.values().map(BTreeMap::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.last_tails.is_empty() && self.first_heads.is_empty()
    }
}

/// P(x,y) for every pair, with the extension sets L and R and RN/LN.
#[derive(Clone, Debug)]
pub struct TupleStore<W> {
    n: usize,
    slots: Vec<PairSlot<W>>,
    weights_per_tuple: HashMap<Tuple, u32>,
    // L(x, by) keyed (x, b, y); R(xa, y) keyed (x, a, y).
    left: HashMap<(VertexId, VertexId, VertexId), BTreeSet<VertexId>>,
    right: HashMap<(VertexId, VertexId, VertexId), BTreeSet<VertexId>>,
    he: HistoricalExtensionSets<W>,
}

impl<W: EdgeWeight> TupleStore<W> {
    pub fn new(n: usize) -> Self {
        TupleStore {
            n,
            slots: (0..n * n).map(|_| PairSlot::default()).collect(),
            weights_per_tuple: HashMap::new(),
            left: HashMap::new(),
            right: HashMap::new(),
            he: HistoricalExtensionSets::default(),
        }
    }

    fn slot(&self, x: VertexId, y: VertexId) -> &PairSlot<W> {
        &self.slots[x.index() * self.n + y.index()]
    }

    fn slot_mut(&mut self, x: VertexId, y: VertexId) -> &mut PairSlot<W> {
        &mut self.slots[x.index() * self.n + y.index()]
    }

    pub fn get(&self, t: &Tuple, wt: W) -> Option<&Triple<W>> {
        self.slot(t.x, t.y).triples.get(&(wt, t.a, t.b))
    }

    pub fn contains_tuple(&self, t: &Tuple) -> bool {
        self.weights_per_tuple.contains_key(t)
    }

    /// Triples of P(x,y) in (wt, a, b) order.
    pub fn pair(&self, x: VertexId, y: VertexId) -> impl Iterator<Item = &Triple<W>> {
        self.slot(x, y).triples.values()
    }

    pub fn pair_is_empty(&self, x: VertexId, y: VertexId) -> bool {
        self.slot(x, y).triples.is_empty()
    }

    /// The least (wt, beta, a, b) triple of P(x,y).
    pub fn min_triple(&self, x: VertexId, y: VertexId) -> Option<&Triple<W>> {
        let slot = self.slot(x, y);
        slot.order.first().map(|&(wt, _, a, b)| &slot.triples[&(wt, a, b)])
    }

    /// Triples of P(x,y) keyed [wt, beta].
    pub fn with_key(&self, x: VertexId, y: VertexId, wt: W, beta: bool) -> Vec<Tuple> {
        let lo = (wt, beta, VertexId(0), VertexId(0));
        let hi = (wt, beta, VertexId(u32::MAX), VertexId(u32::MAX));
        self.slot(x, y).order.range(lo..=hi).map(|&(_, _, a, b)| Tuple { x, a, b, y }).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple<W>> {
        self.slots.iter().flat_map(|s| s.triples.values())
    }

    pub fn len(&self) -> usize {
        self.slots.iter().map(|s| s.triples.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// L(x, by).
    pub fn left_ext(&self, x: VertexId, b: VertexId, y: VertexId) -> Vec<VertexId> {
        self.left.get(&(x, b, y)).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    /// R(xa, y).
    pub fn right_ext(&self, x: VertexId, a: VertexId, y: VertexId) -> Vec<VertexId> {
        self.right.get(&(x, a, y)).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn historical(&self) -> &HistoricalExtensionSets<W> {
        &self.he
    }

    /// Size of all extension sets, L and R combined.
    pub fn extension_len(&self) -> usize {
        self.left.values().map(BTreeSet::len).sum::<usize>() + self.right.values().map(BTreeSet::len).sum::<usize>()
    }

    fn link_tuple(&mut self, t: &Tuple) {
        let c = self.weights_per_tuple.entry(*t).or_insert(0);
        *c += 1;
        if *c == 1 {
            self.left.entry((t.a, t.b, t.y)).or_default().insert(t.x);
            self.right.entry((t.x, t.a, t.b)).or_default().insert(t.y);
        }
    }

    fn unlink_tuple(&mut self, t: &Tuple) -> bool {
        let c = self.weights_per_tuple.get_mut(t).expect("tuple index out of sync");
        *c -= 1;
        if *c > 0 {
            return false;
        }
        self.weights_per_tuple.remove(t);
        for (map, key, v) in [(&mut self.left, (t.a, t.b, t.y), t.x), (&mut self.right, (t.x, t.a, t.b), t.y)] {
            if let Some(set) = map.get_mut(&key) {
                set.remove(&v);
                if set.is_empty() {
                    map.remove(&key);
                }
            }
        }
        true
    }

    /// Inserts `triple`, or adds its count and centers to the resident one.
    /// A merged triple keeps its beta bit; callers reset it as needed.
    pub fn insert_or_merge(&mut self, triple: Triple<W>) -> Result<MergeReport, Fault> {
        let t = triple.tuple;
        let slot = self.slot_mut(t.x, t.y);
        if let Some(res) = slot.triples.get_mut(&(triple.wt, t.a, t.b)) {
            res.count = res.count.checked_add(triple.count).ok_or(Fault::CountOverflow)?;
            res.centers.add(&triple.centers)?;
            res.update_num = triple.update_num;
            return Ok(MergeReport::Merged);
        }
        slot.order.insert((triple.wt, triple.beta, t.a, t.b));
        slot.triples.insert((triple.wt, t.a, t.b), triple.clone());
        self.link_tuple(&t);
        self.he.add(&t, triple.wt);
        Ok(MergeReport::Inserted)
    }

    /// Removes `delta_count` paths distributed as `delta_centers`.
    pub fn decrement(
        &mut self,
        t: &Tuple,
        wt: W,
        delta_count: Count,
        delta_centers: &CenterArray,
    ) -> Result<RemovalReport, Fault> {
        let slot = self.slot_mut(t.x, t.y);
        let res = slot
            .triples
            .get_mut(&(wt, t.a, t.b))
            .ok_or_else(|| Fault::Inconsistent(format!("decrement of missing triple {t} wt {wt}")))?;
        if res.count < delta_count {
            return Err(Fault::Inconsistent(format!(
                "decrement of {t} wt {wt} by {delta_count} below its count {}",
                res.count
            )));
        }
        res.centers.sub(delta_centers)?;
        res.count -= delta_count;
        if res.count > 0 {
            return Ok(RemovalReport { removed: false, tuple_gone: false });
        }
        if !res.centers.is_empty() {
            return Err(Fault::Inconsistent(format!("{t} wt {wt} emptied with centers {}", res.centers)));
        }
        let beta = res.beta;
        slot.triples.remove(&(wt, t.a, t.b));
        slot.order.remove(&(wt, beta, t.a, t.b));
        self.he.remove(t, wt);
        let tuple_gone = self.unlink_tuple(t);
        Ok(RemovalReport { removed: true, tuple_gone })
    }

    pub fn set_beta(&mut self, t: &Tuple, wt: W, bit: bool) {
        let slot = self.slot_mut(t.x, t.y);
        if let Some(res) = slot.triples.get_mut(&(wt, t.a, t.b)) {
            if res.beta != bit {
                slot.order.remove(&(wt, res.beta, t.a, t.b));
                res.beta = bit;
                slot.order.insert((wt, bit, t.a, t.b));
            }
        }
    }
}
