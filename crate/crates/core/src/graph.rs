//! Weighted digraph with vertex-granular updates.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::weight::{EdgeWeight, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("zero weight on arc ({0}, {1})")]
    ZeroWeight(u32, u32),
    #[error("weight {2} on arc ({0}, {1}) exceeds the overflow-safe bound {3}")]
    WeightTooLarge(u32, u32, String, String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Replacement of every arc weight incident to `v`. Neighbours absent from a
/// map are at infinite distance, so an event with two empty maps deletes `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateEvent<W> {
    pub v: VertexId,
    pub in_weights: BTreeMap<VertexId, W>,
    pub out_weights: BTreeMap<VertexId, W>,
}

impl<W: EdgeWeight> UpdateEvent<W> {
    pub fn delete(v: VertexId) -> Self {
        UpdateEvent { v, in_weights: BTreeMap::new(), out_weights: BTreeMap::new() }
    }

    pub fn new(
        v: VertexId,
        ins: impl IntoIterator<Item = (VertexId, W)>,
        outs: impl IntoIterator<Item = (VertexId, W)>,
    ) -> Self {
        UpdateEvent { v, in_weights: ins.into_iter().collect(), out_weights: outs.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph<W> {
    out: Vec<BTreeMap<VertexId, W>>,
    inc: Vec<BTreeMap<VertexId, W>>,
}

impl<W: EdgeWeight> Graph<W> {
    pub fn new(n: usize) -> Self {
        Graph { out: vec![BTreeMap::new(); n], inc: vec![BTreeMap::new(); n] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (u32, u32, W)>) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v, w) in arcs {
            g.set_arc(VertexId(u), VertexId(v), Some(w))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    /// Largest admissible arc weight: any simple path sum stays representable.
    pub fn max_arc_weight(&self) -> W {
        let n = W::from(self.n().max(1)).unwrap_or_else(W::max_value);
        W::max_value() / n
    }

    pub fn arc_weight(&self, u: VertexId, v: VertexId) -> Weight<W> {
        if u == v {
            return Weight::Infinite;
        }
        self.out.get(u.index()).and_then(|m| m.get(&v)).copied().into()
    }

    pub fn out_arcs(&self, u: VertexId) -> impl Iterator<Item = (VertexId, W)> + '_ {
        self.out[u.index()].iter().map(|(&v, &w)| (v, w))
    }

    pub fn in_arcs(&self, v: VertexId) -> impl Iterator<Item = (VertexId, W)> + '_ {
        self.inc[v.index()].iter().map(|(&u, &w)| (u, w))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId, W)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, m)| m.iter().map(move |(&v, &w)| (VertexId::from(u), v, w)))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v.0, self.n()))
        }
    }

    fn check_arc(&self, u: VertexId, v: VertexId, w: W) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u.0));
        }
        if w.is_zero() {
            return Err(GraphError::ZeroWeight(u.0, v.0));
        }
        let bound = self.max_arc_weight();
        if w > bound {
            return Err(GraphError::WeightTooLarge(u.0, v.0, w.to_string(), bound.to_string()));
        }
        Ok(())
    }

    pub fn set_arc(&mut self, u: VertexId, v: VertexId, w: Option<W>) -> Result<(), GraphError> {
        match w {
            Some(w) => {
                self.check_arc(u, v, w)?;
                self.out[u.index()].insert(v, w);
                self.inc[v.index()].insert(u, w);
            }
            None => {
                self.check_vertex(u)?;
                self.check_vertex(v)?;
                self.out[u.index()].remove(&v);
                self.inc[v.index()].remove(&u);
            }
        }
        Ok(())
    }

    /// Rejects events that would produce an invalid graph, without mutating.
    pub fn validate_event(&self, e: &UpdateEvent<W>) -> Result<(), GraphError> {
        self.check_vertex(e.v)?;
        for (&u, &w) in &e.in_weights {
            self.check_arc(u, e.v, w)?;
        }
        for (&u, &w) in &e.out_weights {
            self.check_arc(e.v, u, w)?;
        }
        Ok(())
    }

    /// Assigns the event's weights to every arc incident to `e.v`.
    pub fn apply(&mut self, e: &UpdateEvent<W>) -> Result<(), GraphError> {
        self.validate_event(e)?;
        let v = e.v;
        for u in std::mem::take(&mut self.inc[v.index()]).into_keys() {
            self.out[u.index()].remove(&v);
        }
        for u in std::mem::take(&mut self.out[v.index()]).into_keys() {
            self.inc[u.index()].remove(&v);
        }
        for (&u, &w) in &e.in_weights {
            self.out[u.index()].insert(v, w);
            self.inc[v.index()].insert(u, w);
        }
        for (&u, &w) in &e.out_weights {
            self.out[v.index()].insert(u, w);
            self.inc[u.index()].insert(v, w);
        }
        Ok(())
    }

    /// The event that restores `v`'s current arcs.
    pub fn snapshot_event(&self, v: VertexId) -> UpdateEvent<W> {
        UpdateEvent { v, in_weights: self.inc[v.index()].clone(), out_weights: self.out[v.index()].clone() }
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing vertex count".into() })?;
        let n: usize =
            first.parse().map_err(|_| GraphError::Parse { line: ln, msg: format!("bad vertex count {first:?}") })?;
        let mut g = Graph::new(n);
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(GraphError::Parse { line: ln, msg: "expected \"u v w\"".into() });
            }
            let bad = |what: &str| GraphError::Parse { line: ln, msg: format!("bad {what} {line:?}") };
            let u: u32 = fields[0].parse().map_err(|_| bad("source"))?;
            let v: u32 = fields[1].parse().map_err(|_| bad("target"))?;
            let w: W = fields[2].parse().map_err(|_| bad("weight"))?;
            g.set_arc(VertexId(u), VertexId(v), Some(w))
                .map_err(|e| GraphError::Parse { line: ln, msg: e.to_string() })?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v, w) in self.arcs() {
            s.push_str(&format!("{u} {v} {w}\n"));
        }
        s
    }
}
