//! Shortest-path dags and betweenness accumulation from the engine's stores.

use std::collections::BTreeSet;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::engine::DynamicApasp;
use crate::graph::VertexId;
use crate::weight::{EdgeWeight, Weight};

/// Arithmetic used to accumulate dependencies.
pub trait BcScalar: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn from_count(c: &BigUint) -> Self;
    /// Text form; `precision` applies to inexact scalars.
    fn render(&self, precision: usize) -> String;
}

impl BcScalar for BigRational {
    fn from_count(c: &BigUint) -> Self {
        BigRational::from_integer(c.clone().into())
    }

    fn render(&self, _precision: usize) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl BcScalar for f64 {
    fn from_count(c: &BigUint) -> Self {
        c.to_f64().unwrap_or(f64::INFINITY)
    }

    fn render(&self, precision: usize) -> String {
        format!("{self:.precision$}")
    }
}

/// Shortest-path dag of one source with path counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpDag {
    pub source: VertexId,
    pub edges: BTreeSet<(VertexId, VertexId)>,
    pub sigma: Vec<BigUint>,
    /// Reachable vertices by nondecreasing distance, source first.
    pub order: Vec<VertexId>,
}

/// Dag of `s`: candidate heads come from the right-extension sets
/// of every active level and are kept only if they pass the distance test.
pub fn build_sp_dag<W: EdgeWeight>(engine: &DynamicApasp<W>, s: VertexId) -> SpDag {
    let n = engine.n();
    let dist: Vec<Weight<W>> = (0..n).map(|u| engine.distance(s, VertexId::from(u))).collect();
    let levels = engine.clock().active_indices();
    let mut order: Vec<VertexId> = (0..n).map(VertexId::from).filter(|u| dist[u.index()].is_finite()).collect();
    order.sort_by_key(|u| (dist[u.index()], *u));
    let mut edges = BTreeSet::new();
    for &t in &order {
        let mut cands = BTreeSet::new();
        for &i in &levels {
            cands.extend(engine.shortest().local(i).shortest_right(s, t));
        }
        for u in cands {
            let w = engine.graph().arc_weight(t, u);
            if dist[t.index()].checked_add(w) == Some(dist[u.index()]) && w.is_finite() {
                edges.insert((t, u));
            }
        }
    }
    let mut sigma = vec![BigUint::zero(); n];
    sigma[s.index()] = BigUint::one();
    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(t, u) in &edges {
        preds[u.index()].push(t);
    }
    for &u in order.iter().skip(1) {
        let total = preds[u.index()].iter().fold(BigUint::zero(), |acc, t| acc + &sigma[t.index()]);
        sigma[u.index()] = total;
    }
    SpDag { source: s, edges, sigma, order }
}

/// Brandes-style dependency accumulation over one dag per source.
pub fn accumulate_bc<S: BcScalar>(n: usize, dags: &[SpDag]) -> Vec<S> {
    let mut bc = vec![S::zero(); n];
    for dag in dags {
        let mut succ: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &(t, u) in &dag.edges {
            succ[t.index()].push(u);
        }
        let mut delta = vec![S::zero(); n];
        for &v in dag.order.iter().rev() {
            let sv = S::from_count(&dag.sigma[v.index()]);
            let mut acc = S::zero();
            for &w in &succ[v.index()] {
                let share = sv.clone() / S::from_count(&dag.sigma[w.index()]);
                acc = acc + share * (S::one() + delta[w.index()].clone());
            }
            delta[v.index()] = acc;
            if v != dag.source {
                bc[v.index()] = bc[v.index()].clone() + delta[v.index()].clone();
            }
        }
    }
    bc
}

/// Betweenness of every vertex in the engine's current graph.
pub fn betweenness<W: EdgeWeight, S: BcScalar>(engine: &DynamicApasp<W>) -> Vec<S> {
    let dags: Vec<SpDag> = (0..engine.n()).map(|s| build_sp_dag(engine, VertexId::from(s))).collect();
    accumulate_bc(engine.n(), &dags)
}

/// One line per vertex, "v<TAB>score".
pub fn render_scores<S: BcScalar>(scores: &[S], precision: usize) -> String {
    scores.iter().enumerate().map(|(v, s)| format!("{v}\t{}\n", s.render(precision))).collect()
}
