//! Brute-force reference implementations.
//!
//! Nothing here touches the engine's data structures; tests compare the two.

mod history;

pub use history::{History, LevelCensus};

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{Graph, VertexId};
use crate::weight::{EdgeWeight, Weight};

/// Grouped path census keyed by (x, a, b, y, weight), where (x, a) is the
/// first arc and (b, y) the last. A single arc (u, v) is keyed (u, v, u, v).
pub type Census<W> = BTreeMap<(u32, u32, u32, u32, W), u128>;

/// Largest graph accepted by the exhaustive enumerators.
pub const ENUMERATION_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub dist: Vec<Vec<Weight<W>>>,
    pub sigma: Vec<Vec<BigUint>>,
}

pub fn dijkstra_count<W: EdgeWeight>(g: &Graph<W>, s: VertexId) -> (Vec<Weight<W>>, Vec<BigUint>) {
    let n = g.n();
    let mut dist = vec![Weight::Infinite; n];
    let mut sigma = vec![BigUint::zero(); n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s.index()] = Weight::Finite(W::zero());
    sigma[s.index()] = BigUint::one();
    heap.push(Reverse((W::zero(), s.0)));
    while let Some(Reverse((d, u))) = heap.pop() {
        let ui = u as usize;
        if done[ui] {
            continue;
        }
        done[ui] = true;
        for (v, w) in g.out_arcs(VertexId(u)) {
            let nd = d.checked_add(&w).expect("path length overflow");
            let vi = v.index();
            match Weight::Finite(nd).cmp(&dist[vi]) {
                std::cmp::Ordering::Less => {
                    dist[vi] = Weight::Finite(nd);
                    sigma[vi] = sigma[ui].clone();
                    heap.push(Reverse((nd, v.0)));
                }
                std::cmp::Ordering::Equal => {
                    let add = sigma[ui].clone();
                    sigma[vi] += add;
                }
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    (dist, sigma)
}

pub fn all_pairs<W: EdgeWeight>(g: &Graph<W>) -> OracleResult<W> {
    let (dist, sigma) = (0..g.n()).map(|s| dijkstra_count(g, VertexId::from(s))).unzip();
    OracleResult { dist, sigma }
}

/// Arcs (t, u) with d(s,t) + w(t,u) = d(s,u).
pub fn sp_dag<W: EdgeWeight>(g: &Graph<W>, s: VertexId) -> BTreeSet<(VertexId, VertexId)> {
    let (dist, _) = dijkstra_count(g, s);
    g.arcs()
        .filter(|&(t, u, w)| {
            dist[t.index()].is_finite() && dist[t.index()].checked_add(Weight::Finite(w)) == Some(dist[u.index()])
        })
        .map(|(t, u, _)| (t, u))
        .collect()
}

/// Maximum number of SP-dag arcs over all sources.
pub fn nu_star<W: EdgeWeight>(g: &Graph<W>) -> usize {
    (0..g.n()).map(|s| sp_dag(g, VertexId::from(s)).len()).max().unwrap_or(0)
}

pub fn brandes_bc<W: EdgeWeight>(g: &Graph<W>) -> Vec<BigRational> {
    let n = g.n();
    let mut bc = vec![BigRational::zero(); n];
    for s in 0..n {
        let (dist, sigma) = dijkstra_count(g, VertexId::from(s));
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v].is_finite()).collect();
        order.sort_by_key(|&v| dist[v]);
        let mut delta = vec![BigRational::zero(); n];
        for &w in order.iter().rev() {
            for (v, wt) in g.in_arcs(VertexId::from(w)) {
                let vi = v.index();
                if dist[vi].is_finite() && dist[vi].checked_add(Weight::Finite(wt)) == Some(dist[w]) {
                    let share = BigRational::new(sigma[vi].clone().into(), sigma[w].clone().into());
                    let contrib = share * (BigRational::one() + &delta[w]);
                    delta[vi] += contrib;
                }
            }
            if w != s {
                bc[w] += &delta[w];
            }
        }
    }
    bc
}

/// BC(v) as the double sum of σ_st(v)/σ_st over s ≠ v ≠ t.
pub fn direct_bc<W: EdgeWeight>(g: &Graph<W>) -> Vec<BigRational> {
    let r = all_pairs(g);
    let n = g.n();
    let mut bc = vec![BigRational::zero(); n];
    for (v, score) in bc.iter_mut().enumerate() {
        for s in 0..n {
            for t in 0..n {
                if s == v || t == v || s == t || r.sigma[s][t].is_zero() {
                    continue;
                }
                let through = r.dist[s][v].checked_add(r.dist[v][t]);
                if r.dist[s][v].is_finite() && through == Some(r.dist[s][t]) {
                    let num = &r.sigma[s][v] * &r.sigma[v][t];
                    *score += BigRational::new(num.into(), r.sigma[s][t].clone().into());
                }
            }
        }
    }
    bc
}

/// Visits every simple path whose two maximal proper subpaths are shortest
/// paths, with its length. With `shortest_only`, visits only shortest ones.
pub fn for_each_lsp<W: EdgeWeight>(g: &Graph<W>, shortest_only: bool, f: &mut dyn FnMut(&[u32], W)) {
    assert!(g.n() <= ENUMERATION_LIMIT, "instance too large for exhaustive enumeration");
    let r = all_pairs(g);
    struct Walk<'a, W> {
        g: &'a Graph<W>,
        dist: &'a [Vec<Weight<W>>],
        shortest_only: bool,
    }
    impl<W: EdgeWeight> Walk<'_, W> {
        // Only shortest prefixes are extended: an LSP's prefix is shortest.
        fn go(&self, path: &mut Vec<u32>, len: W, f: &mut dyn FnMut(&[u32], W)) {
            let last = *path.last().unwrap();
            for (next, w) in self.g.out_arcs(VertexId(last)) {
                if path.contains(&next.0) {
                    continue;
                }
                let total = len + w;
                let suffix_ok = path.len() == 1 || {
                    let head = self.g.arc_weight(VertexId(path[0]), VertexId(path[1])).finite().unwrap();
                    self.dist[path[1] as usize][next.index()] == Weight::Finite(total - head)
                };
                let is_sp = self.dist[path[0] as usize][next.index()] == Weight::Finite(total);
                path.push(next.0);
                if suffix_ok && (is_sp || !self.shortest_only) {
                    f(path, total);
                }
                if is_sp {
                    self.go(path, total, f);
                }
                path.pop();
            }
        }
    }
    let walk = Walk { g, dist: &r.dist, shortest_only };
    for x in 0..g.n() as u32 {
        walk.go(&mut vec![x], W::zero(), f);
    }
}

pub fn path_key<W: EdgeWeight>(p: &[u32], wt: W) -> (u32, u32, u32, u32, W) {
    let m = p.len() - 1;
    (p[0], p[1], p[m - 1], p[m], wt)
}

fn enumerate<W: EdgeWeight>(g: &Graph<W>, shortest_only: bool) -> Census<W> {
    let mut census = Census::new();
    for_each_lsp(g, shortest_only, &mut |p, wt| *census.entry(path_key(p, wt)).or_insert(0) += 1);
    census
}

pub fn enumerate_lsps<W: EdgeWeight>(g: &Graph<W>) -> Census<W> {
    enumerate(g, false)
}

pub fn enumerate_sps<W: EdgeWeight>(g: &Graph<W>) -> Census<W> {
    enumerate(g, true)
}
