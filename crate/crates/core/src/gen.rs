//! Seeded random graphs and update streams.

use rand::Rng;

use crate::graph::{Graph, UpdateEvent, VertexId};
use crate::weight::EdgeWeight;

fn weight<W: EdgeWeight, R: Rng>(rng: &mut R, wmax: u64) -> W {
    W::from(rng.gen_range(1..=wmax.max(1))).expect("weight out of range")
}

/// Directed G(n, p) with weights uniform in 1..=wmax.
pub fn erdos_renyi<W: EdgeWeight, R: Rng>(rng: &mut R, n: usize, p: f64, wmax: u64) -> Graph<W> {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.set_arc(VertexId::from(u), VertexId::from(v), Some(weight(rng, wmax))).unwrap();
            }
        }
    }
    g
}

/// Planted partition: `groups` blocks, arc probability `p` inside a block and
/// `p / 8` across blocks.
pub fn planted_clusters<W: EdgeWeight, R: Rng>(rng: &mut R, n: usize, groups: usize, p: f64, wmax: u64) -> Graph<W> {
    let groups = groups.max(1);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in 0..n {
            let q = if u % groups == v % groups { p } else { p / 8.0 };
            if u != v && rng.gen_bool(q) {
                g.set_arc(VertexId::from(u), VertexId::from(v), Some(weight(rng, wmax))).unwrap();
            }
        }
    }
    g
}

/// A deletion, a fresh random insertion, or a reweighting of the current
/// arcs of a random vertex, with equal odds.
pub fn random_event<W: EdgeWeight, R: Rng>(rng: &mut R, g: &Graph<W>, p: f64, wmax: u64) -> UpdateEvent<W> {
    let n = g.n();
    let v = VertexId::from(rng.gen_range(0..n));
    match rng.gen_range(0..3) {
        0 => UpdateEvent::delete(v),
        1 => {
            let others: Vec<VertexId> = (0..n).map(VertexId::from).filter(|&u| u != v).collect();
            let pick = |rng: &mut R| {
                let mut side = Vec::new();
                for &u in &others {
                    if rng.gen_bool(p) {
                        side.push((u, weight(rng, wmax)));
                    }
                }
                side
            };
            let ins = pick(rng);
            let outs = pick(rng);
            UpdateEvent::new(v, ins, outs)
        }
        _ => {
            let ins: Vec<_> = g.in_arcs(v).map(|(u, _)| u).collect();
            let outs: Vec<_> = g.out_arcs(v).map(|(u, _)| u).collect();
            UpdateEvent::new(
                v,
                ins.into_iter().map(|u| (u, weight(rng, wmax))).collect::<Vec<_>>(),
                outs.into_iter().map(|u| (u, weight(rng, wmax))).collect::<Vec<_>>(),
            )
        }
    }
}

/// `len` events, each drawn against the graph produced by its predecessors.
pub fn random_stream<W: EdgeWeight, R: Rng>(
    rng: &mut R,
    g: &Graph<W>,
    len: usize,
    p: f64,
    wmax: u64,
) -> Vec<UpdateEvent<W>> {
    let mut cur = g.clone();
    (0..len)
        .map(|_| {
            let e = random_event(rng, &cur, p, wmax);
            cur.apply(&e).unwrap();
            e
        })
        .collect()
}
