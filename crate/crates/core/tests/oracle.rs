mod common;

use std::collections::BTreeMap;

use common::*;
use dynbc::oracle::{self, History};
use dynbc::{Graph, VertexId, Weight};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Every simple path of `g` as (vertices, weight), by plain DFS.
fn simple_paths(g: &Graph<u64>) -> Vec<(Vec<u32>, u64)> {
    fn go(g: &Graph<u64>, path: &mut Vec<u32>, wt: u64, out: &mut Vec<(Vec<u32>, u64)>) {
        let last = *path.last().unwrap();
        for (u, w) in g.out_arcs(VertexId(last)) {
            if path.contains(&u.0) {
                continue;
            }
            path.push(u.0);
            out.push((path.clone(), wt + w));
            go(g, path, wt + w, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() as u32 {
        go(g, &mut vec![s], 0, &mut out);
    }
    out
}

/// Shortest weight and count per pair from the simple-path list.
fn brute_pairs(paths: &[(Vec<u32>, u64)]) -> BTreeMap<(u32, u32), (u64, u128)> {
    let mut best: BTreeMap<(u32, u32), (u64, u128)> = BTreeMap::new();
    for (p, wt) in paths {
        let key = (p[0], *p.last().unwrap());
        let e = best.entry(key).or_insert((*wt, 0));
        if *wt < e.0 {
            *e = (*wt, 0);
        }
        if *wt == e.0 {
            e.1 += 1;
        }
    }
    best
}

fn small_graph() -> impl Strategy<Value = Graph<u64>> {
    (1usize..8, any::<u64>(), 0.1f64..0.8, 1u64..4)
        .prop_map(|(n, seed, p, wmax)| dynbc::gen::erdos_renyi(&mut rng(seed), n, p, wmax))
}

#[test]
fn single_arc_census() {
    let g = Graph::<u64>::from_arcs(2, [(0, 1, 4)]).unwrap();
    let c = oracle::enumerate_lsps(&g);
    assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![((0, 1, 0, 1, 4), 1)]);
}

#[test]
fn unreachable_target() {
    let g = Graph::<u64>::from_arcs(3, [(0, 1, 2)]).unwrap();
    let (d, s) = oracle::dijkstra_count(&g, v(0));
    assert_eq!(d[2], Weight::Infinite);
    assert_eq!(s[2], BigUint::from(0u32));
}

#[test]
#[should_panic(expected = "too large")]
fn enumeration_refuses_large_instances() {
    oracle::enumerate_lsps(&Graph::<u64>::new(oracle::ENUMERATION_LIMIT + 1));
}

#[test]
fn inactive_level_has_no_graph() {
    let h = History::rebuilt_from(&Graph::<u64>::from_arcs(3, [(0, 1, 1)]).unwrap());
    assert_eq!(h.step(), 3);
    assert!(h.level_graph(1).is_some());
    assert!(h.level_graph(2).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dijkstra_matches_path_enumeration(g in small_graph()) {
        let brute = brute_pairs(&simple_paths(&g));
        for s in 0..g.n() {
            let (d, sigma) = oracle::dijkstra_count(&g, VertexId::from(s));
            for t in 0..g.n() {
                let expect = if s == t { Some((0, 1)) } else { brute.get(&(s as u32, t as u32)).copied() };
                match expect {
                    Some((wt, c)) => {
                        prop_assert_eq!(d[t], Weight::Finite(wt));
                        prop_assert_eq!(sigma[t].clone(), BigUint::from(c));
                    }
                    None => {
                        prop_assert_eq!(d[t], Weight::Infinite);
                        prop_assert_eq!(sigma[t].clone(), BigUint::from(0u32));
                    }
                }
            }
        }
    }

    #[test]
    fn lsp_census_matches_definition(g in small_graph()) {
        let paths = simple_paths(&g);
        let brute = brute_pairs(&paths);
        let dist = |a: u32, b: u32| brute.get(&(a, b)).map(|x| x.0);
        let mut expect = oracle::Census::new();
        let mut shortest = oracle::Census::new();
        for (p, wt) in &paths {
            let k = p.len();
            let first = g.arc_weight(VertexId(p[0]), VertexId(p[1])).finite().unwrap();
            let last = g.arc_weight(VertexId(p[k - 2]), VertexId(p[k - 1])).finite().unwrap();
            let locally = k == 2 || (dist(p[0], p[k - 2]) == Some(wt - last) && dist(p[1], p[k - 1]) == Some(wt - first));
            if locally {
                *expect.entry(oracle::path_key(p, *wt)).or_insert(0) += 1;
                if dist(p[0], p[k - 1]) == Some(*wt) {
                    *shortest.entry(oracle::path_key(p, *wt)).or_insert(0) += 1;
                }
            }
        }
        prop_assert_eq!(oracle::enumerate_lsps(&g), expect);
        prop_assert_eq!(oracle::enumerate_sps(&g), shortest);
    }

    #[test]
    fn brandes_matches_direct_sum(g in small_graph()) {
        prop_assert_eq!(oracle::brandes_bc(&g), oracle::direct_bc(&g));
    }

    #[test]
    fn level_graphs_shrink_with_age(seed in any::<u64>(), n in 2usize..7, len in 0usize..10) {
        let mut r = rng(seed);
        let g = dynbc::gen::erdos_renyi::<u64, _>(&mut r, n, 0.4, 3);
        let mut h = History::rebuilt_from(&g);
        let mut cur = g.clone();
        for ev in dynbc::gen::random_stream(&mut r, &g, len.min(n), 0.4, 3) {
            cur.apply(&ev).unwrap();
            h.record(ev.v, cur.clone());
        }
        let mut levels = h.active_levels();
        levels.sort_by_key(|&k| std::cmp::Reverse(h.level_time(k)));
        prop_assert_eq!(h.level_graph(levels[0]).unwrap(), cur);
        for w in levels.windows(2) {
            let newer = h.level_graph(w[0]).unwrap();
            let older = h.level_graph(w[1]).unwrap();
            for (a, b, wt) in older.arcs() {
                prop_assert_eq!(newer.arc_weight(a, b), Weight::Finite(wt));
            }
        }
    }
}
