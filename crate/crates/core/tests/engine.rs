mod common;

use std::collections::BTreeMap;

use common::*;
use dynbc::engine::extract_min_key_set;
use dynbc::tuple::TripleKey;
use dynbc::{Apasp, Fault, Graph, GraphError, Tuple, UpdateEvent, Weight};

/// The four-vertex diamond with a direct long arc, on ids 1..=4 (0 isolated).
fn g1() -> Graph<u64> {
    Graph::from_arcs(5, [(1, 2, 1), (2, 4, 1), (1, 3, 1), (3, 4, 1), (1, 4, 3)]).unwrap()
}

fn tup(x: u32, a: u32, b: u32, y: u32) -> Tuple {
    Tuple { x: v(x), a: v(a), b: v(b), y: v(y) }
}

fn weights_of(e: &Apasp) -> Vec<(Weight<u64>, u128)> {
    let n = e.n();
    (0..n * n)
        .map(|i| (e.distance(v((i / n) as u32), v((i % n) as u32)), e.sigma(v((i / n) as u32), v((i % n) as u32))))
        .collect()
}

#[test]
fn g1_build() {
    let e = Apasp::from_graph(&g1()).unwrap();
    assert_eq!(e.distance(v(1), v(4)), Weight::Finite(2));
    assert_eq!(e.sigma(v(1), v(4)), 2);
    let p14: Vec<_> = e.tuples().pair(v(1), v(4)).map(|t| (t.tuple, t.wt, t.count)).collect();
    assert_eq!(p14.len(), 3);
    assert!(p14.contains(&(tup(1, 4, 1, 4), 3, 1)));
    assert_eq!(e.tuples().historical().last_tails(v(1), v(4), 2), vec![v(2), v(3)]);
    assert_eq!(e.tuples().historical().last_tails(v(1), v(4), 3), vec![v(1)]);
    compare_invariants(&e).unwrap();
    compare_lsp_census(&e).unwrap();
}

#[test]
fn g1_delete_vertex_2() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    e.update(&UpdateEvent::delete(v(2))).unwrap();
    assert_eq!(e.distance(v(1), v(4)), Weight::Finite(2));
    assert_eq!(e.sigma(v(1), v(4)), 1);
    let shortest: Vec<_> =
        e.shortest().pair(v(1), v(4)).filter(|(_, wt, _)| *wt == 2).map(|(t, _, c)| (t, c.total().unwrap())).collect();
    assert_eq!(shortest, vec![(tup(1, 3, 3, 4), 1)]);
    assert!(e.tuples().get(&tup(1, 2, 2, 4), 2).is_none());
    assert_eq!(e.tuples().historical().last_tails(v(1), v(4), 2), vec![v(3)]);
    assert!(e.tuples().left_ext(v(2), v(2), v(4)).is_empty());
    compare_paths(&e).unwrap();
    compare_invariants(&e).unwrap();
}

#[test]
fn g1_reinsert_vertex_2() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    let back = e.graph().snapshot_event(v(2));
    e.update(&UpdateEvent::delete(v(2))).unwrap();
    e.update(&back).unwrap();
    assert_eq!(e.graph(), &g1());
    assert_eq!(e.sigma(v(1), v(4)), 2);
    for t in [tup(1, 2, 2, 4), tup(1, 3, 3, 4)] {
        assert_eq!(e.shortest().count(&t, 2), 1, "{t}");
        assert!(e.tuples().get(&t, 2).unwrap().beta);
    }
    compare_lsp_census(&e).unwrap();
}

#[test]
fn same_weights_update_changes_nothing() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    let before = weights_of(&e);
    let same = e.graph().snapshot_event(v(4));
    e.update(&same).unwrap();
    assert_eq!(weights_of(&e), before);
    compare_invariants(&e).unwrap();
}

#[test]
fn first_insertion_creates_only_its_arcs() {
    let mut e = Apasp::new(4);
    e.set_probe(true);
    let r = e.update(&UpdateEvent::new(v(1), [], [(v(2), 1), (v(3), 1)])).unwrap();
    let created: Vec<_> = r.creations.iter().map(|(t, wt, _)| (*t, *wt)).collect();
    assert_eq!(created, vec![(Tuple::arc(v(1), v(2)), 1), (Tuple::arc(v(1), v(3)), 1)]);
}

#[test]
fn deleting_an_isolated_vertex_keeps_every_path() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    let census = |e: &Apasp| e.tuples().iter().map(|t| (t.tuple, t.wt, t.count, t.beta)).collect::<Vec<_>>();
    let before = census(&e);
    e.update(&UpdateEvent::delete(v(0))).unwrap();
    assert_eq!(census(&e), before);
}

#[test]
fn queries_on_trivial_and_disconnected_pairs() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    assert_eq!((e.distance(v(3), v(3)), e.sigma(v(3), v(3))), (Weight::Finite(0), 1));
    assert_eq!((e.distance(v(4), v(1)), e.sigma(v(4), v(1))), (Weight::Infinite, 0));
    e.update(&UpdateEvent::delete(v(3))).unwrap();
    assert_eq!((e.distance(v(3), v(4)), e.sigma(v(3), v(4))), (Weight::Infinite, 0));
    assert_eq!(e.tuples().pair(v(3), v(4)).count(), 0);
}

#[test]
fn invalid_events_are_rejected_before_any_change() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    let dump = e.dump();
    let zero = UpdateEvent::new(v(2), [(v(1), 0)], []);
    assert!(matches!(e.update(&zero), Err(Fault::Graph(GraphError::ZeroWeight(..)))));
    let self_loop = UpdateEvent::new(v(2), [(v(2), 1)], []);
    assert!(e.update(&self_loop).is_err());
    assert_eq!(e.dump(), dump);
    assert_eq!(e.clock().step(), 5);
}

#[test]
fn dump_is_sorted_and_canonical() {
    let e = Apasp::from_graph(&g1()).unwrap();
    let d = e.dump();
    assert!(d.contains("1 2 2 4 2 1 1 centers="));
    assert!(d.contains("1 4 1 4 3 1 0 centers="));
    let keys: Vec<(u32, u32, u64, u32, u32)> = d
        .lines()
        .map(|l| {
            let f: Vec<u64> = l.split(' ').take(5).map(|s| s.parse().unwrap()).collect();
            (f[0] as u32, f[3] as u32, f[4], f[1] as u32, f[2] as u32)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(Apasp::from_graph(&g1()).unwrap().dump(), d);
}

#[test]
fn min_key_extraction_groups_equal_keys() {
    let key = |wt: u64, x: u32, y: u32| TripleKey { wt, x: v(x), y: v(y) };
    let mut heap: BTreeMap<TripleKey<u64>, Vec<&str>> = BTreeMap::new();
    heap.entry(key(3, 1, 4)).or_default().push("(1 4, 1 4)");
    heap.entry(key(2, 1, 4)).or_default().push("(1 2, 2 4)");
    heap.entry(key(2, 1, 4)).or_default().push("(1 3, 3 4)");
    heap.entry(key(2, 2, 4)).or_default().push("(2 4, 2 4)");
    assert_eq!(extract_min_key_set(&mut heap), Some((key(2, 1, 4), vec!["(1 2, 2 4)", "(1 3, 3 4)"])));
    assert_eq!(extract_min_key_set(&mut heap).unwrap().0, key(2, 2, 4));
    assert_eq!(extract_min_key_set(&mut heap).unwrap().1, vec!["(1 4, 1 4)"]);
    assert_eq!(extract_min_key_set(&mut heap), None);
}

#[test]
fn epoch_resets_automatically_and_preserves_state() {
    let mut r = rng(11);
    let g = dynbc::gen::erdos_renyi::<u64, _>(&mut r, 8, 0.3, 8);
    let mut e = Apasp::from_graph(&g).unwrap();
    let stream = dynbc::gen::random_stream(&mut r, &g, 20, 0.3, 8);
    let mut resets = 0;
    for ev in &stream {
        let at = e.clock().step();
        let rep = e.update(ev).unwrap();
        if rep.reset {
            resets += 1;
            assert_eq!(at, 16);
            assert_eq!(e.clock().step(), 9);
        }
        compare_paths(&e).unwrap();
        compare_invariants(&e).unwrap();
    }
    // The rebuild takes 8 of the 16 steps, so 20 updates wrap twice.
    assert_eq!(resets, 2);
    assert_eq!(e.resets(), 2);
}

#[test]
fn forced_reset_preserves_state() {
    let mut r = rng(5);
    let g = dynbc::gen::erdos_renyi::<u64, _>(&mut r, 8, 0.3, 8);
    let mut e = Apasp::from_graph(&g).unwrap();
    for ev in dynbc::gen::random_stream(&mut r, &g, 5, 0.3, 8) {
        e.update(&ev).unwrap();
    }
    let before = weights_of(&e);
    let bc = dynbc::bc::betweenness::<_, dynbc::ExactScore>(&e);
    e.reset_epoch().unwrap();
    assert_eq!(weights_of(&e), before);
    assert_eq!(dynbc::bc::betweenness::<_, dynbc::ExactScore>(&e), bc);
    compare_invariants(&e).unwrap();

    let mut empty = Apasp::new(0);
    empty.reset_epoch().unwrap();
    assert_eq!(empty.tuples().len(), 0);
}

#[test]
fn injected_count_fault_is_detected() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    assert!(e.inject_count_fault(v(1), v(4)));
    assert!(compare_paths(&e).unwrap_err().contains("pair (1, 4)"));
    assert!(!e.check_invariants().is_empty());
}
