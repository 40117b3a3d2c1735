mod common;

use std::collections::BTreeSet;

use common::*;
use dynbc::bc::{accumulate_bc, betweenness, build_sp_dag, render_scores};
use dynbc::{Apasp, ExactScore, Graph, UpdateEvent};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

fn g1() -> Graph<u64> {
    Graph::from_arcs(5, [(1, 2, 1), (2, 4, 1), (1, 3, 1), (3, 4, 1), (1, 4, 3)]).unwrap()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn edges(list: &[(u32, u32)]) -> BTreeSet<(dynbc::VertexId, dynbc::VertexId)> {
    list.iter().map(|&(a, b)| (v(a), v(b))).collect()
}

#[test]
fn g1_dag_excludes_the_long_arc() {
    let e = Apasp::from_graph(&g1()).unwrap();
    let dag = build_sp_dag(&e, v(1));
    assert_eq!(dag.edges, edges(&[(1, 2), (1, 3), (2, 4), (3, 4)]));
    assert_eq!(dag.sigma[4], BigUint::from(2u32));
    assert_eq!(dag.order[0], v(1));
}

#[test]
fn isolated_source_has_empty_dag() {
    let e = Apasp::from_graph(&g1()).unwrap();
    let dag = build_sp_dag(&e, v(0));
    assert!(dag.edges.is_empty());
    assert_eq!(dag.order, vec![v(0)]);
}

#[test]
fn g1_dag_after_deleting_vertex_2() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    e.update(&UpdateEvent::delete(v(2))).unwrap();
    assert_eq!(build_sp_dag(&e, v(1)).edges, edges(&[(1, 3), (3, 4)]));
}

#[test]
fn g1_scores() {
    let mut e = Apasp::from_graph(&g1()).unwrap();
    let bc: Vec<ExactScore> = betweenness(&e);
    let half = ratio(1, 2);
    assert_eq!(bc, vec![ratio(0, 1), ratio(0, 1), half.clone(), half, ratio(0, 1)]);
    e.update(&UpdateEvent::delete(v(2))).unwrap();
    let bc: Vec<ExactScore> = betweenness(&e);
    assert_eq!(bc, vec![ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1)]);
    assert_eq!(render_scores(&bc, 0), "0\t0/1\n1\t0/1\n2\t0/1\n3\t1/1\n4\t0/1\n");
}

#[test]
fn no_two_hop_paths_means_zero_scores() {
    let g = Graph::from_arcs(4, [(0, 1, 2), (2, 3, 1), (3, 2, 1)]).unwrap();
    let e = Apasp::from_graph(&g).unwrap();
    let bc: Vec<ExactScore> = betweenness(&e);
    assert!(bc.iter().all(|s| *s == ratio(0, 1)));
}

#[test]
fn decimal_scores_track_exact_ones() {
    let e = Apasp::from_graph(&g1()).unwrap();
    let exact: Vec<ExactScore> = betweenness(&e);
    let approx: Vec<f64> = betweenness(&e);
    assert_eq!(approx, vec![0.0, 0.0, 0.5, 0.5, 0.0]);
    assert_eq!(render_scores(&approx, 3), "0\t0.000\n1\t0.000\n2\t0.500\n3\t0.500\n4\t0.000\n");
    let back: Vec<ExactScore> = approx.iter().map(|&f| BigRational::from_float(f).unwrap()).collect();
    assert_eq!(back, exact);
}

#[test]
fn accumulation_over_no_dags_is_zero() {
    let bc: Vec<ExactScore> = accumulate_bc(3, &[]);
    assert_eq!(bc, vec![ratio(0, 1); 3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dags_and_scores_match_the_oracle(seed in any::<u64>(), n in 2usize..9, p in 0.1f64..0.7, wmax in 1u64..5, len in 0usize..12) {
        let mut r = rng(seed);
        let g = dynbc::gen::erdos_renyi::<u64, _>(&mut r, n, p, wmax);
        let mut e = Apasp::from_graph(&g).unwrap();
        for ev in dynbc::gen::random_stream(&mut r, &g, len, p, wmax) {
            e.update(&ev).unwrap();
        }
        prop_assert_eq!(compare_dags(&e), Ok(()));
        prop_assert_eq!(compare_bc(&e), Ok(()));
        for s in 0..n {
            let dag = build_sp_dag(&e, v(s as u32));
            for t in 0..n {
                if s != t && e.distance(v(s as u32), v(t as u32)).is_finite() {
                    prop_assert_eq!(dag.sigma[t].clone(), BigUint::from(e.sigma(v(s as u32), v(t as u32))));
                }
            }
        }
    }
}
