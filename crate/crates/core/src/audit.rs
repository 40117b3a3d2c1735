//! Cross-checks of a running engine against the brute-force oracle.
//!
//! Each check returns the first difference it finds as a readable message.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::bc::{betweenness, build_sp_dag};
use crate::engine::{DynamicApasp, UpdateReport};
use crate::graph::{Graph, UpdateEvent, VertexId};
use crate::oracle::{self, Census, History};
use crate::tuple::Tuple;
use crate::weight::{EdgeWeight, Weight};

/// Distances and path counts of every pair.
pub fn compare_paths<W: EdgeWeight>(e: &DynamicApasp<W>) -> Result<(), String> {
    let g = e.graph();
    let r = oracle::all_pairs(g);
    for x in 0..g.n() {
        for y in 0..g.n() {
            let (vx, vy) = (VertexId::from(x), VertexId::from(y));
            let d = e.distance(vx, vy);
            let s = BigUint::from(e.sigma(vx, vy));
            if d != r.dist[x][y] || s != r.sigma[x][y] {
                return Err(format!(
                    "pair ({x}, {y}): expected d={} sigma={}, got d={} sigma={}",
                    r.dist[x][y], r.sigma[x][y], d, s
                ));
            }
        }
    }
    Ok(())
}

/// Exact betweenness of every vertex.
pub fn compare_bc<W: EdgeWeight>(e: &DynamicApasp<W>) -> Result<(), String> {
    let expect = oracle::brandes_bc(e.graph());
    let got: Vec<BigRational> = betweenness(e);
    for (v, (x, y)) in expect.iter().zip(&got).enumerate() {
        if x != y {
            return Err(format!("bc of {v}: expected {x}, got {y}"));
        }
    }
    Ok(())
}

/// Edge sets of the shortest-path dag of every source.
pub fn compare_dags<W: EdgeWeight>(e: &DynamicApasp<W>) -> Result<(), String> {
    for s in 0..e.n() {
        let s = VertexId::from(s);
        let dag = build_sp_dag(e, s);
        let expect = oracle::sp_dag(e.graph(), s);
        if dag.edges != expect {
            return Err(format!("dag of {s}: expected {expect:?}, got {:?}", dag.edges));
        }
    }
    Ok(())
}

pub fn compare_invariants<W: EdgeWeight>(e: &DynamicApasp<W>) -> Result<(), String> {
    let v = e.check_invariants();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v.iter().take(5).map(ToString::to_string).collect::<Vec<_>>().join("; "))
    }
}

/// Locally shortest content of the tuple store against the enumeration.
pub fn compare_lsp_census<W: EdgeWeight>(e: &DynamicApasp<W>) -> Result<(), String> {
    let census = oracle::enumerate_lsps(e.graph());
    let g = e.graph();
    let r = oracle::all_pairs(g);
    let mut got = Census::new();
    for t in e.tuples().iter() {
        let tu = t.tuple;
        let first = g.arc_weight(tu.x, tu.a);
        let last = g.arc_weight(tu.b, tu.y);
        let (Weight::Finite(wf), Weight::Finite(wl)) = (first, last) else { continue };
        let is_lst = if tu.is_arc() {
            wf == t.wt
        } else {
            t.wt > wl
                && t.wt > wf
                && r.dist[tu.x.index()][tu.b.index()] == Weight::Finite(t.wt - wl)
                && r.dist[tu.a.index()][tu.y.index()] == Weight::Finite(t.wt - wf)
        };
        if is_lst {
            got.insert((tu.x.0, tu.a.0, tu.b.0, tu.y.0, t.wt), t.count);
        }
    }
    census_diff("locally shortest", None, &census, &got)
}

fn census_diff<W: EdgeWeight>(what: &str, k: Option<usize>, expect: &Census<W>, got: &Census<W>) -> Result<(), String> {
    if got == expect {
        return Ok(());
    }
    let missing: Vec<_> = expect.iter().filter(|(key, c)| got.get(key) != Some(c)).take(4).collect();
    let extra: Vec<_> = got.iter().filter(|(key, c)| expect.get(key) != Some(c)).take(4).collect();
    let at = k.map(|k| format!(" at level {k}")).unwrap_or_default();
    Err(format!("{what} census{at}: expected-but-differs {missing:?}; stored-but-differs {extra:?}"))
}

/// Shortest paths the engine keeps at level `k`, grouped like the oracle census.
pub fn shortest_at<W: EdgeWeight>(e: &DynamicApasp<W>, k: usize) -> Census<W> {
    let mut got = Census::new();
    for (&(x, y), m) in e.shortest().local(k).star_pairs() {
        for (&(a, b), &wt) in m {
            let t = Tuple { x, a, b, y };
            let c = e.shortest().get(&t, wt).map_or(0, |c| c.get(k));
            got.insert((x.0, a.0, b.0, y.0, wt), c);
        }
    }
    got
}

/// Per active level, the shortest paths stored there against those of the
/// level graph whose newest vertex belongs to that level.
pub fn compare_level_census<W: EdgeWeight>(e: &DynamicApasp<W>, h: &History<W>) -> Result<(), String> {
    for (k, expect) in h.centered_st_census() {
        census_diff("shortest", Some(k), &expect, &shortest_at(e, k))?;
    }
    Ok(())
}

/// Per active level, the locally shortest paths stored there.
pub fn compare_level_lst_census<W: EdgeWeight>(e: &DynamicApasp<W>, h: &History<W>) -> Result<(), String> {
    for (k, expect) in h.centered_lst_census() {
        let got: Census<W> = e
            .tuples()
            .iter()
            .filter(|t| t.centers.get(k) > 0)
            .map(|t| ((t.tuple.x.0, t.tuple.a.0, t.tuple.b.0, t.tuple.y.0, t.wt), t.centers.get(k)))
            .collect();
        census_diff("locally shortest", Some(k), &expect, &got)?;
    }
    Ok(())
}

/// Engine plus an independent record of every graph version of its epoch.
pub struct Tracked<W: EdgeWeight> {
    pub engine: DynamicApasp<W>,
    pub history: History<W>,
}

impl<W: EdgeWeight> Tracked<W> {
    pub fn new(g: &Graph<W>) -> Result<Self, String> {
        let engine = DynamicApasp::from_graph(g).map_err(|f| format!("build failed: {f}"))?;
        Ok(Tracked { engine, history: History::rebuilt_from(g) })
    }

    /// Applies `ev`, following any epoch reset in the history.
    pub fn try_update(&mut self, ev: &UpdateEvent<W>) -> Result<UpdateReport<W>, String> {
        let r = self.engine.update(ev).map_err(|f| format!("update of {} failed: {f}", ev.v))?;
        if r.reset {
            self.rebuild_history_before(ev.v);
        }
        self.history.record(ev.v, self.engine.graph().clone());
        Ok(r)
    }

    /// Forces an epoch reset and restarts the history to match.
    pub fn reset(&mut self) -> Result<(), String> {
        self.engine.reset_epoch().map_err(|f| format!("reset failed: {f}"))?;
        self.history = History::rebuilt_from(self.engine.graph());
        Ok(())
    }

    // The reset rebuilt the graph as it was before the update of `v`.
    fn rebuild_history_before(&mut self, v: VertexId) {
        let mut pre = self.engine.graph().clone();
        let undo = self.history.current().snapshot_event(v);
        pre.apply(&undo).expect("snapshot of a known vertex applies");
        self.history = History::rebuilt_from(&pre);
    }
}
