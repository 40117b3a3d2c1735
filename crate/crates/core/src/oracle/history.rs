//! Graph-version history for one epoch and the level graphs derived from it.

use std::collections::BTreeMap;

use super::{for_each_lsp, path_key, Census};
use crate::graph::{Graph, VertexId};
use crate::weight::EdgeWeight;

/// Per-level census of shortest paths, keyed by level index.
pub type LevelCensus<W> = BTreeMap<usize, Census<W>>;

/// Every graph version of the current epoch, starting from the empty graph.
///
/// Step `s` is the `s`-th update of the epoch (the first `n` of which are the
/// build inserts); `versions[s]` is the graph right after it.
#[derive(Clone, Debug)]
pub struct History<W> {
    versions: Vec<Graph<W>>,
    updated: Vec<VertexId>,
}

impl<W: EdgeWeight> History<W> {
    pub fn new(n: usize) -> Self {
        History { versions: vec![Graph::new(n)], updated: Vec::new() }
    }

    /// Starts a new epoch whose build replays `g` one vertex at a time.
    pub fn rebuilt_from(g: &Graph<W>) -> Self {
        let mut h = History::new(g.n());
        let mut cur = Graph::new(g.n());
        for v in 0..g.n() {
            let v = VertexId::from(v);
            for (u, w) in g.out_arcs(v).filter(|(u, _)| *u < v) {
                cur.set_arc(v, u, Some(w)).unwrap();
            }
            for (u, w) in g.in_arcs(v).filter(|(u, _)| *u < v) {
                cur.set_arc(u, v, Some(w)).unwrap();
            }
            h.record(v, cur.clone());
        }
        h
    }

    pub fn record(&mut self, v: VertexId, after: Graph<W>) {
        self.updated.push(v);
        self.versions.push(after);
    }

    pub fn step(&self) -> u64 {
        self.updated.len() as u64
    }

    pub fn current(&self) -> &Graph<W> {
        self.versions.last().unwrap()
    }

    pub fn version(&self, s: u64) -> &Graph<W> {
        &self.versions[s as usize]
    }

    pub fn active_levels(&self) -> Vec<usize> {
        let t = self.step();
        (0..64).filter(|k| t >> k & 1 == 1).collect()
    }

    /// Step at which active level `k` was opened.
    pub fn level_time(&self, k: usize) -> Option<u64> {
        let t = self.step();
        (t >> k & 1 == 1).then(|| t >> k << k)
    }

    /// Last step (0 if none) at which each vertex was updated.
    pub fn last_update(&self) -> Vec<u64> {
        let mut last = vec![0; self.current().n()];
        for (i, v) in self.updated.iter().enumerate() {
            last[v.index()] = i as u64 + 1;
        }
        last
    }

    /// The level graph of level `k`: the version at its opening step, induced on
    /// the vertices not updated since.
    pub fn level_graph(&self, k: usize) -> Option<Graph<W>> {
        let time = self.level_time(k)?;
        let last = self.last_update();
        let base = self.version(time);
        let mut g = Graph::new(base.n());
        for (u, v, w) in base.arcs() {
            if last[u.index()] <= time && last[v.index()] <= time {
                g.set_arc(u, v, Some(w)).unwrap();
            }
        }
        Some(g)
    }

    /// Level of the oldest active level graph containing every vertex of `p`.
    pub fn path_level(&self, p: &[u32]) -> Option<usize> {
        let last = self.last_update();
        let newest = p.iter().map(|&v| last[v as usize]).max()?;
        self.active_levels()
            .into_iter()
            .filter_map(|k| self.level_time(k).map(|t| (t, k)))
            .filter(|&(t, _)| t >= newest)
            .min()
            .map(|(_, k)| k)
    }

    /// Shortest paths of each level graph whose own level is that level.
    pub fn centered_st_census(&self) -> LevelCensus<W> {
        self.centered_census(true)
    }

    /// Locally shortest paths of each level graph whose own level is that level.
    pub fn centered_lst_census(&self) -> LevelCensus<W> {
        self.centered_census(false)
    }

    fn centered_census(&self, shortest_only: bool) -> LevelCensus<W> {
        let mut out = LevelCensus::new();
        for k in self.active_levels() {
            let gk = self.level_graph(k).unwrap();
            let census = out.entry(k).or_default();
            for_each_lsp(&gk, shortest_only, &mut |p, wt| {
                if self.path_level(p) == Some(k) {
                    *census.entry(path_key(p, wt)).or_insert(0) += 1;
                }
            });
        }
        out
    }
}
