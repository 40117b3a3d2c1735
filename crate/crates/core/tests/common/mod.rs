#![allow(dead_code, unused_imports)]

pub mod scenarios;

pub use dynbc::audit::{
    self, compare_bc, compare_dags, compare_invariants, compare_level_census, compare_level_lst_census,
    compare_lsp_census, compare_paths, shortest_at,
};
use dynbc::oracle::{self, History};
use dynbc::{Apasp, Graph, UpdateEvent, UpdateReport, VertexId, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(i: u32) -> VertexId {
    VertexId(i)
}

/// Engine plus history over 64-bit weights.
pub type Tracked = audit::Tracked<u64>;

/// Infallible stepping for tests.
pub trait Step {
    fn update(&mut self, ev: &UpdateEvent<u64>) -> UpdateReport<u64>;
}

impl Step for Tracked {
    fn update(&mut self, ev: &UpdateEvent<u64>) -> UpdateReport<u64> {
        self.try_update(ev).unwrap_or_else(|m| panic!("{m}"))
    }
}
