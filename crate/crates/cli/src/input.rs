use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use dynbc::gen::{erdos_renyi, planted_clusters, random_stream};
use dynbc::stream::parse_stream;
use dynbc::{UpdateEvent, WeightedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// Directed G(n, p).
    Er,
    /// Planted partition with dense blocks.
    Cluster,
}

/// Where the graph and the update stream come from.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Graph file: vertex count, then one "u v w" arc per line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Update stream file: one "update <v> | in: u:w,... | out: u:w,..." per line.
    #[arg(long)]
    pub updates: Option<PathBuf>,
    /// Random graph generator, used when --graph is absent.
    #[arg(long, value_enum, default_value = "er")]
    pub gen: Generator,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Arc probability for generated graphs and inserted vertices.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    /// Largest generated weight.
    #[arg(long, default_value_t = 8)]
    pub wmax: u64,
    /// Blocks of the cluster generator.
    #[arg(long, default_value_t = 4)]
    pub groups: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Generated updates, used when --updates is absent.
    #[arg(long, default_value_t = 60)]
    pub count: usize,
    /// Force an epoch reset right after this many updates; repeatable.
    #[arg(long)]
    pub force_reset_at: Vec<usize>,
}

pub struct Instance {
    pub graph: WeightedGraph,
    pub events: Vec<UpdateEvent<u64>>,
}

impl Input {
    pub fn load(&self) -> Result<Instance> {
        if !(0.0..=1.0).contains(&self.p) {
            bail!("--p must lie in [0, 1]");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let graph = match &self.graph {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                WeightedGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => match self.gen {
                Generator::Er => erdos_renyi(&mut rng, self.n, self.p, self.wmax),
                Generator::Cluster => planted_clusters(&mut rng, self.n, self.groups, self.p, self.wmax),
            },
        };
        let events = match &self.updates {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_stream(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None if self.graph.is_some() => Vec::new(),
            None if graph.n() == 0 => Vec::new(),
            None => random_stream(&mut rng, &graph, self.count, self.p, self.wmax),
        };
        Ok(Instance { graph, events })
    }

    pub fn reset_after(&self, done: usize) -> bool {
        self.force_reset_at.contains(&done)
    }
}
