use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use dynbc::bc::{betweenness, render_scores};
use dynbc::{oracle, Apasp, DecimalScore, ExactScore, Metrics, VertexId};

use crate::BcMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Betweenness per vertex.
    Bc,
    /// Distance matrix.
    Dist,
    /// Shortest-path count matrix.
    Sigma,
    /// Per-update and cumulative work counters.
    Metrics,
    /// Every stored triple.
    Dump,
}

pub struct Emitter {
    emit: Emit,
    mode: BcMode,
    precision: usize,
}

impl Emitter {
    pub fn new(emit: Emit, mode: BcMode, precision: usize) -> Self {
        Emitter { emit, mode, precision }
    }

    pub fn emit(&self, out: &mut impl Write, e: &Apasp, done: usize) -> Result<()> {
        if self.emit == Emit::Metrics {
            if done == 0 {
                writeln!(out, "update\tcum_{}\ttriple_pairs", Metrics::TSV_HEADER.replace('\t', "\tcum_"))?;
            }
            writeln!(out, "{done}\t{}\t{}", e.metrics(), e.triple_pairs())?;
            return Ok(());
        }
        writeln!(out, "# after {done} updates")?;
        let verts = || (0..e.n()).map(VertexId::from);
        match self.emit {
            Emit::Bc => {
                let text = match self.mode {
                    BcMode::Rational => render_scores(&betweenness::<_, ExactScore>(e), self.precision),
                    BcMode::Decimal => render_scores(&betweenness::<_, DecimalScore>(e), self.precision),
                };
                out.write_all(text.as_bytes())?;
            }
            Emit::Dist => {
                for x in verts() {
                    let row: Vec<String> = verts().map(|y| e.distance(x, y).to_string()).collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
            Emit::Sigma => {
                for x in verts() {
                    let row: Vec<String> = verts().map(|y| e.sigma(x, y).to_string()).collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
            Emit::Dump => out.write_all(e.dump().as_bytes())?,
            Emit::Metrics => unreachable!(),
        }
        Ok(())
    }
}

fn diff(now: Metrics, before: Metrics) -> Metrics {
    Metrics {
        triples_touched: now.triples_touched - before.triples_touched,
        triples_removed: now.triples_removed - before.triples_removed,
        triple_pairs_created: now.triple_pairs_created - before.triple_pairs_created,
        heap_ops: now.heap_ops - before.heap_ops,
        he_lookups: now.he_lookups - before.he_lookups,
    }
}

/// Per-update counters with the dag density measured by the oracle.
///
/// `ratio` divides the update's touched triples by nu*^2 log2(2n)^2, so runs
/// of different sizes can be compared by their mean ratio.
pub struct Bench {
    every: usize,
    last: Metrics,
    nu: usize,
    updates: usize,
    touched: u64,
    nu_sum: usize,
    ratio_sum: f64,
}

impl Bench {
    pub const HEADER: &'static str = "update\tn\tm\ttriples_touched\ttriples_removed\ttriple_pairs_created\theap_ops\the_lookups\tcum_triples_touched\tcum_triples_removed\tcum_triple_pairs_created\tcum_heap_ops\tcum_he_lookups\ttriple_pairs\tnu_star\tratio";

    pub fn new(every: usize) -> Self {
        Bench {
            every: every.max(1),
            last: Metrics::default(),
            nu: 0,
            updates: 0,
            touched: 0,
            nu_sum: 0,
            ratio_sum: 0.0,
        }
    }

    pub fn row(&mut self, out: &mut impl Write, e: &Apasp, done: usize) -> Result<()> {
        let g = e.graph();
        if done.is_multiple_of(self.every) {
            self.nu = oracle::nu_star(g);
        }
        let cum = e.metrics();
        let step = diff(cum, self.last);
        self.last = cum;
        let log = ((2 * e.n().max(1)) as f64).log2();
        let nu = self.nu.max(1) as f64;
        let ratio = step.triples_touched as f64 / (nu * nu * log * log);
        if done > 0 {
            self.updates += 1;
            self.touched += step.triples_touched;
            self.nu_sum += self.nu;
            self.ratio_sum += ratio;
        }
        writeln!(
            out,
            "{done}\t{}\t{}\t{step}\t{cum}\t{}\t{}\t{ratio:.6}",
            e.n(),
            g.arc_count(),
            e.triple_pairs(),
            self.nu
        )?;
        Ok(())
    }

    pub fn summary(&self, out: &mut impl Write) -> Result<()> {
        let k = self.updates.max(1) as f64;
        writeln!(
            out,
            "# updates {}\tmean_triples_touched {:.3}\tmean_nu_star {:.3}\tmean_ratio {:.6}",
            self.updates,
            self.touched as f64 / k,
            self.nu_sum as f64 / k,
            self.ratio_sum / k
        )?;
        Ok(())
    }
}
