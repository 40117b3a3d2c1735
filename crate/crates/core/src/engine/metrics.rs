use std::fmt;

/// Work counters, per update or cumulative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub triples_touched: u64,
    pub triples_removed: u64,
    pub triple_pairs_created: u64,
    pub heap_ops: u64,
    pub he_lookups: u64,
}

impl Metrics {
    pub fn absorb(&mut self, o: &Metrics) {
        self.triples_touched += o.triples_touched;
        self.triples_removed += o.triples_removed;
        self.triple_pairs_created += o.triple_pairs_created;
        self.heap_ops += o.heap_ops;
        self.he_lookups += o.he_lookups;
    }

    pub const TSV_HEADER: &'static str = "triples_touched\ttriples_removed\ttriple_pairs_created\theap_ops\the_lookups";
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.triples_touched, self.triples_removed, self.triple_pairs_created, self.heap_ops, self.he_lookups
        )
    }
}
