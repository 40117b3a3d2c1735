//! Full-scan structural invariant checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::DynamicApasp;
use crate::graph::VertexId;
use crate::level::PairStar;
use crate::tuple::Tuple;
use crate::weight::EdgeWeight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<W: EdgeWeight> DynamicApasp<W> {
    /// Scans every store and reports each broken structural invariant.
    pub fn check_invariants(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |s: String| out.push(Violation(s));
        let n = self.n();
        let clock = &self.clock;
        let t = clock.step();
        let active = clock.active_indices();
        let bits: Vec<usize> = (0..clock.slots()).filter(|k| t >> k & 1 == 1).collect();
        if active != bits {
            bad(format!("active levels {active:?} differ from the bits of t = {t}"));
        }
        for v in 0..n {
            let v = VertexId::from(v);
            if let Some(c) = clock.center(v) {
                if !clock.is_active(c) {
                    bad(format!("vertex {v} centered at inactive level {c}"));
                }
            }
        }

        let mut left: BTreeMap<(VertexId, VertexId, VertexId), BTreeSet<VertexId>> = BTreeMap::new();
        let mut right: BTreeMap<(VertexId, VertexId, VertexId), BTreeSet<VertexId>> = BTreeMap::new();
        let mut last_tails: BTreeMap<(VertexId, VertexId, W), BTreeSet<VertexId>> = BTreeMap::new();
        let mut first_heads: BTreeMap<(VertexId, VertexId, W), BTreeSet<VertexId>> = BTreeMap::new();
        for tr in self.p.iter() {
            let tu = tr.tuple;
            match tr.centers.total() {
                Ok(s) if s == tr.count && s > 0 => {}
                _ => bad(format!("{tu} wt {}: centers {} do not sum to count {}", tr.wt, tr.centers, tr.count)),
            }
            if let Some(l) = tr.centers.support().find(|&l| !clock.is_active(l)) {
                bad(format!("{tu} wt {} has paths at inactive level {l}", tr.wt));
            }
            let shortest = self.star.get(&tu, tr.wt).is_some();
            if tr.beta != shortest {
                bad(format!("{tu} wt {}: beta {} but shortest {shortest}", tr.wt, tr.beta));
            }
            left.entry((tu.a, tu.b, tu.y)).or_default().insert(tu.x);
            right.entry((tu.x, tu.a, tu.b)).or_default().insert(tu.y);
            last_tails.entry((tu.x, tu.y, tr.wt)).or_default().insert(tu.b);
            first_heads.entry((tu.x, tu.y, tr.wt)).or_default().insert(tu.a);
        }
        for ((x, b, y), set) in &left {
            if self.p.left_ext(*x, *b, *y).into_iter().collect::<BTreeSet<_>>() != *set {
                bad(format!("L({x}, {b}{y}) out of sync"));
            }
        }
        for ((x, a, y), set) in &right {
            if self.p.right_ext(*x, *a, *y).into_iter().collect::<BTreeSet<_>>() != *set {
                bad(format!("R({x}{a}, {y}) out of sync"));
            }
        }
        let ext_total: usize = left.values().chain(right.values()).map(BTreeSet::len).sum();
        if ext_total != self.p.extension_len() {
            bad(format!("extension sets hold {} members, expected {ext_total}", self.p.extension_len()));
        }
        for ((x, y, wt), set) in &last_tails {
            if self.p.historical().last_tails(*x, *y, *wt).into_iter().collect::<BTreeSet<_>>() != *set {
                bad(format!("RN({x}, {y}, {wt}) out of sync"));
            }
        }
        for ((x, y, wt), set) in &first_heads {
            if self.p.historical().first_heads(*x, *y, *wt).into_iter().collect::<BTreeSet<_>>() != *set {
                bad(format!("LN({x}, {y}, {wt}) out of sync"));
            }
        }
        let he_total: usize = last_tails.values().chain(first_heads.values()).map(BTreeSet::len).sum();
        if he_total != self.p.historical().len() {
            bad(format!("RN/LN hold {} members, expected {he_total}", self.p.historical().len()));
        }

        // Expected per-level stores, rebuilt from P*.
        let slots = clock.slots();
        let mut local_star: Vec<BTreeMap<(VertexId, VertexId), PairStar<W>>> = vec![BTreeMap::new(); slots];
        for x in 0..n {
            for y in 0..n {
                let (x, y) = (VertexId::from(x), VertexId::from(y));
                let mut best: BTreeMap<usize, W> = BTreeMap::new();
                for (tu, wt, c) in self.star.pair(x, y) {
                    for l in c.support() {
                        let e = best.entry(l).or_insert(wt);
                        *e = (*e).min(wt);
                    }
                    match self.p.get(&tu, wt) {
                        None => bad(format!("shortest {tu} wt {wt} missing from P")),
                        Some(r) => {
                            if c.support().any(|l| c.get(l) != r.centers.get(l)) {
                                bad(format!("shortest {tu} wt {wt} centers {c} differ from resident {}", r.centers));
                            }
                        }
                    }
                    if c.is_empty() {
                        bad(format!("shortest {tu} wt {wt} has no paths"));
                    }
                    for l in c.support() {
                        local_star[l].entry((x, y)).or_default().insert((tu.a, tu.b), wt);
                    }
                }
                let distances = self.star.distances(x, y);
                for &i in &active {
                    let it = clock.time(i);
                    let expect = best.iter().filter(|(&l, _)| clock.time(l) <= it).map(|(_, &w)| w).min();
                    if distances.at(i) != expect {
                        bad(format!("DM({x}, {y}) at level {i} is {:?}, shortest paths give {expect:?}", distances.at(i)));
                    }
                }
                if distances.list(clock).len() > slots {
                    bad(format!("DM({x}, {y}) has {} records", distances.list(clock).len()));
                }
            }
        }
        for (l, expected) in local_star.iter().enumerate() {
            let local = self.star.local(l);
            let actual: BTreeMap<_, _> = local.star_pairs().map(|(k, m)| (*k, m.clone())).collect();
            if actual != *expected {
                bad(format!("level {l} historical store out of sync with P*"));
                continue;
            }
            let mut shortest_left: BTreeMap<(VertexId, VertexId), BTreeSet<VertexId>> = BTreeMap::new();
            let mut shortest_right: BTreeMap<(VertexId, VertexId), BTreeSet<VertexId>> = BTreeMap::new();
            for (&(x, y), m) in expected {
                for &(a, b) in m.keys() {
                    let tu = Tuple { x, a, b, y };
                    shortest_left.entry((tu.a, tu.y)).or_default().insert(tu.x);
                    shortest_right.entry((tu.x, tu.b)).or_default().insert(tu.y);
                }
            }
            let mut sizes = [0usize; 4];
            for ((a, y), set) in &shortest_left {
                sizes[0] += set.len();
                if local.shortest_left(*a, *y).into_iter().collect::<BTreeSet<_>>() != *set {
                    bad(format!("L*_{l}({a}, {y}) out of sync"));
                }
                let centered: BTreeSet<_> = set.iter().copied().filter(|&u| clock.center(u) == Some(l)).collect();
                sizes[2] += centered.len();
                if local.centered_left(*a, *y).into_iter().collect::<BTreeSet<_>>() != centered {
                    bad(format!("LC*_{l}({a}, {y}) out of sync"));
                }
            }
            for ((x, b), set) in &shortest_right {
                sizes[1] += set.len();
                if local.shortest_right(*x, *b).into_iter().collect::<BTreeSet<_>>() != *set {
                    bad(format!("R*_{l}({x}, {b}) out of sync"));
                }
                let centered: BTreeSet<_> = set.iter().copied().filter(|&u| clock.center(u) == Some(l)).collect();
                sizes[3] += centered.len();
                if local.centered_right(*x, *b).into_iter().collect::<BTreeSet<_>>() != centered {
                    bad(format!("RC*_{l}({x}, {b}) out of sync"));
                }
            }
            if local.extension_sizes() != sizes {
                bad(format!("level {l} extension sets hold {:?}, expected {sizes:?}", local.extension_sizes()));
            }
        }
        out
    }
}
