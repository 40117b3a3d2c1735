//! Scripted replays of two update sequences in which older shortest paths
//! come back after a newer shortcut disappears.
//!
//! Both run on a 16-vertex epoch. The build fills one level; no-op updates on
//! filler vertices then advance the clock so that every later update lands
//! at its own, strictly newer level.

use super::*;
use dynbc::{Tuple, UpdateEvent};

fn tup(x: u32, a: u32, b: u32, y: u32) -> Tuple {
    Tuple { x: v(x), a: v(a), b: v(b), y: v(y) }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn checked(tr: &mut Tracked, ev: &UpdateEvent<u64>) -> Result<(), String> {
    tr.update(ev);
    compare_paths(&tr.engine)?;
    compare_invariants(&tr.engine)?;
    compare_lsp_census(&tr.engine)?;
    compare_level_census(&tr.engine, &tr.history)?;
    compare_level_lst_census(&tr.engine, &tr.history)
}

fn noop(tr: &mut Tracked, u: u32) -> Result<(), String> {
    let ev = tr.engine.graph().snapshot_event(v(u));
    checked(tr, &ev)
}

fn shortest_count(e: &Apasp, t: &Tuple, wt: u64) -> Option<u128> {
    e.shortest().get(t, wt).map(|c| c.total().unwrap())
}

fn center(e: &Apasp, u: u32) -> usize {
    e.clock().center(v(u)).unwrap()
}

/// A shortcut through `v` hides an older shortest triple; a later triple of
/// the old weight is only locally shortest. Removing `v` must bring both
/// back as shortest, the older one without being touched.
pub fn shortcut_removal_restores_both_triples() -> Result<(), String> {
    let (x, a, p, q, b, y, sv, a2, b2) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let arcs = [(x, a, 1), (a, p, 1), (a, q, 1), (p, b, 1), (q, b, 1), (b, y, 1), (b2, y, 1)];
    let g = Graph::from_arcs(16, arcs).unwrap();
    let mut tr = Tracked::new(&g).unwrap();
    for f in 9..16 {
        noop(&mut tr, f)?;
    }
    let old = tup(x, a, b, y);
    let through = tup(x, sv, sv, y);
    let late = tup(x, a2, b2, y);

    checked(&mut tr, &UpdateEvent::new(v(sv), [(v(x), 1)], [(v(y), 1)]))?;
    noop(&mut tr, 9)?;
    checked(&mut tr, &UpdateEvent::new(v(a2), [(v(x), 1)], [(v(b2), 2)]))?;
    let e = &tr.engine;
    ensure(center(e, x) > center(e, sv) && center(e, sv) > center(e, a2), || {
        "updates did not land on distinct levels".into()
    })?;
    ensure(e.distance(v(x), v(y)) == Weight::Finite(2), || "shortcut is not shortest".into())?;
    ensure(shortest_count(e, &through, 2) == Some(1), || "shortcut missing from P*".into())?;
    let kept = e.tuples().get(&old, 4).ok_or("older triple missing from P")?.clone();
    ensure(kept.beta && shortest_count(e, &old, 4) == Some(2), || {
        format!("older triple not kept as shortest in its level: {kept:?}")
    })?;
    let fresh = e.tuples().get(&late, 4).ok_or("later triple missing from P")?;
    ensure(!fresh.beta && fresh.count == 1, || format!("later triple should be merely locally shortest: {fresh:?}"))?;
    ensure(shortest_count(e, &late, 4).is_none(), || "later triple wrongly in P*".into())?;

    checked(&mut tr, &UpdateEvent::delete(v(sv)))?;
    let e = &tr.engine;
    ensure(e.tuples().get(&through, 2).is_none(), || "shortcut survived its vertex".into())?;
    let after = e.tuples().get(&old, 4).ok_or("older triple lost")?;
    ensure(after.beta && shortest_count(e, &old, 4) == Some(2), || format!("older triple not shortest: {after:?}"))?;
    ensure(after.update_num == kept.update_num && after.centers == kept.centers, || {
        "older triple was reprocessed".into()
    })?;
    let fresh = e.tuples().get(&late, 4).ok_or("later triple lost")?;
    ensure(fresh.beta && shortest_count(e, &late, 4) == Some(1), || format!("later triple not promoted: {fresh:?}"))?;
    ensure(e.distance(v(x), v(y)) == Weight::Finite(4) && e.sigma(v(x), v(y)) == 3, || {
        "d or sigma of (x, y) wrong".into()
    })
}

/// Two triples sharing a first arc are older than a left extension to `x'`;
/// a shortcut through `v` then hides them, and a newer vertex `x''` reaches
/// the last vertex of only one of them along a shortest path. Removing `v`
/// must extend exactly that one to `x''` and leave the `x'` extensions as
/// they were.
pub fn partial_extension_after_shortcut_removal() -> Result<(), String> {
    let (x, a, b, c, y, x1, sv, x2) = (0, 1, 2, 3, 4, 5, 6, 7);
    let arcs = [(x, a, 1), (a, b, 1), (a, c, 1), (b, y, 1), (c, y, 1)];
    let g = Graph::from_arcs(16, arcs).unwrap();
    let mut tr = Tracked::new(&g).unwrap();
    for f in 8..15 {
        noop(&mut tr, f)?;
    }
    checked(&mut tr, &UpdateEvent::new(v(x1), [], [(v(x), 1)]))?;
    noop(&mut tr, 15)?;
    checked(&mut tr, &UpdateEvent::new(v(sv), [(v(x), 1)], [(v(y), 1)]))?;
    checked(&mut tr, &UpdateEvent::new(v(x2), [], [(v(x), 1), (v(c), 1)]))?;

    let via_b = tup(x1, x, b, y);
    let via_c = tup(x1, x, c, y);
    let wanted = tup(x2, x, b, y);
    let unwanted = tup(x2, x, c, y);
    let e = &tr.engine;
    let levels = [center(e, x), center(e, x1), center(e, sv), center(e, x2)];
    ensure(levels.windows(2).all(|w| w[0] > w[1]), || format!("updates did not land on distinct levels: {levels:?}"))?;
    ensure(e.shortest().local(center(e, x2)).centered_left(v(x), v(b)).contains(&v(x2)), || {
        "x'' not a centered left extension of (x, b)".into()
    })?;
    ensure(e.tuples().get(&wanted, 4).is_none(), || "(x''x, by) created while b is off every shortest path".into())?;
    let before: Vec<_> = [via_b, via_c].iter().map(|t| e.tuples().get(t, 4).cloned()).collect();
    ensure(before.iter().all(|t| t.as_ref().is_some_and(|t| t.beta)), || "x' extensions not kept as shortest".into())?;

    checked(&mut tr, &UpdateEvent::delete(v(sv)))?;
    let e = &tr.engine;
    ensure(e.tuples().get(&wanted, 4).map(|t| t.count) == Some(1), || "(x''x, by) not created".into())?;
    ensure(e.tuples().pair(v(x2), v(y)).all(|t| t.tuple != unwanted), || "(x''x, cy) created".into())?;
    for (t, prev) in [via_b, via_c].iter().zip(&before) {
        let now = e.tuples().get(t, 4).ok_or_else(|| format!("{t} lost"))?;
        ensure(now.beta && shortest_count(e, t, 4) == Some(1), || format!("{t} not restored as shortest"))?;
        ensure(Some(now.update_num) == prev.as_ref().map(|p| p.update_num), || format!("{t} was extended again"))?;
    }
    ensure(e.sigma(v(x1), v(y)) == 2 && e.sigma(v(x), v(y)) == 2, || "sigma after restore wrong".into())
}
