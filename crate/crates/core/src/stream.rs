//! Line-oriented update streams: `update <v> | in: u:w,... | out: u:w,...`.

use std::collections::BTreeMap;

use crate::graph::{GraphError, UpdateEvent, VertexId};
use crate::weight::EdgeWeight;

fn parse_side<W: EdgeWeight>(body: &str, line: usize) -> Result<BTreeMap<VertexId, W>, GraphError> {
    let mut m = BTreeMap::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let err = || GraphError::Parse { line, msg: format!("bad arc entry {item:?}") };
        let (u, w) = item.split_once(':').ok_or_else(err)?;
        let u: u32 = u.trim().parse().map_err(|_| err())?;
        let w = w.trim();
        if w.eq_ignore_ascii_case("inf") {
            m.remove(&VertexId(u));
            continue;
        }
        m.insert(VertexId(u), w.parse().map_err(|_| err())?);
    }
    Ok(m)
}

pub fn parse_event<W: EdgeWeight>(text: &str, line: usize) -> Result<UpdateEvent<W>, GraphError> {
    let mut parts = text.split('|').map(str::trim);
    let head = parts.next().unwrap_or_default();
    let v = head
        .strip_prefix("update")
        .and_then(|r| r.trim().parse::<u32>().ok())
        .ok_or_else(|| GraphError::Parse { line, msg: format!("expected \"update <v>\", got {head:?}") })?;
    let mut e = UpdateEvent::delete(VertexId(v));
    for part in parts {
        if let Some(body) = part.strip_prefix("in:") {
            e.in_weights = parse_side(body, line)?;
        } else if let Some(body) = part.strip_prefix("out:") {
            e.out_weights = parse_side(body, line)?;
        } else {
            return Err(GraphError::Parse { line, msg: format!("unknown section {part:?}") });
        }
    }
    Ok(e)
}

/// Parses a whole stream; blank lines and `#` comments are skipped.
pub fn parse_stream<W: EdgeWeight>(text: &str) -> Result<Vec<UpdateEvent<W>>, GraphError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_event(l.trim(), i + 1))
        .collect()
}

pub fn format_event<W: EdgeWeight>(e: &UpdateEvent<W>) -> String {
    let side = |m: &BTreeMap<VertexId, W>| m.iter().map(|(u, w)| format!("{u}:{w}")).collect::<Vec<_>>().join(",");
    format!("update {} | in: {} | out: {}", e.v, side(&e.in_weights), side(&e.out_weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_record() {
        let e: UpdateEvent<u64> = parse_event("update 2 | in: 1:1 | out: 4:1,3:inf", 1).unwrap();
        assert_eq!(e, UpdateEvent::new(VertexId(2), [(VertexId(1), 1)], [(VertexId(4), 1)]));
    }

    #[test]
    fn omitted_sides_delete() {
        let e: UpdateEvent<u64> = parse_event("update 3", 1).unwrap();
        assert_eq!(e, UpdateEvent::delete(VertexId(3)));
        let e: UpdateEvent<u64> = parse_event("update 3 | out: 0:5", 1).unwrap();
        assert!(e.in_weights.is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_stream::<u64>("update 1\n\nupdate x\n").unwrap_err();
        assert_eq!(err, GraphError::Parse { line: 3, msg: "expected \"update <v>\", got \"update x\"".into() });
        assert!(matches!(parse_stream::<u64>("update 1 | in: 2-3"), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip() {
        let e = UpdateEvent::new(VertexId(0), [(VertexId(2), 7u64)], [(VertexId(1), 3), (VertexId(3), 1)]);
        assert_eq!(parse_event::<u64>(&format_event(&e), 1).unwrap(), e);
    }
}
