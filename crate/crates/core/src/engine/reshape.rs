//! Center-array reshaping for cleanup and fixup extensions.

use crate::level::LevelClock;
use crate::tuple::CenterArray;
use crate::Fault;

/// Per-level split of the extended paths being removed from the resident
/// triple `resident`, given the split `through` of the removed shortest paths
/// they extend and the level `k` of the extension vertex.
///
/// A path at level `i` extends to one at the newer of `i` and `k`; it was
/// stored only if the resident holds paths at that level.
pub fn cleanup_center_reshape(
    clock: &LevelClock,
    resident: &CenterArray,
    through: &CenterArray,
    k: usize,
) -> Result<CenterArray, Fault> {
    let mut out = CenterArray::zeros(through.len());
    for i in through.support() {
        let target = newer(clock, i, k);
        if resident.get(target) > 0 {
            out.set(target, out.get(target) + through.get(i));
        }
    }
    if resident.as_slice().iter().zip(out.as_slice()).any(|(r, o)| o > r) {
        return Err(Fault::Inconsistent(format!("reshape {out} exceeds resident {resident}")));
    }
    Ok(out)
}

fn newer(clock: &LevelClock, i: usize, k: usize) -> usize {
    if clock.time(i) >= clock.time(k) {
        i
    } else {
        k
    }
}

/// Per-level split of paths gained by prepending (or appending) a vertex
/// centered at `k`: every path older than `k` moves up to `k`.
pub fn fixup_center_reshape(clock: &LevelClock, through: &CenterArray, k: usize) -> CenterArray {
    let Some(j) = clock.oldest(through) else { return through.clone() };
    let kt = clock.time(k);
    if kt <= clock.time(j) {
        return through.clone();
    }
    let mut out = CenterArray::zeros(through.len());
    for i in through.support() {
        let target = if clock.time(i) > kt { i } else { k };
        out.set(target, out.get(target) + through.get(i));
    }
    out
}
