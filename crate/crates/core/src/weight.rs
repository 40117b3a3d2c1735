use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, PrimInt, Unsigned};

/// Scalar used for arc weights and path lengths.
///
/// Any unsigned primitive integer qualifies. Real-valued weights must be
/// scaled to a common denominator by the caller.
pub trait EdgeWeight:
    PrimInt + Unsigned + CheckedAdd + Default + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
}

impl<T> EdgeWeight for T where
    T: PrimInt + Unsigned + CheckedAdd + Default + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
}

/// A finite path length or infinity. Orders every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight<W> {
    Finite(W),
    Infinite,
}

impl<W: EdgeWeight> Weight<W> {
    pub fn finite(self) -> Option<W> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    /// Sum of two lengths; `None` on overflow.
    pub fn checked_add(self, other: Self) -> Option<Self> {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.checked_add(&b).map(Weight::Finite),
            _ => Some(Weight::Infinite),
        }
    }
}

impl<W: EdgeWeight> From<Option<W>> for Weight<W> {
    fn from(w: Option<W>) -> Self {
        w.map_or(Weight::Infinite, Weight::Finite)
    }
}

impl<W: fmt::Display> fmt::Display for Weight<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}
