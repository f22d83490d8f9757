//! Half-open intervals `[lo, hi)` over an ordered scalar, with an optional
//! unbounded upper end.
//!
//! The identification math only ever instantiates this with exact rationals
//! (see [`crate::ScaleInterval`]), but nothing here cares about the scalar
//! beyond ordering, so the type stays generic.

use std::fmt;

/// A half-open interval `[lo, hi)`. `hi == None` means unbounded above.
///
/// An interval with `hi <= lo` is empty; emptiness is a queryable state, not
/// an error, because an empty intersection is a meaningful analysis result.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Interval<T> {
    lo: T,
    hi: Option<T>,
}

impl<T: PartialOrd + Clone> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi: Some(hi) }
    }

    /// The half-line `[lo, +inf)`.
    pub fn unbounded_above(lo: T) -> Self {
        Self { lo, hi: None }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    /// Upper bound, or `None` when unbounded.
    pub fn hi(&self) -> Option<&T> {
        self.hi.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        match &self.hi {
            Some(hi) => hi <= &self.lo,
            None => false,
        }
    }

    pub fn contains(&self, value: &T) -> bool {
        if *value < self.lo {
            return false;
        }
        match &self.hi {
            Some(hi) => value < hi,
            None => true,
        }
    }

    /// Intersection: the tighter of each pair of bounds. May come out empty.
    pub fn intersect(&self, other: &Self) -> Self {
        let lo = if other.lo > self.lo { &other.lo } else { &self.lo };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(if a < b { a } else { b }),
            (Some(a), None) => Some(a),
            (None, b) => b.as_ref(),
        };
        Self {
            lo: lo.clone(),
            hi: hi.cloned(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(hi) => write!(f, "[{}, {})", self.lo, hi),
            None => write!(f, "[{}, +inf)", self.lo),
        }
    }
}
