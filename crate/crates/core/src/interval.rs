use std::fmt;

use serde::{Deserialize, Serialize};

/// A real interval with per-endpoint open/closed flags. `hi` may be
/// `f64::INFINITY` (never closed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: false }
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: true }
    }

    pub fn point(v: f64) -> Self {
        Self::closed(v, v)
    }

    /// `[lo, ∞)`
    pub fn from(lo: f64) -> Self {
        Interval { lo, hi: f64::INFINITY, lo_closed: true, hi_closed: false }
    }

    /// `(lo, ∞)`
    pub fn above(lo: f64) -> Self {
        Interval { lo, hi: f64::INFINITY, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above_lo = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below_hi = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above_lo && below_hi
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_infinite()
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi && self.lo_closed && self.hi_closed
    }

    /// Replace an infinite upper end by `bound` (closed).
    pub fn truncated(&self, bound: f64) -> Interval {
        if self.is_unbounded() {
            Interval { hi: bound, hi_closed: true, ..*self }
        } else {
            *self
        }
    }

    /// `n` points spanning the interval: closed ends included, open ends
    /// approached at distance `length / (10 n)`. Unbounded intervals must be
    /// truncated first.
    pub fn spread(&self, n: usize) -> Vec<f64> {
        assert!(!self.is_unbounded(), "truncate unbounded intervals before sampling");
        if self.is_degenerate() || n == 0 {
            return vec![self.lo; n];
        }
        let inset = (self.hi - self.lo) / (10.0 * n as f64);
        let lo = if self.lo_closed { self.lo } else { self.lo + inset };
        let hi = if self.hi_closed { self.hi } else { self.hi - inset };
        if n == 1 {
            return vec![0.5 * (lo + hi)];
        }
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        if self.is_unbounded() {
            write!(f, "{l}{}, inf{r}", self.lo)
        } else {
            write!(f, "{l}{}, {}{r}", self.lo, self.hi)
        }
    }
}
