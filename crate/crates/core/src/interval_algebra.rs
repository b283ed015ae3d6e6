//! The algebra of finite unions of half-open rational intervals in `[0,1)`,
//! its length premeasure, and the symmetric-difference pseudometric.
//!
//! Every [`AlgebraElement`] is kept in canonical form: nonempty intervals in
//! strictly increasing order, pairwise disjoint and non-adjacent. Two elements
//! therefore denote the same set exactly when they compare equal.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rat::{Rat, RatParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("endpoint {0} outside [0,1]")]
    EndpointOutOfRange(Rat),
    #[error("malformed interval segment `{segment}`: {reason}")]
    MalformedSegment { segment: String, reason: String },
    #[error(transparent)]
    Rat(#[from] RatParseError),
}

/// The half-open interval `[lo, hi)`; empty when `lo >= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, AlgebraError> {
        for e in [&lo, &hi] {
            if e.is_negative() || *e > 1 {
                return Err(AlgebraError::EndpointOutOfRange(e.clone()));
            }
        }
        Ok(Interval { lo, hi })
    }

    /// Caller guarantees `0 <= lo`, `hi <= 1`.
    pub(crate) fn new_unchecked(lo: Rat, hi: Rat) -> Self {
        debug_assert!(!lo.is_negative() && hi <= 1);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn length(&self) -> Rat {
        if self.is_empty() {
            Rat::zero()
        } else {
            &self.hi - &self.lo
        }
    }
}

/// A canonical finite union of half-open intervals in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    intervals: Vec<Interval>,
}

impl AlgebraElement {
    pub fn empty() -> Self {
        AlgebraElement { intervals: Vec::new() }
    }

    /// The whole space `[0,1)`.
    pub fn full() -> Self {
        AlgebraElement {
            intervals: vec![Interval::new_unchecked(Rat::zero(), Rat::one())],
        }
    }

    /// A single interval `[lo, hi)`; empty if `lo >= hi`.
    pub fn interval(lo: Rat, hi: Rat) -> Result<Self, AlgebraError> {
        normalize(vec![Interval::new(lo, hi)?])
    }

    /// Wraps intervals already known to be canonical.
    pub(crate) fn from_canonical(intervals: Vec<Interval>) -> Self {
        let el = AlgebraElement { intervals };
        debug_assert!(el.is_canonical());
        el
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        let in_range = self
            .intervals
            .iter()
            .all(|iv| !iv.is_empty() && !iv.lo.is_negative() && iv.hi <= 1);
        in_range && self.intervals.windows(2).all(|w| w[0].hi < w[1].lo)
    }

    /// True when `self` ⊆ `other` as sets.
    pub fn is_subset_of(&self, other: &AlgebraElement) -> bool {
        intersect(self, other) == *self
    }

    pub fn union(&self, other: &AlgebraElement) -> AlgebraElement {
        union(self, other)
    }

    pub fn intersect(&self, other: &AlgebraElement) -> AlgebraElement {
        intersect(self, other)
    }

    pub fn complement(&self) -> AlgebraElement {
        complement(self)
    }

    pub fn sym_diff(&self, other: &AlgebraElement) -> AlgebraElement {
        sym_diff(self, other)
    }

    pub fn premeasure(&self) -> Rat {
        premeasure(self)
    }

    pub fn distance(&self, other: &AlgebraElement) -> Rat {
        distance(self, other)
    }
}

/// Canonicalizes an arbitrary list of intervals. Empty intervals are dropped;
/// overlapping and adjacent intervals are merged.
pub fn normalize(raw: Vec<Interval>) -> Result<AlgebraElement, AlgebraError> {
    for iv in &raw {
        for e in [&iv.lo, &iv.hi] {
            if e.is_negative() || *e > 1 {
                return Err(AlgebraError::EndpointOutOfRange(e.clone()));
            }
        }
    }
    let mut live: Vec<Interval> = raw.into_iter().filter(|iv| !iv.is_empty()).collect();
    live.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(live.len());
    for iv in live {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    Ok(AlgebraElement::from_canonical(out))
}

/// Sweeps the boundary points of `a` and `b` together, emitting the set of
/// points where `keep(in_a, in_b)` holds. Output is canonical because a
/// boundary is only emitted when the kept state actually flips.
fn combine(a: &AlgebraElement, b: &AlgebraElement, keep: impl Fn(bool, bool) -> bool) -> AlgebraElement {
    fn bounds(el: &AlgebraElement) -> Vec<&Rat> {
        el.intervals.iter().flat_map(|iv| [&iv.lo, &iv.hi]).collect()
    }
    let (ba, bb) = (bounds(a), bounds(b));
    let (mut i, mut j) = (0usize, 0usize);
    let (mut in_a, mut in_b) = (false, false);
    let mut state = keep(false, false);
    debug_assert!(!state, "combine requires keep(false, false) == false");
    let mut open: Option<Rat> = None;
    let mut out = Vec::new();

    while i < ba.len() || j < bb.len() {
        let p = match (ba.get(i), bb.get(j)) {
            (Some(x), Some(y)) => std::cmp::min(*x, *y),
            (Some(x), None) => *x,
            (None, Some(y)) => *y,
            (None, None) => unreachable!(),
        };
        while i < ba.len() && ba[i] == p {
            in_a = !in_a;
            i += 1;
        }
        while j < bb.len() && bb[j] == p {
            in_b = !in_b;
            j += 1;
        }
        let next = keep(in_a, in_b);
        if next != state {
            if next {
                open = Some(p.clone());
            } else if let Some(lo) = open.take() {
                out.push(Interval::new_unchecked(lo, p.clone()));
            }
            state = next;
        }
    }
    AlgebraElement::from_canonical(out)
}

pub fn union(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    combine(a, b, |x, y| x || y)
}

pub fn intersect(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    combine(a, b, |x, y| x && y)
}

/// `[0,1) \ a`.
pub fn complement(a: &AlgebraElement) -> AlgebraElement {
    combine(&AlgebraElement::full(), a, |u, x| u && !x)
}

pub fn sym_diff(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    combine(a, b, |x, y| x != y)
}

/// Total length.
pub fn premeasure(a: &AlgebraElement) -> Rat {
    a.intervals.iter().map(Interval::length).sum()
}

/// `d(a, b) = μ(a △ b)`, exact.
pub fn distance(a: &AlgebraElement, b: &AlgebraElement) -> Rat {
    premeasure(&sym_diff(a, b))
}

impl fmt::Display for AlgebraElement {
    /// Canonical text: `lo,hi` segments separated by single spaces, or `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{},{}", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

impl FromStr for AlgebraElement {
    type Err = AlgebraError;

    /// Reads the canonical text form (`∅` or `empty` for the empty set).
    /// Non-canonical input is normalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "∅" || s == "empty" {
            return Ok(AlgebraElement::empty());
        }
        let mut raw = Vec::new();
        for seg in s.split_whitespace() {
            let (lo, hi) = seg.split_once(',').ok_or_else(|| AlgebraError::MalformedSegment {
                segment: seg.to_string(),
                reason: "expected `lo,hi`".into(),
            })?;
            raw.push(Interval::new(lo.parse()?, hi.parse()?)?);
        }
        normalize(raw)
    }
}
