//! Measurable sets as limits of μ-Cauchy sequences in the interval algebra.
//!
//! A [`MeasurableSet`] is an approximation oracle: asked for precision `ε > 0`
//! it returns an algebra element `B` with `d(B, S) ≤ ε`, where `S` is the
//! (ideal) set it stands for. Sequences are indexed by their modulus rather
//! than by an integer, so every limit comes with an explicit error bound.
//!
//! Equality of two oracles is undecidable. What can be computed is a certified
//! bracket for the distance between them ([`distance_between`]) and for the
//! extended measure ([`measure_with_error`]).

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::interval_algebra::{self, AlgebraElement};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("precision must be positive, got {0}")]
    NonPositiveEps(Rat),
    #[error("resource limit: {0}")]
    Resource(String),
}

type Oracle = dyn Fn(&Rat) -> Result<AlgebraElement, ApproxError> + Send + Sync;

/// An element of the completion of the interval algebra, given by its
/// approximation oracle.
///
/// Oracles must be pure and satisfy `d(approx(ε), S) ≤ ε`; consequently
/// `d(approx(ε₁), approx(ε₂)) ≤ ε₁ + ε₂` for all positive `ε₁, ε₂`.
#[derive(Clone)]
pub struct MeasurableSet {
    oracle: Arc<Oracle>,
}

impl MeasurableSet {
    /// Wraps a raw oracle. The closure is only ever called with `ε > 0`; the
    /// caller is responsible for the approximation contract.
    pub fn from_oracle<F>(f: F) -> Self
    where
        F: Fn(&Rat) -> Result<AlgebraElement, ApproxError> + Send + Sync + 'static,
    {
        MeasurableSet { oracle: Arc::new(f) }
    }

    pub fn approx(&self, eps: &Rat) -> Result<AlgebraElement, ApproxError> {
        approx(self, eps)
    }
}

impl fmt::Debug for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MeasurableSet(<oracle>)")
    }
}

/// A closed rational interval `[lo, hi]` certified to contain a true value.
///
/// Bounds are never clamped, so for a measure the bracket may extend below 0
/// or above 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorInterval {
    lo: Rat,
    hi: Rat,
}

impl ErrorInterval {
    /// `center ± radius`. Panics on a negative radius.
    pub fn around(center: &Rat, radius: &Rat) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        ErrorInterval {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &ErrorInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Interval sum `[a+c, b+d]`.
    pub fn add(&self, other: &ErrorInterval) -> ErrorInterval {
        ErrorInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}

impl fmt::Display for ErrorInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A convergence rate for a countable family: `bound_at(L) = N_L` such that
/// the measures of the members beyond `N_L` sum to at most `1/(2L)`.
#[derive(Clone)]
pub struct TailBound {
    raw: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
}

impl TailBound {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        TailBound { raw: Arc::new(f) }
    }

    /// Constant index; suitable for families that are empty beyond `n`.
    pub fn constant(n: u64) -> Self {
        TailBound::new(move |_| n)
    }

    /// `N_L`, made monotone in `L` and at least 1 by taking the running
    /// maximum of the supplied map. Enlarging `N_L` only shrinks the tail, so
    /// the contract is preserved.
    pub fn bound_at(&self, level: u64) -> u64 {
        (1..=level.max(1)).map(|l| (self.raw)(l)).max().unwrap_or(1).max(1)
    }
}

impl fmt::Debug for TailBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TailBound(<rate>)")
    }
}

fn check_eps(eps: &Rat) -> Result<(), ApproxError> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(ApproxError::NonPositiveEps(eps.clone()))
    }
}

/// The constant sequence at `a`.
pub fn embed(a: AlgebraElement) -> MeasurableSet {
    MeasurableSet::from_oracle(move |_| Ok(a.clone()))
}

/// An algebra element within `eps` of `s`.
pub fn approx(s: &MeasurableSet, eps: &Rat) -> Result<AlgebraElement, ApproxError> {
    check_eps(eps)?;
    (s.oracle)(eps)
}

/// `S₁ ∪ S₂`: approximants at `ε/2` each, so
/// `d(B¹ ∪ B², S₁ ∪ S₂) ≤ d(B¹, S₁) + d(B², S₂) ≤ ε`.
pub fn limit_union(s1: &MeasurableSet, s2: &MeasurableSet) -> MeasurableSet {
    let (s1, s2) = (s1.clone(), s2.clone());
    MeasurableSet::from_oracle(move |eps| {
        let half = eps / Rat::from_integer(2);
        let b1 = approx(&s1, &half)?;
        let b2 = approx(&s2, &half)?;
        Ok(interval_algebra::union(&b1, &b2))
    })
}

/// `Sᶜ`. Complement is an isometry of `d`, so the precision carries over.
pub fn limit_complement(s: &MeasurableSet) -> MeasurableSet {
    let s = s.clone();
    MeasurableSet::from_oracle(move |eps| Ok(interval_algebra::complement(&approx(&s, eps)?)))
}

/// `S₁ ∩ S₂ = (S₁ᶜ ∪ S₂ᶜ)ᶜ`.
pub fn limit_intersect(s1: &MeasurableSet, s2: &MeasurableSet) -> MeasurableSet {
    limit_complement(&limit_union(&limit_complement(s1), &limit_complement(s2)))
}

/// `⋃ᵢ Sᵢ` for `i ≥ 1`, by the diagonal construction.
///
/// For precision `ε`, with `L = ⌈1/ε⌉` and `N = tail.bound_at(L)`, the
/// approximant is `Y_L = ⋃_{i≤N} approx(Sᵢ, 1/(2LN))`. The finite part is off
/// by at most `N · 1/(2LN) = 1/(2L)` and the tail by at most `1/(2L)`, so
/// `d(Y_L, ⋃ Sᵢ) ≤ 1/L ≤ ε`. A tail bound that lies about the family breaks
/// this guarantee; it cannot be detected here.
pub fn countable_union<F>(family: F, tail: TailBound) -> MeasurableSet
where
    F: Fn(u64) -> MeasurableSet + Send + Sync + 'static,
{
    MeasurableSet::from_oracle(move |eps| {
        let level = eps
            .recip()
            .ceil()
            .to_u64()
            .ok_or_else(|| ApproxError::Resource(format!("precision {eps} too fine")))?;
        let n = tail.bound_at(level);
        let scale = level
            .checked_mul(n)
            .and_then(|x| x.checked_mul(2))
            .ok_or_else(|| ApproxError::Resource(format!("truncation index {n} too large")))?;
        let inner = Rat::from_u64_ratio(1, scale);
        let mut acc = AlgebraElement::empty();
        for i in 1..=n {
            let b = approx(&family(i), &inner)?;
            acc = interval_algebra::union(&acc, &b);
        }
        Ok(acc)
    })
}

/// Certified bracket `[μ(B) − ε, μ(B) + ε]` for the extended measure, where
/// `B = approx(s, ε)`. Containment follows from `|μ*(S) − μ(B)| ≤ μ*(B △ S)`.
pub fn measure_with_error(s: &MeasurableSet, eps: &Rat) -> Result<ErrorInterval, ApproxError> {
    let b = approx(s, eps)?;
    Ok(ErrorInterval::around(&interval_algebra::premeasure(&b), eps))
}

/// Certified bracket for the distance between two measurable sets.
pub fn distance_between(s1: &MeasurableSet, s2: &MeasurableSet, eps: &Rat) -> Result<ErrorInterval, ApproxError> {
    check_eps(eps)?;
    let half = eps / Rat::from_integer(2);
    let b1 = approx(s1, &half)?;
    let b2 = approx(s2, &half)?;
    Ok(ErrorInterval::around(&interval_algebra::distance(&b1, &b2), eps))
}
