//! Cantor-type fixtures with exact approximation moduli.

use num_bigint::BigInt;
use thiserror::Error;

use crate::interval_algebra::{AlgebraElement, Interval};
use crate::limit_points::{self, ApproxError, MeasurableSet, TailBound};
use crate::rat::Rat;

/// Deepest stage either construction will build. Stage `n` holds `2^n`
/// intervals, so this bounds memory rather than denominator size.
pub const MAX_STAGE: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("stage {requested} exceeds the limit of {MAX_STAGE}")]
pub struct StageTooDeep {
    pub requested: u32,
}

fn check_stage(n: u32) -> Result<(), StageTooDeep> {
    if n > MAX_STAGE {
        Err(StageTooDeep { requested: n })
    } else {
        Ok(())
    }
}

/// Stage `n` of the middle-thirds Cantor set: the `2^n` intervals
/// `[a/3^n, (a+1)/3^n)` whose left endpoints have only ternary digits 0 and 2.
/// Its length is `(2/3)^n`, which is also its distance to the (null) limit.
pub fn cantor3_stage(n: u32) -> Result<AlgebraElement, StageTooDeep> {
    check_stage(n)?;
    let den = 3u64.pow(n);
    let intervals = (0u64..1 << n)
        .map(|k| {
            let a: u64 = (0..n)
                .filter(|j| k >> (n - 1 - j) & 1 == 1)
                .map(|j| 2 * 3u64.pow(n - 1 - j))
                .sum();
            Interval::new_unchecked(Rat::from_u64_ratio(a, den), Rat::from_u64_ratio(a + 1, den))
        })
        .collect();
    Ok(AlgebraElement::from_canonical(intervals))
}

/// Stage `n` of the Smith–Volterra–Cantor set: step `k` removes a centered
/// gap of length `4^-k` from each of the `2^(k−1)` current intervals. Length
/// `1/2 + 2^(−n−1)`; distance to the limit `2^(−n−1)`.
pub fn svc_stage(n: u32) -> Result<AlgebraElement, StageTooDeep> {
    check_stage(n)?;
    // Work in units of 2^-(2n+1); every endpoint up to stage n is integral there.
    let unit_shift = 2 * n + 1;
    let mut spans: Vec<(u64, u64)> = vec![(0, 1 << unit_shift)];
    for k in 1..=n {
        let half_gap = 1u64 << (2 * n - 2 * k);
        spans = spans
            .into_iter()
            .flat_map(|(x, y)| {
                debug_assert!((y - x) % 2 == 0);
                let mid = x + (y - x) / 2;
                [(x, mid - half_gap), (mid + half_gap, y)]
            })
            .collect();
    }
    let den = 1u64 << unit_shift;
    let intervals = spans
        .into_iter()
        .map(|(x, y)| Interval::new_unchecked(Rat::from_u64_ratio(x, den), Rat::from_u64_ratio(y, den)))
        .collect();
    Ok(AlgebraElement::from_canonical(intervals))
}

fn resource(e: StageTooDeep) -> ApproxError {
    ApproxError::Resource(e.to_string())
}

/// Smallest `n` with `(2/3)^n ≤ eps`.
pub fn cantor3_stage_for(eps: &Rat) -> u32 {
    let (p, q) = (eps.numer(), eps.denom());
    let (mut two, mut three) = (BigInt::from(1), BigInt::from(1));
    let mut n = 0;
    // (2/3)^n ≤ p/q  ⟺  2^n·q ≤ 3^n·p
    while &two * &q > &three * &p {
        two *= 2;
        three *= 3;
        n += 1;
    }
    n
}

/// Smallest `n` with `2^(−n−1) ≤ eps`.
pub fn svc_stage_for(eps: &Rat) -> u32 {
    let (p, q) = (eps.numer(), eps.denom());
    let mut pow = BigInt::from(2);
    let mut n = 0;
    // 2^-(n+1) ≤ p/q  ⟺  q ≤ 2^(n+1)·p
    while q > &pow * &p {
        pow *= 2;
        n += 1;
    }
    n
}

/// The middle-thirds Cantor set, a null set.
pub fn cantor3() -> MeasurableSet {
    MeasurableSet::from_oracle(|eps| cantor3_stage(cantor3_stage_for(eps)).map_err(resource))
}

/// The Smith–Volterra–Cantor set, of measure 1/2.
pub fn fatcantor() -> MeasurableSet {
    MeasurableSet::from_oracle(|eps| svc_stage(svc_stage_for(eps)).map_err(resource))
}

/// `[2^-i, 2^-i+1)` for `i ≥ 1`.
pub fn dyadic_piece(i: u64) -> AlgebraElement {
    let i = u32::try_from(i).expect("dyadic index fits in u32");
    AlgebraElement::interval(Rat::pow2_neg(i), Rat::pow2_neg(i - 1)).expect("endpoints lie in [0,1]")
}

/// `⌈log₂(2L)⌉`: the pieces beyond it have total length `2^-N ≤ 1/(2L)`.
pub fn dyadic_tail_bound() -> TailBound {
    TailBound::new(|level| u64::from(64 - (2 * level - 1).leading_zeros()))
}

/// `⋃ᵢ [2^-i, 2^-i+1) = (0, 1)`, through the diagonal countable union.
pub fn dyadictail() -> MeasurableSet {
    limit_points::countable_union(|i| limit_points::embed(dyadic_piece(i)), dyadic_tail_bound())
}
