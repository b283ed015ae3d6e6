//! Brute-force ground truth on finite universes.
//!
//! A [`FiniteSpace`] is a universe `{0,…,n−1}` (n ≤ 12) partitioned into
//! blocks with nonnegative rational weights. Its algebra is every union of
//! blocks, and the premeasure of a union is the sum of its block weights.
//! Everything here is computed by enumeration, exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rat::Rat;

pub const MAX_UNIVERSE: usize = 12;
/// Largest universe for which measurability tests every `A ⊆ X`.
pub const EXHAUSTIVE_SPLIT_LIMIT: usize = 8;
/// Test sets drawn per candidate when the universe exceeds the limit above.
pub const SAMPLED_SPLIT_TESTS: usize = 512;
/// Largest block count for which every family of algebra elements is tried
/// as a cover (2^(2^k − 1) families).
pub const EXHAUSTIVE_COVER_BLOCKS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("universe size {0} outside 1..={MAX_UNIVERSE}")]
    UniverseSize(usize),
    #[error("blocks do not partition the universe: {0}")]
    NotAPartition(String),
    #[error("block weight {0} is negative")]
    NegativeWeight(Rat),
    #[error("malformed partition spec: {0}")]
    Malformed(String),
    #[error("set is not measurable")]
    NotMeasurable,
    #[error("n must be positive")]
    ZeroIndex,
    #[error("{0} blocks is too many for exhaustive cover enumeration (limit {EXHAUSTIVE_COVER_BLOCKS})")]
    TooManyBlocks(usize),
}

/// A subset of `{0,…,n−1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteSet(u16);

impl FiniteSet {
    pub const EMPTY: FiniteSet = FiniteSet(0);

    pub fn from_bits(bits: u16) -> Self {
        FiniteSet(bits)
    }

    pub fn from_points(points: &[usize]) -> Self {
        FiniteSet(points.iter().fold(0, |acc, &p| acc | (1 << p)))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn is_subset_of(self, other: FiniteSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FiniteSet) -> FiniteSet {
        FiniteSet(self.0 | other.0)
    }

    pub fn intersect(self, other: FiniteSet) -> FiniteSet {
        FiniteSet(self.0 & other.0)
    }

    pub fn sym_diff(self, other: FiniteSet) -> FiniteSet {
        FiniteSet(self.0 ^ other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&p| self.contains(p))
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    size: usize,
    blocks: Vec<FiniteSet>,
    weights: Vec<Rat>,
}

impl FiniteSpace {
    pub fn new(size: usize, blocks: Vec<FiniteSet>, weights: Vec<Rat>) -> Result<Self, FiniteError> {
        if size == 0 || size > MAX_UNIVERSE {
            return Err(FiniteError::UniverseSize(size));
        }
        if blocks.len() != weights.len() {
            return Err(FiniteError::NotAPartition(format!(
                "{} blocks but {} weights",
                blocks.len(),
                weights.len()
            )));
        }
        let mut seen = 0u16;
        for b in &blocks {
            if b.0 == 0 {
                return Err(FiniteError::NotAPartition("empty block".into()));
            }
            if b.0 & seen != 0 {
                return Err(FiniteError::NotAPartition(format!("block {b:?} overlaps another")));
            }
            seen |= b.0;
        }
        let full = Self::full_bits(size);
        if seen != full {
            return Err(FiniteError::NotAPartition(format!(
                "blocks cover {:?}, expected 0..{}",
                FiniteSet(seen),
                size
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(FiniteError::NegativeWeight(w.clone()));
        }
        Ok(FiniteSpace { size, blocks, weights })
    }

    fn full_bits(size: usize) -> u16 {
        ((1u32 << size) - 1) as u16
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[FiniteSet] {
        &self.blocks
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn universe(&self) -> FiniteSet {
        FiniteSet(Self::full_bits(self.size))
    }

    pub fn complement(&self, e: FiniteSet) -> FiniteSet {
        FiniteSet(!e.0 & Self::full_bits(self.size))
    }

    /// Every subset of the universe, in bitmask order.
    pub fn all_sets(&self) -> impl Iterator<Item = FiniteSet> {
        (0..1u32 << self.size).map(|b| FiniteSet(b as u16))
    }

    /// The algebra: each union of blocks with its premeasure, indexed by the
    /// bitmask of blocks it contains.
    pub fn algebra(&self) -> Vec<(FiniteSet, Rat)> {
        (0..1u32 << self.blocks.len())
            .map(|mask| {
                let mut set = FiniteSet::EMPTY;
                let mut mu = Rat::zero();
                for (k, (b, w)) in self.blocks.iter().zip(&self.weights).enumerate() {
                    if mask >> k & 1 == 1 {
                        set = set.union(*b);
                        mu = mu + w;
                    }
                }
                (set, mu)
            })
            .collect()
    }

    pub fn is_algebra_element(&self, e: FiniteSet) -> bool {
        self.blocks
            .iter()
            .all(|&b| b.intersect(e) == b || b.intersect(e) == FiniteSet::EMPTY)
    }

    /// Seeded random space: `1..=max_size` points, a random partition, and
    /// weights `p/q` with `q ≤ 16`; roughly a quarter of the blocks are null.
    pub fn random(rng: &mut impl Rng, max_size: usize) -> Self {
        let size = rng.gen_range(1..=max_size.clamp(1, MAX_UNIVERSE));
        let labels: Vec<usize> = (0..size).map(|_| rng.gen_range(0..size)).collect();
        let mut order: Vec<usize> = labels.clone();
        order.sort_unstable();
        order.dedup();
        let blocks: Vec<FiniteSet> = order
            .iter()
            .map(|&lab| {
                let pts: Vec<usize> = (0..size).filter(|&p| labels[p] == lab).collect();
                FiniteSet::from_points(&pts)
            })
            .collect();
        let weights = blocks
            .iter()
            .map(|_| {
                if rng.gen_ratio(1, 4) {
                    Rat::zero()
                } else {
                    let q = rng.gen_range(1..=16i64);
                    let p = rng.gen_range(1..=2 * q);
                    Rat::new(p, q)
                }
            })
            .collect();
        FiniteSpace::new(size, blocks, weights).expect("generated partition is valid")
    }
}

impl FromStr for FiniteSpace {
    type Err = FiniteError;

    /// `"0,1:1/2;2,3:1/2"`: blocks separated by `;`, each a comma list of
    /// points followed by `:` and a weight. The universe is `0..=max point`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut blocks = Vec::new();
        let mut weights = Vec::new();
        let mut max_point = 0usize;
        for part in s.trim().split(';') {
            let (pts, w) = part
                .split_once(':')
                .ok_or_else(|| FiniteError::Malformed(format!("block `{part}` lacks `:weight`")))?;
            let mut set = FiniteSet::EMPTY;
            for p in pts.split(',') {
                let p: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| FiniteError::Malformed(format!("bad point `{p}`")))?;
                if p >= MAX_UNIVERSE {
                    return Err(FiniteError::UniverseSize(p + 1));
                }
                if set.contains(p) {
                    return Err(FiniteError::NotAPartition(format!("point {p} repeated")));
                }
                set = set.union(FiniteSet::from_points(&[p]));
                max_point = max_point.max(p);
            }
            let w: Rat = w.trim().parse().map_err(|e| FiniteError::Malformed(format!("{e}")))?;
            blocks.push(set);
            weights.push(w);
        }
        FiniteSpace::new(max_point + 1, blocks, weights)
    }
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (b, w)) in self.blocks.iter().zip(&self.weights).enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            let pts: Vec<String> = b.points().map(|p| p.to_string()).collect();
            write!(f, "{}:{}", pts.join(","), w)?;
        }
        Ok(())
    }
}

/// `μ*(e)`: the least premeasure of an algebra element containing `e`.
///
/// Over a finite algebra a single element is an optimal cover, since the
/// union of a cover is itself in the algebra and costs no more than the sum.
/// [`outer_measure_by_covers`] checks this against the full definition.
pub fn outer_measure(space: &FiniteSpace, e: FiniteSet) -> Rat {
    space
        .algebra()
        .into_iter()
        .filter(|(b, _)| e.is_subset_of(*b))
        .map(|(_, mu)| mu)
        .min()
        .expect("the universe covers every set")
}

/// `μ*(e)` as the minimum of `Σ μ(Aᵢ)` over every finite family of nonempty
/// algebra elements covering `e`. Exponential in the algebra size, so limited
/// to spaces with at most [`EXHAUSTIVE_COVER_BLOCKS`] blocks.
pub fn outer_measure_by_covers(space: &FiniteSpace, e: FiniteSet) -> Result<Rat, FiniteError> {
    Ok(outer_measures_by_covers(space)?.swap_remove(e.0 as usize))
}

/// [`outer_measure_by_covers`] for every subset at once, indexed by bitmask.
pub fn outer_measures_by_covers(space: &FiniteSpace) -> Result<Vec<Rat>, FiniteError> {
    if space.blocks.len() > EXHAUSTIVE_COVER_BLOCKS {
        return Err(FiniteError::TooManyBlocks(space.blocks.len()));
    }
    let members: Vec<(FiniteSet, Rat)> = space
        .algebra()
        .into_iter()
        .filter(|(b, _)| *b != FiniteSet::EMPTY)
        .collect();
    let families = 1usize << members.len();
    let mut covered = vec![FiniteSet::EMPTY; families];
    let mut cost = vec![Rat::zero(); families];
    // Cheapest family by the exact set it covers; the empty family covers ∅.
    let mut cheapest: Vec<Option<Rat>> = vec![None; 1 << space.size];
    cheapest[0] = Some(Rat::zero());
    for fam in 1..families {
        let low = fam.trailing_zeros() as usize;
        let rest = fam & (fam - 1);
        covered[fam] = covered[rest].union(members[low].0);
        cost[fam] = &cost[rest] + &members[low].1;
        let slot = &mut cheapest[covered[fam].0 as usize];
        if slot.as_ref().is_none_or(|c| cost[fam] < *c) {
            *slot = Some(cost[fam].clone());
        }
    }
    Ok(space
        .all_sets()
        .map(|e| {
            space
                .all_sets()
                .filter(|u| e.is_subset_of(*u))
                .filter_map(|u| cheapest[u.0 as usize].clone())
                .min()
                .expect("the universe covers every set")
        })
        .collect())
}

/// Outer measure of every subset, indexed by bitmask.
fn outer_table(space: &FiniteSpace) -> Vec<Rat> {
    let algebra = space.algebra();
    space
        .all_sets()
        .map(|e| {
            algebra
                .iter()
                .filter(|(b, _)| e.is_subset_of(*b))
                .map(|(_, mu)| mu)
                .min()
                .expect("the universe covers every set")
                .clone()
        })
        .collect()
}

fn test_sets(space: &FiniteSpace, e: FiniteSet) -> Vec<FiniteSet> {
    if space.size <= EXHAUSTIVE_SPLIT_LIMIT {
        return space.all_sets().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(e.0));
    let full = FiniteSpace::full_bits(space.size);
    let mut sets: Vec<FiniteSet> = (0..SAMPLED_SPLIT_TESTS)
        .map(|_| FiniteSet(rng.gen::<u16>() & full))
        .collect();
    // The blocks themselves are the sharpest test sets.
    sets.extend(space.blocks.iter().copied());
    sets.shuffle(&mut rng);
    sets
}

fn splits(space: &FiniteSpace, table: &[Rat], e: FiniteSet) -> bool {
    let ec = space.complement(e);
    test_sets(space, e).into_iter().all(|a| {
        let inside = &table[a.intersect(e).0 as usize];
        let outside = &table[a.intersect(ec).0 as usize];
        table[a.0 as usize] == inside + outside
    })
}

/// The splitting condition: `μ*(A) = μ*(A ∩ e) + μ*(A ∩ eᶜ)` for every `A`.
/// Exhaustive up to [`EXHAUSTIVE_SPLIT_LIMIT`] points, sampled beyond.
pub fn is_measurable(space: &FiniteSpace, e: FiniteSet) -> bool {
    splits(space, &outer_table(space), e)
}

fn closure_with(space: &FiniteSpace, table: &[Rat]) -> BTreeSet<FiniteSet> {
    let algebra = space.algebra();
    space
        .all_sets()
        .filter(|s| algebra.iter().any(|(b, _)| table[s.sym_diff(*b).0 as usize].is_zero()))
        .collect()
}

/// The limit points of the algebra: sets at outer distance 0 from some
/// algebra element. (A finite algebra has only finitely many distances, so a
/// Cauchy sequence converging to `S` must eventually sit at distance 0.)
pub fn limit_closure(space: &FiniteSpace) -> BTreeSet<FiniteSet> {
    closure_with(space, &outer_table(space))
}

/// Every measurable set, by the splitting condition.
pub fn measurable_sets(space: &FiniteSpace) -> BTreeSet<FiniteSet> {
    let table = outer_table(space);
    space.all_sets().filter(|&e| splits(space, &table, e)).collect()
}

/// Measurable sets coincide with the limit points of the algebra.
pub fn verify_closure_equivalence(space: &FiniteSpace) -> bool {
    let table = outer_table(space);
    let measurable: BTreeSet<FiniteSet> = space.all_sets().filter(|&e| splits(space, &table, e)).collect();
    measurable == closure_with(space, &table)
}

/// `μ*` agrees with `μ` on the algebra, and on each limit point `S` with the
/// premeasure of every algebra element at distance 0 from it.
pub fn verify_extension(space: &FiniteSpace) -> bool {
    let table = outer_table(space);
    let algebra = space.algebra();
    let on_algebra = algebra.iter().all(|(b, mu)| table[b.0 as usize] == *mu);
    let on_closure = closure_with(space, &table).into_iter().all(|s| {
        algebra
            .iter()
            .filter(|(b, _)| table[s.sym_diff(*b).0 as usize].is_zero())
            .all(|(_, mu)| table[s.0 as usize] == *mu)
    });
    on_algebra && on_closure
}

/// The measurable sets form an algebra on which `μ*` is additive over
/// disjoint pairs.
pub fn verify_measure_space(space: &FiniteSpace) -> bool {
    let table = outer_table(space);
    let measurable: Vec<FiniteSet> = space.all_sets().filter(|&e| splits(space, &table, e)).collect();
    let member: BTreeSet<FiniteSet> = measurable.iter().copied().collect();
    measurable.iter().all(|&a| {
        member.contains(&space.complement(a))
            && measurable.iter().all(|&b| {
                let u = a.union(b);
                let closed = member.contains(&u);
                let additive = a.intersect(b) != FiniteSet::EMPTY
                    || table[u.0 as usize] == &table[a.0 as usize] + &table[b.0 as usize];
                closed && additive
            })
    })
}

/// An algebra element `C` with `μ*(C △ e) ≤ 1/n`, together with that distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCover {
    pub cover: FiniteSet,
    pub distance: Rat,
}

/// Approximates a measurable `e` from the algebra by covering it and
/// truncating the cover. With finitely many blocks the truncation keeps the
/// whole minimal cover (the blocks meeting `e`), and measurability forces the
/// excess `C \ e` to be null.
pub fn truncated_cover(space: &FiniteSpace, e: FiniteSet, n: u64) -> Result<TruncatedCover, FiniteError> {
    if n == 0 {
        return Err(FiniteError::ZeroIndex);
    }
    let table = outer_table(space);
    if !splits(space, &table, e) {
        return Err(FiniteError::NotMeasurable);
    }
    let cover = space
        .blocks
        .iter()
        .filter(|b| b.intersect(e) != FiniteSet::EMPTY)
        .fold(FiniteSet::EMPTY, |acc, b| acc.union(*b));
    let distance = table[cover.sym_diff(e).0 as usize].clone();
    debug_assert!(distance.is_zero());
    Ok(TruncatedCover { cover, distance })
}
