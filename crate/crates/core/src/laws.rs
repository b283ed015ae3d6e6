//! Seeded randomized checks of the exact algebraic laws: pseudometric axioms,
//! the union bound, complement isometry, and finite additivity.
//!
//! The distance under test is a parameter so the harness can be pointed at a
//! deliberately broken implementation and shown to catch it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval_algebra::{self, AlgebraElement, Interval};
use crate::limit_points::{embed, limit_union, measure_with_error};
use crate::rat::Rat;

pub type DistanceFn = fn(&AlgebraElement, &AlgebraElement) -> Rat;

pub const MAX_INTERVALS: usize = 6;
pub const MAX_DENOMINATOR: i64 = 64;

/// A random element built from at most [`MAX_INTERVALS`] raw intervals whose
/// endpoints share a denominator of at most [`MAX_DENOMINATOR`], so
/// overlaps and exact adjacencies are common.
pub fn random_element(rng: &mut impl Rng) -> AlgebraElement {
    let q = rng.gen_range(1..=MAX_DENOMINATOR);
    let k = rng.gen_range(0..=MAX_INTERVALS);
    let raw = (0..k)
        .map(|_| {
            let a = rng.gen_range(0..=q);
            let b = rng.gen_range(0..=q);
            Interval::new(Rat::new(a.min(b), q), Rat::new(a.max(b), q)).expect("endpoints in [0,1]")
        })
        .collect();
    interval_algebra::normalize(raw).expect("endpoints in [0,1]")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// First falsifying instance, rendered in canonical text form.
    pub counterexample: Option<String>,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::holds)
    }

    pub fn get(&self, name: &str) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

type Check = fn(&mut ChaCha8Rng, DistanceFn) -> Result<(), String>;

fn show(els: &[&AlgebraElement]) -> String {
    els.iter()
        .enumerate()
        .map(|(i, e)| format!("a{}={{{e}}}", i + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn identity(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let a = random_element(rng);
    let v = d(&a, &a);
    if v.is_zero() {
        Ok(())
    } else {
        Err(format!("{} d(a1,a1)={v}", show(&[&a])))
    }
}

fn symmetry(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let (a, b) = (random_element(rng), random_element(rng));
    let (ab, ba) = (d(&a, &b), d(&b, &a));
    if ab == ba {
        Ok(())
    } else {
        Err(format!("{} d(a1,a2)={ab} d(a2,a1)={ba}", show(&[&a, &b])))
    }
}

fn triangle(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let (a, b, c) = (random_element(rng), random_element(rng), random_element(rng));
    let (ac, ab, bc) = (d(&a, &c), d(&a, &b), d(&b, &c));
    if ac <= &ab + &bc {
        Ok(())
    } else {
        Err(format!("{} d(a1,a3)={ac} > {ab} + {bc}", show(&[&a, &b, &c])))
    }
}

fn union_bound(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let q: Vec<AlgebraElement> = (0..4).map(|_| random_element(rng)).collect();
    let lhs = d(&q[0].union(&q[1]), &q[2].union(&q[3]));
    let rhs = d(&q[0], &q[2]) + d(&q[1], &q[3]);
    if lhs <= rhs {
        Ok(())
    } else {
        Err(format!(
            "{} d(a1∪a2,a3∪a4)={lhs} > {rhs}",
            show(&[&q[0], &q[1], &q[2], &q[3]])
        ))
    }
}

fn complement_isometry(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let (a, b) = (random_element(rng), random_element(rng));
    let (plain, comp) = (d(&a, &b), d(&a.complement(), &b.complement()));
    if plain == comp {
        Ok(())
    } else {
        Err(format!("{} d(a1,a2)={plain} d(a1ᶜ,a2ᶜ)={comp}", show(&[&a, &b])))
    }
}

/// Pseudometric recovers the premeasure of disjoint pieces: with
/// `a` and `b \ a`, `d(a ∪ (b\a), ∅) = d(a, ∅) + d(b\a, ∅)`.
fn additivity(rng: &mut ChaCha8Rng, d: DistanceFn) -> Result<(), String> {
    let (a, b) = (random_element(rng), random_element(rng));
    let rest = b.intersect(&a.complement());
    let empty = AlgebraElement::empty();
    let whole = d(&a.union(&rest), &empty);
    let parts = d(&a, &empty) + d(&rest, &empty);
    if whole == parts {
        Ok(())
    } else {
        Err(format!("{} μ(a1∪(a2\\a1))={whole} ≠ {parts}", show(&[&a, &b])))
    }
}

/// Finite additivity of the extended measure with certified intervals.
fn limit_additivity(rng: &mut ChaCha8Rng, _d: DistanceFn) -> Result<(), String> {
    let (a, b) = (random_element(rng), random_element(rng));
    let rest = b.intersect(&a.complement());
    let (sa, sb) = (embed(a.clone()), embed(rest));
    let eps = Rat::new(1, 1 << rng.gen_range(1..=10));
    let parts = measure_with_error(&sa, &eps)
        .and_then(|x| Ok(x.add(&measure_with_error(&sb, &eps)?)))
        .map_err(|e| e.to_string())?;
    let whole = measure_with_error(&limit_union(&sa, &sb), &(&eps + &eps)).map_err(|e| e.to_string())?;
    if parts.overlaps(&whole) {
        Ok(())
    } else {
        Err(format!("{} eps={eps} parts={parts} union={whole}", show(&[&a, &b])))
    }
}

fn canonicity(rng: &mut ChaCha8Rng, _d: DistanceFn) -> Result<(), String> {
    let (a, b) = (random_element(rng), random_element(rng));
    let outputs = [a.union(&b), a.intersect(&b), a.complement(), a.sym_diff(&b)];
    let idempotent = interval_algebra::normalize(a.intervals().to_vec()).as_ref() == Ok(&a);
    if idempotent && outputs.iter().all(AlgebraElement::is_canonical) {
        Ok(())
    } else {
        Err(show(&[&a, &b]))
    }
}

pub const LAWS: &[(&str, Check)] = &[
    ("pseudometric.identity", identity),
    ("pseudometric.symmetry", symmetry),
    ("pseudometric.triangle", triangle),
    ("union_bound", union_bound),
    ("complement_isometry", complement_isometry),
    ("premeasure_additivity", additivity),
    ("limit_additivity", limit_additivity),
    ("canonical_form", canonicity),
];

/// Runs every law `trials` times with the given distance. Each law gets its
/// own generator derived from `seed`, so outcomes do not depend on law order.
pub fn run_laws_with(trials: usize, seed: u64, distance: DistanceFn) -> LawReport {
    let outcomes = LAWS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut passed = 0;
            let mut counterexample = None;
            for _ in 0..trials {
                match check(&mut rng, distance) {
                    Ok(()) => passed += 1,
                    Err(msg) => {
                        counterexample.get_or_insert(msg);
                    }
                }
            }
            LawOutcome {
                name,
                trials,
                passed,
                counterexample,
            }
        })
        .collect();
    LawReport { outcomes }
}

pub fn run_laws(trials: usize, seed: u64) -> LawReport {
    run_laws_with(trials, seed, interval_algebra::distance)
}
