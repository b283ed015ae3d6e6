//! Measurable sets as limit points.
//!
//! Starting from the algebra of finite unions of half-open rational intervals
//! in `[0,1)` with its length premeasure, this crate builds the completion
//! under the pseudometric `d(A, B) = μ*(A △ B)`. Elements of the completion
//! are approximation oracles; their measures and mutual distances are
//! evaluated as exact rational intervals that are guaranteed to contain the
//! true value.
//!
//! - [`interval_algebra`]: the algebra, premeasure and pseudometric, exact.
//! - [`limit_points`]: measurable sets as oracles, the algebra operations on
//!   them, countable unions, and certified measure evaluation.
//! - [`finite_oracle`]: brute-force outer measure and measurability on finite
//!   universes, used as ground truth.
//! - [`set_dsl`]: a small expression language compiling to oracles, with
//!   Cantor-type builtins.
//! - [`laws`]: a seeded randomized law suite.

pub mod finite_oracle;
pub mod interval_algebra;
pub mod laws;
pub mod limit_points;
pub mod rat;
pub mod set_dsl;

pub use interval_algebra::{AlgebraElement, AlgebraError, Interval};
pub use limit_points::{ApproxError, ErrorInterval, MeasurableSet, TailBound};
pub use rat::Rat;
