//! Partial set multi-cover toolkit.
//!
//! Given elements with integer covering requirements, a family of
//! costed sets, and a covering ratio `q`, the partial set multi-cover
//! problem asks for a cheapest sub-collection that *fully covers* (hits
//! with `req(e)` distinct sets) at least `ceil(q * n)` elements. This
//! crate provides:
//!
//! - [`instance`]: the problem model, exact coverage semantics and
//!   residual updates;
//! - [`oracles`]: exhaustive solvers for small instances, the ground
//!   truth everything else is tested against;
//! - [`greedy`]: the bicriteria driver that repeatedly takes an
//!   (approximately) minimum-density sub-collection of the residual
//!   instance, plus a verifier for all of its cost bounds;
//! - [`lp`]: the natural relaxation and the cover-set relaxation solved
//!   by column generation with a cheapest-witness pricing pass;
//! - [`mdsc_approx`]: the relaxation-guided density approximation
//!   (bucket the fractional values, multi-cover the heaviest bucket);
//! - [`generators`]: reproducible instance families and a seeded random
//!   generator.
//!
//! Densities and covering ratios are exact rationals ([`Ratio`]); every
//! greedy decision and tie-break is integer arithmetic, so runs are
//! deterministic across platforms.

pub mod error;
pub mod generators;
pub mod greedy;
pub mod instance;
pub mod lp;
pub mod mdsc_approx;
pub mod oracles;
pub mod ratio;

pub use error::{Error, Result};
pub use instance::{Instance, ReducedInstance, ResidualState, SubCollection};
pub use ratio::Ratio;
