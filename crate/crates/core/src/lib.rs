//! Exact arithmetic and symbolic dynamics for d-Bonacci Pisot units.
//!
//! The d-Bonacci number is the Pisot root of `x^d = x^{d-1} + ... + x + 1`
//! (d=2 gives the golden ratio, d=3 the Tribonacci number). This crate
//! implements, with no floating-point decisions anywhere on the critical
//! path:
//!
//! - [`field`]: the number field `Q(beta)` on the power basis, with exact
//!   sign determination via adaptive-precision dyadic interval arithmetic,
//!   congruence classes modulo `beta - 1`, and the Galois embedding into
//!   `R^{d-1}`.
//! - [`dynamics`]: the symmetric (digits `-1,0,1`) and balanced (digits
//!   `0,1`) beta-transformations, expansion generation, exact cycle
//!   detection, the conjugacy between the two systems, admissibility
//!   automata and the purely periodic integer points.
//! - [`tiling`]: Rauzy-fractal tile approximations by preimage trees,
//!   exact tile membership at lattice points, layer classification and
//!   covering-degree reports.
//!
//! Everything is deterministic: values are exact rational vectors, interval
//! refinement is reproducible, and sampling uses an explicit seeded
//! generator.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod dyadic;
pub mod dynamics;
mod error;
pub mod field;
pub mod rng;
pub mod roots;
pub mod text;
pub mod tiling;

pub use error::Error;

/// Convenience result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
