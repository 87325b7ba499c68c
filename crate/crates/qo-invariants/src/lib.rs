//! Exact invariants of irreducible quasi-ordinary surface prototypes.
//!
//! Given the characteristic tuple of a branch — an ordered list of
//! exponent pairs `(lambda1, lambda2)` with positive leading pair and
//! componentwise increasing terms — this crate computes, in exact
//! rational arithmetic:
//!
//! - the two derivation towers (one per coordinate axis), each level
//!   carrying its lowest-terms data, truncation degree, sheet-count
//!   ratios, numerator gcd, and minimal unimodular completion;
//! - degree and transverse-fiber Euler characteristics per level;
//! - horizontal and vertical monodromy zeta functions as factored
//!   products `prod (t^a - 1)^{e_a}`;
//! - the SL(2, Z) comparison matrices relating the two towers, with a
//!   mechanical verification of every structural identity they satisfy;
//! - the 1-eigenspace dimensions of the vertical monodromy and the
//!   first Betti numbers of the vertical fibration spaces and of the
//!   Milnor fiber boundary.
//!
//! The `qo-invariants` binary wraps the pipeline behind a small JSON
//! input format; see [`input::InputDocument`] and [`report::run`].

pub mod branch;
pub mod comparison;
pub mod error;
pub mod exact;
pub mod input;
pub mod invariants;
pub mod report;
pub mod zeta;

pub use branch::{Axis, CharacteristicTuple, DerivationSequence, ExponentPair, LevelInvariants};
pub use error::{Error, Result, ValidationError};
pub use exact::{Mat2, Rational};
pub use input::InputDocument;
pub use report::{run, AxisSelection, Format, Mode, RunOptions, RunOutcome};
pub use zeta::CycloProduct;
