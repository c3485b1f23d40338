//! Coefficient bounds for the class `R(a,b;c)` of normalized analytic
//! functions whose Hohlov image satisfies `I(a,b;c) f(z)/z ≺ √(1+z)`, and a
//! brute-force harness that checks each bound over the Carathéodory class.
//!
//! Layers, bottom up: [`series`] (truncated power series), [`operator`]
//! (Pochhammer multipliers and the operator), [`caratheodory`] (coefficient
//! data of `Re φ > 0` functions), [`bounds`] (closed-form right-hand sides and
//! the functionals), [`verifier`] (membership and maximization).

// `!(x > y)` style checks are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod caratheodory;
pub mod error;
pub mod operator;
pub mod series;
pub mod series_file;
pub mod verifier;

pub use num_complex::Complex64;

pub use crate::bounds::{BoundSpec, BoundStatus, FunctionalId, Mu};
pub use crate::caratheodory::{CaratheodoryPoint, HerglotzAtoms, LzPoint};
pub use crate::error::{Error, Result};
pub use crate::operator::{HohlovParams, MultiplierSequence, Preset};
pub use crate::series::TruncatedSeries;
pub use crate::verifier::{SearchConfig, VerificationReport, VerificationStatus};
