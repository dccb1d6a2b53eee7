//! Finite, exactly reconstructing expansions of classical orthogonal
//! polynomials in Hermite and Laguerre polynomials, built from generating
//! functions, together with tools that measure their asymptotic orders and
//! limit relations.

pub mod asymptotics;
pub mod closed_forms;
pub mod error;
pub mod hermite_expansion;
pub mod laguerre_expansion;
pub mod polyfamilies;
pub mod powerseries;
pub mod scalar;

pub use asymptotics::{Grid, LimitCase, OrderEstimate, TruncationSetup, TruncationStudy};
pub use error::{Error, Result};
pub use hermite_expansion::{build_hermite_plan, HermitePlan};
pub use laguerre_expansion::{solve_plan, FreeParamMode, LaguerrePlan};
pub use polyfamilies::{Family, FamilyKind, FamilySpec, GeneratingForm, PolarMP};
pub use powerseries::{ScaledForm, TruncatedSeries};
pub use scalar::{MpComplex, Precision, Scalar, DEFAULT_DIGITS};
