//! Exact arithmetic: rationals, rational functions of τ, truncated series,
//! sparse polynomials, phase-tracked scalars and a rational linear solver.

mod coefficient;
mod linsolve;
mod phase;
pub mod rational;
mod series;
mod taufun;
mod taupoly;
mod ypoly;

pub use coefficient::{AtomPoly, Coefficient};
pub use linsolve::{LinearSystem, Solution};
pub use phase::PhaseScalar;
pub use rational::Rational;
pub use series::XSeries;
pub use taufun::TauFun;
pub use taupoly::{ParsePolyError, TauPoly};
pub use ypoly::{Monomial, YPoly, YPolynomial};
