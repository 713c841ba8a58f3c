//! Exact verification of the symmetrized cut-join equation for the
//! three-partition Hodge integrals, with ψ-intersection numbers, Lagrange
//! inversion and relation extraction.

pub mod algebra;
pub mod cutjoin;
pub mod error;
pub mod hodge;
pub mod inversion;

pub use algebra::{
    Coefficient, PhaseScalar, Rational, TauFun, TauPoly, XSeries, YPoly, YPolynomial,
};
pub use error::{Error, Result};
pub use hodge::{CmgPolynomial, CorrelatorKey, CorrelatorProvider, HodgeValue};
pub use inversion::InversionContext;
