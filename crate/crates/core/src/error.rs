use thiserror::Error;

use crate::hodge::CorrelatorKey;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("coefficient x^{requested} requested from a series truncated at order {order}")]
    OrderTooLow { requested: usize, order: usize },

    #[error("series is not invertible under composition: {0}")]
    BadSeries(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,

    #[error("linear system is inconsistent at row {row}")]
    Inconsistent { row: usize },

    #[error("(g, n) = ({genus}, {points}) is unstable")]
    Unstable { genus: u32, points: usize },

    #[error("exponents {exponents:?} do not satisfy the dimension constraint")]
    DimensionMismatch { exponents: Vec<u32> },

    #[error("unsupported lambda content in {0}")]
    UnsupportedLambdaMonomial(CorrelatorKey),

    #[error("symbolic correlator {0} reached a numeric-only computation")]
    SymbolicAtom(CorrelatorKey),

    #[error("product of two unknown correlators in a relation")]
    NonlinearAtomProduct,

    #[error("cannot add scalars with phases {0} and {1}")]
    PhaseMismatch(u8, u8),

    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("unsupported instance: {0}")]
    Unsupported(String),
}
