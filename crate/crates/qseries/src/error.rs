//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by series arithmetic and by spec validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live on different exponent lattices; the caller must
    /// rescale one of them first.
    #[error("lattice mismatch: denominator {left} vs {right}")]
    LatticeMismatch { left: u32, right: u32 },

    /// Reciprocal of a series that is zero on its whole window.
    #[error("cannot invert a series that is zero on its exact window")]
    ZeroReciprocal,

    /// Reciprocal requires a unit leading coefficient over the integers.
    #[error("leading coefficient {leading} is not a unit; reciprocal would leave the integers")]
    NonUnitLeading { leading: String },

    /// q -> -q is only defined when every exponent is an integer.
    #[error("q -> -q is undefined on a series with fractional exponents (denominator {denom})")]
    FractionalNegate { denom: u32 },

    /// Coefficient queries beyond the truncation order never default to zero.
    #[error("coefficient at exponent {requested}/{denom} requested, but series is exact only through {order}/{denom}")]
    CoefficientBeyondOrder {
        requested: i64,
        order: i64,
        denom: u32,
    },

    /// A spec failed its declared invariants before any expansion started.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// Continued-fraction certification ran out of depth without agreement.
    #[error("no convergent of depth <= {max_depth} matches the product form through order {order}")]
    DepthExhausted { max_depth: u32, order: i64 },

    /// Exhaustive enumeration refused: the request exceeds the budget.
    #[error("enumeration bound {requested} exceeds the budget {budget}")]
    EnumerationBudget { requested: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
