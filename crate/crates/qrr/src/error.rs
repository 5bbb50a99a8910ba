//! Error taxonomy for the engine.
//!
//! Every failure mode is a dedicated variant so that callers (and the CLI
//! exit-code mapping) can tell configuration mistakes apart from genuine
//! arithmetic tripwires like [`Error::InexactDivision`], which must never
//! fire during a verification run.

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mixing denominators whose least common multiple exceeds [`crate::qseries::MAX_DENOM`].
    #[error("exponent denominator {0} exceeds the configured maximum")]
    DenomOverflow(i128),

    /// An exponent rescaling produced a power of q not representable in 1/D units.
    #[error("exponent {num}/{den} of q^(1/{denom}) units is not representable")]
    ExponentNotRepresentable { num: i64, den: i64, denom: u32 },

    /// A series with a negative exponent was built without declaring `allows_negative`.
    #[error("negative exponent {0} in an ordinary series (Laurent content must be declared)")]
    UndeclaredNegativeExponent(i64),

    /// Inversion requires constant term +1 or -1.
    #[error("series is not invertible: constant term {0}")]
    NonInvertible(BigInt),

    /// Exact integer division failed. This doubles as a correctness tripwire:
    /// it must never fire in the verification suite.
    #[error("inexact division: coefficient {coeff} at exponent {exponent} units is not divisible by {divisor}")]
    InexactDivision {
        exponent: i64,
        coeff: BigInt,
        divisor: BigInt,
    },

    /// A sign twist q -> -q or a parity split was requested on fractional exponents.
    #[error("operation requires integer powers of q, found exponent {0} units")]
    FractionalExponent(i64),

    /// A coefficient beyond the trusted truncation order was requested.
    #[error("exponent {requested} units is beyond the trusted order {order}")]
    BeyondTruncation { requested: i64, order: i64 },

    /// Two series in different auxiliary variables were combined.
    #[error("auxiliary variable mismatch: {0} vs {1}")]
    VariableMismatch(char, char),

    /// A Laurent-window product grew past the configured bound.
    #[error("window of {0} variable exponents exceeds the configured bound")]
    WindowOverflow(usize),

    /// A coefficient outside the certified window of an incomplete series was requested.
    #[error("coefficient of {var}^{power} is outside the certified window")]
    BeyondGuarantee { var: char, power: i64 },

    /// An operation would push the trusted order below zero.
    #[error("trusted order exhausted: adjustment leaves order {0}")]
    OrderExhausted(i64),

    /// Composition or evaluation outside the supported exponent range.
    #[error("unsupported composition: {0}")]
    UnsupportedComposition(String),

    /// An infinite product whose factors do not tend to 1.
    #[error("divergent infinite product: argument has q-order {0} units")]
    DivergentProduct(i64),

    /// A theta argument that the quasi-periodic normalization cannot handle.
    #[error("theta argument requires normalization: {0}")]
    NormalizationRequired(String),

    /// Brute-force enumeration was asked to go past its configured limit.
    #[error("enumeration of partitions of {n} exceeds the limit {limit}")]
    EnumerationLimit { n: u32, limit: u32 },

    /// Two internal computation routes disagreed. Must never fire.
    #[error("engine inconsistency: {0}")]
    EngineInconsistency(String),

    /// An identity instantiation that is not admissible (e.g. an undefined
    /// square root). Reported as a skip, not a failure.
    #[error("inadmissible instantiation: {0}")]
    InadmissibleInstantiation(String),

    /// Unknown identity id passed to the verifier.
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),

    /// Unknown series name passed to a builder lookup.
    #[error("unknown series name {0:?}")]
    UnknownSeries(String),
}
