//! Exact computer algebra for truncated q-series, built to mechanically
//! verify the Rogers-Ramanujan identities and the web of classical identities
//! around them: constant-term representations, quadratic transformations,
//! Rogers' operator calculus, coefficient recursions, and the partition
//! interpretations of every series involved.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision integers,
//! exponents are integers counting 1/D units of a configurable denominator D
//! (D = 4 covers every fractional power that appears), and every series
//! carries a trusted truncation order that operations propagate and refuse
//! to exceed.
//!
//! The layers, bottom up:
//!
//! - [`qseries`]: sparse truncated series in q ([`QSeries`], [`Monomial`]).
//! - [`formal`]: truncated Laurent series in one auxiliary variable with
//!   q-series coefficients ([`FormalSeries`]), hosting the constant-term
//!   operator and the q-derivative.
//! - [`special`]: q-Pochhammer symbols, theta functions (product and
//!   Jacobi-sum form), Euler expansions, q-exponentials, the H_k family.
//! - [`builders`]: the named series R, G, H, A, B, F and the product sides,
//!   plus constant-term representations computed by two independent routes.
//! - [`registry`]: the identity catalogue and the verifier.
//! - [`recursion`]: the coefficient recursions determined by the dissection
//!   identities.
//! - [`partitions`]: independent combinatorial oracles (dynamic programming
//!   and brute-force enumeration).

pub mod builders;
pub mod error;
pub mod formal;
pub mod partitions;
pub mod qseries;
pub mod recursion;
pub mod registry;
pub mod special;

pub use builders::{SeriesBuilder, SeriesName};
pub use error::{Error, Result};
pub use formal::FormalSeries;
pub use partitions::PartitionClass;
pub use qseries::{Monomial, QSeries};
pub use recursion::RecursionTables;
pub use registry::{IdentitySpec, Status, VerificationReport};

/// Default verification order in whole powers of q.
pub const DEFAULT_ORDER_Q: i64 = 100;

/// Default exponent denominator; covers the q^(1/4) identities.
pub const DEFAULT_DENOM: u32 = 4;
