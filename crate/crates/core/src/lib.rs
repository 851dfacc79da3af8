//! Exact heat-trace coefficients of compact and noncompact symmetric spaces.
//!
//! The heat series ℋ(t) = Σ 𝒜ₙ tⁿ is normalized so 𝒜₀ = 1. Rank-1 compact
//! spaces get closed forms built from Bernoulli numbers ([`rank1closed`]);
//! spaces with polynomial Plancherel density get ℋ = e^{κt}𝒫(t)
//! ([`plancherel`]). Series combine through products, duals and rescaling
//! ([`series`]) and are checked against an independent spectral oracle
//! ([`oracle`]) and for factorial growth ([`growth`]).

pub mod error;
pub mod exactnum;
pub mod growth;
pub mod oracle;
pub mod plancherel;
pub mod rank1closed;
pub mod seedpolys;
pub mod series;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
