//! Exact realizations of the Clifford algebras Cℓ_n on spinor spaces built
//! from ℂ, ℍ and 𝕆, witnesses and obstructions for the Hardy-space
//! decomposition problem, and discrete Fourier-multiplier checks of the
//! Cauchy / boundary / Riesz operator identities.
//!
//! Layout:
//! - [`division`]: Cayley–Dickson arithmetic over exact rationals.
//! - [`linalg`]: exact rational matrices, signed permutations, subspaces.
//! - [`clifford`]: generator matrices and the realization of Cℓ_n.
//! - [`gilbert`]: witnesses (η, ℌ₀), condition checks, obstructions.
//! - [`hardy`]: periodic-grid multiplier operators and numeric suites.

pub mod clifford;
pub mod division;
pub mod error;
pub mod gilbert;
pub mod hardy;
pub mod linalg;

pub use error::{Error, Result};

/// Arbitrary-precision rational used by every exact computation.
pub type Rational = num_rational::BigRational;

/// Library version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
