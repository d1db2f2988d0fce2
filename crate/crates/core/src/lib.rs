//! Tensor calculus for the exceptional-series Lie algebras
//! `{a1, a2, g2, d4, f4, e6, e7, e8}`.
//!
//! Two engines live side by side:
//!
//! * an **exact engine** ([`formulas`], [`level3`]) that evaluates every
//!   closed-form family formula (dimensions, Casimir eigenvalues, spectral
//!   data of the adjoint tensor square) in arbitrary-precision rational
//!   arithmetic, parametrised by the Deligne parameter `m`;
//! * a **numeric engine** ([`structure`], [`level2`], [`tensors`], [`d4`])
//!   that constructs Killing-orthonormal structure constants from root
//!   systems, builds the projectors and Clebsch tensors of `ad ⊗ ad`, the
//!   matrix basis and its ten product laws, and verifies the whole identity
//!   suite at floating-point tolerance.
//!
//! Numeric code is generic over the scalar type via [`scalar::Real`]
//! (implemented for `f32` and `f64`); the concrete aliases below pin the
//! default `f64` instantiation.

pub mod algebra;
pub mod d4;
pub mod error;
pub mod formulas;
pub mod level2;
pub mod level3;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod structure;
pub mod tensors;

pub use algebra::{catalog, AlgebraName, Family, FamilyAlgebra};
pub use error::Error;
pub use formulas::Level2Constants;
pub use report::{IdentityCheck, VerificationReport};

/// Exact rational scalar used by the formula and level-3 engines.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rational`].
pub type Integer = num_bigint::BigInt;

/// Default scalar for the numeric engine.
pub type Real64 = f64;

/// Structure constants at the default scalar.
pub type StructureTensor = structure::StructureTensor<Real64>;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
