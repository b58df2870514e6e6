//! Polynomially deformed sl(2) algebras: commutator/structure-function
//! coefficient conversions, unitary finite-dimensional representations,
//! identity verification, shifted Higgs and quadratic families, Hopf
//! structure on tensor products, and the U_q(sl(2)) limit.
//!
//! Everything numeric is generic over [`Scalar`] (exact [`Rational`] or
//! floating point) or [`Real`] (`f32`, `f64`). The aliases at the crate
//! root fix the usual `f64` choice.

pub mod coefficients;
pub mod error;
pub mod families;
pub mod halfint;
pub mod hopf;
pub mod linalg;
pub mod qdeform;
pub mod repbuilder;
pub mod scalar;
pub mod structure;
pub mod verifier;

pub use coefficients::{alpha_from_beta, beta_from_alpha, AlphaCoeffs, BetaCoeffs};
pub use error::{Error, Result};
pub use families::{FamilySolution, ScanFamily, ScanRow, SolutionKind};
pub use halfint::HalfInt;
pub use hopf::{FormalTensor, ProductRep};
pub use qdeform::QParam;
pub use repbuilder::{MatrixRep, RepFamily};
pub use scalar::{Rational, Real, Scalar};
pub use structure::{Family, StructureSpec};
pub use verifier::{Check, CheckKind, VerificationReport};

pub type Rep64 = MatrixRep<f64>;
pub type Rep32 = MatrixRep<f32>;
pub type Spec64 = StructureSpec<f64>;
pub type Family64 = Family<f64>;
pub type ProductRep64 = ProductRep<f64>;
