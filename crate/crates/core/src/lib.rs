//! Exact Chevalley–Eilenberg cohomology of the Witt and Virasoro algebras on
//! finite index windows.
//!
//! The numeric core is generic over [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals, which is what every report uses.

pub mod algebra;
pub mod cochains;
pub mod cohomology;
pub mod error;
pub mod knowncocycles;
pub mod linsolve;
pub mod normalizer;
pub mod scalar;

pub use algebra::{Algebra, Combination, Generator, ModuleElement, ModuleTag};
pub use cochains::{CochainKey, CochainShape, CochainView, Component, HomogeneousCochain};
pub use error::Error;
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Cochain = HomogeneousCochain<Rational>;
