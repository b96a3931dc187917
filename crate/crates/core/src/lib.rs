//! Exact computations with Lie conformal algebras given by finite tables:
//! axiom checks, spaces of (triple) derivations and centroids, and the
//! decomposition of triple homomorphisms.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix
//! the field to arbitrary-precision rationals.

pub mod confalgebra;
pub mod confmap;
pub mod confmodule;
pub mod derivspaces;
pub mod dsl;
pub mod error;
pub mod exactpoly;
pub mod liealgebra;
pub mod modlinalg;
pub mod scalar;
pub mod triplehom;

pub use error::{Error, Result};
pub use exactpoly::{Monomial, Var};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type Poly = exactpoly::Poly<Rational>;
pub type ModElement = confmodule::ModElement<Rational>;
pub type LieAlgebra = liealgebra::LieAlgebra<Rational>;
pub type ConformalAlgebra = confalgebra::ConformalAlgebra<Rational>;
pub type ConformalMap = confmap::ConformalMap<Rational>;
pub type ModuleMap = confmap::ModuleMap<Rational>;
pub type SubmoduleBasis = modlinalg::SubmoduleBasis<Rational>;
pub type SolutionSpace = derivspaces::SolutionSpace<Rational>;
pub type Decomposition = triplehom::Decomposition<Rational>;
