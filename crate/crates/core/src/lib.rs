//! Executable Γ-sets and 𝕊-algebras: Eilenberg–MacLane and monoid algebras,
//! hyperring quotients, the k-relation model of `H𝔹 ∧ H𝔹`, assembly maps and
//! divisor sections over the compactified `Spec ℤ`.

pub mod arakelov;
pub mod assembly;
pub mod constructions;
pub mod error;
pub mod gamma;
pub mod krel;
pub mod quotient;
pub mod rational;
pub mod rays;
pub mod semiring;
pub mod suite;

pub use error::{GammaError, Result};
pub use gamma::{compose, smash_index, standard_maps, GammaSet, PointedMap, PointedSet, SAlgebra};
pub use rational::Rational;
pub use semiring::{FiniteMonoid, FiniteSemiring};
