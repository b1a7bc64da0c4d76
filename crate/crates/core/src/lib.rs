//! Exact computation with finite-dimensional algebras over Q and F_p:
//! quiver presentations with admissible relations, module calculus
//! (homs, kernels, direct sums, Krull-Schmidt decomposition), projective
//! and injective resolutions, cluster-tilting certification, both
//! directions of the Auslander-type correspondence between generators
//! and endomorphism algebras, and a complex-category model of the
//! module category with an explicit equivalence.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime
//! fields); every verdict comes with replayable matrix-level witnesses.

pub mod algebra;
pub mod complexes;
pub mod correspondence;
pub mod decompose;
pub mod error;
pub mod families;
pub mod fileio;
pub mod field;
pub mod homological;
pub mod matrix;
pub mod module;
pub(crate) mod poly;
pub mod quiver;
pub mod report;

pub use algebra::Algebra;
pub use complexes::{AddObject, ComplexCategory, ComplexObject, EquivalenceReport};
pub use decompose::{decompose, end_algebra, is_isomorphic, Decomposition, EndData};
pub use error::{CoreError, Result};
pub use families::{generate_family, Family, FamilyKind, FamilySpec};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use module::Module;
pub use quiver::{algebra_from_presentation, Arrow, QuiverPresentation, RelationTerm};
