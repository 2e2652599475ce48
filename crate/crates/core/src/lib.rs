//! Exact obstruction calculus for embedded spheres and tori in the
//! boundaries of 4-manifolds.
//!
//! The crate mechanizes the computable parts of a family of
//! "Dehn's lemma in dimension four" arguments: linking numbers in surgered
//! 3-manifolds, Seifert-form concordance obstructions, splitting arithmetic
//! of unimodular intersection forms, the quadratic-residue criterion for
//! lens spaces, Legendrian slice-Bennequin bounds and Dehn-twist extension
//! subgroups. All arithmetic is exact.

pub mod factor;
pub mod forms_lattice;
pub mod knots;
pub mod legendrian;
pub mod linking_calculus;
pub mod matrix;
pub mod obstruction;
pub mod poly;
pub mod seifert_algebra;
pub mod surgery_model;
pub mod twist_calculus;

pub use matrix::{IntMatrix, RatMatrix};
pub use poly::{LaurentPoly, Poly};
