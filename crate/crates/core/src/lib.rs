//! Self-dual double circulant codes over finite fields.
//!
//! The crate builds GF(p^m), factors x^n - 1 into self-reciprocal factors and
//! reciprocal pairs, constructs double circulant codes `(I | A)`, decides
//! self-duality, counts and enumerates all self-dual double circulant codes
//! of a given length (closed-form count, CRT construction and brute force),
//! checks their dihedral and consta-dihedral symmetries, and computes the
//! q-ary entropy bound used in distance comparisons.

pub mod census;
pub mod cli;
pub mod double_circulant;
pub mod error;
pub mod finite_field;
pub mod polyring;
pub mod symmetry;

pub use double_circulant::{CodeRecord, Codeword, DoubleCirculantCode};
pub use error::{Error, Result};
pub use finite_field::{make_field, parse_field, FieldElement, FieldSpec};
pub use polyring::{factor_xn_minus_1, Poly, XnFactorization};
