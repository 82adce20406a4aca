//! Exact arithmetic substrate: scalars, polynomials, binary forms, matrices.

pub mod binform;
pub mod matrix;
pub mod poly;
pub mod residue;
pub mod scalar;
pub mod univariate;

pub use binform::{gcd_forms, gcd_many, BinaryForm};
pub use matrix::Matrix;
pub use poly::{resultant, MultiPoly};
pub use residue::{split_eval, ResidueRing, Split};
pub use scalar::{int, rat, Field, Scalar};
pub use univariate::UniPoly;
