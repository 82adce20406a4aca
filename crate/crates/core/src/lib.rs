//! Threefolds of bidegree (1,p) in the six-dimensional quadric
//! `Q6 = {x1x8 - x2x7 + x3x6 - x4x5 = 0}`: exact models, intersection
//! counts, and the smoothness and irreducibility decision procedures.

pub mod acceptance;
pub mod algebra;
pub mod classify;
pub mod error;
pub mod intersect;
pub mod io;
pub mod quadspace;
pub mod varieties;

pub use error::{Error, Result};
