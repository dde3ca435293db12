//! Cubic residuacity of real quadratic integers.
//!
//! Given a real quadratic integer u = A + B*sqrt(D) whose norm is a perfect
//! cube (and which is not itself a cube), this crate decides which classes
//! of the binary quadratic form class group of discriminant 4d,
//! d = -27*C^2*D, represent primes p = 1 (mod 3) modulo which u is a cubic
//! residue. The decision runs through cubic residue symbols over the
//! Eisenstein integers and is cross-checked against a brute-force
//! exponentiation oracle.

pub mod batch;
pub mod classmap;
pub mod eisenstein;
mod error;
pub mod intutil;
pub mod qform;
pub mod quadint;
pub mod residuacity;

pub(crate) mod bigser;

pub use error::{Error, Result};
