//! Exact computation of invariants of plane curve singularities: colengths
//! and Hilbert-Samuel data of zero-dimensional ideals in `k[x, y]` localized
//! at the origin, Tjurina and equisingularity ideals, and the gamma
//! invariants built from complete intersection ideals containing them.

pub mod error;
pub mod poly;
pub mod invariants;
pub mod standard_basis;
pub mod gamma;
pub mod cli;

pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrdering, Polynomial, Rational, Weights};
pub use standard_basis::{HilbertSamuelData, Ideal};
