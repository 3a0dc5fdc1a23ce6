//! Fischer decompositions `f = P·q + h` with `Δᵏh = 0`, exact sphere inner
//! products, spectral bounds for multiplication operators on the circle, and
//! harmonic extension of boundary data on quadric domains.

pub mod coeff;
pub mod dirichlet;
pub mod entire;
pub mod error;
pub mod fischer;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod spectral;
pub mod sphere;
pub mod verify;

pub use coeff::{Coeff, Rational};
pub use error::{Error, Result};
pub use poly::{HomogeneousPolynomial, MultiIndex, Polynomial};
