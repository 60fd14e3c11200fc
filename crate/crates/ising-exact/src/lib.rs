//! Exact series, high-precision numerics and consistency checks for the
//! two-dimensional Ising model: Toeplitz correlations, diagonal form factors,
//! Painlevé VI/III relations, susceptibility terms and ODE fitting over GF(p).

pub mod chi;
pub mod error;
pub mod formfactor;
pub mod numerics;
pub mod odehunt;
pub mod painleve;
pub mod params;
pub mod series;
pub mod toeplitz;

pub use error::{Error, Result};
