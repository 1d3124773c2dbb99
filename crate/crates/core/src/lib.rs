//! Volterra operators `V_g f(z) = ∫_0^z f(ζ) g'(ζ) dζ` with polynomial symbols,
//! their resolvents, and their spectra on weighted sup-norm spaces and Hörmander algebras.

pub mod error;
pub mod harness;
pub mod operators;
pub mod series;
pub mod spectra;
pub mod weights;

pub use error::{Error, Result};
pub use series::{Complex, TruncatedSeries};
