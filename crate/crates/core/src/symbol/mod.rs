//! Piecewise continuous symbols on the unit circle.

mod laurent;
mod pc;

pub use laurent::LaurentPolynomial;
pub use pc::{CoefficientTable, FourierSource, JumpFactor, PCSymbol, SmoothPart};
