//! Toeplitz-plus-Hankel operators `M(φ) = T(φ) + H(φ)` with piecewise
//! continuous symbols, with finite-section checks of the analytic verdicts.
//!
//! Everything is generic over the float type; the aliases below fix `f64`.

// `!(x > 0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod factorization;
pub mod fredholm;
pub mod harness;
pub mod mellin;
pub mod operators;
pub mod quadrature;
pub mod scalar;
pub mod symbol;

pub use error::{Error, Result};
pub use scalar::{exact_rational, ModularArith, Rational, Real};
pub use symbol::{CoefficientTable, FourierSource, JumpFactor, LaurentPolynomial, PCSymbol, SmoothPart};

pub type C64 = num_complex::Complex<f64>;
pub type Symbol = PCSymbol<f64>;
pub type Laurent = LaurentPolynomial<f64>;
pub type Symbol32 = PCSymbol<f32>;
pub type Factorization = factorization::AsymmetricFactorization<f64>;
pub type Report = fredholm::FredholmReport<f64>;
pub type Section = operators::OperatorSection<f64>;
