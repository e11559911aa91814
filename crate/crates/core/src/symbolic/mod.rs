//! Exact polynomial arithmetic over the Gaussian rationals and the operator
//! expression front end.

mod gauss;
mod multipoly;
mod parser;
mod sturm;
mod unipoly;

pub use gauss::{rational_to_f64, GaussRational};
pub use multipoly::{Monomial, MultiPoly, PolyOp};
pub use parser::{parse_gauss, parse_operator};
pub use sturm::{real_roots_with_multiplicity, sturm_count_real_roots, IsolatedRoot, SturmChain};
pub use unipoly::{real_poly_gcd, square_free_decomposition, UniPolyC, UniPolyQ, TRIM_RELATIVE};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("spatial dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expression `{0}` is not a constant")]
    NotConstant(String),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires real coefficients")]
    NotReal,
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("non-finite coefficient")]
    NonFinite,
}
