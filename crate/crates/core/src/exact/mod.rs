//! Exact scalar and polynomial arithmetic: big rationals, polynomials in the
//! formal variable `N`, square classes, interpolation and determinants.

mod display;
mod factor;
mod interp;
mod matrix;
mod parse;
mod poly;
mod square_class;

use num_bigint::BigInt;
use thiserror::Error;

pub use display::{binomial_exponent, factored, formula, polynomial_class, FactorOrder, Style};
pub use factor::{factorize, poly_factor_rational, squarefree_part, RationalFactorization};
pub use interp::interpolate;
pub use matrix::{det_bareiss, det_poly};
pub use parse::parse_poly;
pub use poly::IntPoly;
pub use square_class::{Base, SquareClassFormula};

pub type BigRat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("degree bound violated: sample at N = {at} is off the degree-{degree_bound} fit")]
    DegreeBoundViolated { degree_bound: usize, at: BigInt },
    #[error("interpolation needs {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("repeated abscissa {0}")]
    RepeatedAbscissa(BigInt),
    #[error("exponent is not an integer at this N")]
    NonIntegerExponent,
    #[error("parse error: {0}")]
    Parse(String),
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Integer binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
