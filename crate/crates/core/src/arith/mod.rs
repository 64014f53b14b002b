//! Exact scalars and small dense matrices.
//!
//! Everything here is exact: [`Rational`] is an arbitrary-precision fraction
//! kept in lowest terms, [`QuadNum`] is an element `a + b*sqrt(d)` of a
//! quadratic extension, and [`Mat`] is a dense row-major matrix over either.

mod index;
mod matrix;
mod quad;
mod rational;

pub use index::{combinations, IndexSet};
pub use matrix::{Mat, MatQ, MatQuad};
pub use quad::{quad_arith, QuadNum, QuadOp};
pub use rational::{
    is_rational_square, parse_rational, q, qi, rational_sqrt, serde_rational, serde_rational_vec,
    to_f64, Rational,
};

use crate::error::Result;

/// Ring operations shared by [`Rational`] and [`QuadNum`], enough for
/// cofactor determinants and matrix products.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

pub fn mat_det(m: &MatQ) -> Result<Rational> {
    m.det()
}

pub fn mat_minor(m: &MatQ, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
    m.minor(rows, cols)
}

pub fn mat_inverse(m: &MatQ) -> Result<MatQ> {
    m.inverse()
}
