//! Exact scalars: rationals and rational functions over the rationals.

mod elem;
mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use elem::{random_element, random_element_with, FieldCtx, FieldElem, FieldError, SquareTest};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::Rational;
