//! Exact scalars: rationals, elements of the cyclotomic field Q(ξ_r), univariate
//! polynomials over it, and dense Gaussian elimination.

mod cyclotomic;
mod linalg;
mod poly;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, root_power, Cyclotomic};
pub use linalg::{determinant, exact_rank, exact_solve, inverse, mat_mul, mat_vec, Matrix};
pub use poly::UniPoly;
pub use rational::{format_rational, parse_rational, Rational};
