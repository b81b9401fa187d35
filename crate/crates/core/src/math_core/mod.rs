//! Exact polynomial arithmetic, physicists' Hermite polynomials, the
//! double-factorial admissibility weights, and Gaussian quadrature.

mod hermite;
mod polynomial;
mod quadrature;

pub use hermite::{
    admissibility_weight, double_factorial_weights, hermite_integer_coeffs, hermite_poly,
    MAX_EXACT_HERMITE_DEGREE, MAX_EXACT_WEIGHT_INDEX,
};
pub use polynomial::Polynomial;
pub use quadrature::{
    default_hermite_rule, gauss_hermite_rule, gauss_legendre_rule, QuadratureRule,
    DEFAULT_HERMITE_ORDER, MAX_HERMITE_ORDER,
};
