//! Exact multivariate polynomials and rational functions over Q.

mod factor;
mod modp;
mod parse;
pub(crate) mod poly;
mod ratfunc;
pub(crate) mod upoly;
mod valuation;

pub use factor::{factor_univariate, is_irreducible_univariate, Factorization, DEGREE_CAP};
pub use parse::{parse_poly, parse_poly_any, parse_ratfunc};
pub use poly::{var_order, Exponents, MultiPoly};
pub use ratfunc::RatFunc;
pub use valuation::{
    check_deg_identity, deg_valuation, gauss_norm_log, gauss_norm_log_exact, gauss_valuation, ord_f, Weights,
};
