//! The Carlitz module over A and its bracket coefficients.

pub mod bracket;
pub mod exp;
pub mod twisted;

pub use bracket::{
    bracket_carlitz_formula, bracket_direct, bracket_formula, bracket_formulas, bracket_hyper_formula,
    bracket_theta_power, mu_basis, mu_expand, mu_expand_checked, BracketFormula,
};
pub use exp::{carlitz_eval, carlitz_eval_series, carlitz_eval_trunc, carlitz_poly, exp_c, log_c};
pub use twisted::{carlitz_of, carlitz_of_truncated, TwistedPoly};
