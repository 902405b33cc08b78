//! Exact algebra over A = F_q[θ]: the Carlitz module and its bracket coefficients,
//! hyperderivatives, symmetric-polynomial identities, inverse Vandermonde entries,
//! power sums over monic polynomials and log-algebraicity special polynomials.

pub mod carlitz;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod hyperderiv;
pub mod logalg;
pub mod matrix;
pub mod multipoly;
pub mod poly;
pub mod powersums;
pub mod ratfun;
pub mod ring;
pub mod series;
pub mod symfun;
pub mod vandermonde;

pub use enumerate::Lab;
pub use error::{Error, Result};
pub use field::{Field, FqElem};
pub use multipoly::{Monomial, MultiPoly, Var};
pub use poly::PolyA;
pub use ratfun::RatFun;
pub use ring::{Coeff, FieldCoeff, OverA, QPower};
pub use series::TruncSeries;
