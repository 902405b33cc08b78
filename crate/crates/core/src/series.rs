//! Power series in z truncated modulo z^N, with coefficients polynomials in x over K.

use std::fmt;

use crate::error::{usage, Result};
use crate::field::Field;
use crate::multipoly::{MultiPoly, Var};
use crate::ratfun::RatFun;
use crate::ring::{Coeff, QPower};

#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries {
    order: u64,
    poly: MultiPoly<RatFun>,
}

pub const SERIES_VARS: [Var; 2] = [Var::X, Var::Z];

impl TruncSeries {
    /// Reduces `poly` modulo z^order.
    pub fn new(poly: MultiPoly<RatFun>, order: u64) -> TruncSeries {
        TruncSeries {
            order,
            poly: poly.truncate(Var::Z, order).with_vars(&SERIES_VARS),
        }
    }

    pub fn zero(field: &Field, order: u64) -> TruncSeries {
        TruncSeries::new(MultiPoly::zero(&RatFun::zero(field), &SERIES_VARS), order)
    }

    /// The series `z`.
    pub fn z(field: &Field, order: u64) -> TruncSeries {
        TruncSeries::new(MultiPoly::var(Var::Z, &RatFun::zero(field)), order)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn poly(&self) -> &MultiPoly<RatFun> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<RatFun> {
        self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.sample().field()
    }

    fn same_order(&self, rhs: &TruncSeries) -> Result<()> {
        if self.order != rhs.order {
            return usage(format!(
                "truncation orders differ: z^{} versus z^{}",
                self.order, rhs.order
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(rhs)?;
        Ok(TruncSeries { order: self.order, poly: &self.poly + &rhs.poly })
    }

    pub fn sub(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(rhs)?;
        Ok(TruncSeries { order: self.order, poly: &self.poly - &rhs.poly })
    }

    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(rhs)?;
        Ok(TruncSeries {
            order: self.order,
            poly: self.poly.mul_trunc(&rhs.poly, Var::Z, self.order),
        })
    }

    pub fn scale(&self, c: &RatFun) -> TruncSeries {
        TruncSeries { order: self.order, poly: self.poly.scale(c) }
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.poly.min_degree_in(Var::Z).map_or(true, |d| d > 0)
    }

    /// `f^{q^k}` modulo z^N, dropping terms before raising them.
    pub fn frobenius_iter(&self, k: u32) -> TruncSeries {
        let q = self.poly.sample().base_q();
        let qk = q.checked_pow(k);
        let mut out = MultiPoly::zero(self.poly.sample(), &SERIES_VARS);
        for (m, c) in self.poly.terms() {
            let ez = m.exp(Var::Z);
            let keep = match qk {
                Some(qk) => ez == 0 || ez.checked_mul(qk).is_some_and(|e| e < self.order),
                None => ez == 0,
            };
            if keep {
                let qk = qk.expect("exponent overflow in Frobenius power");
                out.add_term(m.scaled(qk), c.pow_q_iter(k));
            }
        }
        TruncSeries { order: self.order, poly: out }
    }

    /// Substitutes this series for z in a polynomial `g(x, z)`; requires zero constant term.
    pub fn compose_into(&self, g: &MultiPoly<RatFun>) -> Result<TruncSeries> {
        if !self.has_zero_constant_term() {
            return usage("substituted series must have zero constant term");
        }
        let mut acc = TruncSeries::zero(self.field(), self.order);
        let max = g.degree_in(Var::Z).unwrap_or(0);
        let mut powers = vec![TruncSeries::new(MultiPoly::one(self.poly.sample(), &SERIES_VARS), self.order)];
        for _ in 0..max.min(self.order) {
            let next = powers.last().expect("nonempty").mul(self)?;
            powers.push(next);
        }
        for e in 0..=max.min(self.order.saturating_sub(1)) {
            let coeff = g.coefficient_of(Var::Z, e);
            if coeff.is_zero() {
                continue;
            }
            acc = acc.add(&TruncSeries::new(&powers[e as usize].poly * &coeff, self.order))?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "order": self.order, "poly": self.poly.to_json() })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(z^{})", self.poly, self.order)
    }
}
