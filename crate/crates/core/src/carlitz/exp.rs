//! Truncated Carlitz exponential and logarithm, and C_a applied to commutative polynomials.

use crate::error::{usage, Result};
use crate::multipoly::{MultiPoly, Var};
use crate::poly::{special_polys, PolyA};
use crate::ratfun::RatFun;
use crate::ring::OverA;
use crate::series::TruncSeries;

use super::bracket::bracket_direct;
use super::twisted::{carlitz_of, carlitz_of_truncated};

fn frobenius_sum(f: &TruncSeries, weight: impl Fn(u32) -> PolyA) -> Result<TruncSeries> {
    if !f.has_zero_constant_term() {
        return usage("series must have zero constant term");
    }
    let field = f.field().clone();
    let q = field.q();
    let mut acc = TruncSeries::zero(&field, f.order());
    let mut i = 0u32;
    while q.checked_pow(i).is_some_and(|qi| qi < f.order().max(1)) {
        let w = RatFun::new(PolyA::one(&field), weight(i))?;
        acc = acc.add(&f.frobenius_iter(i).scale(&w))?;
        i += 1;
    }
    Ok(acc)
}

/// `Σ_{q^i < N} f^{q^i} / D_i`
pub fn exp_c(f: &TruncSeries) -> Result<TruncSeries> {
    let field = f.field().clone();
    frobenius_sum(f, |i| special_polys(&field, i).1)
}

/// `Σ_{q^i < N} f^{q^i} / L_i`
pub fn log_c(f: &TruncSeries) -> Result<TruncSeries> {
    let field = f.field().clone();
    frobenius_sum(f, |i| special_polys(&field, i).2)
}

/// `C_a(f) = Σ_k ⟨a⟩_k f^{q^k}`.
pub fn carlitz_eval<C: OverA>(a: &PolyA, f: &MultiPoly<C>) -> MultiPoly<C> {
    let ca = carlitz_of(a);
    let sample = f.sample();
    let mut acc = MultiPoly::zero(sample, &f.vars().collect::<Vec<_>>());
    for (k, b) in ca.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        acc = &acc + &f.frobenius_iter(k as u32).scale(&sample.from_a(b));
    }
    acc
}

/// [`carlitz_eval`] keeping only the τ-degrees k with `var`-order of f^{q^k} below `n`.
pub fn carlitz_eval_trunc<C: OverA>(a: &PolyA, f: &MultiPoly<C>, var: Var, n: u64) -> MultiPoly<C> {
    let sample = f.sample();
    let mut acc = MultiPoly::zero(sample, &f.vars().collect::<Vec<_>>());
    let Some(low) = f.min_degree_in(var) else {
        return acc;
    };
    let q = sample.base_q();
    let mut max_k = 0usize;
    if low > 0 {
        while q.checked_pow(max_k as u32 + 1).and_then(|p| p.checked_mul(low)).is_some_and(|e| e < n) {
            max_k += 1;
        }
    } else {
        max_k = a.degree().unwrap_or(0);
    }
    let ca = carlitz_of_truncated(a, max_k);
    for (k, b) in ca.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let pw = f.truncate(var, n.div_ceil(q.pow(k as u32)).max(1)).frobenius_iter(k as u32);
        acc = &acc + &pw.truncate(var, n).scale(&sample.from_a(b));
    }
    acc
}

/// `C_a(x)` as a polynomial in x over A.
pub fn carlitz_poly(a: &PolyA) -> MultiPoly<PolyA> {
    carlitz_eval(a, &MultiPoly::var(Var::X, &PolyA::one(a.field())))
}

/// `C_a` applied to a series, modulo z^N.
pub fn carlitz_eval_series(a: &PolyA, f: &TruncSeries) -> TruncSeries {
    let field = f.field().clone();
    let mut acc = TruncSeries::zero(&field, f.order());
    let Some(deg) = a.degree() else {
        return acc;
    };
    for k in 0..=deg {
        let b = bracket_direct(a, k);
        let term = f.frobenius_iter(k as u32).scale(&RatFun::from_poly(b));
        acc = acc.add(&term).expect("equal orders");
    }
    acc
}
