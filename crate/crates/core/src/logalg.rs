//! Log-algebraicity: the special polynomials P_m(x, z) from the truncated exponential series
//! and from their closed form when the base-q digit sum of m is at most q − 1.

use std::time::Instant;

use crate::carlitz::{carlitz_eval, carlitz_eval_trunc, carlitz_poly, exp_c};
use crate::enumerate::Lab;
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::multipoly::{Monomial, MultiPoly, Var};
use crate::poly::{special_polys, PolyA};
use crate::powersums::{digit_positions, monic_sum, sigma_q};
use crate::ratfun::RatFun;
use crate::ring::Coeff;
use crate::series::TruncSeries;
use crate::symfun::esym;

fn to_k(p: &MultiPoly<PolyA>, field: &Field) -> MultiPoly<RatFun> {
    p.map_coeffs(&RatFun::one(field), |c| RatFun::from_poly(c.clone()))
}

fn inv_l(field: &Field, i: u32) -> RatFun {
    RatFun::new(PolyA::one(field), special_polys(field, i).2).expect("L_i is nonzero")
}

/// `λ_i(m) = Σ_{a ∈ A_{i+}} C_a(x)^m / a`.
pub fn lambda_brute(lab: &Lab, i: u32, m: u64) -> Result<MultiPoly<RatFun>> {
    Ok(monic_sum(lab, i, |a| Ok((carlitz_poly(a).pow_digits(m), a.clone())))?.with_vars(&[Var::X]))
}

/// `Σ_{d=0}^{μ} (−1)^{μ−d} e_{μ,μ−d}(θ^{q^{μ−1}}, …, θ)·C_{θ^d}(x)^{q^i}` over A.
fn lambda_inner(field: &Field, i: u32, mu: u32) -> MultiPoly<PolyA> {
    let one = PolyA::one(field);
    let vals: Vec<PolyA> = (0..mu).rev().map(|n| PolyA::theta_q_pow(field, n)).collect();
    let mut acc = MultiPoly::zero(&one, &[Var::X]);
    for d in 0..=mu {
        let e = esym(&vals, (mu - d) as i64, &one).scale(&one.sign_like((mu - d) as u64).coeff(0));
        let c = carlitz_poly(&PolyA::monomial(&field.one(), d as usize)).frobenius_iter(i);
        acc = &acc + &c.scale(&e);
    }
    acc
}

/// Closed form of `λ_i(q^μ)`.
pub fn lambda_closed_single(field: &Field, i: u32, mu: u32) -> MultiPoly<RatFun> {
    to_k(&lambda_inner(field, i, mu), field).scale(&inv_l(field, i))
}

/// Closed form of `λ_i(q^{μ_1} + … + q^{μ_s})` as `(1/L_i)·∏_r` of the single-digit sums.
pub fn lambda_closed_multi(field: &Field, i: u32, mus: &[u32]) -> Result<MultiPoly<RatFun>> {
    if mus.is_empty() || mus.len() as u64 > field.q() - 1 {
        return usage(format!("need 1 ≤ s ≤ q − 1 = {}, got s = {}", field.q() - 1, mus.len()));
    }
    let one = PolyA::one(field);
    let mut prod = MultiPoly::one(&one, &[Var::X]);
    for &mu in mus {
        prod = &prod * &lambda_inner(field, i, mu);
    }
    Ok(to_k(&prod, field).scale(&inv_l(field, i)))
}

/// The i with q^i < n.
fn series_degrees(q: u64, n: u64) -> Vec<u32> {
    (0..).take_while(|&i| q.checked_pow(i).is_some_and(|v| v < n)).collect()
}

/// Builds `exp_C(Σ_{q^i < N} λ_i·z^{q^i})`, reporting the largest i summed.
fn series_from_lambdas(
    lab: &Lab,
    n: u64,
    lambda: impl Fn(u32) -> Result<MultiPoly<RatFun>>,
) -> Result<(TruncSeries, Option<u32>)> {
    let field = &lab.field;
    let q = field.q();
    let mut inner = TruncSeries::zero(field, n);
    let mut done: Option<u32> = None;
    for i in series_degrees(q, n) {
        let li = match lambda(i) {
            Ok(v) => v,
            Err(Error::Resource { what, requested, cap }) => {
                let last = done.map_or("none".to_string(), |d| d.to_string());
                return Err(Error::Resource {
                    what: format!("{what} (largest completed i = {last})"),
                    requested,
                    cap,
                });
            }
            Err(e) => return Err(e),
        };
        let zq = MultiPoly::term(RatFun::one(field), Monomial::power(Var::Z, q.pow(i)));
        inner = inner.add(&TruncSeries::new(&li * &zq, n))?;
        done = Some(i);
    }
    Ok((exp_c(&inner)?, done))
}

/// `P_m(x, z)` modulo z^N from the exponential series.
pub fn special_poly_series(lab: &Lab, m: u64, n: u64) -> Result<TruncSeries> {
    Ok(special_poly_series_with_depth(lab, m, n)?.0)
}

/// [`special_poly_series`] together with the largest enumerated degree.
pub fn special_poly_series_with_depth(lab: &Lab, m: u64, n: u64) -> Result<(TruncSeries, Option<u32>)> {
    if n == 0 {
        return usage("truncation order must be at least 1");
    }
    series_from_lambdas(lab, n, |i| lambda_brute(lab, i, m))
}

/// The series for a general `β(x)` with coefficients in A.
pub fn special_poly_linear(lab: &Lab, beta: &MultiPoly<PolyA>, n: u64) -> Result<TruncSeries> {
    if n == 0 {
        return usage("truncation order must be at least 1");
    }
    if beta.vars().any(|v| v != Var::X) && beta.terms().any(|(m, _)| m.pairs().iter().any(|&(v, _)| v != Var::X)) {
        return usage("β must be a polynomial in x alone");
    }
    let (s, _) = series_from_lambdas(lab, n, |i| {
        Ok(monic_sum(lab, i, |a| Ok((beta.substitute(Var::X, &carlitz_poly(a))?, a.clone())))?)
    })?;
    Ok(s)
}

fn check_exponent(field: &Field, m: u64) -> Result<Vec<u32>> {
    let q = field.q();
    let s = sigma_q(q, m);
    if s == 0 || s > q - 1 {
        return Err(Error::UnsupportedExponent { m, q, digit_sum: s, max: q - 1 });
    }
    Ok(digit_positions(q, m))
}

/// The closed form of `P_m(x, z)`, kept modulo z^bound when a bound is given.
///
/// Without a bound the full polynomial is expanded, which is only feasible for small m.
pub fn special_poly_thakur(field: &Field, m: u64, z_bound: Option<u64>) -> Result<MultiPoly<PolyA>> {
    let mus = check_exponent(field, m)?;
    let one = PolyA::one(field);
    let z = MultiPoly::var(Var::Z, &one);
    // e_{μ,μ−d}(θ, θ^q, …, θ^{q^{μ−1}}) and C_{θ^d}(x) for each digit position
    let parts: Vec<Vec<(PolyA, MultiPoly<PolyA>)>> = mus
        .iter()
        .map(|&mu| {
            let vals: Vec<PolyA> = (0..mu).map(|n| PolyA::theta_q_pow(field, n)).collect();
            (0..=mu)
                .map(|d| {
                    let e = esym(&vals, (mu - d) as i64, &one).scale(&one.sign_like((mu - d) as u64).coeff(0));
                    (e, carlitz_poly(&PolyA::monomial(&field.one(), d as usize)))
                })
                .collect()
        })
        .collect();
    let mut acc = MultiPoly::zero(&one, &[Var::X, Var::Z]);
    let mut idx = vec![0usize; parts.len()];
    loop {
        let mut b = one.clone();
        let mut arg = z.clone();
        for (r, &d) in idx.iter().enumerate() {
            let (e, c) = &parts[r][d];
            b = &b * e;
            arg = &arg * c;
        }
        if !b.is_zero() {
            let term = match z_bound {
                Some(n) => carlitz_eval_trunc(&b, &arg, Var::Z, n),
                None => carlitz_eval(&b, &arg),
            };
            acc = &acc + &term;
        }
        // Advance the mixed-radix counter over (d_1, …, d_s).
        let mut r = 0;
        loop {
            if r == idx.len() {
                return Ok(acc);
            }
            idx[r] += 1;
            if idx[r] < parts[r].len() {
                break;
            }
            idx[r] = 0;
            r += 1;
        }
    }
}

/// Outcome of comparing the closed form with the series for one exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct LogAlgReport {
    pub m: u64,
    pub q: u64,
    pub n: u64,
    pub matches: bool,
    pub integral: bool,
    pub poly: MultiPoly<PolyA>,
    pub max_i: Option<u32>,
    pub millis: u128,
}

impl LogAlgReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "q": self.q,
            "N": self.n,
            "match": self.matches,
            "integral": self.integral,
            "poly": self.poly.to_json(),
            "max_i": self.max_i,
            "millis": self.millis as u64,
        })
    }
}

/// Compares the closed form modulo z^N with the series, and checks both have coefficients in A.
pub fn verify_log_algebraicity(lab: &Lab, m: u64, n: u64) -> Result<LogAlgReport> {
    let start = Instant::now();
    let field = &lab.field;
    let closed = special_poly_thakur(field, m, Some(n))?;
    let (series, max_i) = special_poly_series_with_depth(lab, m, n)?;
    let closed_k = to_k(&closed, field);
    let matches = closed_k == *series.poly();
    let integral = series.poly().terms().all(|(_, c)| c.is_integral());
    Ok(LogAlgReport {
        m,
        q: field.q(),
        n,
        matches,
        integral,
        poly: closed,
        max_i,
        millis: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_CAP;

    fn lab(q: u64) -> Lab {
        Lab::new(Field::from_q(q).unwrap(), DEFAULT_CAP)
    }

    fn xz(field: &Field, x: u64, z: u64) -> Monomial {
        let _ = field;
        Monomial::from_pairs(&[(Var::X, x), (Var::Z, z)])
    }

    #[test]
    fn lambda_examples() {
        let l3 = lab(3);
        let f = &l3.field;
        let x = MultiPoly::var(Var::X, &RatFun::one(f));
        assert_eq!(lambda_brute(&l3, 0, 5).unwrap(), x.pow(5));
        assert_eq!(lambda_closed_single(f, 0, 1), x.pow(3));
        let want = x.pow(3).scale(&RatFun::new(PolyA::from_ints(f, &[-1]), PolyA::from_ints(f, &[0, -1, 0, 1])).unwrap());
        assert_eq!(lambda_brute(&l3, 1, 1).unwrap(), want);
        assert_eq!(lambda_closed_single(f, 2, 0), x.pow(9).scale(&inv_l(f, 2)));
        assert_eq!(lambda_closed_single(f, 1, 1), lambda_brute(&l3, 1, 3).unwrap());
        assert_eq!(lambda_closed_multi(f, 0, &[0, 0]).unwrap(), x.pow(2));
        assert_eq!(lambda_closed_multi(f, 1, &[0, 1]).unwrap(), lambda_brute(&l3, 1, 4).unwrap());
        assert_eq!(lambda_closed_multi(f, 2, &[1]).unwrap(), lambda_closed_single(f, 2, 1));
        assert!(lambda_closed_multi(f, 1, &[0, 0, 0]).is_err());
    }

    #[test]
    fn displayed_polynomials() {
        for q in [3u64, 5] {
            let field = Field::prime(q).unwrap();
            let f = &field;
            let c = |v: i64| PolyA::from_ints(f, &[v]);
            let p1 = special_poly_thakur(f, 1, None).unwrap();
            assert_eq!(p1, MultiPoly::term(c(1), xz(f, 1, 1)));
            let pq = special_poly_thakur(f, q, None).unwrap();
            let want = &MultiPoly::term(c(1), xz(f, q, 1)) - &MultiPoly::term(c(1), xz(f, q, q));
            assert_eq!(pq, want);
            let pq1 = special_poly_thakur(f, q + 1, None).unwrap();
            let want = &MultiPoly::term(c(1), xz(f, q + 1, 1)) - &MultiPoly::term(c(1), xz(f, 2 * q, q));
            assert_eq!(pq1, want);
            let p2q = special_poly_thakur(f, 2 * q, None).unwrap();
            let mid = &MultiPoly::term(&PolyA::theta_q_pow(f, 1) - &PolyA::theta(f), xz(f, 2 * q, q))
                + &MultiPoly::term(c(2), xz(f, q * q + q, q));
            let want = &(&MultiPoly::term(c(1), xz(f, 2 * q, 1)) - &mid) + &MultiPoly::term(c(1), xz(f, 2 * q * q, q * q));
            assert_eq!(p2q, want);
        }
    }

    #[test]
    fn q_squared_shape() {
        let f = Field::prime(3).unwrap();
        let one = PolyA::one(&f);
        let x = MultiPoly::var(Var::X, &one);
        let z = MultiPoly::var(Var::Z, &one);
        let cx = |a: &PolyA, arg: &MultiPoly<PolyA>| carlitz_eval(a, arg);
        let th = PolyA::theta(&f);
        let want = &(&(&cx(&(&th * &th), &x) * &z) - &cx(&(&th.frobenius_twist(1) + &th), &(&cx(&th, &x) * &z)))
            + &cx(&(&th.frobenius_twist(1) * &th), &(&x * &z));
        assert_eq!(special_poly_thakur(&f, 9, None).unwrap(), want);
    }

    #[test]
    fn unsupported_exponents() {
        let f = Field::prime(3).unwrap();
        assert!(matches!(special_poly_thakur(&f, 0, None), Err(Error::UnsupportedExponent { .. })));
        assert!(matches!(special_poly_thakur(&f, 5, None), Err(Error::UnsupportedExponent { digit_sum: 3, .. })));
    }

    #[test]
    fn series_small() {
        let l3 = lab(3);
        let f = &l3.field;
        let s = special_poly_series(&l3, 1, 27).unwrap();
        assert_eq!(s.poly(), &MultiPoly::term(RatFun::one(f), xz(f, 1, 1)));
        let r = verify_log_algebraicity(&l3, 3, 27).unwrap();
        assert!(r.matches && r.integral);
        assert_eq!(r.max_i, Some(2));
    }

    #[test]
    fn linear_examples() {
        let l3 = lab(3);
        let f = &l3.field;
        let one = PolyA::one(f);
        let x = MultiPoly::var(Var::X, &one);
        let s = special_poly_linear(&l3, &x, 27).unwrap();
        assert_eq!(s.poly(), &MultiPoly::term(RatFun::one(f), xz(f, 1, 1)));
        let tx = x.scale(&PolyA::theta(f));
        let s = special_poly_linear(&l3, &tx, 27).unwrap();
        let want = &MultiPoly::term(RatFun::from_poly(PolyA::theta(f)), xz(f, 1, 1)) + &MultiPoly::term(RatFun::one(f), xz(f, 3, 3));
        assert_eq!(s.poly(), &want);
        let s0 = special_poly_linear(&l3, &MultiPoly::zero(&one, &[Var::X]), 27).unwrap();
        assert!(s0.poly().is_empty());
    }

    #[test]
    fn resource_error_names_progress() {
        let l = Lab::new(Field::prime(3).unwrap(), 3);
        let err = special_poly_series(&l, 1, 27).unwrap_err();
        assert!(err.to_string().contains("largest completed i = 1"), "{err}");
    }
}
