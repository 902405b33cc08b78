//! The coefficients ⟨a⟩_k of C_a, computed by several independent formulas.

use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::hyperderiv::hyperderivative;
use crate::multipoly::{MultiPoly, Var};
use crate::poly::{bracket_poly, special_polys, PolyA};
use crate::ratfun::RatFun;
use crate::symfun::hsym;

use super::twisted::carlitz_of_truncated;

/// Coefficient of τ^k in C_a.
pub fn bracket_direct(a: &PolyA, k: usize) -> PolyA {
    carlitz_of_truncated(a, k).coeff(k)
}

/// `Σ_{j≤k} a^{q^j} / (D_j·L_{k−j}^{q^j})`, evaluated in K and required to be integral.
pub fn bracket_carlitz_formula(a: &PolyA, k: usize) -> Result<PolyA> {
    let f = a.field();
    if a.degree().map_or(true, |d| k > d) {
        return Ok(PolyA::zero(f));
    }
    let mut acc = RatFun::zero(f);
    for j in 0..=k {
        let (_, d_j, _) = special_polys(f, j as u32);
        let (_, _, l_kj) = special_polys(f, (k - j) as u32);
        let den = &d_j * &l_kj.frobenius_twist(j as u32);
        acc = &acc + &RatFun::new(a.frobenius_twist(j as u32), den)?;
    }
    acc.to_poly()
        .ok_or_else(|| Error::Internal(format!("bracket sum for a = {a}, k = {k} is not in A: {acc}")))
}

/// `Σ_{j=k}^{deg a} ∂^j(a)·h_{k,j−k}([1], …, [k])`.
pub fn bracket_hyper_formula(a: &PolyA, k: usize) -> PolyA {
    let f = a.field();
    let Some(deg) = a.degree() else {
        return PolyA::zero(f);
    };
    let brackets: Vec<PolyA> = (1..=k as u32).map(|i| bracket_poly(f, i)).collect();
    let one = PolyA::one(f);
    let mut acc = PolyA::zero(f);
    for j in k..=deg {
        let d = hyperderivative(a, j as u64);
        if d.is_zero() {
            continue;
        }
        acc = &acc + &(&d * &hsym(&brackets, (j - k) as i64, &one));
    }
    acc
}

/// `⟨θ^m⟩_k = h_{k+1,m−k}(θ, θ^q, …, θ^{q^k})`.
pub fn bracket_theta_power(field: &Field, m: usize, k: usize) -> Result<PolyA> {
    if k > m {
        return usage(format!("need k ≤ m, got m = {m}, k = {k}"));
    }
    let vals: Vec<PolyA> = (0..=k as u32).map(|n| PolyA::theta_q_pow(field, n)).collect();
    Ok(hsym(&vals, (m - k) as i64, &PolyA::one(field)))
}

/// `μ_k(t) = (t − θ)(t − θ^q)⋯(t − θ^{q^{k−1}})` with coefficients in A.
pub fn mu_basis(field: &Field, k: usize) -> MultiPoly<PolyA> {
    let one = PolyA::one(field);
    let t = MultiPoly::var(Var::T, &one);
    let mut acc = MultiPoly::one(&one, &[Var::T]);
    for n in 0..k as u32 {
        let root = MultiPoly::constant(PolyA::theta_q_pow(field, n), &[]);
        acc = &acc * &(&t - &root);
    }
    acc
}

/// Coefficients `c_k ∈ A` with `a(t) = Σ c_k μ_k(t)`, by successive synthetic division.
pub fn mu_expand(a: &PolyA) -> Vec<PolyA> {
    let f = a.field();
    // a(t) as ascending coefficients in A (constants).
    let mut cur: Vec<PolyA> = a.coeffs().iter().map(PolyA::constant).collect();
    let mut out = Vec::new();
    let mut n = 0u32;
    while !cur.is_empty() {
        let root = PolyA::theta_q_pow(f, n);
        // Divide cur by (t − root): Horner from the top.
        let deg = cur.len() - 1;
        let mut quot = vec![PolyA::zero(f); deg];
        let mut carry = PolyA::zero(f);
        for e in (0..=deg).rev() {
            let v = &cur[e] + &(&carry * &root);
            if e > 0 {
                quot[e - 1] = v.clone();
            }
            carry = v;
        }
        out.push(carry);
        cur = quot;
        n += 1;
    }
    if out.is_empty() {
        out.push(PolyA::zero(f));
    }
    out
}

/// [`mu_expand`] with each coefficient checked against [`bracket_direct`].
pub fn mu_expand_checked(a: &PolyA) -> Result<Vec<PolyA>> {
    let cs = mu_expand(a);
    for (k, c) in cs.iter().enumerate() {
        let b = bracket_direct(a, k);
        if *c != b {
            return Err(Error::Internal(format!(
                "μ-expansion coefficient {k} of {a} is {c}, bracket is {b}"
            )));
        }
    }
    Ok(cs)
}

/// A way of computing ⟨a⟩_k.
pub trait BracketFormula: Send + Sync {
    fn name(&self) -> &'static str;

    fn applies(&self, _a: &PolyA) -> bool {
        true
    }

    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA>;
}

struct Direct;
struct CarlitzSum;
struct Hyper;
struct MuExpansion;
struct ThetaPower;

impl BracketFormula for Direct {
    fn name(&self) -> &'static str {
        "direct"
    }
    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA> {
        Ok(bracket_direct(a, k))
    }
}

impl BracketFormula for CarlitzSum {
    fn name(&self) -> &'static str {
        "carlitz"
    }
    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA> {
        bracket_carlitz_formula(a, k)
    }
}

impl BracketFormula for Hyper {
    fn name(&self) -> &'static str {
        "hyper"
    }
    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA> {
        Ok(bracket_hyper_formula(a, k))
    }
}

impl BracketFormula for MuExpansion {
    fn name(&self) -> &'static str {
        "mu-expansion"
    }
    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA> {
        Ok(mu_expand(a).get(k).cloned().unwrap_or_else(|| PolyA::zero(a.field())))
    }
}

fn theta_power_exponent(a: &PolyA) -> Option<usize> {
    let d = a.degree()?;
    (a.is_monic() && a.raw()[..d].iter().all(|&c| c == 0)).then_some(d)
}

impl BracketFormula for ThetaPower {
    fn name(&self) -> &'static str {
        "theta-power"
    }
    fn applies(&self, a: &PolyA) -> bool {
        theta_power_exponent(a).is_some()
    }
    fn bracket(&self, a: &PolyA, k: usize) -> Result<PolyA> {
        let Some(m) = theta_power_exponent(a) else {
            return usage(format!("{a} is not a power of θ"));
        };
        if k > m {
            return Ok(PolyA::zero(a.field()));
        }
        bracket_theta_power(a.field(), m, k)
    }
}

/// All registered formulas; the first is the reference.
pub fn bracket_formulas() -> Vec<Box<dyn BracketFormula>> {
    vec![
        Box::new(Direct),
        Box::new(CarlitzSum),
        Box::new(Hyper),
        Box::new(MuExpansion),
        Box::new(ThetaPower),
    ]
}

pub fn bracket_formula(name: &str) -> Result<Box<dyn BracketFormula>> {
    let all = bracket_formulas();
    let names: Vec<&str> = all.iter().map(|f| f.name()).collect();
    let joined = names.join(", ");
    all.into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::Usage(format!("unknown bracket formula {name:?}; expected one of {joined}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Coeff;

    #[test]
    fn formula_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let theta2 = PolyA::theta(&f2);
        assert!(bracket_carlitz_formula(&theta2, 1).unwrap().is_one());
        let sq = PolyA::from_ints(&f3, &[0, 0, 1]);
        assert_eq!(bracket_carlitz_formula(&sq, 0).unwrap(), sq);
        assert!(bracket_carlitz_formula(&sq, 2).unwrap().is_one());
        let want = PolyA::from_ints(&f3, &[0, 1, 0, 1]);
        assert_eq!(bracket_hyper_formula(&sq, 1), want);
        assert_eq!(bracket_direct(&sq, 1), want);
        assert_eq!(bracket_hyper_formula(&sq, 0), sq);
        assert!(bracket_direct(&sq, 5).is_zero());
        assert!(bracket_carlitz_formula(&sq, 5).unwrap().is_zero());
    }

    #[test]
    fn theta_power_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(bracket_theta_power(&f3, 2, 1).unwrap(), PolyA::from_ints(&f3, &[0, 1, 0, 1]));
        assert!(bracket_theta_power(&f3, 4, 4).unwrap().is_one());
        let h = bracket_theta_power(&f2, 3, 1).unwrap();
        assert_eq!(h, PolyA::from_ints(&f2, &[0, 0, 1, 1, 1]));
        assert_eq!(h, bracket_direct(&PolyA::from_ints(&f2, &[0, 0, 0, 1]), 1));
        assert!(bracket_theta_power(&f2, 1, 2).is_err());
    }

    #[test]
    fn mu_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(mu_expand(&PolyA::theta(&f3)), vec![PolyA::theta(&f3), PolyA::one(&f3)]);
        let mu2 = mu_basis(&f2, 2);
        let one = PolyA::one(&f2);
        let t = MultiPoly::var(Var::T, &one);
        let want = &(&(&t * &t) + &t.scale(&PolyA::from_ints(&f2, &[0, 1, 1]))) + &MultiPoly::constant(PolyA::from_ints(&f2, &[0, 0, 0, 1]), &[]);
        assert_eq!(mu2, want);
        let c = PolyA::from_ints(&f3, &[2]);
        assert_eq!(mu_expand(&c), vec![c.clone()]);
        for a in [[1, 2, 0, 1], [0, 0, 0, 1], [2, 1, 1, 2]] {
            let a = PolyA::from_ints(&f3, &a);
            assert!(mu_expand_checked(&a).is_ok());
            // Rebuild a(t) from the expansion.
            let mut acc = MultiPoly::zero(&PolyA::one(&f3), &[Var::T]);
            for (k, ck) in mu_expand(&a).iter().enumerate() {
                acc = &acc + &mu_basis(&f3, k).scale(ck);
            }
            let at = MultiPoly::univariate(Var::T, &a.coeffs().iter().map(PolyA::constant).collect::<Vec<_>>(), &PolyA::one(&f3));
            assert_eq!(acc, at);
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(bracket_formula("hyper").unwrap().name(), "hyper");
        let err = bracket_formula("nope").err().unwrap().to_string();
        assert!(err.contains("direct") && err.contains("theta-power"));
    }
}
