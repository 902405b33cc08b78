//! Vandermonde matrices, closed-form entries of their inverses, and hyperderivatives
//! recovered from Frobenius-twisted Vandermonde systems.

use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multipoly::{Monomial, MultiPoly, Var};
use crate::poly::PolyA;
use crate::ring::{Coeff, FieldCoeff};
use crate::symfun::esym;

/// Row r is `(1, x_r, x_r², …, x_r^i)` for nodes `x_0..x_i`.
pub fn vandermonde_matrix<C: Coeff>(nodes: &[C], one: &C) -> Matrix<C> {
    let n = nodes.len();
    Matrix::from_fn(n, n, |r, c| if c == 0 { one.one_like() } else { nodes[r].pow_u64(c as u64) })
}

fn check_distinct<C: Coeff>(nodes: &[C]) -> Result<()> {
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if nodes[a] == nodes[b] {
                return Err(Error::Singular { first: a, second: b });
            }
        }
    }
    Ok(())
}

fn kappa_unchecked<C: FieldCoeff>(i: usize, j: usize, l: usize, nodes: &[C]) -> Result<C> {
    let xl = &nodes[l];
    let others: Vec<C> = nodes.iter().enumerate().filter(|&(m, _)| m != l).map(|(_, x)| x.clone()).collect();
    let mut den = xl.one_like();
    for x in &others {
        den = den.mul_ref(&xl.sub_ref(x));
    }
    let num = xl.sign_like((i - j) as u64).mul_ref(&esym(&others, (i - j) as i64, xl));
    num.div_ref(&den)
}

/// `κ_{ijℓ} = (−1)^{i−j} e_{i,i−j}(nodes without x_ℓ) / ∏_{m≠ℓ}(x_ℓ − x_m)`.
pub fn kappa<C: FieldCoeff>(i: usize, j: usize, l: usize, nodes: &[C]) -> Result<C> {
    if nodes.len() != i + 1 {
        return usage(format!("expected {} nodes, got {}", i + 1, nodes.len()));
    }
    if j > i || l > i {
        return usage(format!("need 0 ≤ j, ℓ ≤ {i}, got j = {j}, ℓ = {l}"));
    }
    check_distinct(nodes)?;
    kappa_unchecked(i, j, l, nodes)
}

/// The matrix `(κ_{ijℓ})_{j,ℓ}`, the inverse of [`vandermonde_matrix`].
pub fn kappa_matrix<C: FieldCoeff>(nodes: &[C]) -> Result<Matrix<C>> {
    if nodes.is_empty() {
        return usage("need at least one node");
    }
    check_distinct(nodes)?;
    let i = nodes.len() - 1;
    let mut entries = Vec::with_capacity(nodes.len() * nodes.len());
    for j in 0..=i {
        for l in 0..=i {
            entries.push(kappa_unchecked(i, j, l, nodes)?);
        }
    }
    let n = nodes.len();
    Ok(Matrix::from_fn(n, n, |j, l| entries[j * n + l].clone()))
}

fn t_node(field: &Field, m: usize) -> MultiPoly<PolyA> {
    MultiPoly::term(PolyA::one(field), Monomial::power(Var::T, field.q().pow(m as u32)))
}

/// Numerator and denominator of κ_{ijℓ} at the nodes `t^{q^m} − θ^{q^k}`, m = 0..i,
/// as polynomials in t over A.
pub fn kappa_carlitz_nodes(
    field: &Field,
    i: usize,
    j: usize,
    l: usize,
    k: u32,
) -> Result<(MultiPoly<PolyA>, MultiPoly<PolyA>)> {
    if j > i || l > i {
        return usage(format!("need 0 ≤ j, ℓ ≤ {i}, got j = {j}, ℓ = {l}"));
    }
    let one = PolyA::one(field);
    let shift = MultiPoly::constant(PolyA::theta_q_pow(field, k), &[]);
    let others: Vec<MultiPoly<PolyA>> = (0..=i).filter(|&m| m != l).map(|m| &t_node(field, m) - &shift).collect();
    let sym_one = MultiPoly::one(&one, &[Var::T]);
    let num = esym(&others, (i - j) as i64, &sym_one).scale(&one.sign_like((i - j) as u64));
    let mut den = sym_one.clone();
    for m in (0..=i).filter(|&m| m != l) {
        den = &den * &(&t_node(field, l) - &t_node(field, m));
    }
    Ok((num.with_vars(&[Var::T]), den))
}

/// Result of evaluating `Σ_ℓ κ_{ijℓ}(t^{q^m} − θ^{q^k})·a(t)^{q^ℓ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeHyper {
    pub value: PolyA,
    /// The sum, with its common denominator cleared, is exactly `value` times that denominator.
    pub t_independent: bool,
}

/// Recovers `∂^j(a)^{q^k}` from the twisted Vandermonde system of size i + 1.
pub fn hyperderiv_via_vandermonde(a: &PolyA, i: usize, j: usize, k: u32) -> Result<VandermondeHyper> {
    let field = a.field();
    if a.degree().is_some_and(|d| d > i) {
        return usage(format!("need deg a ≤ i, got deg a = {}, i = {i}", a.degree().unwrap_or(0)));
    }
    if j > i {
        return usage(format!("need j ≤ i, got j = {j}, i = {i}"));
    }
    let one = PolyA::one(field);
    let sym_one = MultiPoly::one(&one, &[Var::T]);
    // W = ∏_{m<n} (t^{q^n} − t^{q^m})
    let mut w = sym_one.clone();
    for n in 0..=i {
        for m in 0..n {
            w = &w * &(&t_node(field, n) - &t_node(field, m));
        }
    }
    let a_t = MultiPoly::univariate(Var::T, &a.coeffs().iter().map(PolyA::constant).collect::<Vec<_>>(), &one);
    let mut total = MultiPoly::zero(&one, &[Var::T]);
    for l in 0..=i {
        let (num, _) = kappa_carlitz_nodes(field, i, j, l, k)?;
        // W / den_ℓ = (−1)^{i−ℓ} ∏ over pairs avoiding ℓ.
        let mut cof = sym_one.scale(&one.sign_like((i - l) as u64));
        for n in 0..=i {
            for m in 0..n {
                if m != l && n != l {
                    cof = &cof * &(&t_node(field, n) - &t_node(field, m));
                }
            }
        }
        total = &total + &(&(&num * &cof) * &a_t.frobenius_iter(l as u32));
    }
    let top = w.degree_in(Var::T).unwrap_or(0);
    let lead = w.coefficient(&Monomial::power(Var::T, top));
    let lead_inv = lead.leading().inverse()?;
    let value = total.coefficient(&Monomial::power(Var::T, top)).scale(&lead_inv);
    let residual = &total - &w.scale(&value);
    Ok(VandermondeHyper { value, t_independent: residual.is_empty() })
}
