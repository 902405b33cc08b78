//! Power sums over the monic polynomials of fixed degree, by enumeration and in closed form.

use rayon::prelude::*;

use crate::enumerate::{monic_at, Lab};
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::hyperderiv::hyperderivative;
use crate::multipoly::{MultiPoly, Var};
use crate::poly::{bracket_poly, special_polys, PolyA};
use crate::ratfun::RatFun;
use crate::ring::Coeff;
use crate::symfun::esym;

const BLOCK: u64 = 64;

/// `Σ_{a ∈ A_{i+}} num(a) / den(a)`, with numerators polynomials over A.
///
/// Each block of 64 terms is put over the product of its denominators before a single
/// reduction; blocks run in parallel and are added in a fixed order.
pub fn monic_sum<F>(lab: &Lab, i: u32, term: F) -> Result<MultiPoly<RatFun>>
where
    F: Fn(&PolyA) -> Result<(MultiPoly<PolyA>, PolyA)> + Sync,
{
    let n = lab.count(i)?;
    let field = &lab.field;
    let blocks = n.div_ceil(BLOCK);
    let partial: Vec<MultiPoly<RatFun>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            let mut nums = Vec::with_capacity((hi - lo) as usize);
            let mut dens = Vec::with_capacity((hi - lo) as usize);
            for idx in lo..hi {
                let (num, den) = term(&monic_at(field, i, idx))?;
                if den.is_zero() {
                    return Err(Error::Domain("zero denominator in power sum".into()));
                }
                nums.push(num);
                dens.push(den);
            }
            // prefix[m] = ∏_{r<m} den_r, suffix[m] = ∏_{r≥m} den_r
            let len = dens.len();
            let mut prefix = vec![PolyA::one(field); len + 1];
            for r in 0..len {
                prefix[r + 1] = &prefix[r] * &dens[r];
            }
            let mut suffix = vec![PolyA::one(field); len + 1];
            for r in (0..len).rev() {
                suffix[r] = &suffix[r + 1] * &dens[r];
            }
            let mut acc = MultiPoly::zero(&PolyA::one(field), &[]);
            for r in 0..len {
                let cof = &prefix[r] * &suffix[r + 1];
                acc = &acc + &nums[r].scale(&cof);
            }
            let total = &prefix[len];
            acc.try_map_coeffs(&RatFun::one(field), |c| RatFun::new(c.clone(), total.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = MultiPoly::zero(&RatFun::one(field), &[]);
    for p in &partial {
        out = &out + p;
    }
    Ok(out)
}

fn constant(p: PolyA) -> MultiPoly<PolyA> {
    MultiPoly::constant(p, &[])
}

/// `S_i(k) = Σ_{a ∈ A_{i+}} a^k`; negative k allowed.
pub fn s_brute(lab: &Lab, i: u32, k: i64) -> Result<RatFun> {
    let one = PolyA::one(&lab.field);
    let sum = monic_sum(lab, i, |a| {
        let pw = a.pow_fast(k.unsigned_abs());
        Ok(if k >= 0 { (constant(pw), one.clone()) } else { (constant(one.clone()), pw) })
    })?;
    Ok(sum.constant_term())
}

/// Base-q digit sum.
pub fn sigma_q(q: u64, mut k: u64) -> u64 {
    let mut s = 0;
    while k > 0 {
        s += k % q;
        k /= q;
    }
    s
}

/// Base-q digits of m from the lowest position, each position repeated by its digit.
pub fn digit_positions(q: u64, mut m: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut pos = 0;
    while m > 0 {
        for _ in 0..m % q {
            out.push(pos);
        }
        m /= q;
        pos += 1;
    }
    out
}

/// True when `S_i(k)` is known to vanish: `σ_q(k) < i(q−1)` or `k < q^i − 1`.
pub fn sivanish_predicate(q: u64, i: u32, k: u64) -> bool {
    let below = q.checked_pow(i).map_or(true, |qi| k < qi - 1);
    sigma_q(q, k) < i as u64 * (q - 1) || below
}

fn check_s(field: &Field, s: usize, allow_zero: bool) -> Result<()> {
    let lo = if allow_zero { 0 } else { 1 };
    if s < lo || s as u64 > field.q() - 1 {
        return usage(format!("need {lo} ≤ s ≤ q − 1 = {}, got s = {s}", field.q() - 1));
    }
    Ok(())
}

/// `S_i(q^{ℓ_1} + … + q^{ℓ_s} − 1)` in closed form.
pub fn s_closed(field: &Field, i: u32, ls: &[u32]) -> Result<RatFun> {
    check_s(field, ls.len(), false)?;
    if ls.iter().any(|&l| l < i) {
        return Ok(RatFun::zero(field));
    }
    let (_, _, li) = special_polys(field, i);
    let mut num = PolyA::one(field);
    let mut den = li;
    for &l in ls {
        num = &num * &special_polys(field, l).1;
        den = &den * &special_polys(field, l - i).1.frobenius_twist(i);
    }
    RatFun::new(num, den)
}

/// The exponent `q^{ℓ_1} + … + q^{ℓ_s} − 1`, if it fits.
pub fn s_closed_exponent(q: u64, ls: &[u32]) -> Option<u64> {
    ls.iter()
        .try_fold(0u64, |acc, &l| acc.checked_add(q.checked_pow(l)?))?
        .checked_sub(1)
}

fn t_vars(s: usize) -> Vec<Var> {
    (1..=s as u32).map(Var::TIdx).collect()
}

/// Both sides of `Σ_a a(t_1)⋯a(t_s)/a = (1/L_i)·∏_r ∏_{ν<i}(t_r − θ^{q^ν})`.
pub fn angles_pellarin_both_sides(lab: &Lab, i: u32, s: usize) -> Result<(MultiPoly<RatFun>, MultiPoly<RatFun>)> {
    let field = &lab.field;
    check_s(field, s, true)?;
    let one = PolyA::one(field);
    let vars = t_vars(s);
    let lhs = monic_sum(lab, i, |a| {
        let mut prod = MultiPoly::one(&one, &vars);
        for &v in &vars {
            let at = MultiPoly::univariate(v, &a.coeffs().iter().map(PolyA::constant).collect::<Vec<_>>(), &one);
            prod = &prod * &at;
        }
        Ok((prod, a.clone()))
    })?
    .with_vars(&vars);
    let mut prod = MultiPoly::one(&one, &vars);
    for &v in &vars {
        for nu in 0..i {
            let root = constant(PolyA::theta_q_pow(field, nu));
            prod = &prod * &(&MultiPoly::var(v, &one) - &root);
        }
    }
    let li_inv = RatFun::new(one.clone(), special_polys(field, i).2)?;
    let rhs = prod.map_coeffs(&li_inv, |c| &RatFun::from_poly(c.clone()) * &li_inv);
    Ok((lhs, rhs))
}

/// `Σ_a ∏_r ∂^{j_r}(a)^{k_r}`, divided by a when `over_a`; exponents may be negative.
pub fn h_brute_general(lab: &Lab, i: u32, pairs: &[(u64, i64)], over_a: bool) -> Result<RatFun> {
    let one = PolyA::one(&lab.field);
    let sum = monic_sum(lab, i, |a| {
        let mut num = one.clone();
        let mut den = if over_a { a.clone() } else { one.clone() };
        for &(j, k) in pairs {
            let d = hyperderivative(a, j).pow_fast(k.unsigned_abs());
            if k >= 0 {
                num = &num * &d;
            } else {
                den = &den * &d;
            }
        }
        if den.is_zero() {
            return Err(Error::Domain(format!("a hyperderivative of {a} raised to a negative power vanishes")));
        }
        Ok((constant(num), den))
    })?;
    Ok(sum.constant_term())
}

/// `Σ_a ∏_r ∂^{j_r}(a)^{q^{μ_r}}`, over a when `signed`; pairs are (j_r, μ_r).
pub fn h_brute(lab: &Lab, i: u32, pairs: &[(u64, u32)], signed: bool) -> Result<RatFun> {
    let q = lab.field.q();
    let general = pairs
        .iter()
        .map(|&(j, mu)| {
            let k = q.checked_pow(mu).and_then(|v| i64::try_from(v).ok());
            k.map(|k| (j, k)).ok_or_else(|| Error::Usage(format!("q^{mu} is too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    h_brute_general(lab, i, &general, signed)
}

fn check_pairs(field: &Field, i: u32, pairs: &[(u64, u32)]) -> Result<()> {
    if i < 1 {
        return usage("the closed form needs i ≥ 1");
    }
    check_s(field, pairs.len(), false)?;
    if let Some(&(j, _)) = pairs.iter().find(|&&(j, _)| j > i as u64) {
        return usage(format!("need 0 ≤ j_r ≤ i = {i}, got j_r = {j}"));
    }
    Ok(())
}

fn inv_l(field: &Field, i: u32) -> RatFun {
    RatFun::new(PolyA::one(field), special_polys(field, i).2).expect("L_i is nonzero")
}

/// `(1/L_i)·∏_r (−1)^{i−j_r} e_{i,i−j_r}(θ − θ^{q^{μ_r}}, …, θ^{q^{i−1}} − θ^{q^{μ_r}})`.
pub fn h_closed(field: &Field, i: u32, pairs: &[(u64, u32)]) -> Result<RatFun> {
    check_pairs(field, i, pairs)?;
    let one = PolyA::one(field);
    let mut prod = one.clone();
    for &(j, mu) in pairs {
        let top = PolyA::theta_q_pow(field, mu);
        let vals: Vec<PolyA> = (0..i).map(|n| &PolyA::theta_q_pow(field, n) - &top).collect();
        let e = esym(&vals, i as i64 - j as i64, &one).scale(&one.sign_like(i as u64 - j).coeff(0));
        prod = &prod * &e;
    }
    Ok(&RatFun::from_poly(prod) * &inv_l(field, i))
}

/// The single-pair closed form with the vanishing slot removed when μ < i.
pub fn h_closed_simplified(field: &Field, i: u32, j: u64, mu: u32) -> Result<RatFun> {
    check_pairs(field, i, &[(j, mu)])?;
    let one = PolyA::one(field);
    let e = if mu >= i {
        // θ^{q^n} − θ^{q^μ} = −[μ − n]^{q^n}
        let vals: Vec<PolyA> = (0..i).map(|n| -&bracket_poly(field, mu - n).frobenius_twist(n)).collect();
        esym(&vals, i as i64 - j as i64, &one)
    } else {
        let mut vals: Vec<PolyA> = (0..mu).map(|n| -&bracket_poly(field, mu - n).frobenius_twist(n)).collect();
        vals.extend((mu + 1..i).map(|n| bracket_poly(field, n - mu).frobenius_twist(mu)));
        esym(&vals, i as i64 - j as i64, &one)
    };
    let signed = e.scale(&one.sign_like(i as u64 - j).coeff(0));
    Ok(&RatFun::from_poly(signed) * &inv_l(field, i))
}

/// The closed form for s copies of the pair (j, 0):
/// `((−1)^{s(i−j)}/L_i)·e_{i−1,i−j}([1], …, [i−1])^s`.
pub fn h_closed_uniform(field: &Field, i: u32, j: u64, s: usize) -> Result<RatFun> {
    check_pairs(field, i, &vec![(j, 0); s])?;
    let one = PolyA::one(field);
    let vals: Vec<PolyA> = (1..i).map(|n| bracket_poly(field, n)).collect();
    let e = esym(&vals, i as i64 - j as i64, &one).pow_fast(s as u64);
    let signed = e.scale(&one.sign_like(s as u64 * (i as u64 - j)).coeff(0));
    Ok(&RatFun::from_poly(signed) * &inv_l(field, i))
}

/// Evaluates a polynomial in t_1..t_s at `t_r := θ^{q^{ℓ_r}}`.
pub fn specialize_t(p: &MultiPoly<RatFun>, ls: &[u32]) -> Result<RatFun> {
    let field = p.sample().field().clone();
    let point: Vec<(Var, RatFun)> = ls
        .iter()
        .enumerate()
        .map(|(r, &l)| (Var::TIdx(r as u32 + 1), RatFun::from_poly(PolyA::theta_q_pow(&field, l))))
        .collect();
    p.eval(&point)
}
