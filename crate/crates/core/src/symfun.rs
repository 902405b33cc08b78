//! Elementary and complete homogeneous symmetric polynomials and identities among them.
//!
//! Every routine is generic in the coefficient ring, so the same code evaluates
//! at finite-field points and builds symbolic integer polynomials.

use crate::error::{usage, Result};
use crate::matrix::Matrix;
use crate::ring::Coeff;

/// `e_{n,j}(values)`: the coefficient of t^j in ∏(1 + x_m t).
pub fn esym<C: Coeff>(values: &[C], j: i64, one: &C) -> C {
    let n = values.len() as i64;
    if j < 0 || j > n {
        return one.zero_like();
    }
    let j = j as usize;
    // row[r] = e_{m, r} after processing m values
    let mut row = vec![one.zero_like(); j + 1];
    row[0] = one.one_like();
    for (m, x) in values.iter().enumerate() {
        for r in (1..=j.min(m + 1)).rev() {
            row[r] = row[r].add_ref(&row[r - 1].mul_ref(x));
        }
    }
    row.pop().expect("j + 1 entries")
}

/// `h_{n,j}(values)`: the sum of all monomials of degree j.
pub fn hsym<C: Coeff>(values: &[C], j: i64, one: &C) -> C {
    if j < 0 {
        return one.zero_like();
    }
    let j = j as usize;
    // row[r] = h_{m, r}; h_{m,r} = h_{m−1,r} + x_m·h_{m,r−1}
    let mut row = vec![one.zero_like(); j + 1];
    row[0] = one.one_like();
    for x in values {
        for r in 1..=j {
            row[r] = row[r].add_ref(&row[r - 1].mul_ref(x));
        }
    }
    row.pop().expect("j + 1 entries")
}

fn need<C>(values: &[C], n: usize, what: &str) -> Result<()> {
    if values.len() < n {
        return usage(format!("{what} needs {n} values, got {}", values.len()));
    }
    Ok(())
}

/// d×d matrix with entries `(−1)^{r−c} e_{r,r−c}(x_1..x_r)` on and below the diagonal.
pub fn matrix_e<C: Coeff>(d: usize, values: &[C], one: &C) -> Result<Matrix<C>> {
    if d == 0 {
        return usage("matrix size must be at least 1");
    }
    need(values, d - 1, "matrix_e")?;
    Ok(Matrix::from_fn(d, d, |r, c| {
        if c > r {
            one.zero_like()
        } else {
            one.sign_like((r - c) as u64)
                .mul_ref(&esym(&values[..r], (r - c) as i64, one))
        }
    }))
}

/// d×d matrix with entries `h_{c+1,r−c}(x_1..x_{c+1})` on and below the diagonal.
pub fn matrix_h<C: Coeff>(d: usize, values: &[C], one: &C) -> Result<Matrix<C>> {
    if d == 0 {
        return usage("matrix size must be at least 1");
    }
    need(values, d - 1, "matrix_h")?;
    Ok(Matrix::from_fn(d, d, |r, c| {
        if c > r {
            one.zero_like()
        } else if r == c {
            one.one_like()
        } else {
            hsym(&values[..=c], (r - c) as i64, one)
        }
    }))
}

/// The (d+1)×(d+1) block matrix diag(1, E_d).
pub fn matrix_n<C: Coeff>(d: usize, values: &[C], one: &C) -> Result<Matrix<C>> {
    let e = matrix_e(d, values, one)?;
    Ok(Matrix::from_fn(d + 1, d + 1, |r, c| match (r, c) {
        (0, 0) => one.one_like(),
        (0, _) | (_, 0) => one.zero_like(),
        _ => e.get(r - 1, c - 1).clone(),
    }))
}

/// `Σ_{j=k}^{i} (−1)^{i−j} e_{i−1,i−j}(x_1..x_{i−1})·h_{k,j−k}(x_1..x_k)`; equals 1 if k = i, else 0.
pub fn symmrec2_sum<C: Coeff>(i: usize, k: usize, values: &[C], one: &C) -> Result<C> {
    if k < 1 || k > i {
        return usage(format!("need 1 ≤ k ≤ i, got i = {i}, k = {k}"));
    }
    need(values, i - 1, "symmrec2_sum")?;
    let xs = &values[..i - 1];
    let mut acc = one.zero_like();
    for j in k..=i {
        let term = esym(xs, (i - j) as i64, one).mul_ref(&hsym(&values[..k.min(values.len())], (j - k) as i64, one));
        acc = acc.add_ref(&one.sign_like((i - j) as u64).mul_ref(&term));
    }
    Ok(acc)
}

fn shifted<C: Coeff>(values: &[C], t: &C) -> Vec<C> {
    values.iter().map(|x| t.sub_ref(x)).collect()
}

/// `Σ_{j=k}^{d} (−1)^{d−j} C(j,k) e_{d,d−j}(x)·T^{j−k}`.
pub fn ehdiff_elementary<C: Coeff>(d: usize, k: usize, values: &[C], t: &C) -> Result<C> {
    if k > d {
        return usage(format!("need 0 ≤ k ≤ d, got d = {d}, k = {k}"));
    }
    need(values, d, "ehdiff_elementary")?;
    let xs = &values[..d];
    let mut acc = t.zero_like();
    for j in k..=d {
        let term = t
            .binomial_like(j as u64, k as u64)
            .mul_ref(&esym(xs, (d - j) as i64, t))
            .mul_ref(&t.pow_u64((j - k) as u64));
        acc = acc.add_ref(&t.sign_like((d - j) as u64).mul_ref(&term));
    }
    Ok(acc)
}

/// `e_{d,d−k}(T − x_1, …, T − x_d)`.
pub fn ehdiff_elementary_direct<C: Coeff>(d: usize, k: usize, values: &[C], t: &C) -> Result<C> {
    need(values, d, "ehdiff_elementary_direct")?;
    Ok(esym(&shifted(&values[..d], t), d as i64 - k as i64, t))
}

/// `Σ_{j=0}^{k} (−1)^j C(d+k−1, k−j) h_{d,j}(x)·T^{k−j}`.
pub fn ehdiff_complete<C: Coeff>(d: usize, k: usize, values: &[C], t: &C) -> Result<C> {
    need(values, d, "ehdiff_complete")?;
    let xs = &values[..d];
    let top = (d + k).saturating_sub(1) as u64;
    let mut acc = t.zero_like();
    for j in 0..=k {
        let b = if d + k == 0 { t.one_like() } else { t.binomial_like(top, (k - j) as u64) };
        let term = b
            .mul_ref(&hsym(xs, j as i64, t))
            .mul_ref(&t.pow_u64((k - j) as u64));
        acc = acc.add_ref(&t.sign_like(j as u64).mul_ref(&term));
    }
    Ok(acc)
}

/// `h_{d,k}(T − x_1, …, T − x_d)`.
pub fn ehdiff_complete_direct<C: Coeff>(d: usize, k: usize, values: &[C], t: &C) -> Result<C> {
    need(values, d, "ehdiff_complete_direct")?;
    Ok(hsym(&shifted(&values[..d], t), k as i64, t))
}

/// `Σ_{j=k}^{i} (−1)^{i−j} e_{i−1,i−j}(y_1..y_ℓ, x_{ℓ+1}..x_{i−1})·h_{k,j−k}(x_1..x_k)`.
pub fn g_poly<C: Coeff>(i: usize, k: usize, l: usize, xs: &[C], ys: &[C], one: &C) -> Result<C> {
    if !(1 <= l && l <= k && k + 1 <= i) {
        return usage(format!("need 1 ≤ ℓ ≤ k ≤ i − 1, got i = {i}, k = {k}, ℓ = {l}"));
    }
    need(xs, i - 1, "g_poly x-values")?;
    need(ys, l, "g_poly y-values")?;
    let mixed: Vec<C> = ys[..l].iter().chain(&xs[l..i - 1]).cloned().collect();
    let mut acc = one.zero_like();
    for j in k..=i {
        let term = esym(&mixed, (i - j) as i64, one).mul_ref(&hsym(&xs[..k], (j - k) as i64, one));
        acc = acc.add_ref(&one.sign_like((i - j) as u64).mul_ref(&term));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::multipoly::{symbolic_vars, MultiPoly, Var};
    use num_bigint::BigInt;

    fn zz() -> BigInt {
        BigInt::from(1)
    }

    fn sym_one() -> MultiPoly<BigInt> {
        MultiPoly::one(&zz(), &[])
    }

    #[test]
    fn esym_hsym_examples() {
        let xs = symbolic_vars(Var::XIdx, 2);
        let one = sym_one();
        assert_eq!(esym(&xs, 1, &one), &xs[0] + &xs[1]);
        assert!(esym(&xs, -1, &one).is_empty());
        let h22 = &(&(&xs[0] * &xs[0]) + &(&xs[0] * &xs[1])) + &(&xs[1] * &xs[1]);
        assert_eq!(hsym(&xs, 2, &one), h22);
        assert!(hsym(&[], 0, &one).is_one());
        assert!(hsym(&[], 2, &one).is_empty());

        let f5 = Field::prime(5).unwrap();
        let vals: Vec<_> = [1, 2, 3].iter().map(|&v| f5.int(v)).collect();
        assert_eq!(esym(&vals, 3, &f5.one()), f5.int(1));
    }

    #[test]
    fn matrices_small() {
        let xs = symbolic_vars(Var::XIdx, 1);
        let one = sym_one();
        let e = matrix_e(2, &xs, &one).unwrap();
        let h = matrix_h(2, &xs, &one).unwrap();
        assert_eq!(e.get(1, 0), &-&xs[0]);
        assert_eq!(h.get(1, 0), &xs[0]);
        assert!(e.mul(&h).is_identity());
        let f7 = Field::prime(7).unwrap();
        let vals: Vec<_> = [1, 2, 3].iter().map(|&v| f7.int(v)).collect();
        let e = matrix_e(4, &vals, &f7.one()).unwrap();
        assert!(e.is_lower_unitriangular());
        assert!(e.mul(&matrix_h(4, &vals, &f7.one()).unwrap()).is_identity());
        assert!(matrix_e(1, &vals, &f7.one()).unwrap().is_identity());
    }

    #[test]
    fn symmrec2_examples() {
        let one = sym_one();
        let xs = symbolic_vars(Var::XIdx, 4);
        assert!(symmrec2_sum(2, 1, &xs, &one).unwrap().is_empty());
        assert!(symmrec2_sum(3, 3, &xs, &one).unwrap().is_one());
        assert!(symmrec2_sum(3, 4, &xs, &one).is_err());
        assert!(symmrec2_sum(3, 0, &xs, &one).is_err());
    }

    #[test]
    fn ehdiff_examples() {
        let xs = symbolic_vars(Var::XIdx, 2);
        let t = MultiPoly::var(Var::CapT, &zz());
        let lhs = ehdiff_elementary(1, 0, &xs, &t).unwrap();
        assert_eq!(lhs, &t - &xs[0]);
        let c = ehdiff_complete(2, 1, &xs, &t).unwrap();
        let want = &(&t.scale(&BigInt::from(2)) - &xs[0]) - &xs[1];
        assert_eq!(c, want);
        assert_eq!(c, ehdiff_complete_direct(2, 1, &xs, &t).unwrap());
        assert!(ehdiff_elementary(2, 2, &xs, &t).unwrap().is_one());
    }

    #[test]
    fn g_poly_examples() {
        let one = sym_one();
        let xs = symbolic_vars(Var::XIdx, 4);
        let ys = symbolic_vars(Var::YIdx, 4);
        assert_eq!(g_poly(2, 1, 1, &xs, &ys, &one).unwrap(), &xs[0] - &ys[0]);
        let g = g_poly(3, 2, 1, &xs, &ys, &one).unwrap();
        assert!(!g.involves(Var::XIdx(2)));
        assert!(g_poly(3, 3, 1, &xs, &ys, &one).is_err());
    }
}
