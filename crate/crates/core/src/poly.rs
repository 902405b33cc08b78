//! Dense univariate polynomials over F_q in θ: the ring A = F_q[θ].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::ring::{Coeff, OverA, QPower};

/// Refuse to materialize dense polynomials beyond this many coefficients.
const MAX_DENSE_LEN: u64 = 1 << 27;

#[derive(Clone)]
pub struct PolyA {
    field: Field,
    /// Ascending packed coefficients with no trailing zeros.
    c: Vec<u64>,
}

impl PolyA {
    pub fn from_raw(field: &Field, mut c: Vec<u64>) -> PolyA {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyA {
            field: field.clone(),
            c,
        }
    }

    /// Builds a polynomial from ascending coefficients.
    pub fn new(field: &Field, coeffs: &[FqElem]) -> Result<PolyA> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::Usage(format!(
                "coefficient from {:?} in a polynomial over {:?}",
                bad.field(),
                field
            )));
        }
        Ok(PolyA::from_raw(
            field,
            coeffs.iter().map(FqElem::value).collect(),
        ))
    }

    /// Ascending integer coefficients reduced mod p.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> PolyA {
        PolyA::from_raw(field, coeffs.iter().map(|&n| field.from_i64(n)).collect())
    }

    pub fn zero(field: &Field) -> PolyA {
        PolyA::from_raw(field, Vec::new())
    }

    pub fn one(field: &Field) -> PolyA {
        PolyA::from_raw(field, vec![1])
    }

    pub fn constant(c: &FqElem) -> PolyA {
        PolyA::from_raw(c.field(), vec![c.value()])
    }

    pub fn theta(field: &Field) -> PolyA {
        PolyA::from_raw(field, vec![0, 1])
    }

    /// `c·θ^n`
    pub fn monomial(c: &FqElem, n: usize) -> PolyA {
        let mut v = vec![0; n + 1];
        v[n] = c.value();
        PolyA::from_raw(c.field(), v)
    }

    /// θ^{q^k}
    pub fn theta_q_pow(field: &Field, k: u32) -> PolyA {
        PolyA::monomial(&field.one(), dense_len(field.q(), k, 1) - 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> &[u64] {
        &self.c
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, n: usize) -> FqElem {
        FqElem::raw(&self.field, self.c.get(n).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        self.c.iter().map(|&v| FqElem::raw(&self.field, v)).collect()
    }

    pub fn leading(&self) -> FqElem {
        FqElem::raw(&self.field, self.c.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, s: &FqElem) -> PolyA {
        if s.value() == 0 {
            return PolyA::zero(&self.field);
        }
        let f = &self.field;
        PolyA::from_raw(f, self.c.iter().map(|&x| f.mul(x, s.value())).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> PolyA {
        match self.c.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => {
                let inv = self.field.inv(lead).expect("leading coefficient is nonzero");
                self.scale(&FqElem::raw(&self.field, inv))
            }
        }
    }

    /// Multiplication by θ^n.
    pub fn shift(&self, n: usize) -> PolyA {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.c);
        PolyA::from_raw(&self.field, v)
    }

    /// Keeps the terms of degree < n.
    pub fn truncate(&self, n: usize) -> PolyA {
        let mut v = self.c.clone();
        v.truncate(n);
        PolyA::from_raw(&self.field, v)
    }

    /// Product modulo θ^n.
    pub fn mul_trunc(&self, rhs: &PolyA, n: usize) -> PolyA {
        let a = &self.c[..self.c.len().min(n)];
        let b = &rhs.c[..rhs.c.len().min(n)];
        let mut out = raw_mul(&self.field, a, b);
        out.truncate(n);
        PolyA::from_raw(&self.field, out)
    }

    pub fn divmod(&self, divisor: &PolyA) -> Result<(PolyA, PolyA)> {
        let f = &self.field;
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        if self.c.len() <= dd {
            return Ok((PolyA::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.c[dd]).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut quot = vec![0u64; r.len() - dd];
        for d in (dd..r.len()).rev() {
            let top = r[d];
            if top == 0 {
                continue;
            }
            let coef = f.mul(top, lead_inv);
            quot[d - dd] = coef;
            for (i, &dv) in divisor.c.iter().enumerate() {
                let idx = d - dd + i;
                r[idx] = f.sub(r[idx], f.mul(coef, dv));
            }
        }
        r.truncate(dd);
        Ok((PolyA::from_raw(f, quot), PolyA::from_raw(f, r)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &PolyA) -> Result<PolyA> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "expected exact division of {self} by {divisor}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &PolyA) -> PolyA {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        let v = self
            .c
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x.value()), c));
        FqElem::raw(f, v)
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut n: u64) -> PolyA {
        let mut acc = PolyA::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power through the base-q digits of n, using `f^{q^k} = twist(f, k)`.
    pub fn pow_fast(&self, n: u64) -> PolyA {
        let q = self.field.q();
        let mut acc = PolyA::one(&self.field);
        let mut rest = n;
        let mut k = 0u32;
        while rest > 0 {
            let digit = rest % q;
            if digit > 0 {
                let twisted = self.frobenius_twist(k);
                for _ in 0..digit {
                    acc = &acc * &twisted;
                }
            }
            rest /= q;
            k += 1;
        }
        acc
    }

    /// θ ↦ θ^{q^k}; equals `self^{q^k}` because coefficients satisfy c^q = c.
    pub fn frobenius_twist(&self, k: u32) -> PolyA {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let deg = self.c.len() - 1;
        let step = dense_len(self.field.q(), k, 1) - 1;
        let mut v = vec![0u64; dense_len(self.field.q(), k, deg as u64)];
        for (n, &c) in self.c.iter().enumerate() {
            v[n * step] = c;
        }
        PolyA::from_raw(&self.field, v)
    }

    /// Writes the polynomial in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (n, &v) in self.c.iter().enumerate().rev() {
            if v == 0 {
                continue;
            }
            let coef = FqElem::raw(&self.field, v);
            let cs = coef.to_string();
            let cs = if coef.is_compound() {
                format!("({cs})")
            } else {
                cs
            };
            let mono = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{n}"),
            };
            parts.push(match (n, v == 1) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Length of a dense vector holding degree `deg · q^k`.
fn dense_len(q: u64, k: u32, deg: u64) -> usize {
    let len = q
        .checked_pow(k)
        .and_then(|s| s.checked_mul(deg))
        .and_then(|d| d.checked_add(1))
        .filter(|&l| l <= MAX_DENSE_LEN)
        .unwrap_or_else(|| panic!("dense polynomial of degree {deg}·{q}^{k} is too large"));
    len as usize
}

fn raw_mul(field: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if field.e() == 1 {
        // (p-1)^2 < 2^32, so 2^31 products can accumulate before reducing.
        let p = field.p();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in out[i..].iter_mut().zip(b) {
                *slot += x * y;
            }
            if i % (1 << 20) == (1 << 20) - 1 {
                out.iter_mut().for_each(|s| *s %= p);
            }
        }
        out.iter_mut().for_each(|s| *s %= p);
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in out[i..].iter_mut().zip(b) {
                *slot = field.add(*slot, field.mul(x, y));
            }
        }
    }
    out
}

fn raw_add(field: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (slot, &y) in out.iter_mut().zip(short) {
        *slot = field.add(*slot, y);
    }
    out
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for PolyA {}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("θ"))
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyA({self})")
    }
}

fn check_fields(a: &PolyA, b: &PolyA) {
    assert!(
        a.field == b.field,
        "polynomials over different fields: {:?} and {:?}",
        a.field,
        b.field
    );
}

impl Add<&PolyA> for &PolyA {
    type Output = PolyA;
    fn add(self, rhs: &PolyA) -> PolyA {
        check_fields(self, rhs);
        PolyA::from_raw(&self.field, raw_add(&self.field, &self.c, &rhs.c))
    }
}

impl Sub<&PolyA> for &PolyA {
    type Output = PolyA;
    fn sub(self, rhs: &PolyA) -> PolyA {
        self + &(-rhs)
    }
}

impl Mul<&PolyA> for &PolyA {
    type Output = PolyA;
    fn mul(self, rhs: &PolyA) -> PolyA {
        check_fields(self, rhs);
        PolyA::from_raw(&self.field, raw_mul(&self.field, &self.c, &rhs.c))
    }
}

impl Neg for &PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        let f = &self.field;
        PolyA::from_raw(f, self.c.iter().map(|&x| f.neg(x)).collect())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(PolyA);

impl Coeff for PolyA {
    fn zero_like(&self) -> Self {
        PolyA::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        PolyA::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: i64) -> Self {
        PolyA::from_ints(&self.field, &[n])
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        PolyA::constant(&self.field.one().from_bigint_like(n))
    }
    fn characteristic(&self) -> u64 {
        self.field.p()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs().iter().map(Coeff::to_json).collect())
    }
    fn is_compound(&self) -> bool {
        self.c.iter().filter(|&&v| v != 0).count() > 1
            || (self.c.len() == 1 && self.coeff(0).is_compound())
    }
    fn pow_u64(&self, n: u64) -> Self {
        self.pow_fast(n)
    }
}

impl QPower for PolyA {
    fn base_q(&self) -> u64 {
        self.field.q()
    }
    fn pow_q(&self) -> Self {
        self.frobenius_twist(1)
    }
    fn pow_q_iter(&self, k: u32) -> Self {
        self.frobenius_twist(k)
    }
}

impl OverA for PolyA {
    fn from_a(&self, a: &PolyA) -> Self {
        a.clone()
    }
}

/// `[i] = θ^{q^i} − θ`; `[0] = 0`.
pub fn bracket_poly(field: &Field, i: u32) -> PolyA {
    &PolyA::theta_q_pow(field, i) - &PolyA::theta(field)
}

/// Returns `([i], D_i, L_i)` with `D_0 = L_0 = 1`, cached per field.
pub fn special_polys(field: &Field, i: u32) -> (PolyA, PolyA, PolyA) {
    let mut cache = field
        .carlitz_cache
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    if cache.is_empty() {
        cache.push((vec![1], vec![1]));
    }
    while cache.len() <= i as usize {
        let n = cache.len() as u32;
        let (d_prev, l_prev) = cache.last().expect("seeded");
        let b = bracket_poly(field, n);
        let d = &b * &PolyA::from_raw(field, d_prev.clone()).frobenius_twist(1);
        let l = -(&b * &PolyA::from_raw(field, l_prev.clone()));
        cache.push((d.c, l.c));
    }
    let (d, l) = &cache[i as usize];
    (
        bracket_poly(field, i),
        PolyA::from_raw(field, d.clone()),
        PolyA::from_raw(field, l.clone()),
    )
}

pub fn carlitz_d(field: &Field, i: u32) -> PolyA {
    special_polys(field, i).1
}

pub fn carlitz_l(field: &Field, i: u32) -> PolyA {
    special_polys(field, i).2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: &Field, c: &[i64]) -> PolyA {
        PolyA::from_ints(field, c)
    }

    #[test]
    fn operation_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(&p(&f3, &[1, 1]) * &p(&f3, &[2, 1]), p(&f3, &[2, 0, 1]));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(p(&f5, &[-1, 0, 1]).gcd(&p(&f5, &[-1, 1])), p(&f5, &[4, 1]));
        let (q, r) = p(&f5, &[0, 0, 0, 1]).divmod(&p(&f5, &[0, 0, 1])).unwrap();
        assert_eq!((q, r), (p(&f5, &[0, 1]), PolyA::zero(&f5)));
        assert!(matches!(
            p(&f5, &[1]).divmod(&PolyA::zero(&f5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn twist_examples() {
        let f3 = Field::prime(3).unwrap();
        let f = p(&f3, &[1, 1]);
        assert_eq!(f.frobenius_twist(1), p(&f3, &[1, 0, 0, 1]));
        assert_eq!(f.frobenius_twist(0), f);
        let f2 = Field::prime(2).unwrap();
        let g = p(&f2, &[0, 1, 1]);
        assert_eq!(g.frobenius_twist(1), &g * &g);
    }

    #[test]
    fn special_poly_examples() {
        let f2 = Field::prime(2).unwrap();
        let (b1, d1, l1) = special_polys(&f2, 1);
        let t2t = p(&f2, &[0, 1, 1]);
        assert_eq!((b1, d1, l1), (t2t.clone(), t2t.clone(), t2t.clone()));
        let (_, d0, l0) = special_polys(&f2, 0);
        assert_eq!((d0, l0), (PolyA::one(&f2), PolyA::one(&f2)));
        let (_, d2, _) = special_polys(&f2, 2);
        let b2 = p(&f2, &[0, 1, 0, 0, 1]);
        assert_eq!(d2, &b2 * &(&t2t * &t2t));
    }

    #[test]
    fn special_poly_recurrences() {
        for q in [2, 3, 4, 5] {
            let f = Field::from_q(q).unwrap();
            for i in 1..4 {
                let (b, d, l) = special_polys(&f, i);
                let (_, dp, lp) = special_polys(&f, i - 1);
                assert_eq!(d, &b * &dp.frobenius_twist(1));
                assert_eq!(l, -(&b * &lp));
                // D_i = ∏_{j<i} (θ^{q^i} − θ^{q^j})
                let mut prod = PolyA::one(&f);
                for j in 0..i {
                    prod = &prod * &(&PolyA::theta_q_pow(&f, i) - &PolyA::theta_q_pow(&f, j));
                }
                assert_eq!(d, prod);
            }
        }
    }

    #[test]
    fn pow_fast_matches_pow() {
        let f3 = Field::prime(3).unwrap();
        let g = p(&f3, &[2, 1, 1]);
        for n in [0, 1, 2, 5, 9, 26, 40] {
            assert_eq!(g.pow_fast(n), g.pow(n));
        }
    }
}
