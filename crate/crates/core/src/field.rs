//! Finite fields F_q, q = p^e, as F_p[u]/(modulus).
//!
//! Elements are packed into a `u64` as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` is the coefficient of `u^i`.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{usage, Error, Result};
use crate::ring::{Coeff, FieldCoeff, QPower};

/// Largest supported characteristic.
pub const MAX_PRIME: u64 = 1 << 16;

const TABLE_LIMIT: u64 = 1 << 16;

struct LogTables {
    exp: Vec<u64>,
    log: Vec<u64>,
}

pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
    /// Raw coefficients of (D_i, L_i), filled on demand.
    pub(crate) carlitz_cache: Mutex<Vec<(Vec<u64>, Vec<u64>)>>,
}

/// Shared handle to a finite field.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p && self.e == other.e && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in moduli (ascending coefficients) for the non-prime q we ship defaults for.
pub fn default_modulus(q: u64) -> Option<(u64, u32, Vec<u64>)> {
    match q {
        4 => Some((2, 2, vec![1, 1, 1])),
        8 => Some((2, 3, vec![1, 1, 0, 1])),
        9 => Some((3, 2, vec![2, 2, 1])),
        _ => None,
    }
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// F_q from q alone: a prime, or one of the built-in extension fields.
    pub fn from_q(q: u64) -> Result<Field> {
        if is_prime(q) {
            return Field::prime(q);
        }
        match default_modulus(q) {
            Some((p, e, m)) => Field::new(p, e, Some(m)),
            None => usage(format!(
                "q = {q} is neither prime nor one of the built-in fields 4, 8, 9; supply p, e and a modulus"
            )),
        }
    }

    /// `modulus` lists ascending coefficients and must be monic of degree `e`.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !is_prime(p) {
            return usage(format!("p = {p} is not prime"));
        }
        if p > MAX_PRIME {
            return usage(format!("p = {p} exceeds the supported bound {MAX_PRIME}"));
        }
        if e == 0 {
            return usage("extension degree must be at least 1");
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::Usage(format!("q = {p}^{e} does not fit in 64 bits")))?;
        let modulus = match (e, modulus) {
            (1, None) => vec![0, 1],
            (1, Some(m)) => {
                check_modulus(p, 1, &m)?;
                m
            }
            (_, None) => match default_modulus(q) {
                Some((_, _, m)) => m,
                None => return usage(format!("no built-in modulus for q = {q}; supply one")),
            },
            (_, Some(m)) => {
                check_modulus(p, e, &m)?;
                if !fp_irreducible(&m, p) {
                    return usage(format!("modulus {m:?} is reducible over F_{p}"));
                }
                m
            }
        };
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            tables: None,
            carlitz_cache: Mutex::new(Vec::new()),
        };
        if e > 1 && q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Field(Arc::new(ctx)))
    }

    pub fn zero(&self) -> FqElem {
        FqElem::raw(self, 0)
    }

    pub fn one(&self) -> FqElem {
        FqElem::raw(self, 1)
    }

    pub fn int(&self, n: i64) -> FqElem {
        FqElem::raw(self, self.from_i64(n))
    }

    /// The class of `u` (only meaningful when e > 1; equals 0 in F_p otherwise).
    pub fn generator(&self) -> FqElem {
        if self.e == 1 {
            self.zero()
        } else {
            FqElem::raw(self, self.p)
        }
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |v| FqElem::raw(self, v))
    }
}

fn check_modulus(p: u64, e: u32, m: &[u64]) -> Result<()> {
    if m.len() != e as usize + 1 {
        return usage(format!("modulus must have degree {e}, got {} coefficients", m.len()));
    }
    if m[e as usize] != 1 {
        return usage("modulus must be monic");
    }
    if let Some(c) = m.iter().find(|&&c| c >= p) {
        return usage(format!("modulus coefficient {c} is not a residue mod {p}"));
    }
    Ok(())
}

// ---- small F_p[u] helpers used for irreducibility testing and slow multiplication ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = d - dm + i;
            r[idx] = (r[idx] + p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        n >>= 1;
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Distinct-degree irreducibility test for a monic polynomial over F_p.
fn fp_irreducible(m: &[u64], p: u64) -> bool {
    let e = m.len() - 1;
    if e <= 3 {
        // Degree ≤ 3: reducible iff it has a root.
        return (0..p).all(|c| {
            let mut acc = 0u64;
            for &coef in m.iter().rev() {
                acc = (acc * c + coef) % p;
            }
            acc != 0
        });
    }
    // h = u^{p^k} mod m; gcd(h - u, m) must be 1 for k ≤ e/2.
    let mut h = vec![0, 1];
    for _ in 0..e / 2 {
        let mut acc = vec![1];
        let mut base = h.clone();
        let mut n = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = fp_rem(&fp_mul(&acc, &base, p), m, p);
            }
            base = fp_rem(&fp_mul(&base, &base, p), m, p);
            n >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        let g = fp_gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the defining modulus; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn to_json(&self) -> serde_json::Value {
        let modulus = if self.e == 1 {
            serde_json::Value::Array(vec![])
        } else {
            serde_json::Value::from(self.modulus.clone())
        };
        serde_json::json!({ "p": self.p, "e": self.e, "modulus": modulus })
    }

    pub fn coords(&self, v: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut v = v;
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coords(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[((t.log[a as usize] + t.log[b as usize]) % (self.q - 1)) as usize],
            None => self.slow_mul(a, b),
        }
    }

    pub fn pow(&self, a: u64, mut n: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize];
            return Some(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]);
        }
        Some(self.pow(a, self.q - 2))
    }

    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += f(a % self.p, b % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let prod = fp_mul(&self.coords(a), &self.coords(b), self.p);
        let r = fp_rem(&prod, &self.modulus, self.p);
        self.from_coords(&r)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.q - 1;
        let mut primes = Vec::new();
        let mut n = order;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        let slow_pow = |a: u64, mut n: u64| {
            let mut acc = 1;
            let mut base = a;
            while n > 0 {
                if n & 1 == 1 {
                    acc = self.slow_mul(acc, base);
                }
                base = self.slow_mul(base, base);
                n >>= 1;
            }
            acc
        };
        let g = (2..self.q)
            .find(|&g| primes.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u64; order as usize];
        let mut log = vec![0u64; self.q as usize];
        let mut x = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = k as u64;
            x = self.slow_mul(x, g);
        }
        LogTables { exp, log }
    }

    pub(crate) fn fmt_value(&self, v: u64) -> String {
        if self.e == 1 {
            return v.to_string();
        }
        let c = self.coords(v);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let part = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "u".to_string(),
                (1, _) => format!("{ci}*u"),
                (_, 1) => format!("u^{i}"),
                _ => format!("{ci}*u^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// An element of F_q.
#[derive(Clone)]
pub struct FqElem {
    field: Field,
    v: u64,
}

impl FqElem {
    pub(crate) fn raw(field: &Field, v: u64) -> Self {
        FqElem {
            field: field.clone(),
            v,
        }
    }

    /// Builds an element from its `e` coordinates over F_p.
    pub fn from_coords(field: &Field, coords: &[u64]) -> Result<Self> {
        if coords.len() != field.e() as usize {
            return usage(format!(
                "F_{} element needs {} coordinates, got {}",
                field.q(),
                field.e(),
                coords.len()
            ));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= field.p()) {
            return usage(format!("coordinate {c} is not a residue mod {}", field.p()));
        }
        Ok(FqElem::raw(field, field.from_coords(coords)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Packed encoding, `0 ≤ value < q`.
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.v)
    }

    fn same_field(&self, other: &FqElem) -> Result<()> {
        if self.field != other.field {
            return usage(format!(
                "mixed field contexts: {:?} and {:?}",
                self.field, other.field
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &FqElem) -> Result<FqElem> {
        self.same_field(rhs)?;
        Ok(FqElem::raw(&self.field, self.field.add(self.v, rhs.v)))
    }

    pub fn checked_sub(&self, rhs: &FqElem) -> Result<FqElem> {
        self.same_field(rhs)?;
        Ok(FqElem::raw(&self.field, self.field.sub(self.v, rhs.v)))
    }

    pub fn checked_mul(&self, rhs: &FqElem) -> Result<FqElem> {
        self.same_field(rhs)?;
        Ok(FqElem::raw(&self.field, self.field.mul(self.v, rhs.v)))
    }

    pub fn inverse(&self) -> Result<FqElem> {
        self.field
            .inv(self.v)
            .map(|v| FqElem::raw(&self.field, v))
            .ok_or_else(|| Error::Domain("inversion of zero in F_q".into()))
    }

    pub fn pow(&self, n: u64) -> FqElem {
        FqElem::raw(&self.field, self.field.pow(self.v, n))
    }

    /// x ↦ x^p
    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p())
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.field == other.field
    }
}

impl Eq for FqElem {}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_value(self.v))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_value(self.v))
    }
}

macro_rules! fq_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FqElem> for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.$checked(rhs).expect("F_q operands from different fields")
            }
        }
        impl $tr<FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                (&self).$method(&rhs)
            }
        }
    };
}

fq_binop!(Add, add, checked_add);
fq_binop!(Sub, sub, checked_sub);
fq_binop!(Mul, mul, checked_mul);

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem::raw(&self.field, self.field.neg(self.v))
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

impl Coeff for FqElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.v == 0
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
        self.field.int(n)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        let r = n % BigInt::from(self.field.p());
        self.field.int(r.to_i64().expect("residue fits"))
    }
    fn characteristic(&self) -> u64 {
        self.field.p()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.coords())
    }
    fn is_compound(&self) -> bool {
        self.field.e() > 1 && self.coords().iter().filter(|&&c| c != 0).count() > 1
    }
    fn pow_u64(&self, n: u64) -> Self {
        self.pow(n)
    }
}

impl FieldCoeff for FqElem {
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl QPower for FqElem {
    fn base_q(&self) -> u64 {
        self.field.q()
    }
    fn pow_q(&self) -> Self {
        self.clone()
    }
}
