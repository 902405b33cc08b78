//! Sparse multivariate polynomials over a generic coefficient ring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{usage, Error, Result};
use crate::ring::{Coeff, OverA, QPower};

/// Named variables, ordered θ < t < t_1 < … < x < x_1 < … < y_1 < … < T < z.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Theta,
    T,
    TIdx(u32),
    X,
    XIdx(u32),
    YIdx(u32),
    /// The auxiliary variable T of the shifted symmetric-polynomial identities.
    CapT,
    Z,
}

impl Var {
    /// ASCII name used in JSON.
    pub fn name(&self) -> String {
        match self {
            Var::Theta => "theta".into(),
            Var::T => "t".into(),
            Var::TIdx(i) => format!("t_{i}"),
            Var::X => "x".into(),
            Var::XIdx(i) => format!("x_{i}"),
            Var::YIdx(i) => format!("y_{i}"),
            Var::CapT => "T".into(),
            Var::Z => "z".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        let indexed = |prefix: &str| -> Option<u32> { s.strip_prefix(prefix)?.parse().ok() };
        Ok(match s {
            "theta" | "θ" => Var::Theta,
            "t" => Var::T,
            "x" => Var::X,
            "T" => Var::CapT,
            "z" => Var::Z,
            _ => {
                if let Some(i) = indexed("t_") {
                    Var::TIdx(i)
                } else if let Some(i) = indexed("x_") {
                    Var::XIdx(i)
                } else if let Some(i) = indexed("y_") {
                    Var::YIdx(i)
                } else {
                    return usage(format!("unknown variable name {s:?}"));
                }
            }
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Theta => f.write_str("θ"),
            other => f.write_str(&other.name()),
        }
    }
}

/// Sorted (variable, exponent) pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u64)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: &[(Var, u64)]) -> Monomial {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m = m.mul(&Monomial::power(v, e));
        }
        m
    }

    pub fn power(v: Var, e: u64) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn exp(&self, v: Var) -> u64 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u64)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a.1.checked_add(b.1).expect("exponent overflow");
                    out.push((a.0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }

    pub fn with_exp(&self, v: Var, e: u64) -> Monomial {
        self.without(v).mul(&Monomial::power(v, e))
    }

    /// All exponents multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&(v, e)| (v, e.checked_mul(k).expect("exponent overflow")))
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone)]
pub struct MultiPoly<C> {
    zero: C,
    vars: BTreeSet<Var>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    /// The zero polynomial in the given variables; `sample` fixes the coefficient ring.
    pub fn zero(sample: &C, vars: &[Var]) -> Self {
        MultiPoly {
            zero: sample.zero_like(),
            vars: vars.iter().copied().collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, vars: &[Var]) -> Self {
        let mut p = MultiPoly::zero(&c, vars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(sample: &C, vars: &[Var]) -> Self {
        MultiPoly::constant(sample.one_like(), vars)
    }

    pub fn var(v: Var, sample: &C) -> Self {
        MultiPoly::term(sample.one_like(), Monomial::var(v))
    }

    /// A single term; its variables form the variable set.
    pub fn term(c: C, mono: Monomial) -> Self {
        let vars: Vec<Var> = mono.pairs().iter().map(|&(v, _)| v).collect();
        let mut p = MultiPoly::zero(&c, &vars);
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(sample: &C, vars: &[Var], terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = MultiPoly::zero(sample, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(v: Var, coeffs: &[C], sample: &C) -> Self {
        MultiPoly::from_terms(
            sample,
            &[v],
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::power(v, e as u64), c.clone())),
        )
    }

    pub fn sample(&self) -> &C {
        &self.zero
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().copied()
    }

    pub fn with_vars(mut self, vars: &[Var]) -> Self {
        self.vars.extend(vars.iter().copied());
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, c: C) {
        for &(v, _) in mono.pairs() {
            self.vars.insert(v);
        }
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Coefficient of a monomial (zero when absent); linear in the polynomial.
    pub fn coefficient(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Collects the terms with `v^e`, with `v` removed.
    pub fn coefficient_of(&self, v: Var, e: u64) -> Self {
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.iter().copied().filter(|&w| w != v).collect();
        for (m, c) in &self.terms {
            if m.exp(v) == e {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> Option<u64> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn min_degree_in(&self, v: Var) -> Option<u64> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    /// Whether `v` actually occurs in some term.
    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.clone();
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul_ref(c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.clone();
        for (m, a) in &self.terms {
            out.add_term(m.mul(mono), a.clone());
        }
        out
    }

    /// Drops terms with `v`-exponent ≥ n.
    pub fn truncate(&self, v: Var, n: u64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|m, _| m.exp(v) < n);
        out
    }

    /// Product modulo `v^n`.
    pub fn mul_trunc(&self, rhs: &Self, v: Var, n: u64) -> Self {
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.union(&rhs.vars).copied().collect();
        for (ma, a) in &self.terms {
            let ea = ma.exp(v);
            if ea >= n {
                continue;
            }
            for (mb, b) in &rhs.terms {
                if ea + mb.exp(v) >= n {
                    continue;
                }
                out.add_term(ma.mul(mb), a.mul_ref(b));
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = MultiPoly::one(&self.zero, &[]).with_vars(&self.vars.iter().copied().collect::<Vec<_>>());
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

    pub fn map_coeffs<D: Coeff>(&self, sample: &D, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(sample, &[]);
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Fallible variant of [`MultiPoly::map_coeffs`].
    pub fn try_map_coeffs<D: Coeff>(
        &self,
        sample: &D,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<MultiPoly<D>> {
        let mut out = MultiPoly::zero(sample, &[]);
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    fn require_var(&self, v: Var) -> Result<()> {
        if !self.vars.contains(&v) {
            return usage(format!(
                "variable {v} is not in the variable set {{{}}}",
                self.vars.iter().map(Var::to_string).collect::<Vec<_>>().join(", ")
            ));
        }
        Ok(())
    }

    /// Replaces `v` by `value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly<C>) -> Result<Self> {
        self.require_var(v)?;
        let mut vars: BTreeSet<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        vars.extend(value.vars.iter().copied());
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = vars;
        let mut exps: Vec<u64> = self.terms.keys().map(|m| m.exp(v)).collect();
        exps.sort_unstable();
        exps.dedup();
        let mut powers: BTreeMap<u64, MultiPoly<C>> = BTreeMap::new();
        let mut prev: Option<(u64, MultiPoly<C>)> = None;
        for e in exps {
            let p = match &prev {
                None => value.pow(e),
                Some((pe, pp)) => pp * &value.pow(e - pe),
            };
            powers.insert(e, p.clone());
            prev = Some((e, p));
        }
        for (m, c) in &self.terms {
            let rest = MultiPoly::term(c.clone(), m.without(v));
            let piece = &rest * &powers[&m.exp(v)];
            out = &out + &piece;
        }
        Ok(out)
    }

    /// Substitutes a ring constant for `v`.
    pub fn eval_var(&self, v: Var, value: &C) -> Result<Self> {
        self.substitute(v, &MultiPoly::constant(value.clone(), &[]))
    }

    /// Evaluates at a full assignment of the occurring variables.
    pub fn eval(&self, point: &[(Var, C)]) -> Result<C> {
        let mut acc = self.zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let val = point
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| Error::Usage(format!("no value given for variable {v}")))?;
                t = t.mul_ref(&val.pow_u64(e));
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, serde_json::Value> = m
                        .pairs()
                        .iter()
                        .map(|(v, e)| (v.name(), serde_json::Value::from(*e)))
                        .collect();
                    serde_json::json!({ "exps": exps, "coeff": c.to_json() })
                })
                .collect(),
        )
    }
}

impl<C: QPower> MultiPoly<C> {
    /// `f^q` computed termwise (valid in characteristic p).
    pub fn frobenius(&self) -> Self {
        let q = self.zero.base_q();
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            out.add_term(m.scaled(q), c.pow_q());
        }
        out
    }

    /// `f^{q^k}`
    pub fn frobenius_iter(&self, k: u32) -> Self {
        let qk = self
            .zero
            .base_q()
            .checked_pow(k)
            .expect("exponent overflow");
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            out.add_term(m.scaled(qk), c.pow_q_iter(k));
        }
        out
    }

    /// `f^n` through the base-q digits of n.
    pub fn pow_digits(&self, n: u64) -> Self {
        let q = self.zero.base_q();
        let mut acc = MultiPoly::one(&self.zero, &[]).with_vars(&self.vars.iter().copied().collect::<Vec<_>>());
        let mut rest = n;
        let mut k = 0;
        while rest > 0 {
            let digit = rest % q;
            if digit > 0 {
                let tw = self.frobenius_iter(k);
                for _ in 0..digit {
                    acc = &acc * &tw;
                }
            }
            rest /= q;
            k += 1;
        }
        acc
    }
}

impl<C: OverA> MultiPoly<C> {
    /// Embeds a polynomial of A, with θ kept inside the coefficients.
    pub fn from_a(sample: &C, a: &crate::poly::PolyA) -> Self {
        MultiPoly::constant(sample.from_a(a), &[])
    }
}

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = if c.is_compound() {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match (m.is_one(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => m.to_string(),
                    (false, false) => format!("{cs}*{m}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> Add<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        out.vars.extend(other.vars.iter().copied());
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }
}

impl<C: Coeff> Mul<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = MultiPoly::zero(&self.zero, &[]);
        out.vars = self.vars.union(&rhs.vars).copied().collect();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a.mul_ref(b));
            }
        }
        out
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<C: Coeff> Coeff for MultiPoly<C> {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.zero, &[])
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.zero, &[])
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        MultiPoly::constant(self.zero.from_int_like(n), &[])
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        MultiPoly::constant(self.zero.from_bigint_like(n), &[])
    }
    fn characteristic(&self) -> u64 {
        self.zero.characteristic()
    }
    fn to_json(&self) -> serde_json::Value {
        MultiPoly::to_json(self)
    }
    fn is_compound(&self) -> bool {
        self.terms.len() > 1
            || self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_compound())
    }
}

impl<C: QPower> QPower for MultiPoly<C> {
    fn base_q(&self) -> u64 {
        self.zero.base_q()
    }
    fn pow_q(&self) -> Self {
        self.frobenius()
    }
}

/// Integer-coefficient polynomial in `x_1..x_n` convenience: the variables themselves.
pub fn symbolic_vars(make: fn(u32) -> Var, n: usize) -> Vec<MultiPoly<BigInt>> {
    let sample = BigInt::from(0);
    (1..=n as u32).map(|i| MultiPoly::var(make(i), &sample)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::PolyA;
    use crate::ratfun::RatFun;

    #[test]
    fn substitute_t_by_theta() {
        let f = Field::prime(3).unwrap();
        let one = PolyA::one(&f);
        let t = MultiPoly::var(Var::T, &one);
        let theta = MultiPoly::var(Var::Theta, &one);
        let diff = &t - &theta;
        assert!(diff.substitute(Var::T, &theta).unwrap().is_empty());
        assert!(matches!(diff.substitute(Var::Z, &theta), Err(Error::Usage(_))));
    }

    #[test]
    fn coefficient_extraction() {
        let f = Field::prime(3).unwrap();
        let one = RatFun::one(&f);
        let x3z = MultiPoly::term(one.clone(), Monomial::from_pairs(&[(Var::X, 3), (Var::Z, 1)]));
        let x3z3 = MultiPoly::term(one.clone(), Monomial::from_pairs(&[(Var::X, 3), (Var::Z, 3)]));
        let pq = &x3z - &x3z3;
        let c = pq.coefficient(&Monomial::from_pairs(&[(Var::X, 3), (Var::Z, 3)]));
        assert_eq!(c, one.from_int_like(-1));
    }

    #[test]
    fn truncation() {
        let sample = BigInt::from(0);
        let z = MultiPoly::var(Var::Z, &sample);
        let p = &MultiPoly::one(&sample, &[]) + &z;
        assert_eq!(p.truncate(Var::Z, 1), MultiPoly::one(&sample, &[]));
    }

    #[test]
    fn frobenius_matches_power() {
        let f = Field::prime(3).unwrap();
        let one = PolyA::one(&f);
        let theta = PolyA::theta(&f);
        let p = &MultiPoly::var(Var::X, &one).scale(&theta) + &MultiPoly::var(Var::Z, &one);
        assert_eq!(p.frobenius(), p.pow(3));
        assert_eq!(p.pow_digits(14), p.pow(14));
    }

    #[test]
    fn var_names_round_trip() {
        for v in [Var::Theta, Var::T, Var::TIdx(3), Var::X, Var::XIdx(2), Var::YIdx(1), Var::CapT, Var::Z] {
            assert_eq!(Var::parse(&v.name()).unwrap(), v);
        }
    }
}
