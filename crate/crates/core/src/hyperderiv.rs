//! Hyperderivatives ∂^j with ∂^j(θ^n) = C(n, j)·θ^{n−j}, Taylor expansion about t = θ,
//! and the q-power identity for truncated series.

use crate::error::{usage, Result};
use crate::field::FqElem;
use crate::multipoly::{Monomial, MultiPoly, Var};
use crate::poly::{bracket_poly, PolyA};
use crate::ring::Coeff;

/// `C(n, j) mod p` by the base-p digits of n and j.
pub fn lucas_binomial(mut n: u64, mut j: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while j > 0 {
        let (nd, jd) = (n % p, j % p);
        if jd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, jd, p) % p;
        n /= p;
        j /= p;
    }
    acc
}

/// `C(n, k) mod p` for n < p via a single row of Pascal's triangle.
fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inverse(den, p) % p
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

/// `∂_θ^j(f)` for f ∈ A.
pub fn hyperderivative(f: &PolyA, j: u64) -> PolyA {
    let field = f.field();
    let p = field.p();
    let Some(deg) = f.degree() else {
        return f.clone();
    };
    if j as usize > deg {
        return PolyA::zero(field);
    }
    let j = j as usize;
    let raw = f.raw();
    let out: Vec<u64> = (j..=deg)
        .map(|n| {
            let b = lucas_binomial(n as u64, j as u64, p);
            match (b, raw[n]) {
                (0, _) | (_, 0) => 0,
                _ => field.mul(raw[n], field.from_i64(b as i64)),
            }
        })
        .collect();
    PolyA::from_raw(field, out)
}

/// A hyperdifferential operator `∂_var^order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperOp {
    pub var: Var,
    pub order: u64,
}

impl HyperOp {
    pub fn new(var: Var, order: u64) -> HyperOp {
        HyperOp { var, order }
    }

    /// On A the only variable is θ.
    pub fn apply_a(&self, f: &PolyA) -> Result<PolyA> {
        if self.var != Var::Theta {
            return usage(format!("elements of A only involve θ, not {}", self.var));
        }
        Ok(hyperderivative(f, self.order))
    }

    pub fn apply<C: Coeff>(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        f.hyperderivative(self.var, self.order)
    }
}

impl<C: Coeff> MultiPoly<C> {
    /// `∂_v^j`, acting on monomials only (coefficients are constants for `v`).
    pub fn hyperderivative(&self, v: Var, j: u64) -> Result<MultiPoly<C>> {
        if !self.vars().any(|w| w == v) {
            return usage(format!("variable {v} is not in the variable set"));
        }
        let sample = self.sample();
        let mut out = MultiPoly::zero(sample, &self.vars().collect::<Vec<_>>());
        for (m, c) in self.terms() {
            let n = m.exp(v);
            if n < j {
                continue;
            }
            let b = sample.binomial_like(n, j);
            if b.is_zero() {
                continue;
            }
            out.add_term(m.with_exp(v, n - j), c.mul_ref(&b));
        }
        Ok(out)
    }
}

/// `(∂_θ^j f)` for j = 0..=max_j.
pub fn taylor_about_theta(f: &PolyA, max_j: u64) -> Vec<PolyA> {
    (0..=max_j).map(|j| hyperderivative(f, j)).collect()
}

/// `Σ_j c_j·(t − θ)^j` in {θ, t}.
pub fn taylor_reconstruct(coeffs: &[PolyA]) -> MultiPoly<FqElem> {
    let Some(first) = coeffs.first() else {
        panic!("taylor_reconstruct needs at least one coefficient");
    };
    let field = first.field();
    let one = field.one();
    let vars = [Var::Theta, Var::T];
    let shift = &MultiPoly::var(Var::T, &one) - &MultiPoly::var(Var::Theta, &one);
    let mut acc = MultiPoly::zero(&one, &vars);
    let mut pw = MultiPoly::one(&one, &vars);
    for c in coeffs {
        acc = &acc + &(&MultiPoly::from_poly_a(c, Var::Theta) * &pw);
        pw = &pw * &shift;
    }
    acc
}

/// Whether the Taylor coefficients up to `deg f` rebuild `f(t)`.
pub fn taylor_check(f: &PolyA) -> bool {
    let deg = f.degree().unwrap_or(0) as u64;
    let rebuilt = taylor_reconstruct(&taylor_about_theta(f, deg));
    rebuilt == MultiPoly::from_poly_a(f, Var::T)
}

/// Checks `g^{q^k} ≡ Σ_j ∂^j(g)·[k]^j (mod θ^n)` for a series known modulo θ^n.
pub fn voloch_qpower_check(g: &PolyA, k: u32, n: usize) -> bool {
    let field = g.field();
    let g = g.truncate(n);
    let lhs = g.frobenius_twist(k).truncate(n);
    let rhs = if k == 0 {
        g.clone()
    } else {
        let b = bracket_poly(field, k);
        let mut acc = PolyA::zero(field);
        let mut pw = PolyA::one(field);
        // [k] has θ-order 1, so [k]^j vanishes mod θ^n once j ≥ n.
        for j in 0..n as u64 {
            acc = &acc + &hyperderivative(&g, j).mul_trunc(&pw, n);
            pw = pw.mul_trunc(&b, n);
            if pw.is_zero() {
                break;
            }
        }
        acc
    };
    lhs == rhs
}

impl MultiPoly<FqElem> {
    /// A univariate element of A as a polynomial in `var`.
    pub fn from_poly_a(f: &PolyA, var: Var) -> MultiPoly<FqElem> {
        let one = f.field().one();
        MultiPoly::from_terms(
            &one,
            &[var],
            f.coeffs()
                .into_iter()
                .enumerate()
                .map(|(n, c)| (Monomial::power(var, n as u64), c)),
        )
    }

    /// Inverse of [`MultiPoly::from_poly_a`]; other variables are a usage error.
    pub fn to_poly_a(&self, var: Var) -> Result<PolyA> {
        let field = self.sample().field().clone();
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut c = vec![0u64; deg + 1];
        for (m, v) in self.terms() {
            if m.pairs().iter().any(|&(w, _)| w != var) {
                return usage(format!("{self} is not a polynomial in {var} alone"));
            }
            c[m.exp(var) as usize] = v.value();
        }
        Ok(PolyA::from_raw(&field, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::exact_binomial;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn factorial_binomial_mod(n: u64, j: u64, p: u64) -> u64 {
        (exact_binomial(n, j) % p).to_u64().unwrap()
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial(2, 1, 2), 0);
        assert_eq!(lucas_binomial(4, 2, 3), 0);
        assert_eq!(lucas_binomial(10, 5, 3), 0);
        for p in [2, 3, 5, 7] {
            for n in 0..60 {
                for j in 0..=n + 2 {
                    assert_eq!(lucas_binomial(n, j, p), factorial_binomial_mod(n, j, p), "{n} {j} {p}");
                }
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let f3 = Field::prime(3).unwrap();
        let f2 = Field::prime(2).unwrap();
        let sq3 = PolyA::from_ints(&f3, &[0, 0, 1]);
        assert_eq!(hyperderivative(&sq3, 1), PolyA::from_ints(&f3, &[0, 2]));
        assert!(hyperderivative(&PolyA::from_ints(&f2, &[0, 0, 1]), 1).is_zero());
        assert_eq!(hyperderivative(&sq3, 0), sq3);
        assert!(HyperOp::new(Var::T, 1).apply_a(&sq3).is_err());
    }

    #[test]
    fn lucas_vanishing_exhaustive() {
        for p in [2u64, 3, 5] {
            let f = Field::prime(p).unwrap();
            for n in 0..p * p * p {
                let mono = PolyA::monomial(&f.one(), n as usize);
                for j in 0..=n {
                    let digit_exceeds = {
                        let (mut a, mut b, mut ex) = (n, j, false);
                        while b > 0 {
                            ex |= b % p > a % p;
                            a /= p;
                            b /= p;
                        }
                        ex
                    };
                    if digit_exceeds {
                        assert!(hyperderivative(&mono, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn taylor_examples() {
        let f3 = Field::prime(3).unwrap();
        let sq = PolyA::from_ints(&f3, &[0, 0, 1]);
        let coeffs = taylor_about_theta(&sq, 2);
        assert_eq!(coeffs, vec![sq.clone(), PolyA::from_ints(&f3, &[0, 2]), PolyA::one(&f3)]);
        assert!(taylor_check(&sq));
        assert_eq!(
            taylor_about_theta(&PolyA::theta(&f3), 3),
            vec![PolyA::theta(&f3), PolyA::one(&f3), PolyA::zero(&f3), PolyA::zero(&f3)]
        );
    }

    #[test]
    fn voloch_examples() {
        let f3 = Field::prime(3).unwrap();
        assert!(voloch_qpower_check(&PolyA::theta(&f3), 1, 10));
        let f2 = Field::prime(2).unwrap();
        let geo = PolyA::from_ints(&f2, &[1; 32]);
        assert!(voloch_qpower_check(&geo, 1, 32));
        assert!(voloch_qpower_check(&geo, 0, 32));
    }

    #[test]
    fn multipoly_derivative_matches_a() {
        let f5 = Field::prime(5).unwrap();
        let f = PolyA::from_ints(&f5, &[3, 1, 4, 1, 0, 2, 1]);
        let m = MultiPoly::from_poly_a(&f, Var::Theta);
        for j in 0..8 {
            let d = m.hyperderivative(Var::Theta, j).unwrap().to_poly_a(Var::Theta).unwrap();
            assert_eq!(d, hyperderivative(&f, j));
        }
        assert!(m.hyperderivative(Var::Z, 1).is_err());
    }

    fn poly_strategy(p: u64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0..p as i64, 0..max_len)
    }

    proptest! {
        #[test]
        fn product_and_composition_rules(
            pi in 0usize..3,
            a in poly_strategy(7, 10),
            b in poly_strategy(7, 10),
            j in 0u64..5,
            k in 0u64..4,
        ) {
            let p = [2u64, 3, 5][pi];
            let f = Field::prime(p).unwrap();
            let fa = PolyA::from_ints(&f, &a);
            let fb = PolyA::from_ints(&f, &b);
            let lhs = hyperderivative(&(&fa * &fb), j);
            let mut rhs = PolyA::zero(&f);
            for i in 0..=j {
                rhs = &rhs + &(&hyperderivative(&fa, i) * &hyperderivative(&fb, j - i));
            }
            prop_assert_eq!(lhs, rhs);
            let comp = hyperderivative(&hyperderivative(&fa, k), j);
            let b = f.int(lucas_binomial(j + k, j, p) as i64);
            prop_assert_eq!(comp, hyperderivative(&fa, j + k).scale(&b));
        }

        #[test]
        fn taylor_reconstruction(pi in 0usize..3, a in poly_strategy(5, 13)) {
            let f = Field::prime([2u64, 3, 5][pi]).unwrap();
            prop_assert!(taylor_check(&PolyA::from_ints(&f, &a)));
        }

        #[test]
        fn voloch_random(qi in 0usize..3, a in prop::collection::vec(0u64..4, 32), k in 0u32..4) {
            let f = Field::from_q([2u64, 3, 4][qi]).unwrap();
            let raw: Vec<u64> = a.iter().map(|&c| c % f.q()).collect();
            prop_assert!(voloch_qpower_check(&PolyA::from_raw(&f, raw), k, 32));
        }
    }
}
