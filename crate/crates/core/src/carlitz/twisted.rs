//! The twisted polynomial ring A[τ] with τ·c = c^q·τ, and the Carlitz module a ↦ C_a.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::field::Field;
use crate::poly::PolyA;
use crate::ring::Coeff;

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Field,
    /// `coeffs[k]` multiplies τ^k; no trailing zeros.
    coeffs: Vec<PolyA>,
}

impl TwistedPoly {
    pub fn new(field: &Field, mut coeffs: Vec<PolyA>) -> TwistedPoly {
        while coeffs.last().is_some_and(PolyA::is_zero) {
            coeffs.pop();
        }
        TwistedPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> TwistedPoly {
        TwistedPoly::new(field, Vec::new())
    }

    pub fn constant(a: PolyA) -> TwistedPoly {
        let field = a.field().clone();
        TwistedPoly::new(&field, vec![a])
    }

    pub fn tau(field: &Field) -> TwistedPoly {
        TwistedPoly::new(field, vec![PolyA::zero(field), PolyA::one(field)])
    }

    /// `C_θ = θ + τ`
    pub fn carlitz_theta(field: &Field) -> TwistedPoly {
        TwistedPoly::new(field, vec![PolyA::theta(field), PolyA::one(field)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[PolyA] {
        &self.coeffs
    }

    /// Coefficient of τ^k (zero beyond the τ-degree).
    pub fn coeff(&self, k: usize) -> PolyA {
        self.coeffs.get(k).cloned().unwrap_or_else(|| PolyA::zero(&self.field))
    }

    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Drops τ-degrees above `max_k`.
    pub fn truncate(&self, max_k: usize) -> TwistedPoly {
        TwistedPoly::new(&self.field, self.coeffs.iter().take(max_k + 1).cloned().collect())
    }

    /// Right multiplication by `C_θ = θ + τ`, keeping τ-degrees ≤ `max_k`.
    fn mul_carlitz_theta(&self, max_k: usize) -> TwistedPoly {
        let f = &self.field;
        let len = (self.coeffs.len() + 1).min(max_k + 1);
        let mut out = vec![PolyA::zero(f); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k < len {
                out[k] = &out[k] + &(c * &PolyA::theta_q_pow(f, k as u32));
            }
            if k + 1 < len {
                out[k + 1] = &out[k + 1] + c;
            }
        }
        TwistedPoly::new(f, out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Coeff::to_json).collect())
    }
}

/// `C_a`, by Horner's rule in C_θ.
pub fn carlitz_of(a: &PolyA) -> TwistedPoly {
    carlitz_of_truncated(a, usize::MAX - 1)
}

/// `C_a` with τ-degrees above `max_k` discarded.
pub fn carlitz_of_truncated(a: &PolyA, max_k: usize) -> TwistedPoly {
    let f = a.field();
    let Some(deg) = a.degree() else {
        return TwistedPoly::zero(f);
    };
    let mut acc = TwistedPoly::constant(PolyA::constant(&a.coeff(deg)));
    for n in (0..deg).rev() {
        acc = acc.mul_carlitz_theta(max_k);
        let c = a.coeff(n);
        if c.value() != 0 {
            let mut coeffs = acc.coeffs;
            if coeffs.is_empty() {
                coeffs.push(PolyA::zero(f));
            }
            coeffs[0] = &coeffs[0] + &PolyA::constant(&c);
            acc = TwistedPoly::new(f, coeffs);
        }
    }
    acc
}

impl Add<&TwistedPoly> for &TwistedPoly {
    type Output = TwistedPoly;
    fn add(self, rhs: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TwistedPoly::new(&self.field, (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&TwistedPoly> for &TwistedPoly {
    type Output = TwistedPoly;
    fn sub(self, rhs: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TwistedPoly::new(&self.field, (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&TwistedPoly> for &TwistedPoly {
    type Output = TwistedPoly;
    /// `(aτ^m)(bτ^n) = a·b^{q^m}·τ^{m+n}`
    fn mul(self, rhs: &TwistedPoly) -> TwistedPoly {
        let f = &self.field;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TwistedPoly::zero(f);
        }
        let mut out = vec![PolyA::zero(f); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (n, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[m + n] = &out[m + n] + &(a * &b.frobenius_twist(m as u32));
            }
        }
        TwistedPoly::new(f, out)
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let cs = if c.is_compound() { format!("({c})") } else { c.to_string() };
                match (k, c.is_one()) {
                    (0, _) => c.to_string(),
                    (1, true) => "τ".to_string(),
                    (1, false) => format!("{cs}τ"),
                    (_, true) => format!("τ^{k}"),
                    _ => format!("{cs}τ^{k}"),
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedPoly({self})")
    }
}
