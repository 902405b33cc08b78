//! Coefficient-ring abstraction shared by the generic algorithms.
//!
//! Elements carry whatever context they need (the finite field, the
//! variable set) so a generic routine only needs one sample element to
//! build zeros, ones and integer images.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::hyperderiv::lucas_binomial;
use crate::poly::PolyA;

/// A commutative ring element.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Image of an integer under the canonical map from ℤ.
    fn from_int_like(&self, n: i64) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn to_json(&self) -> serde_json::Value;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Whether `Display` output needs parentheses when printed as a factor.
    fn is_compound(&self) -> bool {
        false
    }

    fn pow_u64(&self, mut n: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// `C(n, k)` mapped into this ring; Lucas digits in characteristic p.
    fn binomial_like(&self, n: u64, k: u64) -> Self {
        match self.characteristic() {
            0 => self.from_bigint_like(&exact_binomial(n, k)),
            p => self.from_int_like(lucas_binomial(n, k, p) as i64),
        }
    }

    /// `(-1)^n`
    fn sign_like(&self, n: u64) -> Self {
        if n % 2 == 0 {
            self.one_like()
        } else {
            self.one_like().neg_ref()
        }
    }
}

/// Rings in which every nonzero element is invertible.
pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Result<Self>;

    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_ref(&rhs.inv()?))
    }
}

/// Rings of characteristic p containing F_q, where `x ↦ x^q` is a ring endomorphism.
pub trait QPower: Coeff {
    fn base_q(&self) -> u64;
    fn pow_q(&self) -> Self;

    fn pow_q_iter(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.pow_q();
        }
        out
    }
}

/// A-algebras: rings receiving A = F_q[θ].
pub trait OverA: QPower {
    fn from_a(&self, a: &PolyA) -> Self;
}

pub fn exact_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        BigInt::from(n)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_json(&self) -> serde_json::Value {
        match self.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(self.to_string()),
        }
    }
    fn is_compound(&self) -> bool {
        self.is_negative()
    }
}
