//! Elements of K = F_q(θ) in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::poly::{owned_ops, PolyA};
use crate::ring::{Coeff, FieldCoeff, OverA, QPower};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: PolyA,
    den: PolyA,
}

impl RatFun {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: PolyA, den: PolyA) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFun::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead = den.leading();
        if lead.value() != 1 {
            let inv = lead.inverse()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: PolyA) -> RatFun {
        let den = PolyA::one(p.field());
        RatFun { num: p, den }
    }

    pub fn zero(field: &Field) -> RatFun {
        RatFun::from_poly(PolyA::zero(field))
    }

    pub fn one(field: &Field) -> RatFun {
        RatFun::from_poly(PolyA::one(field))
    }

    pub fn num(&self) -> &PolyA {
        &self.num
    }

    pub fn den(&self) -> &PolyA {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    /// True iff the reduced denominator is 1, i.e. the value lies in A.
    pub fn is_integral(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The value as an element of A, if integral.
    pub fn to_poly(&self) -> Option<PolyA> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn inverse(&self) -> Result<RatFun> {
        if self.num.is_zero() {
            return Err(Error::Domain("inversion of zero in K".into()));
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, c: &FqElem) -> RatFun {
        if c.value() == 0 {
            return RatFun::zero(self.field());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow_i64(&self, n: i64) -> Result<RatFun> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let m = n.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow_fast(m),
            den: base.den.pow_fast(m),
        })
    }

    /// θ ↦ θ^{q^k}, equal to the q^k-th power.
    pub fn frobenius_twist(&self, k: u32) -> RatFun {
        RatFun {
            num: self.num.frobenius_twist(k),
            den: self.den.frobenius_twist(k),
        }
    }
}

impl From<PolyA> for RatFun {
    fn from(p: PolyA) -> RatFun {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &PolyA| {
            if p.is_compound() {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::zero(self.field());
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        RatFun::new(&n1 * &n2, &d1 * &d2).expect("nonzero den")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

owned_ops!(RatFun);

impl Coeff for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFun::one(self.field())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
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
        RatFun::from_poly(PolyA::from_ints(self.field(), &[n]))
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        RatFun::from_poly(self.num.from_bigint_like(n))
    }
    fn characteristic(&self) -> u64 {
        self.field().p()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
    fn is_compound(&self) -> bool {
        !self.is_integral() || self.num.is_compound()
    }
    fn pow_u64(&self, n: u64) -> Self {
        RatFun {
            num: self.num.pow_fast(n),
            den: self.den.pow_fast(n),
        }
    }
}

impl FieldCoeff for RatFun {
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl QPower for RatFun {
    fn base_q(&self) -> u64 {
        self.field().q()
    }
    fn pow_q(&self) -> Self {
        self.frobenius_twist(1)
    }
    fn pow_q_iter(&self, k: u32) -> Self {
        self.frobenius_twist(k)
    }
}

impl OverA for RatFun {
    fn from_a(&self, a: &PolyA) -> Self {
        RatFun::from_poly(a.clone())
    }
}
