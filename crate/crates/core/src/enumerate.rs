//! Enumeration of monic polynomials of fixed degree, bounded by a configurable cap.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::PolyA;

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Name of the environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "CARLITZ_LAB_CAP";

/// A field together with the enumeration cap used by brute-force sums.
#[derive(Clone, Debug)]
pub struct Lab {
    pub field: Field,
    pub cap: u64,
}

impl Lab {
    pub fn new(field: Field, cap: u64) -> Lab {
        Lab { field, cap }
    }

    /// Cap from `CARLITZ_LAB_CAP` when set and valid, else the default.
    pub fn with_default_cap(field: Field) -> Lab {
        let cap = std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_CAP);
        Lab { field, cap }
    }

    /// `q^i`, or a resource error if it exceeds the cap.
    pub fn count(&self, i: u32) -> Result<u64> {
        let q = self.field.q();
        match q.checked_pow(i) {
            Some(n) if n <= self.cap => Ok(n),
            _ => Err(Error::Resource {
                what: format!("monic polynomials of degree {i}"),
                requested: format!("{q}^{i}"),
                cap: self.cap,
            }),
        }
    }

    pub fn monic_enumerate(&self, i: u32) -> Result<impl Iterator<Item = PolyA> + '_> {
        let n = self.count(i)?;
        Ok((0..n).map(move |idx| monic_at(&self.field, i, idx)))
    }
}

/// The `idx`-th monic polynomial of degree i: base-q digits of idx give c_0, c_1, … .
pub fn monic_at(field: &Field, i: u32, mut idx: u64) -> PolyA {
    let q = field.q();
    let mut c = Vec::with_capacity(i as usize + 1);
    for _ in 0..i {
        c.push(idx % q);
        idx /= q;
    }
    c.push(1);
    PolyA::from_raw(field, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_cases() {
        let lab = Lab::new(Field::prime(2).unwrap(), DEFAULT_CAP);
        let got: Vec<PolyA> = lab.monic_enumerate(2).unwrap().collect();
        let f = &lab.field;
        let want = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]].map(|c| PolyA::from_ints(f, &c));
        assert_eq!(got, want);
        let lab3 = Lab::new(Field::prime(3).unwrap(), DEFAULT_CAP);
        assert_eq!(lab3.monic_enumerate(0).unwrap().collect::<Vec<_>>(), vec![PolyA::one(&lab3.field)]);
    }

    #[test]
    fn set_equality_against_direct_generation() {
        for q in [3u64, 4, 5] {
            let lab = Lab::new(Field::from_q(q).unwrap(), DEFAULT_CAP);
            let got: HashSet<Vec<u64>> = lab.monic_enumerate(2).unwrap().map(|a| a.raw().to_vec()).collect();
            let mut want = HashSet::new();
            for c0 in 0..q {
                for c1 in 0..q {
                    want.insert(vec![c0, c1, 1]);
                }
            }
            assert_eq!(got.len() as u64, q * q);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let lab = Lab::new(Field::prime(3).unwrap(), 10);
        let err = lab.monic_enumerate(3).err().unwrap();
        assert!(matches!(err, Error::Resource { cap: 10, .. }));
        assert!(err.to_string().contains("10"));
    }
}
