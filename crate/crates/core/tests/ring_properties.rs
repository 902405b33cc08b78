use carlitz_lab::enumerate::{monic_at, Lab, DEFAULT_CAP};
use carlitz_lab::{Coeff, Field, FqElem, Monomial, MultiPoly, PolyA, RatFun, Var};
use proptest::prelude::*;
use std::collections::HashSet;

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field(idx: usize) -> Field {
    Field::from_q(QS[idx % QS.len()]).unwrap()
}

fn poly(f: &Field, raw: &[u64]) -> PolyA {
    PolyA::from_raw(f, raw.iter().map(|c| c % f.q()).collect())
}

#[test]
fn frobenius_and_freshman_dream_exhaustive() {
    for q in QS {
        let f = Field::from_q(q).unwrap();
        let p = f.p();
        let elems: Vec<FqElem> = f.elements().collect();
        assert_eq!(elems.len() as u64, q);
        for x in &elems {
            assert_eq!(x.pow(q), *x);
            let mut y = x.clone();
            for _ in 0..f.e() {
                y = y.frobenius();
            }
            assert_eq!(&y, x);
            for z in &elems {
                assert_eq!((x + z).pow(p), &x.pow(p) + &z.pow(p));
            }
        }
    }
}

#[test]
fn monic_enumeration_matches_coefficient_vectors() {
    for q in [2u64, 3, 4, 5] {
        let f = Field::from_q(q).unwrap();
        let lab = Lab::new(f.clone(), DEFAULT_CAP);
        for i in 0..=3u32 {
            let got: Vec<PolyA> = lab.monic_enumerate(i).unwrap().collect();
            let set: HashSet<Vec<u64>> = got.iter().map(|a| a.raw().to_vec()).collect();
            assert_eq!(set.len() as u64, q.pow(i));
            assert!(got.iter().all(|a| a.is_monic() && a.degree() == Some(i as usize)));
            let mut want = HashSet::new();
            for n in 0..q.pow(i) {
                let mut c: Vec<u64> = (0..i).map(|k| n / q.pow(k) % q).collect();
                c.push(1);
                want.insert(c);
            }
            assert_eq!(set, want);
            assert_eq!(got.last().unwrap(), &monic_at(&f, i, q.pow(i) - 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_ring_axioms(
        fi in 0usize..7,
        a in prop::collection::vec(0u64..9, 0..8),
        b in prop::collection::vec(0u64..9, 0..8),
        c in prop::collection::vec(0u64..9, 0..6),
    ) {
        let f = field(fi);
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
        }
        if !b.is_zero() {
            let (quo, rem) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        } else {
            prop_assert!(a.divmod(&b).is_err());
        }
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(g.is_monic());
            prop_assert!(a.divmod(&g).unwrap().1.is_zero());
            prop_assert!(b.divmod(&g).unwrap().1.is_zero());
        }
    }

    #[test]
    fn twist_is_q_power(fi in 0usize..7, a in prop::collection::vec(0u64..9, 0..6), k in 0u32..3) {
        let f = field(fi);
        let a = poly(&f, &a);
        prop_assert_eq!(a.frobenius_twist(k), a.pow(f.q().pow(k)));
    }

    #[test]
    fn ratfun_canonical_form(
        fi in 0usize..4,
        n in prop::collection::vec(0u64..9, 0..5),
        d in prop::collection::vec(0u64..9, 1..5),
        e in prop::collection::vec(0u64..9, 1..4),
    ) {
        let f = field(fi);
        let (n, d, e) = (poly(&f, &n), poly(&f, &d), poly(&f, &e));
        prop_assume!(!d.is_zero() && !e.is_zero());
        let base = RatFun::new(n.clone(), d.clone()).unwrap();
        let other = RatFun::new(&n * &e, &d * &e).unwrap();
        prop_assert_eq!(&base, &other);
        prop_assert!(other.den().is_monic());
        prop_assert!(other.num().gcd(other.den()).is_one());
    }

    #[test]
    fn multipoly_evaluation_is_a_homomorphism(
        a in prop::collection::vec((0u64..4, 0u64..4, 0i64..101), 0..6),
        b in prop::collection::vec((0u64..4, 0u64..4, 0i64..101), 0..6),
        px in 0i64..101,
        pz in 0i64..101,
    ) {
        let f = Field::prime(101).unwrap();
        let build = |terms: &[(u64, u64, i64)]| {
            MultiPoly::from_terms(&f.one(), &[Var::X, Var::Z], terms.iter().map(|&(ex, ez, c)| {
                (Monomial::from_pairs(&[(Var::X, ex), (Var::Z, ez)]), f.int(c))
            }))
        };
        let (fa, fb) = (build(&a), build(&b));
        let pt = [(Var::X, f.int(px)), (Var::Z, f.int(pz))];
        let ev = |p: &MultiPoly<FqElem>| p.eval(&pt).unwrap();
        prop_assert_eq!(ev(&(&fa * &fb)), &ev(&fa) * &ev(&fb));
        prop_assert_eq!(ev(&(&fa + &fb)), &ev(&fa) + &ev(&fb));
        // Substitution commutes with multiplication.
        let sub = MultiPoly::var(Var::X, &f.one()).pow(2);
        let lhs = (&fa * &fb).substitute(Var::Z, &sub).unwrap();
        let rhs = &fa.substitute(Var::Z, &sub).unwrap() * &fb.substitute(Var::Z, &sub).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
