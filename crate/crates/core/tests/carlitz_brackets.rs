use carlitz_lab::carlitz::*;
use carlitz_lab::enumerate::{Lab, DEFAULT_CAP};
use carlitz_lab::{Coeff, Field, PolyA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// τ-coefficients of C_a from repeated left multiplication by (θ + τ), written out by hand.
fn brackets_by_powers(a: &PolyA) -> Vec<PolyA> {
    let f = a.field();
    let deg = a.degree().unwrap_or(0);
    // pw[k] holds the τ^k coefficient of (θ + τ)^n
    let mut pw = vec![PolyA::one(f)];
    let mut out = vec![PolyA::zero(f); deg + 1];
    for n in 0..=deg {
        let c = PolyA::constant(&a.coeff(n));
        for (k, v) in pw.iter().enumerate() {
            out[k] = &out[k] + &(&c * v);
        }
        // (θ + τ)·Σ v_k τ^k = Σ θ v_k τ^k + Σ v_k^q τ^{k+1}
        let mut next = vec![PolyA::zero(f); pw.len() + 1];
        for (k, v) in pw.iter().enumerate() {
            next[k] = &next[k] + &(&PolyA::theta(f) * v);
            next[k + 1] = &next[k + 1] + &v.frobenius_twist(1);
        }
        pw = next;
    }
    out
}

#[test]
fn four_way_agreement_exhaustive_small_q() {
    for q in [2u64, 3] {
        let lab = Lab::new(Field::prime(q).unwrap(), DEFAULT_CAP);
        for deg in 0..=4u32 {
            for a in lab.monic_enumerate(deg).unwrap() {
                let oracle = brackets_by_powers(&a);
                for k in 0..=deg as usize + 1 {
                    let want = oracle.get(k).cloned().unwrap_or_else(|| PolyA::zero(&lab.field));
                    assert_eq!(bracket_direct(&a, k), want, "a = {a}, k = {k}");
                    assert_eq!(bracket_carlitz_formula(&a, k).unwrap(), want);
                    assert_eq!(bracket_hyper_formula(&a, k), want);
                }
                assert_eq!(bracket_direct(&a, deg as usize), PolyA::constant(&a.leading()));
            }
        }
    }
}

#[test]
fn four_way_agreement_random_extension_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [4u64, 5] {
        let f = Field::from_q(q).unwrap();
        for _ in 0..50 {
            let deg = rng.gen_range(0..=4usize);
            let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
            c.push(rng.gen_range(1..q));
            let a = PolyA::from_raw(&f, c);
            for k in 0..=deg {
                let d = bracket_direct(&a, k);
                assert_eq!(bracket_carlitz_formula(&a, k).unwrap(), d);
                assert_eq!(bracket_hyper_formula(&a, k), d);
                assert_eq!(mu_expand(&a)[k], d);
            }
        }
    }
}

#[test]
fn theta_power_brackets() {
    for q in [2u64, 3, 4] {
        let f = Field::from_q(q).unwrap();
        for m in 0..=8usize {
            let a = PolyA::monomial(&f.one(), m);
            for k in 0..=m {
                assert_eq!(bracket_theta_power(&f, m, k).unwrap(), bracket_direct(&a, k));
            }
        }
    }
}

#[test]
fn mu_expansion_matches_brackets() {
    for q in [2u64, 3] {
        let lab = Lab::new(Field::prime(q).unwrap(), DEFAULT_CAP);
        for deg in 0..=5 {
            for a in lab.monic_enumerate(deg).unwrap() {
                mu_expand_checked(&a).unwrap();
            }
        }
    }
}

#[test]
fn registry_formulas_agree() {
    let f = Field::prime(3).unwrap();
    let a = PolyA::from_ints(&f, &[0, 0, 0, 1]);
    for k in 0..5 {
        let vals: Vec<PolyA> = bracket_formulas()
            .iter()
            .filter(|fm| fm.applies(&a))
            .map(|fm| fm.bracket(&a, k).unwrap())
            .collect();
        assert_eq!(vals.len(), 5);
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }
    let b = PolyA::from_ints(&f, &[1, 0, 1]);
    assert!(!bracket_formula("theta-power").unwrap().applies(&b));
    assert!(bracket_formulas()[0].bracket(&b, 0).unwrap().sub_ref(&b).is_zero());
}
