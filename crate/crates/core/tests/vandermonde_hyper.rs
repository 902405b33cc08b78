use carlitz_lab::enumerate::{Lab, DEFAULT_CAP};
use carlitz_lab::hyperderiv::hyperderivative;
use carlitz_lab::vandermonde::*;
use carlitz_lab::{Field, FqElem, PolyA, RatFun};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kappa_inverts_vandermonde_over_prime_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [5u64, 101] {
        let f = Field::prime(p).unwrap();
        let all: Vec<FqElem> = f.elements().collect();
        for _ in 0..30 {
            let i = rng.gen_range(0..=5usize.min(p as usize - 1));
            let nodes: Vec<FqElem> = all.choose_multiple(&mut rng, i + 1).cloned().collect();
            let v = vandermonde_matrix(&nodes, &f.one());
            let k = kappa_matrix(&nodes).unwrap();
            assert!(k.mul(&v).is_identity());
            assert!(v.mul(&k).is_identity());
        }
    }
}

#[test]
fn kappa_inverts_vandermonde_over_k() {
    let f = Field::prime(2).unwrap();
    let nodes: Vec<RatFun> = (0..4u32)
        .map(|m| RatFun::new(PolyA::theta_q_pow(&f, m), PolyA::from_ints(&f, &[1, 1])).unwrap())
        .collect();
    let v = vandermonde_matrix(&nodes, &RatFun::one(&f));
    assert!(kappa_matrix(&nodes).unwrap().mul(&v).is_identity());
}

#[test]
fn hyperderivative_via_vandermonde_small_fields() {
    for q in [2u64, 3] {
        let lab = Lab::new(Field::prime(q).unwrap(), DEFAULT_CAP);
        for i in 0..=2usize {
            // All a with deg a ≤ i: every coefficient vector of length i + 1.
            for idx in 0..q.pow(i as u32 + 1) {
                let a = PolyA::from_raw(&lab.field, (0..=i as u32).map(|b| idx / q.pow(b) % q).collect());
                for j in 0..=i {
                    for k in 0..=2u32 {
                        let r = hyperderiv_via_vandermonde(&a, i, j, k).unwrap();
                        assert!(r.t_independent);
                        assert_eq!(r.value, hyperderivative(&a, j as u64).frobenius_twist(k));
                    }
                }
            }
        }
    }
}

#[test]
fn hyperderivative_via_vandermonde_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in [4u64, 5] {
        let f = Field::from_q(q).unwrap();
        for _ in 0..25 {
            let i = rng.gen_range(0..=2usize);
            let a = PolyA::from_raw(&f, (0..=i).map(|_| rng.gen_range(0..q)).collect());
            let j = rng.gen_range(0..=i);
            let k = rng.gen_range(0..=2u32);
            let r = hyperderiv_via_vandermonde(&a, i, j, k).unwrap();
            assert!(r.t_independent);
            assert_eq!(r.value, hyperderivative(&a, j as u64).frobenius_twist(k));
        }
    }
}
