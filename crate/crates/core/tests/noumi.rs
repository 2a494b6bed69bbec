use baxterlab::noumi::{apply_noumi, macdonald_d1_check, sample_point, verify_noumi};
use baxterlab::qcore::rat;
use baxterlab::symfunc::{eval_symmetric, macdonald_gram_schmidt, partitions_of, Partition};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn eigenrelation_on_small_grid() {
    let (q, t) = (rat(2, 7), rat(3, 11));
    for size in 0..=3 {
        for lam in partitions_of(size) {
            for n in lam.len().max(1)..=3 {
                let r = verify_noumi(&lam, n, &q, &t, 3, 2, 17).unwrap();
                assert!(r.pass, "λ={lam} n={n}: {:?}", r.diagnostics);
            }
        }
    }
}

#[test]
fn eigenrelation_at_t_equal_q() {
    let q = rat(3, 8);
    for lam in [p(&[1]), p(&[2]), p(&[2, 1]), p(&[1, 1])] {
        let r = verify_noumi(&lam, 2, &q, &q, 3, 2, 5).unwrap();
        assert!(r.pass, "λ={lam}");
    }
}

#[test]
fn both_operators_diagonal_on_same_inputs() {
    let (q, t) = (rat(1, 4), rat(5, 9));
    for lam in [p(&[2, 1]), p(&[3]), p(&[1, 1, 1])] {
        let a = verify_noumi(&lam, 3, &q, &t, 2, 2, 8).unwrap();
        let b = macdonald_d1_check(&lam, 3, &q, &t, 2, 8).unwrap();
        assert!(a.pass && b.pass, "λ={lam}");
    }
}

#[test]
fn preconditions_surface_as_errors() {
    let (q, t) = (rat(1, 4), rat(5, 9));
    assert!(verify_noumi(&p(&[1, 1, 1]), 2, &q, &t, 2, 1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn order_coefficients_are_symmetric(seed in any::<u64>(), lam_idx in 0usize..4) {
        let lam = [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])][lam_idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, t) = (rat(1, 3), rat(1, 5));
        let poly = macdonald_gram_schmidt(&lam, &q, &t).unwrap().restrict(3);
        let f = |x: &[BigRational]| eval_symmetric(&poly, x);
        let z = sample_point(&mut rng, 3);
        let perm = vec![z[2].clone(), z[0].clone(), z[1].clone()];
        let a = apply_noumi(f, &z, &q, &t, 2);
        let b = apply_noumi(f, &perm, &q, &t, 2);
        // a sampled point can hit a Pochhammer pole; symmetry is only asserted away from them
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }
}
