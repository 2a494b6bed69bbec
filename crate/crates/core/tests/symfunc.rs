use baxterlab::qcore::{rat, Scalar};
use baxterlab::symfunc::{
    dominance_leq, eval_symmetric, macdonald_gram_schmidt, macdonald_triangular_eigen, partitions_of,
    qt_inner_product, qwhittaker_branch_eval, solve_linear, Partition, Signature,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-100..=100);
    let den = rng.gen_range(1..=100);
    rat(num, den)
}

/// Rational in (0, 1).
fn random_unit(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(2..=100);
    rat(rng.gen_range(1..den), den)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    loop {
        let z: Vec<BigRational> = (0..n).map(|_| random_rational(rng)).collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| z[i] != z[j]));
        if distinct && z.iter().all(|x| !Scalar::is_zero(x)) {
            return z;
        }
    }
}

/// Determinant by exact elimination.
fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = rat(1, 1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !Scalar::is_zero(&a[r][col])) else {
            return rat(0, 1);
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d = d * a[col][col].clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                a[r][c] = v;
            }
        }
    }
    d
}

/// Schur polynomial as a ratio of alternants.
fn schur_bialternant(lam: &Partition, z: &[BigRational]) -> BigRational {
    let n = z.len();
    let alt = |shift: &dyn Fn(usize) -> i64| {
        let m: Vec<Vec<BigRational>> = z
            .iter()
            .map(|zi| (0..n).map(|j| zi.powi(shift(j))).collect())
            .collect();
        det(m)
    };
    let num = alt(&|j| lam.part(j) as i64 + (n - 1 - j) as i64);
    let den = alt(&|j| (n - 1 - j) as i64);
    num / den
}

fn partitions_up_to(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

#[test]
fn triangularity_of_both_constructions() {
    let (q, t) = (rat(3, 7), rat(2, 9));
    for lam in partitions_up_to(5) {
        let gs = macdonald_gram_schmidt(&lam, &q, &t).unwrap();
        assert_eq!(gs.coefficient(&lam), rat(1, 1), "{lam}");
        for (mu, _) in gs.terms() {
            assert!(dominance_leq(mu, &lam).unwrap(), "{mu} in P_{lam}");
        }
        for n in lam.len().max(1)..=3 {
            let eig = macdonald_triangular_eigen(&lam, n, &q, &t).unwrap();
            assert_eq!(eig.coefficient(&lam), rat(1, 1));
            for (mu, _) in eig.terms() {
                assert!(dominance_leq(mu, &lam).unwrap());
            }
        }
    }
}

#[test]
fn orthogonality_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let q = random_unit(&mut rng);
        let t = random_unit(&mut rng);
        for n in 1..=5 {
            let ps: Vec<_> = partitions_of(n)
                .into_iter()
                .map(|lam| macdonald_gram_schmidt(&lam, &q, &t).unwrap())
                .collect();
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    let ip = qt_inner_product(&ps[i], &ps[j], &q, &t).unwrap();
                    assert!(Scalar::is_zero(&ip), "degree {n}, q={q}, t={t}");
                }
                let norm = qt_inner_product(&ps[i], &ps[i], &q, &t).unwrap();
                assert!(!Scalar::is_zero(&norm));
            }
        }
    }
}

#[test]
fn schur_degeneration_at_t_equal_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for lam in partitions_up_to(4) {
        let q = random_unit(&mut rng);
        let p = macdonald_gram_schmidt(&lam, &q, &q).unwrap();
        for n in lam.len().max(1)..=3 {
            let restricted = p.restrict(n);
            for _ in 0..3 {
                let z = random_point(&mut rng, n);
                assert_eq!(
                    eval_symmetric(&restricted, &z).unwrap(),
                    schur_bialternant(&lam, &z),
                    "λ={lam}, n={n}"
                );
            }
        }
    }
}

#[test]
fn three_constructions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let zero = rat(0, 1);
    for lam in partitions_up_to(4) {
        for n in lam.len().max(1)..=3 {
            let q = random_unit(&mut rng);
            let t = random_unit(&mut rng);
            let gs = macdonald_gram_schmidt(&lam, &q, &t).unwrap().restrict(n);
            let eig = macdonald_triangular_eigen(&lam, n, &q, &t).unwrap();
            let gs0 = macdonald_gram_schmidt(&lam, &q, &zero).unwrap().restrict(n);
            let sig = Signature::from_partition(&lam, n).unwrap();
            for _ in 0..10 {
                let z = random_point(&mut rng, n);
                assert_eq!(eval_symmetric(&gs, &z).unwrap(), eval_symmetric(&eig, &z).unwrap());
                assert_eq!(
                    eval_symmetric(&gs0, &z).unwrap(),
                    qwhittaker_branch_eval(&sig, &z, &q).unwrap(),
                    "λ={lam}, n={n}"
                );
            }
        }
    }
}

#[test]
fn linear_solver_detects_singularity() {
    let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
    assert!(solve_linear(a, vec![rat(1, 1), rat(1, 1)]).is_none());
    let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
    assert_eq!(
        solve_linear(a, vec![rat(3, 1), rat(5, 1)]).unwrap(),
        vec![rat(5, 1), rat(3, 1)]
    );
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn shift_rule_is_exact(
        parts in prop::collection::vec(-4i64..6, 1..4),
        seed in any::<u64>(),
    ) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_point(&mut rng, n);
        let q = random_unit(&mut rng);
        let sig = Signature::new(parts).unwrap();
        let base = qwhittaker_branch_eval(&sig, &z, &q).unwrap();
        let shifted = qwhittaker_branch_eval(&sig.shift(1), &z, &q).unwrap();
        let prod = z.iter().fold(rat(1, 1), |a, x| a * x.clone());
        prop_assert_eq!(shifted, prod * base);
    }

    #[test]
    fn branch_eval_is_symmetric(
        parts in prop::collection::vec(0i64..5, 2..4),
        seed in any::<u64>(),
    ) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_point(&mut rng, parts.len());
        let q = random_unit(&mut rng);
        let sig = Signature::new(parts).unwrap();
        let mut rev = z.clone();
        rev.reverse();
        prop_assert_eq!(
            qwhittaker_branch_eval(&sig, &z, &q).unwrap(),
            qwhittaker_branch_eval(&sig, &rev, &q).unwrap()
        );
    }
}
