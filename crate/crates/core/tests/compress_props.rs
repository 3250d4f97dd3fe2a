use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankstab::approx::defect;
use rankstab::compress::{compress_align, kept_size, resize_solution, ResizeCase};
use rankstab::exactmat::{FieldSpec, Mat};
use rankstab::freealg::{parse_presentation, MatTuple};
use rankstab::rational::{from_usize, ratio, Rational};
use rankstab::sample::{random_invertible, random_low_rank, random_rank_one};

fn field(prime: bool) -> FieldSpec {
    if prime {
        FieldSpec::prime(101).unwrap()
    } else {
        FieldSpec::Rationals
    }
}

/// A random matrix with square zero and rank `r`, `2r ≤ n`.
fn square_zero(f: FieldSpec, n: usize, r: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut j = Mat::zeros(f, n, n);
    for i in 0..r {
        j.set(i, r + i, &f.one());
    }
    let p = random_invertible(f, n, rng);
    j.conjugate(&p, &p.inverse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compress_align_postconditions(seed in any::<u64>(), n in 4usize..=9, extra in 1usize..=4, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eps = ratio(1, 4);
        let d = 2;
        let n_prime = kept_size(&eps, d, n) + extra;
        let noise = (n - 1) / 4;
        let a = MatTuple::new(f, n, (0..d).map(|_| random_low_rank(f, n, 3, &mut rng)).collect()).unwrap();
        let g = Mat::identity(f, n).direct_sum(&random_invertible(f, n_prime - n, &mut rng));
        let g_inv = g.inverse().unwrap();
        let b = MatTuple::new(f, n_prime, a.resized(n_prime).mats().iter()
            .map(|m| (m + &random_low_rank(f, n_prime, noise, &mut rng)).conjugate(&g, &g_inv)).collect()).unwrap();

        let al = compress_align(&a, &b, &eps).unwrap();
        let kept = kept_size(&eps, d, n);
        prop_assert_eq!(al.compressed.size(), kept);
        for (ai, bi) in a.mats().iter().zip(b.mats()) {
            let hat = ai.resized(n_prime);
            prop_assert_eq!(hat.conjugate(&al.e_inv, &al.e), hat);
            let moved = bi.conjugate(&al.e_inv, &al.e);
            prop_assert!(moved.submatrix(0..n_prime, kept..n_prime).is_zero());
        }
        prop_assert!(al.added.iter().all(|&k| from_usize(k) <= &eps * from_usize(n)));
    }

    #[test]
    fn resize_lands_in_the_band(seed in any::<u64>(), n in 12usize..=20, case in 0usize..3, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = parse_presentation(&format!("algebra {f}; gens x; rels x*x;")).unwrap();
        let eps = ratio(1, 2);
        let core = n / 4;
        let nil = square_zero(f, core, core / 2, &mut rng).direct_sum(&square_zero(f, n - core, 1, &mut rng));
        let a = MatTuple::from_mats(vec![&nil + &random_rank_one(f, n, &mut rng)]).unwrap();
        let delta = &defect(&p, &a).unwrap().max_defect + ratio(1, n as i64);
        let b = match case {
            0 => MatTuple::from_mats(vec![nil.leading_block(core)]).unwrap(),
            1 => MatTuple::from_mats(vec![nil.resized(n + 1)]).unwrap(),
            _ => {
                let n_prime = kept_size(&eps, 1, n) + 3;
                let tail = square_zero(f, n_prime - n, 1, &mut rng);
                MatTuple::from_mats(vec![nil.direct_sum(&tail)]).unwrap()
            }
        };
        let out = resize_solution(&p, &a, &delta, &b, &eps).unwrap();
        let expected = [ResizeCase::ZeroPadded, ResizeCase::PassThrough, ResizeCase::Compressed][case];
        prop_assert_eq!(out.case, expected);
        let m = from_usize(out.solution.size());
        let one = Rational::from_integer(1.into());
        let (nn, ed) = (from_usize(n), eps.clone());
        prop_assert!(m <= (&one + &ed) * &nn);
        prop_assert!(m >= (&one - &delta) / (&one + &ed) * &nn);
        prop_assert!(p.is_solution(&out.solution).unwrap());
        prop_assert!(out.distances.iter().all(|&x| from_usize(x) < &eps * &nn));
    }
}
