use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankstab::exactmat::{FieldSpec, Mat, Subspace};
use rankstab::sample::{random_invertible, random_low_rank, random_mat};

fn field(prime: bool) -> FieldSpec {
    if prime {
        FieldSpec::prime(101).unwrap()
    } else {
        FieldSpec::Rationals
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_calculus(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=4, r1 in 0usize..=8, r2 in 0usize..=8, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_rank(f, n, r1, &mut rng);
        let a2 = random_low_rank(f, n, r2, &mut rng);
        let b = random_mat(f, m, m, &mut rng);
        let p = random_invertible(f, n, &mut rng);
        let (ra, ra2, rb) = (a.rank(), a2.rank(), b.rank());

        prop_assert_eq!(ra == 0, a.is_zero());
        prop_assert_eq!(Mat::identity(f, n).rank(), n);
        prop_assert!((&a + &a2).rank() <= ra + ra2);
        prop_assert!((&a * &a2).rank() <= ra.min(ra2));
        prop_assert_eq!(a2.conjugate(&p.inverse().unwrap(), &p).rank(), ra2);
        prop_assert_eq!(a.direct_sum(&b).rank(), ra + rb);
        prop_assert_eq!(a.kronecker(&b).rank(), ra * rb);
    }

    #[test]
    fn preimage_is_at_least_as_large(seed in any::<u64>(), n in 1usize..=8, k in 0usize..=8, r in 0usize..=8, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Subspace::span(&random_mat(f, n, k.min(n), &mut rng));
        let b = random_low_rank(f, n, r, &mut rng);
        let pre = u.preimage(&b).unwrap();
        prop_assert!(pre.dim() >= u.dim());
        prop_assert!(u.contains(&(&b * pre.basis())));
    }

    #[test]
    fn hat_dist_is_a_metric(seed in any::<u64>(), sizes in prop::array::uniform3(0usize..=6), prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = sizes.map(|n| random_low_rank(f, n, 2, &mut rng));
        let d = |p: &Mat, q: &Mat| Mat::hat_dist(p, q).unwrap();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        let big = x.nrows().max(y.nrows());
        prop_assert_eq!(d(&x, &y) == 0, x.resized(big) == y.resized(big));
        prop_assert_eq!(d(&x, &x.resized(x.nrows() + 3)), 0);
    }

    #[test]
    fn equal_spans_store_equal_bases(seed in any::<u64>(), n in 1usize..=8, k in 0usize..=6, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_mat(f, n, k, &mut rng);
        let mix = random_invertible(f, k, &mut rng);
        let a = Subspace::span(&gens);
        let b = Subspace::span(&(&gens * &mix));
        prop_assert_eq!(a.basis(), b.basis());
        let extended = Subspace::span(&gens.hstack(&(&gens * &mix)));
        prop_assert_eq!(&a, &extended);
    }

    #[test]
    fn kernel_and_inverse_agree(seed in any::<u64>(), n in 1usize..=8, r in 0usize..=8, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_rank(f, n, r, &mut rng);
        let ker = a.kernel();
        prop_assert_eq!(ker.dim() + a.rank(), n);
        prop_assert!((&a * ker.basis()).is_zero());
        let p = random_invertible(f, n, &mut rng);
        prop_assert!((&p * &p.inverse().unwrap()).is_identity());
        prop_assert!(ker.complete_basis().is_invertible());
    }
}
