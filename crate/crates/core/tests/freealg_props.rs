use std::fs;
use std::path::Path;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankstab::exactmat::{FieldSpec, Mat};
use rankstab::freealg::{
    direct_product_presentation, free_product_presentation, matrix_algebra_presentation, parse_group_presentation,
    parse_presentation, LieTerm, MatTuple, NcPoly,
};
use rankstab::sample::{random_mat, random_scalar};

fn field(prime: bool) -> FieldSpec {
    if prime {
        FieldSpec::prime(101).unwrap()
    } else {
        FieldSpec::Rationals
    }
}

fn random_word(d: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..d)).collect()
}

fn random_poly(f: FieldSpec, d: usize, rng: &mut ChaCha8Rng) -> NcPoly {
    (0..4).fold(NcPoly::zero(f), |acc, _| {
        &acc + &NcPoly::word(f, &random_word(d, 3, rng)).scale(&random_scalar(f, rng))
    })
}

fn random_tuple(f: FieldSpec, n: usize, d: usize, rng: &mut ChaCha8Rng) -> MatTuple {
    MatTuple::new(f, n, (0..d).map(|_| random_mat(f, n, n, rng)).collect()).unwrap()
}

fn random_lie(d: usize, depth: usize, rng: &mut ChaCha8Rng) -> LieTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        LieTerm::Gen(rng.gen_range(0..d))
    } else {
        LieTerm::bracket(random_lie(d, depth - 1, rng), random_lie(d, depth - 1, rng))
    }
}

fn commutator_eval(t: &LieTerm, tuple: &MatTuple) -> Mat {
    match t {
        LieTerm::Gen(g) => tuple.mats()[*g].clone(),
        LieTerm::Bracket(a, b) => {
            let (x, y) = (commutator_eval(a, tuple), commutator_eval(b, tuple));
            &(&x * &y) - &(&y * &x)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_linear_and_multiplicative(seed in any::<u64>(), n in 1usize..=4, prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tuple(f, n, 3, &mut rng);
        let (p, q) = (random_poly(f, 3, &mut rng), random_poly(f, 3, &mut rng));
        let c = random_scalar(f, &mut rng);
        prop_assert_eq!((&p + &q).eval(&t).unwrap(), &p.eval(&t).unwrap() + &q.eval(&t).unwrap());
        prop_assert_eq!(p.scale(&c).eval(&t).unwrap(), p.eval(&t).unwrap().scale(&c));
        let (u, v) = (random_word(3, 4, &mut rng), random_word(3, 4, &mut rng));
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(
            NcPoly::word(f, &uv).eval(&t).unwrap(),
            &NcPoly::word(f, &u).eval(&t).unwrap() * &NcPoly::word(f, &v).eval(&t).unwrap()
        );
        prop_assert_eq!((&p * &q).eval(&t).unwrap(), &p.eval(&t).unwrap() * &q.eval(&t).unwrap());
    }

    #[test]
    fn lie_expansion_matches_commutators(seed in any::<u64>(), prime in any::<bool>()) {
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tuple(f, 3, 3, &mut rng);
        let term = random_lie(3, 3, &mut rng);
        prop_assert_eq!(term.expand(f).eval(&t).unwrap(), commutator_eval(&term, &t));
    }
}

#[test]
fn golden_round_trips() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "in") {
            let input = fs::read_to_string(&path).unwrap();
            let expected = fs::read_to_string(path.with_extension("out")).unwrap();
            let printed = parse_presentation(&input).unwrap().to_string();
            assert_eq!(printed, expected.trim_end(), "{}", path.display());
            let reparsed = parse_presentation(&printed).unwrap();
            assert_eq!(reparsed.to_string(), printed, "{}", path.display());
            seen += 1;
        }
    }
    assert!(seen >= 6);
}

#[test]
fn constants_are_scalar_multiples_of_identity() {
    let p = parse_presentation("algebra Q; gens x; rels x - 3;").unwrap();
    let f = FieldSpec::Rationals;
    let t = MatTuple::from_mats(vec![Mat::scalar(4, &f.from_i64(3))]).unwrap();
    assert!(p.is_solution(&t).unwrap());
}

fn s3_generators(f: FieldSpec) -> MatTuple {
    let swap = Mat::permutation(f, &[1, 0, 2]);
    let cycle = Mat::permutation(f, &[1, 2, 0]);
    MatTuple::from_mats(vec![swap, cycle]).unwrap()
}

#[test]
fn group_algebra_vanishes_at_a_permutation_representation() {
    let g = parse_group_presentation("group Q; gens a,b; rels a^2, b^3, a*b*a*b;").unwrap();
    let t = s3_generators(FieldSpec::Rationals);
    assert!(g.is_solution(&t).unwrap());
    let inverses: Vec<Mat> = t.mats().iter().map(|m| m.inverse().unwrap()).collect();
    let lifted = MatTuple::from_mats(t.mats().iter().cloned().chain(inverses).collect()).unwrap();
    assert!(g.algebra().unwrap().is_solution(&lifted).unwrap());
}

#[test]
fn direct_product_vanishes_at_a_block_representation() {
    let f = FieldSpec::Rationals;
    let left = parse_presentation("algebra Q; gens x; rels x*x;").unwrap();
    let right = parse_presentation("algebra Q; gens y; rels y*y - y;").unwrap();
    let prod = direct_product_presentation(&left, &right).unwrap();
    let x = Mat::from_i64(f, &[&[0, 1], &[0, 0]]);
    let y = Mat::diag(f, &[1, 0, 1]);
    let (z2, z3) = (Mat::zeros(f, 2, 2), Mat::zeros(f, 3, 3));
    let (i2, i3) = (Mat::identity(f, 2), Mat::identity(f, 3));
    let t = MatTuple::from_mats(vec![x.direct_sum(&z3), z2.direct_sum(&y), i2.direct_sum(&z3), z2.direct_sum(&i3)]).unwrap();
    assert!(prod.is_solution(&t).unwrap());
}

#[test]
fn matrix_algebra_vanishes_at_a_tensor_representation() {
    let f = FieldSpec::prime(5).unwrap();
    let base = parse_presentation("algebra Fp(5); gens x; rels x*x*x;").unwrap();
    let m = 3;
    let full = matrix_algebra_presentation(&base, m).unwrap();
    let x = Mat::from_i64(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let mut mats = vec![Mat::identity(f, m).kronecker(&x)];
    for i in 0..m {
        for j in 0..m {
            let mut e = Mat::zeros(f, m, m);
            e.set(i, j, &f.one());
            mats.push(e.kronecker(&Mat::identity(f, 3)));
        }
    }
    assert!(full.is_solution(&MatTuple::from_mats(mats).unwrap()).unwrap());
}

#[test]
fn free_product_vanishes_at_juxtaposed_representations() {
    let f = FieldSpec::Rationals;
    let left = parse_presentation("algebra Q; gens x; rels x*x - 1;").unwrap();
    let right = parse_presentation("algebra Q; gens y; rels y*y*y - 1;").unwrap();
    let fp = free_product_presentation(&left, &right).unwrap();
    let swap = Mat::permutation(f, &[1, 0, 2]);
    let cycle = Mat::permutation(f, &[1, 2, 0]);
    assert!(fp.is_solution(&MatTuple::from_mats(vec![swap, cycle]).unwrap()).unwrap());
}
