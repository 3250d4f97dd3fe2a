use rankstab::approx::defect;
use rankstab::rational::{from_usize, ratio};
use rankstab::witness::{folner_witness, projective_weyl_presentation, WitnessFamily};

#[test]
fn weyl_defect_is_one_over_n() {
    for n in 2..=60 {
        let (_, d) = WitnessFamily::Weyl.measure(n).unwrap();
        assert_eq!(d, ratio(1, n as i64), "n = {n}");
    }
}

#[test]
fn matrix_size_defect_is_exactly_the_bound() {
    for k in [2, 3] {
        let fam = WitnessFamily::MatrixSize { k };
        for n in 1..=10 {
            let (tuple, d) = fam.measure(n).unwrap();
            assert_eq!((tuple.arity(), tuple.size()), (k * k, n * k + 1));
            assert_eq!(Some(d), fam.defect_formula(n), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn folner_defects_decay() {
    let p = projective_weyl_presentation();
    let mut omegas = Vec::new();
    for i in 4..=12 {
        let w = folner_witness(i).unwrap();
        let report = defect(&p, &w.tuple).unwrap();
        let omega = report.max_defect.clone();
        assert!(from_usize(w.n) * &omega <= from_usize(w.n - w.deep_interior_dim));
        assert!(w.n - w.deep_interior_dim <= w.word_count * w.overflow_dim);
        assert!(from_usize(w.n) * &omega <= from_usize(w.boundary_bound()));
        omegas.push(omega);
    }
    assert!(omegas.windows(2).all(|w| w[1] < w[0]));
    assert!(omegas[8].clone() * ratio(2, 1) < omegas[0]);
}
