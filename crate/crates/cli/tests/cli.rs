use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankstab::exactmat::{FieldSpec, Mat};
use rankstab::freealg::{parse_presentation, MatTuple, Presentation};
use rankstab::sample::perturb;
use rankstab::stabilize::standard_units;
use rankstab::witness::{matrix_units_presentation, weyl_presentation, weyl_witness};
use tempfile::TempDir;

fn rankstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankstab")).args(args).env_remove("RANKSTAB_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn text(&self, name: &str, body: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn presentation(&self, name: &str, p: &Presentation) -> String {
        self.text(name, &p.to_string())
    }

    fn tuple(&self, name: &str, t: &MatTuple) -> String {
        self.text(name, &serde_json::to_string(t).unwrap())
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn units(field: FieldSpec) -> MatTuple {
    MatTuple::from_mats(standard_units(field, 2)).unwrap()
}

fn units_presentation() -> Presentation {
    matrix_units_presentation(2).unwrap()
}

#[test]
fn defect_of_weyl_witness() {
    let f = Files::new();
    let p = f.presentation("weyl.pres", &weyl_presentation());
    let t = f.tuple("w4.json", &weyl_witness(4).unwrap());
    let out = rankstab(&["defect", &p, &t]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&stdout(&out))["max_defect"], "1/4");
}

#[test]
fn defect_of_exact_solution_is_zero() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let t = f.tuple("units.json", &units(FieldSpec::Rationals).amplify(3));
    let out = rankstab(&["defect", &p, &t]);
    assert!(out.status.success());
    let report = json(&stdout(&out));
    assert_eq!(report["max_defect"], "0");
    assert_eq!(report["n"], 6);
}

#[test]
fn malformed_inputs_exit_two() {
    let f = Files::new();
    let p = f.presentation("weyl.pres", &weyl_presentation());
    let bad_json = f.text("bad.json", "{\"field\": ");
    assert_eq!(rankstab(&["defect", &p, &bad_json]).status.code(), Some(2));
    let bad_pres = f.text("bad.pres", "algebra Q; gens x; rels x*;");
    let t = f.tuple("w.json", &weyl_witness(3).unwrap());
    assert_eq!(rankstab(&["defect", &bad_pres, &t]).status.code(), Some(2));
    assert_eq!(rankstab(&["parse", &bad_pres]).status.code(), Some(2));
}

#[test]
fn mismatched_inputs_exit_three() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let t = f.tuple("w.json", &weyl_witness(3).unwrap());
    assert_eq!(rankstab(&["defect", &p, &t]).status.code(), Some(3));
    let fp = f.text("weyl7.pres", "algebra Fp(7); gens x,y; rels x*y - y*x - 1;");
    assert_eq!(rankstab(&["defect", &fp, &t]).status.code(), Some(3));
}

#[test]
fn parse_prints_normal_form() {
    let f = Files::new();
    let p = f.text("messy.pres", "algebra Q;\n gens  x , y ;\n rels (x+y)*(x-y) ;");
    let out = rankstab(&["parse", &p]);
    assert!(out.status.success());
    let text = stdout(&out);
    let reparsed = parse_presentation(&text).unwrap();
    assert_eq!(reparsed.to_string(), text.trim_end());
}

fn perturbed_units(n_copies: usize, updates: usize, seed: u64) -> MatTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perturb(&units(FieldSpec::Rationals).amplify(n_copies), updates, &mut rng)
}

#[test]
fn stabilize_repairs_perturbed_units() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let r = f.tuple("ref.json", &units(FieldSpec::Rationals));
    let a = perturbed_units(8, 1, 3);
    let t = f.tuple("noisy.json", &a);
    let out = rankstab(&["stabilize", &p, &t, "--ref", &r, "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let outcome = json(&stdout(&out));
    assert_eq!(outcome["verified"], true);
    let distances: Vec<u64> = outcome["distances"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(distances.len(), 4);
    assert!(distances.iter().all(|&d| 2 * d < 16), "{distances:?}");
    let solution: MatTuple = serde_json::from_value(outcome["solution"].clone()).unwrap();
    assert!(units_presentation().is_solution(&solution).unwrap());
}

#[test]
fn stabilize_exact_input_moves_nothing() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let r = f.tuple("ref.json", &units(FieldSpec::Rationals));
    let t = f.tuple("exact.json", &units(FieldSpec::Rationals).amplify(4));
    let out = rankstab(&["stabilize", &p, &t, "--ref", &r]);
    assert!(out.status.success());
    assert_eq!(json(&stdout(&out))["distances"], serde_json::json!([0, 0, 0, 0]));
}

/// A 4×4 pair in `⟨x, y | xy⟩`, followed by exact copies of `(1, 0)`,
/// whose compression with degree bound 1 is not a solution while degree
/// bound 2 keeps an invariant subspace.
#[test]
fn small_degree_bound_asks_for_more() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let p = f.text("xy.pres", "algebra Q; gens x,y; rels x*y;");
    let reference = MatTuple::from_mats(vec![Mat::identity(q, 1), Mat::zeros(q, 1, 1)]).unwrap();
    let r = f.tuple("ref.json", &reference);
    let x = Mat::from_i64(q, &[&[1, -1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let y = Mat::from_i64(q, &[&[0, -1, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let block = MatTuple::from_mats(vec![x, y]).unwrap();
    let t = f.tuple("block.json", &block.direct_sum(&reference.amplify(8)));

    let low = rankstab(&["stabilize", &p, &t, "--ref", &r, "--m", "1"]);
    assert_eq!(low.status.code(), Some(4), "{}", stderr(&low));
    assert!(stderr(&low).contains("increase m"), "{}", stderr(&low));
    assert_eq!(json(&stdout(&low))["verified"], false);

    let enough = rankstab(&["stabilize", &p, &t, "--ref", &r, "--m", "2"]);
    assert_eq!(enough.status.code(), Some(0), "{}", stderr(&enough));
    let outcome = json(&stdout(&enough));
    assert_eq!(outcome["verified"], true);
    assert_eq!(outcome["distances"], serde_json::json!([3, 3]));

    let searched = rankstab(&["stabilize", &p, &t, "--ref", &r]);
    assert_eq!(searched.status.code(), Some(0), "{}", stderr(&searched));
}

#[test]
fn stabilize_flags_override_config() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let r = f.tuple("ref.json", &units(FieldSpec::Rationals));
    let t = f.tuple("noisy.json", &perturbed_units(8, 1, 5));
    let cfg = f.text("run.toml", &format!("eps = \"1/1000\"\nref = {r:?}\n"));
    let strict = rankstab(&["--config", &cfg, "stabilize", &p, &t]);
    assert_eq!(strict.status.code(), Some(4));
    let loose = rankstab(&["--config", &cfg, "stabilize", &p, &t, "--eps", "1/2"]);
    assert_eq!(loose.status.code(), Some(0), "{}", stderr(&loose));
    let unknown = f.text("bad.toml", "epsilon = \"1/2\"\n");
    assert_eq!(rankstab(&["--config", &unknown, "stabilize", &p, &t]).status.code(), Some(2));
}

#[test]
fn stabilize_zero_product_strategy() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let p = f.text("xy.pres", "algebra Q; gens x,y; rels x*y;");
    let x = Mat::diag(q, &[1, 1, 0, 0, 1, 0]);
    let y = Mat::diag(q, &[0, 0, 1, 1, 1, 0]);
    let t = f.tuple("t.json", &MatTuple::from_mats(vec![x, y]).unwrap());
    let out = rankstab(&["stabilize", &p, &t, "--strategy", "zero-product"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let outcome = json(&stdout(&out));
    assert_eq!(outcome["verified"], true);
    let other = f.presentation("weyl.pres", &weyl_presentation());
    assert_eq!(rankstab(&["stabilize", &other, &t, "--strategy", "zero-product"]).status.code(), Some(3));
}

#[test]
fn stabilize_direct_and_free_products() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let left = f.text("idem.pres", "algebra Q; gens e; rels e*e - e;");
    let right = f.text("nil.pres", "algebra Q; gens z; rels z*z;");
    let lr = f.tuple("lr.json", &MatTuple::from_mats(vec![Mat::identity(q, 1)]).unwrap());
    let rr = f.tuple("rr.json", &MatTuple::from_mats(vec![Mat::from_i64(q, &[&[0, 1], &[0, 0]])]).unwrap());

    let mut e = Mat::diag(q, &[1, 1, 0, 0, 1, 1, 0, 0]);
    e.set(0, 1, &q.one());
    let z = Mat::from_fn(q, 8, 8, |i, j| q.from_i64((i % 2 == 0 && j == i + 1) as i64));
    let t = f.tuple("free.json", &MatTuple::from_mats(vec![e, z]).unwrap());
    let out = rankstab(&["stabilize", &left, &t, "--strategy", "free-product", "--ref", &lr, "--right", &right, "--right-ref", &rr]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&stdout(&out))["verified"], true);

    let missing = rankstab(&["stabilize", &left, &t, "--strategy", "direct-product", "--ref", &lr]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn stabilize_writes_out_file() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let r = f.tuple("ref.json", &units(FieldSpec::Rationals));
    let t = f.tuple("exact.json", &units(FieldSpec::Rationals));
    let out_path = f.path("outcome.json");
    let out = rankstab(&["stabilize", &p, &t, "--ref", &r, "--out", &out_path]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let outcome = json(&std::fs::read_to_string(Path::new(&out_path)).unwrap());
    assert_eq!(outcome["verified"], true);
}

#[test]
fn witness_rows() {
    let f = Files::new();
    let weyl = rankstab(&["witness", "weyl", "--n", "10"]);
    assert_eq!(stdout(&weyl), "family,n,max_defect,expected\nweyl,10,1/10,1/10\n");

    let tuple_path = f.path("m.json");
    let matsize = rankstab(&["witness", "matsize", "--k", "2", "--n", "5", "--out", &tuple_path]);
    let text = stdout(&matsize);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row, ["matsize", "2", "5", "11", "1/11", "1/11"]);
    let written: MatTuple = serde_json::from_str(&std::fs::read_to_string(&tuple_path).unwrap()).unwrap();
    assert_eq!((written.size(), written.arity()), (11, 4));

    let folner = rankstab(&["witness", "folner", "--i", "6"]);
    let text = stdout(&folner);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("n_i"), "28");
    assert_eq!(col("max_defect"), "3/14");

    assert_eq!(rankstab(&["witness", "weyl", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn witness_vacuous_verdicts() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let id = Mat::identity(q, 4);
    let t = f.tuple("id.json", &MatTuple::from_mats(vec![id.clone(), id.clone(), id.clone()]).unwrap());
    let out = rankstab(&["witness", "vacuous", &t]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().nth(1).unwrap(), "vacuous,4,0,1,implication-holds");
    let zero = Mat::zeros(q, 4, 4);
    let far = f.tuple("zero.json", &MatTuple::from_mats(vec![zero.clone(), zero.clone(), zero]).unwrap());
    let out = rankstab(&["witness", "vacuous", &far]);
    assert!(stdout(&out).ends_with("not-approximate\n"));
}

fn sweep_args<'a>(p: &'a str, r: &'a str, trials: &'a str) -> Vec<&'a str> {
    vec!["sweep", p, "--ref", r, "--sizes", "10..40", "--noise-rank", "1", "--trials", trials, "--seed", "17"]
}

#[test]
fn sweep_zero_trials_is_header_only() {
    let f = Files::new();
    let p = f.presentation("m2.pres", &units_presentation());
    let r = f.tuple("ref.json", &units(FieldSpec::Rationals));
    let out = rankstab(&sweep_args(&p, &r, "0"));
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "size,trial,defect,recovered_distance,verified\n");
}

#[test]
fn sweep_is_deterministic_and_verified() {
    let f = Files::new();
    let p = f.text("m2.pres", &units_presentation().to_string().replace("algebra Q", "algebra Fp(1000003)"));
    let r = f.tuple("ref.json", &units(FieldSpec::prime(1_000_003).unwrap()));
    let first = rankstab(&sweep_args(&p, &r, "2"));
    assert!(first.status.success(), "{}", stderr(&first));
    let mut serial = sweep_args(&p, &r, "2");
    serial.extend(["--threads", "1"]);
    let second = rankstab(&serial);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 16 * 2);
    assert!(rows.iter().all(|r| r.ends_with(",true")), "{text}");
    assert!(rows[0].starts_with("10,0,"));
    assert!(rows.last().unwrap().starts_with("40,1,"));
}

fn noisy(t: &MatTuple, updates: usize, seed: u64) -> MatTuple {
    perturb(t, updates, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn stabilize_matrix_algebra_strategy() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let base = f.text("nil.pres", "algebra Q; gens z; rels z*z;");
    let jordan = Mat::from_i64(q, &[&[0, 1], &[0, 0]]);
    let r = f.tuple("ref.json", &MatTuple::from_mats(vec![jordan.clone()]).unwrap());
    let id2 = Mat::identity(q, 2);
    let mut mats = vec![jordan.kronecker(&id2)];
    mats.extend(standard_units(q, 2).iter().map(|e| id2.kronecker(e)));
    let exact = MatTuple::from_mats(mats).unwrap().amplify(4);
    let t = f.tuple("t.json", &noisy(&exact, 1, 2));
    let out = rankstab(&["stabilize", &base, &t, "--strategy", "matrix-algebra", "--size", "2", "--ref", &r]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&stdout(&out))["verified"], true);
    let missing = rankstab(&["stabilize", &base, &t, "--strategy", "matrix-algebra", "--ref", &r]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn stabilize_direct_product_strategy() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let left = f.text("idem.pres", "algebra Q; gens e; rels e*e - e;");
    let right = f.text("nil.pres", "algebra Q; gens z; rels z*z;");
    let one = Mat::identity(q, 1);
    let jordan = Mat::from_i64(q, &[&[0, 1], &[0, 0]]);
    let lr = f.tuple("lr.json", &MatTuple::from_mats(vec![one.clone()]).unwrap());
    let rr = f.tuple("rr.json", &MatTuple::from_mats(vec![jordan.clone()]).unwrap());
    let zero = |n| Mat::zeros(q, n, n);
    let left_part = MatTuple::from_mats(vec![one.clone(), zero(1), one.clone(), zero(1)]).unwrap().amplify(6);
    let right_part = MatTuple::from_mats(vec![zero(2), jordan, zero(2), Mat::identity(q, 2)]).unwrap().amplify(3);
    let t = f.tuple("t.json", &noisy(&left_part.direct_sum(&right_part), 1, 4));
    let out = rankstab(&[
        "stabilize", &left, &t, "--strategy", "direct-product", "--ref", &lr, "--right", &right, "--right-ref", &rr,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&stdout(&out))["verified"], true);
}

#[test]
fn stabilize_group_algebra_strategy() {
    let q = FieldSpec::Rationals;
    let f = Files::new();
    let g = f.text("c2.group", "group Q; gens a; rels a^2;");
    let swap = Mat::permutation(q, &[1, 0]);
    let r = f.tuple("ref.json", &MatTuple::from_mats(vec![swap.clone()]).unwrap());
    let mut x = swap.kronecker(&Mat::identity(q, 5));
    x.set(3, 3, &q.from_i64(1));
    let t = f.tuple("t.json", &MatTuple::from_mats(vec![x, swap.kronecker(&Mat::identity(q, 5))]).unwrap());
    let out = rankstab(&["stabilize", &g, &t, "--strategy", "group-algebra", "--ref", &r]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let outcome = json(&stdout(&out));
    assert_eq!(outcome["verified"], true);
    let solution: MatTuple = serde_json::from_value(outcome["solution"].clone()).unwrap();
    assert_eq!(&solution.mats()[0] * &solution.mats()[1], Mat::identity(q, solution.size()));
}
