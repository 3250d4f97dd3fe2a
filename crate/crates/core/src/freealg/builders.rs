//! Presentations of algebras built from other presentations.

use std::collections::HashSet;

use crate::exactmat::FieldSpec;

use super::poly::NcPoly;
use super::presentation::Presentation;
use super::PresentationError;

/// A group word: generator index and whether the letter is inverted.
pub type GroupWord = Vec<(usize, bool)>;

/// Returns `base`, or `base` behind as many copies of `prefix` as needed to
/// avoid `taken`.
fn fresh(base: &str, prefix: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name = format!("{prefix}{name}");
    }
    name
}

/// The group algebra `F[G]` of `G = ⟨gens | words⟩`. Generators are
/// `x_1..x_d` followed by formal inverses `y_1..y_d` (named `x'`); relators
/// are `Q_i − 1` for each word, with every inverse letter replaced by its
/// `y`, followed by `x_j y_j − 1, y_j x_j − 1` for each `j`.
pub fn group_algebra_presentation(
    field: FieldSpec,
    gens: &[String],
    words: &[GroupWord],
) -> Result<Presentation, PresentationError> {
    let d = gens.len();
    let mut names: Vec<String> = gens.to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    for g in gens {
        let inv = fresh(&format!("{g}'"), "inv_", &taken);
        taken.insert(inv.clone());
        names.push(inv);
    }
    let one = NcPoly::one(field);
    let mut rels = Vec::new();
    for w in words {
        if let Some(&(g, _)) = w.iter().find(|(g, _)| *g >= d) {
            return Err(PresentationError::UnknownGroupGenerator(g));
        }
        let letters: Vec<usize> = w.iter().map(|&(g, inv)| if inv { g + d } else { g }).collect();
        rels.push(&NcPoly::word(field, &letters) - &one);
    }
    for j in 0..d {
        rels.push(&NcPoly::word(field, &[j, j + d]) - &one);
        rels.push(&NcPoly::word(field, &[j + d, j]) - &one);
    }
    Presentation::associative(field, names, rels)
}

fn same_field(p: &Presentation, q: &Presentation) -> Result<FieldSpec, PresentationError> {
    if p.field() != q.field() {
        return Err(PresentationError::FieldsDiffer(p.field(), q.field()));
    }
    Ok(p.field())
}

/// Joins two generator lists, prefixing colliding names on the right.
fn join_names(left: &[String], right: &[String], prefix: &str) -> Vec<String> {
    let mut taken: HashSet<String> = left.iter().cloned().collect();
    let mut out = left.to_vec();
    for r in right {
        let name = fresh(r, prefix, &taken);
        taken.insert(name.clone());
        out.push(name);
    }
    out
}

/// `A × A'` on generators `x⃗, y⃗, e_1, e_2` with relators
/// `e_1 P_j, e_2 Q_j, e_1x_i − x_i, x_ie_1 − x_i, e_2y_i − y_i, y_ie_2 − y_i,
/// e_1 + e_2 − 1, e_1² − e_1, e_2² − e_2`, in that order.
pub fn direct_product_presentation(p: &Presentation, q: &Presentation) -> Result<Presentation, PresentationError> {
    let field = same_field(p, q)?;
    let (d, t) = (p.arity(), q.arity());
    let mut names = join_names(p.generators(), q.generators(), "q_");
    let taken: HashSet<String> = names.iter().cloned().collect();
    let e1_name = fresh("e1", "c_", &taken);
    let e2_name = fresh("e2", "c_", &taken);
    names.push(e1_name);
    names.push(e2_name);
    let (e1, e2) = (d + t, d + t + 1);
    let ge = |i| NcPoly::generator(field, i);
    let shift: Vec<usize> = (d..d + t).collect();
    let mut rels = Vec::new();
    for r in p.expanded_relators() {
        rels.push(&ge(e1) * &r);
    }
    for r in q.expanded_relators() {
        rels.push(&ge(e2) * &r.reindex(&shift));
    }
    for (e, range) in [(e1, 0..d), (e2, d..d + t)] {
        for i in range {
            rels.push(&(&ge(e) * &ge(i)) - &ge(i));
            rels.push(&(&ge(i) * &ge(e)) - &ge(i));
        }
    }
    rels.push(&(&ge(e1) + &ge(e2)) - &NcPoly::one(field));
    rels.push(&(&ge(e1) * &ge(e1)) - &ge(e1));
    rels.push(&(&ge(e2) * &ge(e2)) - &ge(e2));
    Presentation::associative(field, names, rels)
}

/// Name of the matrix unit `(i, j)` (zero-based) in an `m × m` system.
pub fn unit_name(m: usize, i: usize, j: usize) -> String {
    if m < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// Index of the unit `(i, j)` among the generators of
/// [`matrix_algebra_presentation`] over a base with `d` generators.
pub fn unit_index(d: usize, m: usize, i: usize, j: usize) -> usize {
    d + i * m + j
}

/// `M_m(A)` on generators `x⃗` followed by the units `e_ij` in row-major
/// order. Relators: `P_j`, then `e_ij e_kl − δ_jk e_il`, then
/// `Σ e_ii − 1`, then `e_ij x_k − x_k e_ij`; `r + m⁴ + 1 + d·m²` in all.
pub fn matrix_algebra_presentation(p: &Presentation, m: usize) -> Result<Presentation, PresentationError> {
    if m == 0 {
        return Err(PresentationError::ZeroMatrixSize);
    }
    let field = p.field();
    let d = p.arity();
    let mut names = p.generators().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    for i in 0..m {
        for j in 0..m {
            let n = fresh(&unit_name(m, i, j), "u_", &taken);
            taken.insert(n.clone());
            names.push(n);
        }
    }
    let e = |i, j| NcPoly::generator(field, unit_index(d, m, i, j));
    let mut rels = p.expanded_relators();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let prod = &e(i, j) * &e(k, l);
                    rels.push(if j == k { &prod - &e(i, l) } else { prod });
                }
            }
        }
    }
    let trace = (0..m).fold(NcPoly::zero(field), |acc, i| &acc + &e(i, i));
    rels.push(&trace - &NcPoly::one(field));
    for i in 0..m {
        for j in 0..m {
            for k in 0..d {
                rels.push(NcPoly::commutator(&e(i, j), &NcPoly::generator(field, k)));
            }
        }
    }
    Presentation::associative(field, names, rels)
}

/// `A ∗ A'`: disjoint union of generators and relators.
pub fn free_product_presentation(p: &Presentation, q: &Presentation) -> Result<Presentation, PresentationError> {
    let field = same_field(p, q)?;
    let d = p.arity();
    let names = join_names(p.generators(), q.generators(), "q_");
    let shift: Vec<usize> = (d..d + q.arity()).collect();
    let mut rels = p.expanded_relators();
    rels.extend(q.expanded_relators().iter().map(|r| r.reindex(&shift)));
    Presentation::associative(field, names, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_presentation;

    #[test]
    fn group_algebra_of_z() {
        let p = group_algebra_presentation(FieldSpec::Rationals, &["x".to_string()], &[]).unwrap();
        assert_eq!(p.to_string(), "algebra Q; gens x,x'; rels x*x' - 1, x'*x - 1;");
        let trivial = group_algebra_presentation(FieldSpec::Rationals, &["x".to_string()], &[vec![(0, false)]]).unwrap();
        assert_eq!(trivial.to_string(), "algebra Q; gens x,x'; rels x - 1, x*x' - 1, x'*x - 1;");
    }

    #[test]
    fn direct_product_counts() {
        let p = parse_presentation("algebra Q; gens x; rels x;").unwrap();
        let prod = direct_product_presentation(&p, &p).unwrap();
        assert_eq!(prod.generators(), ["x", "q_x", "e1", "e2"]);
        assert_eq!(prod.relator_count(), 9);
        assert_eq!(
            prod.to_string(),
            "algebra Q; gens x,q_x,e1,e2; rels e1*x, e2*q_x, e1*x - x, x*e1 - x, e2*q_x - q_x, q_x*e2 - q_x, \
             e1 + e2 - 1, e1^2 - e1, e2^2 - e2;"
        );
    }

    #[test]
    fn matrix_algebra_counts() {
        let p = parse_presentation("algebra Q; gens x; rels x*x;").unwrap();
        let m2 = matrix_algebra_presentation(&p, 2).unwrap();
        assert_eq!(m2.arity(), 5);
        assert_eq!(m2.relator_count(), 1 + 16 + 1 + 4);
        let bare = parse_presentation("algebra Q; gens ; rels ;").unwrap();
        let m1 = matrix_algebra_presentation(&bare, 1).unwrap();
        assert_eq!(m1.to_string(), "algebra Q; gens e11; rels e11^2 - e11, e11 - 1;");
    }

    #[test]
    fn free_product_prefixes_collisions() {
        let w = parse_presentation("algebra Q; gens x,y; rels x*y - y*x - 1;").unwrap();
        let fp = free_product_presentation(&w, &w).unwrap();
        assert_eq!(fp.generators(), ["x", "y", "q_x", "q_y"]);
        assert_eq!(fp.relator_count(), 2);
    }
}
