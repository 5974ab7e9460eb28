use super::*;
use crate::algebra::build_algebra;
use crate::quiver::parse_presentation;

fn load(name: &str) -> FDAlgebra {
    let text = match name {
        "field" => include_str!("../../corpus/field.quiver"),
        "dual" => include_str!("../../corpus/dual_numbers.quiver"),
        "two" => include_str!("../../corpus/two_points.quiver"),
        "a2" => include_str!("../../corpus/a2_path.quiver"),
        "a3" => include_str!("../../corpus/a3_zero.quiver"),
        "cyclic2" => include_str!("../../corpus/cyclic2_rad2.quiver"),
        "cyclic3" => include_str!("../../corpus/cyclic3_rad2.quiver"),
        "five" => include_str!("../../corpus/five_vertex_graded.quiver"),
        "xy" => include_str!("../../corpus/local_xy.quiver"),
        _ => unreachable!(),
    };
    build_algebra(&parse_presentation(text).unwrap()).unwrap()
}

const ALL: [&str; 9] = ["field", "dual", "two", "a2", "a3", "cyclic2", "cyclic3", "five", "xy"];

fn ends(t: &TrivialExtensionData) -> Vec<(usize, usize)> {
    t.new_arrows().iter().map(|b| (b.source, b.target)).collect()
}

#[test]
fn extension_of_the_field() {
    let t = trivial_extension(&load("field"));
    let alg = t.t();
    assert_eq!(alg.dim(), 2);
    assert_eq!(alg.labels(), ["e_v", "e_v*"]);
    let f = alg.basis_vector(1);
    assert!(is_zero_vector(&alg.mul(&f, &f)));
    assert_eq!(t.new_arrows().len(), 1);
    assert_eq!(t.new_arrows()[0].name, "β");
    assert_eq!(t.new_arrows()[0].element, f);
    assert_eq!(t.extended_quiver().arrows().len(), 1);
    let rels = relations_up_to(&t, Some(2)).unwrap();
    assert_eq!(rels.rendered(), ["β*β"]);
    assert!(rels.complete);
    assert!(t.check_new_products_vanish());
}

#[test]
fn extension_of_dual_numbers() {
    let t = trivial_extension(&load("dual"));
    let alg = t.t();
    assert_eq!(alg.dim(), 4);
    // x* . x evaluates to e* : (x* x)(y) = x*(x y) is 1 at y = e
    let prod = alg.mul(&alg.basis_vector(3), &alg.basis_vector(1));
    assert_eq!(prod, alg.basis_vector(2));
    let q = t.extended_quiver();
    assert_eq!((q.vertex_count(), q.arrows().len()), (1, 2));
    // T(k[x]/x^2) is k[x, y]/(x^2, y^2)
    let rels = relations_up_to(&t, None).unwrap();
    assert_eq!(rels.rendered(), ["x*x", "β*x - x*β", "β*β"]);
    assert!(rels.complete);
}

#[test]
fn extension_of_path_algebra() {
    let a = load("a2");
    let t = trivial_extension(&a);
    assert_eq!(t.t().dim(), 6);
    assert_eq!(ends(&t), [(1, 0)]);
    assert_eq!(t.t().labels()[t.base_dim + t.new_arrows()[0].dual_of], "α*");
    let q = t.extended_quiver();
    let arrows: Vec<_> = q.arrows().iter().map(|x| (x.source, x.target)).collect();
    assert_eq!(arrows, [(0, 1), (1, 0)]);
    assert!(t.check_symmetric_form().is_ok());
}

#[test]
fn cyclic_extension_has_two_new_arrows() {
    let t = trivial_extension(&load("cyclic2"));
    assert_eq!(ends(&t), [(1, 0), (0, 1)]);
    assert!(t.check_new_products_vanish());
}

#[test]
fn semisimple_extension() {
    let t = trivial_extension(&load("two"));
    assert_eq!(ends(&t), [(0, 0), (1, 1)]);
    let rels = relations_up_to(&t, Some(2)).unwrap();
    assert_eq!(rels.rendered(), ["β1*β1", "β2*β2"]);
    assert!(rels.complete);
}

#[test]
fn graded_degrees() {
    let t = graded_trivial_extension(&load("field")).unwrap();
    assert_eq!(t.t().degrees().unwrap(), [0, 1]);
    let t = graded_trivial_extension(&load("a2")).unwrap();
    // e1 e2 α | e1* e2* α*
    assert_eq!(t.t().degrees().unwrap(), [0, 0, 1, 2, 2, 1]);
    let t = graded_trivial_extension(&load("five")).unwrap();
    assert_eq!(t.t().top_degree(), Some(7));
    assert_eq!(t.t().check_grading(), None);
    assert!(graded_trivial_extension(&load("a3")).is_ok());
}

#[test]
fn five_vertex_new_arrow_name_avoids_collision() {
    let a = load("five");
    let t = trivial_extension(&a);
    // the socle is spanned by βα, the only element killed on both sides
    assert_eq!(t.bimodule_socle.dim(), 1);
    assert_eq!(t.new_arrows()[0].name, "β'");
    assert_eq!(ends(&t), [(2, 0)]);
}

#[test]
fn invariants_on_corpus() {
    for name in ALL {
        let a = load(name);
        let t = trivial_extension(&a);
        let alg = t.t();
        let d = a.dim();
        assert_eq!(alg.dim(), 2 * d);
        assert_eq!(alg.check_associativity(), None, "{name}");
        assert!(alg.check_idempotent_completeness());
        for i in d..2 * d {
            for j in d..2 * d {
                assert!(alg.basis_product(i, j).is_empty());
            }
        }
        assert!(alg.radical().same_as(&t.expected_radical()), "{name}");
        assert!(alg.trace_form_radical().unwrap().same_as(&t.expected_radical()), "{name}");
        let rad2 = if alg.dim() > alg.vertex_count() {
            alg.radical_power(2)
        } else {
            Subspace::zero(alg.field(), alg.dim())
        };
        assert!(rad2.same_as(&t.expected_radical_square(&a)), "{name}");
        t.check_symmetric_form().unwrap();
        assert!(t.check_new_products_vanish());
        assert_eq!(alg.loewy_length(), a.loewy_length() + 1);

        // arrow counts match the socle blocks, transposed
        let soc = a.socles().bimodule;
        let r = a.vertex_count();
        for i in 0..r {
            for j in 0..r {
                let count = t.new_arrows().iter().filter(|b| (b.source, b.target) == (i, j)).count();
                let block = soc.pivots().iter().filter(|&&p| a.peirce(p) == (j, i)).count();
                assert_eq!(count, block);
            }
        }
        // the representatives restrict to a basis of the dual of the socle
        let images: Vec<Vector> = t.new_arrows().iter().map(|b| t.restrict_to_socle(&b.element)).collect();
        assert_eq!(Subspace::from_vectors(alg.field(), soc.dim(), images).dim(), soc.dim());
        assert!(!t.new_arrows().is_empty());

        let (q, _) = alg.quiver_of();
        assert_eq!(q.arrows().len(), t.extended_quiver().arrows().len(), "{name}");

        if let Ok(cert) = a.is_selfinjective() {
            for i in 0..r {
                let src = cert.permutation[i];
                assert!(t.new_arrows().iter().any(|b| b.target == i && b.source == src), "{name}");
            }
        }
        if a.left_socle_in_bimodule_socle() {
            for i in 0..r {
                assert!(t.new_arrows().iter().any(|b| b.target == i), "{name}");
            }
        }
        if let Ok(g) = graded_trivial_extension(&a) {
            let s = g.t().top_degree().unwrap() as usize;
            let deg = g.t().degrees().unwrap();
            assert_eq!(deg.iter().filter(|&&x| x == 0).count(), r);
            assert_eq!(deg.iter().filter(|&&x| x as usize == s).count(), r);
        }
    }
}

#[test]
fn relations_present_the_extension() {
    for name in ALL {
        let t = trivial_extension(&load(name));
        let rels = relations_up_to(&t, None).unwrap();
        assert!(rels.complete, "{name}: {:?}", rels.rendered());
        // relations evaluate to zero
        for g in &rels.relations {
            let mut acc = zero_vector(t.t().field(), t.t().dim());
            for (c, p) in &g.terms {
                let mut v = t.t().idempotent(p.start);
                for &a in &p.arrows {
                    v = t.t().mul(&t.t().arrows()[a].element, &v);
                }
                crate::linalg::matrix::axpy(&mut acc, c, &v);
            }
            assert!(is_zero_vector(&acc));
        }
        // with a complete presentation the kernel is the ideal, and it holds
        // every product of two composable new arrows
        for b1 in t.new_arrows() {
            for b2 in t.new_arrows().iter().filter(|b2| b2.source == b1.target) {
                assert!(is_zero_vector(&t.t().mul(&b2.element, &b1.element)));
            }
        }
        assert_eq!(rels.quiver.arrows().len(), t.t().arrows().len());
    }
}

#[test]
fn cap_below_two_is_rejected() {
    let t = trivial_extension(&load("field"));
    assert!(relations_up_to(&t, Some(1)).is_err());
}

#[test]
fn second_extension_doubles_again() {
    for name in ["dual", "a2"] {
        let a = load(name);
        let t = trivial_extension(&a);
        let tt = trivial_extension(t.t());
        assert_eq!(tt.t().dim(), 4 * a.dim());
        assert_eq!(tt.t().check_associativity(), None);
        tt.check_symmetric_form().unwrap();
    }
}
