//! Randomized invariants over small monomial algebras.

use num_bigint::BigInt;
use proptest::prelude::*;
use trivext_core::algebra::{build_algebra, FDAlgebra};
use trivext_core::corpus::check_extension;
use trivext_core::criteria::{cartan_matrix, find_two_truncated_cycle, graded_cartan, verify_certificate};
use trivext_core::hochschild::{hh_dims, HHOptions, Variant};
use trivext_core::linalg::int_det;
use trivext_core::quiver::parse_presentation;
use trivext_core::trivial_ext::{graded_trivial_extension, trivial_extension};

/// Arrows as `(source, target)` over `r` vertices, zero relations: every
/// path of length `ll`, plus the length two paths picked by `kill`.
fn presentation(r: usize, arrows: &[(usize, usize)], ll: usize, kill: &[bool]) -> String {
    let mut text = format!("field Q\nvertices {}\n", (1..=r).map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    for (k, &(s, t)) in arrows.iter().enumerate() {
        text += &format!("arrow a{k} : {} -> {}\n", s + 1, t + 1);
    }
    let mut paths: Vec<Vec<usize>> = (0..arrows.len()).map(|k| vec![k]).collect();
    let mut relations = Vec::new();
    for len in 2..=ll {
        paths = paths
            .iter()
            .flat_map(|p| {
                let end = arrows[*p.last().unwrap()].1;
                (0..arrows.len()).filter(move |&k| arrows[k].0 == end).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
        for (i, p) in paths.iter().enumerate() {
            if len == ll || (len == 2 && kill.get(i).copied().unwrap_or(false)) {
                relations.push(p.iter().rev().map(|k| format!("a{k}")).collect::<Vec<_>>().join("*"));
            }
        }
    }
    relations.sort();
    relations.dedup();
    for rel in relations {
        text += &format!("relation {rel}\n");
    }
    text
}

fn monomial_algebra() -> impl Strategy<Value = FDAlgebra> {
    (1usize..=3)
        .prop_flat_map(|r| {
            (
                Just(r),
                prop::collection::vec((0..r, 0..r), 1..=3),
                2usize..=3,
                prop::collection::vec(any::<bool>(), 9),
            )
        })
        .prop_map(|(r, arrows, ll, kill)| {
            let text = presentation(r, &arrows, ll, &kill);
            let p = parse_presentation(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
            build_algebra(&p).unwrap_or_else(|e| panic!("{e}\n{text}"))
        })
}

/// Whether some arrow returns to itself through zero compositions,
/// by transitive closure over products computed directly.
fn has_zero_cycle(a: &FDAlgebra) -> bool {
    let arrows = a.arrows();
    let n = arrows.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, x) in arrows.iter().enumerate() {
        for (j, y) in arrows.iter().enumerate() {
            if x.target == y.source {
                let p = a.multiply(&y.element, &x.element).unwrap();
                reach[i][j] = p.iter().all(|c| c.is_zero());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
            }
        }
    }
    (0..n).any(|i| reach[i][i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trivial_extension_structure(a in monomial_algebra()) {
        let t = trivial_extension(&a);
        prop_assert_eq!(t.t().dim(), 2 * a.dim());
        prop_assert_eq!(check_extension(&a, &t), Ok(()));
        let rad = t.t().trace_form_radical().unwrap();
        prop_assert!(rad.same_as(&t.expected_radical()));
        prop_assert!(t.check_new_products_vanish());
    }

    #[test]
    fn cycle_search_matches_closure(a in monomial_algebra()) {
        let t = trivial_extension(&a);
        for b in [&a, t.t()] {
            let found = find_two_truncated_cycle(b);
            prop_assert_eq!(found.is_some(), has_zero_cycle(b));
            if let Some(c) = found {
                prop_assert_eq!(verify_certificate(b, &c), Ok(()));
            }
        }
    }

    #[test]
    fn bar_variants_agree(a in monomial_algebra()) {
        prop_assume!(a.dim() <= 6);
        let normalized = hh_dims(&a, 2, &HHOptions::default()).unwrap();
        let full = hh_dims(&a, 2, &HHOptions { variant: Variant::Full, ..HHOptions::default() }).unwrap();
        prop_assert!(!normalized.is_truncated() && !full.is_truncated());
        prop_assert_eq!(normalized.dims_vec(), full.dims_vec());
    }

    #[test]
    fn graded_determinant_shape(a in monomial_algebra()) {
        let t = graded_trivial_extension(&a).unwrap();
        let g = graded_cartan(t.t()).unwrap();
        let s = a.graded_version().unwrap().top_degree().unwrap() as usize;
        prop_assert_eq!(g.determinant.eval(&BigInt::from(1)), int_det(&cartan_matrix(t.t())));
        prop_assert_eq!(g.determinant.constant_term(), BigInt::from(1));
        prop_assert_eq!(g.determinant.leading_coeff(), BigInt::from(1));
        prop_assert_eq!(g.determinant.degree(), Some(a.vertex_count() * (s + 1)));
    }
}
