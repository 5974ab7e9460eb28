//! Basis and structure constants of `kQ/I`.
//!
//! Paths are cut into slices of equal weight (path length, or the sum of
//! the arrow degrees). For homogeneous relations the ideal meets each slice
//! in the span of the products `p * rho * q` of that weight, so each slice is
//! reduced independently. The computation stops once `W` consecutive slices
//! vanish, `W` being the largest arrow weight: every longer path has a
//! subpath whose weight falls in that window, hence lies in the ideal.
//!
//! Inhomogeneous relations need a nilpotency bound `N`; then all paths of
//! length below `N` form one slice, reduced modulo the truncated products.

use std::collections::HashMap;

use crate::algebra::fd::{AlgebraParts, ArrowRep, BuildRule, FDAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::matrix::{rref_in_place, zero_vector};
use crate::linalg::{Field, Vector};
use crate::quiver::{compose, enumerate_paths, Path, Presentation, Quiver, RelationExpr};

/// Limits on the search before the quotient is declared infinite (or too
/// large to handle).
const MAX_PATHS: usize = 200_000;
const MAX_WEIGHT: usize = 1_000;

struct Slice {
    paths: Vec<Path>,
    /// Normal form of each path, over the slice's local basis.
    normal_forms: Vec<SparseVec>,
    /// Indices into `paths` of the paths kept as basis elements.
    basis: Vec<usize>,
}

/// Reduces the span of `paths` modulo `ideal` rows. Pivots are taken at the
/// last path (in enumeration order) of each row, so normal forms use the
/// earliest paths.
fn reduce_slice(field: Field, paths: Vec<Path>, ideal: Vec<Vector>) -> Slice {
    let n = paths.len();
    let mut rows: Vec<Vector> = ideal
        .into_iter()
        .map(|v| v.into_iter().rev().collect())
        .collect();
    let rev_pivots = rref_in_place(&mut rows, n);
    let mut pivot_row: Vec<Option<usize>> = vec![None; n];
    for (r, &p) in rev_pivots.iter().enumerate() {
        pivot_row[n - 1 - p] = Some(r);
    }
    let basis: Vec<usize> = (0..n).filter(|&i| pivot_row[i].is_none()).collect();
    let mut local = vec![usize::MAX; n];
    for (k, &i) in basis.iter().enumerate() {
        local[i] = k;
    }
    let normal_forms = (0..n)
        .map(|i| match pivot_row[i] {
            None => vec![(local[i], field.one())],
            Some(r) => basis
                .iter()
                .filter_map(|&m| {
                    let x = &rows[r][n - 1 - m];
                    (!x.is_zero()).then(|| (local[m], -x))
                })
                .collect(),
        })
        .collect();
    Slice {
        paths,
        normal_forms,
        basis,
    }
}

/// Vector of `p * rel * q` over `index`, skipping terms whose path is not
/// indexed (truncated away).
fn sandwich(
    field: Field,
    rel: &RelationExpr,
    later: &Path,
    earlier: &Path,
    index: &HashMap<Path, usize>,
    len: usize,
) -> Vector {
    let mut v = zero_vector(field, len);
    for (c, path) in &rel.terms {
        let full = compose(later, &compose(path, earlier).expect("composable"))
            .expect("composable");
        if let Some(&k) = index.get(&full) {
            v[k] = &v[k] + c;
        }
    }
    v
}

fn choose_rule(p: &Presentation) -> Result<BuildRule> {
    let q = &p.quiver;
    if q.is_graded() {
        for (i, r) in p.relations.iter().enumerate() {
            if r.homogeneous_weight(q, true).is_none() {
                return Err(Error::Inhomogeneous { index: i + 1 });
            }
        }
        let w = (0..q.arrows().len()).map(|a| q.weight(a)).max().unwrap_or(1);
        return Ok(BuildRule::DegreeHomogeneous { max_arrow_degree: w });
    }
    if length_homogeneous(p) {
        return Ok(BuildRule::LengthHomogeneous);
    }
    match p.nilpotency_bound {
        Some(n) => Ok(BuildRule::NilpotencyBound { bound: n }),
        None => Err(Error::NeedsNilpotencyBound),
    }
}

fn length_homogeneous(p: &Presentation) -> bool {
    p.relations
        .iter()
        .all(|r| r.homogeneous_weight(&p.quiver, false).is_some())
}

/// Builds `A = kQ/I` with path classes as basis.
pub fn build_algebra(p: &Presentation) -> Result<FDAlgebra> {
    let rule = choose_rule(p)?;
    let slices = match rule {
        BuildRule::LengthHomogeneous => graded_slices(p, false, 1)?,
        BuildRule::DegreeHomogeneous { max_arrow_degree } => graded_slices(p, true, max_arrow_degree)?,
        BuildRule::NilpotencyBound { bound } => {
            if bound < 2 {
                return Err(Error::UnverifiableAdmissibility {
                    bound,
                    detail: "a bound below 2 would kill the arrows".into(),
                });
            }
            let slice = truncated_slice(p, bound)?;
            let check = truncated_slice(p, bound + 1)?;
            if check.basis.len() != slice.basis.len() {
                return Err(Error::UnverifiableAdmissibility {
                    bound,
                    detail: format!(
                        "truncating at {} gives dimension {}, at {} gives {}",
                        bound,
                        slice.basis.len(),
                        bound + 1,
                        check.basis.len()
                    ),
                });
            }
            vec![slice]
        }
    };
    assemble(p, rule, slices)
}

fn graded_slices(p: &Presentation, use_degrees: bool, window: u32) -> Result<Vec<Slice>> {
    let q = &p.quiver;
    let field = p.field;
    let weight = |a: usize| if use_degrees { q.weight(a) } else { 1 };
    let rel_weights: Vec<u32> = p
        .relations
        .iter()
        .map(|r| r.homogeneous_weight(q, use_degrees).expect("homogeneous"))
        .collect();

    let mut by_weight: Vec<Vec<Path>> = vec![(0..q.vertex_count()).map(Path::stationary).collect()];
    let mut slices = Vec::new();
    let mut zero_run = 0u32;
    let mut total_paths = 0usize;
    let mut degree = 0usize;
    loop {
        if degree > 0 {
            let mut paths = Vec::new();
            for (ai, a) in q.arrows().iter().enumerate() {
                let w = weight(ai) as usize;
                if w > degree {
                    continue;
                }
                for prev in &by_weight[degree - w] {
                    if prev.end == a.source {
                        let mut arrows = prev.arrows.clone();
                        arrows.push(ai);
                        paths.push(Path {
                            start: prev.start,
                            end: a.target,
                            arrows,
                        });
                    }
                }
            }
            paths.sort_by(|x, y| (x.len(), &x.arrows).cmp(&(y.len(), &y.arrows)));
            by_weight.push(paths);
        }
        let paths = by_weight[degree].clone();
        total_paths += paths.len();
        if total_paths > MAX_PATHS || degree > MAX_WEIGHT {
            return Err(Error::NonTerminating { degree });
        }
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ideal = Vec::new();
        for (rel, &wr) in p.relations.iter().zip(&rel_weights) {
            let wr = wr as usize;
            if wr > degree {
                continue;
            }
            for a in 0..=degree - wr {
                for earlier in by_weight[a].iter().filter(|e| e.end == rel.start()) {
                    for later in by_weight[degree - wr - a].iter().filter(|l| l.start == rel.end()) {
                        ideal.push(sandwich(field, rel, later, earlier, &index, paths.len()));
                    }
                }
            }
        }
        let slice = reduce_slice(field, paths, ideal);
        if slice.basis.is_empty() {
            zero_run += 1;
        } else {
            zero_run = 0;
        }
        slices.push(slice);
        if zero_run >= window {
            break;
        }
        degree += 1;
    }
    Ok(slices)
}

fn truncated_slice(p: &Presentation, bound: usize) -> Result<Slice> {
    let q = &p.quiver;
    let paths = enumerate_paths(q, bound - 1);
    if paths.len() > MAX_PATHS {
        return Err(Error::NonTerminating { degree: bound });
    }
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut ideal = Vec::new();
    for rel in &p.relations {
        let min_len = rel.terms.iter().map(|(_, t)| t.len()).min().expect("nonempty");
        for earlier in paths.iter().filter(|e| e.end == rel.start()) {
            for later in paths.iter().filter(|l| l.start == rel.end()) {
                if earlier.len() + later.len() + min_len < bound {
                    ideal.push(sandwich(p.field, rel, later, earlier, &index, paths.len()));
                }
            }
        }
    }
    Ok(reduce_slice(p.field, paths, ideal))
}

fn assemble(p: &Presentation, rule: BuildRule, slices: Vec<Slice>) -> Result<FDAlgebra> {
    let q: &Quiver = &p.quiver;
    let field = p.field;
    // global basis index of each slice's local basis
    let mut offset = Vec::with_capacity(slices.len());
    let mut basis_paths: Vec<Path> = Vec::new();
    for s in &slices {
        offset.push(basis_paths.len());
        basis_paths.extend(s.basis.iter().map(|&i| s.paths[i].clone()));
    }
    let d = basis_paths.len();
    let mut normal_form: HashMap<Path, SparseVec> = HashMap::new();
    for (s, &off) in slices.iter().zip(&offset) {
        for (path, nf) in s.paths.iter().zip(&s.normal_forms) {
            normal_form.insert(path.clone(), nf.iter().map(|(k, c)| (k + off, c.clone())).collect());
        }
    }
    let r = q.vertex_count();
    debug_assert!((0..r).all(|i| basis_paths[i] == Path::stationary(i)));

    let table: Vec<Vec<SparseVec>> = basis_paths
        .iter()
        .map(|u| {
            basis_paths
                .iter()
                .map(|v| {
                    if u.start != v.end {
                        return Vec::new();
                    }
                    let w = compose(u, v).expect("composable");
                    normal_form.get(&w).cloned().unwrap_or_default()
                })
                .collect()
        })
        .collect();

    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let nf = normal_form.get(&q.arrow_path(ai)).cloned().unwrap_or_default();
            let mut element = zero_vector(field, d);
            for (k, c) in nf {
                element[k] = c;
            }
            ArrowRep {
                name: a.name.clone(),
                source: a.source,
                target: a.target,
                element,
            }
        })
        .collect();

    let degrees = match rule {
        BuildRule::DegreeHomogeneous { .. } => {
            Some(basis_paths.iter().map(|b| q.path_weight(b, true)).collect())
        }
        _ => None,
    };
    let mut alg = FDAlgebra::from_parts(AlgebraParts {
        field,
        labels: basis_paths.iter().map(|b| q.path_name(b)).collect(),
        vertex_names: q.vertices().to_vec(),
        table,
        peirce: basis_paths.iter().map(|b| (b.start, b.end)).collect(),
        arrows,
        degrees,
    })?;
    alg.length_homogeneous = length_homogeneous(p);
    alg.basis_paths = Some(basis_paths);
    alg.rule = Some(rule);
    Ok(alg)
}

/// The algebra `k^r` of `r` orthogonal idempotents, with no radical.
pub fn semisimple(field: Field, r: usize) -> FDAlgebra {
    let table = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { vec![(i, field.one())] } else { Vec::new() })
                .collect()
        })
        .collect();
    let names: Vec<String> = (1..=r).map(|i| i.to_string()).collect();
    let mut alg = FDAlgebra::from_parts(AlgebraParts {
        field,
        labels: names.iter().map(|n| format!("e_{n}")).collect(),
        vertex_names: names,
        table,
        peirce: (0..r).map(|i| (i, i)).collect(),
        arrows: Vec::new(),
        degrees: Some(vec![0; r]),
    })
    .expect("valid semisimple algebra");
    alg.length_homogeneous = true;
    alg.basis_paths = Some((0..r).map(Path::stationary).collect());
    alg
}
