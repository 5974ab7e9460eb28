//! Generators of the kernel of the evaluation map `k Q~ -> T(A)`.
//!
//! Working per pair of endpoints, let `V_l` be the span of paths of length
//! at most `l` and `K_l` the kernel of evaluation on `V_l`. Generators found
//! so far span, inside `V_l`, the products `p g q` that stay within length
//! `l`; new generators complete this span to `K_l`. Generators may mix path
//! lengths when `T(A)` is not length graded.

use std::collections::HashMap;

use serde::Serialize;

use super::TrivialExtensionData;
use crate::algebra::build_algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{kernel_of_columns, zero_vector};
use crate::linalg::{Scalar, Subspace, Vector};
use crate::quiver::{compose, enumerate_paths, Path, Presentation, Quiver, RelationExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSet {
    pub quiver: Quiver,
    pub relations: Vec<RelationExpr>,
    pub cap: usize,
    /// Rank of evaluation on paths of length at most `cap`.
    pub evaluation_rank: usize,
    /// Dimension of `k Q~ / (relations)`, rebuilt from the presentation, when
    /// the cap reaches the Loewy length of `T(A)`.
    pub quotient_dim: Option<usize>,
    /// The relations present `T(A)`: the cap reaches the Loewy length and
    /// the rebuilt quotient has dimension `dim T(A)`.
    pub complete: bool,
}

impl RelationSet {
    pub fn rendered(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.render(&self.quiver)).collect()
    }
}

/// Relation generators up to length `cap`; `None` uses the Loewy length of
/// `T(A)`.
pub fn relations_up_to(data: &TrivialExtensionData, cap: Option<usize>) -> Result<RelationSet> {
    let t = &data.algebra;
    let ll = t.loewy_length();
    let cap = cap.unwrap_or(ll.max(2));
    if cap < 2 {
        return Err(Error::InvalidArgument("relation cap must be at least 2".into()));
    }
    let field = t.field();
    let quiver = data.extended_quiver();
    let paths = enumerate_paths(&quiver, cap);

    // evaluation of every path, by extending its prefix
    let mut value: HashMap<&Path, Vector> = HashMap::new();
    for p in &paths {
        let v = match p.arrows.split_last() {
            None => t.idempotent(p.start),
            Some((&last, rest)) => {
                let prefix = Path {
                    start: p.start,
                    end: quiver.arrows()[last].source,
                    arrows: rest.to_vec(),
                };
                let arrow = &t.arrows()[last].element;
                t.mul(arrow, &value[&prefix])
            }
        };
        value.insert(p, v);
    }
    let evaluation_rank = Subspace::from_vectors(field, t.dim(), paths.iter().map(|p| value[p].clone()).collect()).dim();

    let r = quiver.vertex_count();
    let mut block_paths: HashMap<(usize, usize), Vec<&Path>> = HashMap::new();
    for p in &paths {
        block_paths.entry((p.start, p.end)).or_default().push(p);
    }
    let mut by_ends_len: HashMap<(usize, usize, usize), Vec<&Path>> = HashMap::new();
    for p in &paths {
        by_ends_len.entry((p.start, p.end, p.len())).or_default().push(p);
    }

    // (relation, longest term)
    let mut gens: Vec<(RelationExpr, usize)> = Vec::new();
    for l in 2..=cap {
        let mut found = Vec::new();
        for s in 0..r {
            for e in 0..r {
                let Some(all) = block_paths.get(&(s, e)) else { continue };
                let local: Vec<&Path> = all.iter().copied().filter(|p| p.len() <= l).collect();
                if local.is_empty() {
                    continue;
                }
                let index: HashMap<&Path, usize> = local.iter().enumerate().map(|(i, p)| (*p, i)).collect();
                let n = local.len();
                let columns: Vec<Vector> = local.iter().map(|p| value[*p].clone()).collect();
                let kernel = kernel_of_columns(field, t.dim(), &columns);
                if kernel.is_empty() {
                    continue;
                }
                let mut span = Subspace::from_vectors(field, n, sandwiches(&gens, s, e, l, &by_ends_len, &index, n, field));
                for k in kernel {
                    if span.contains(&k) {
                        continue;
                    }
                    span = span.sum(&Subspace::from_vectors(field, n, vec![k.clone()]));
                    let terms: Vec<(Scalar, Path)> = k
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (c.clone(), local[i].clone()))
                        .collect();
                    let longest = terms.iter().map(|(_, p)| p.len()).max().expect("nonzero kernel vector");
                    found.push((RelationExpr { terms }, longest));
                }
            }
        }
        gens.extend(found);
    }

    let mut quotient_dim = None;
    if cap >= ll {
        let relations: Vec<RelationExpr> = gens.iter().map(|(g, _)| g.clone()).collect();
        let homogeneous = relations.iter().all(|g| g.homogeneous_weight(&quiver, false).is_some());
        let bound = (!homogeneous).then_some(ll.max(2));
        let ungraded = strip_degrees(&quiver);
        let p = Presentation::new(ungraded, field, relations, bound)?;
        quotient_dim = Some(build_algebra(&p)?.dim());
    }
    let complete = quotient_dim == Some(t.dim()) && evaluation_rank == t.dim();
    Ok(RelationSet {
        quiver,
        relations: gens.into_iter().map(|(g, _)| g).collect(),
        cap,
        evaluation_rank,
        quotient_dim,
        complete,
    })
}

fn strip_degrees(q: &Quiver) -> Quiver {
    let arrows = q
        .arrows()
        .iter()
        .cloned()
        .map(|mut a| {
            a.degree = None;
            a
        })
        .collect();
    Quiver::new(q.vertices().to_vec(), arrows).expect("same names")
}

/// Vectors `p g q` from `s` to `e` of length at most `l`, over `index`.
#[allow(clippy::too_many_arguments)]
fn sandwiches(
    gens: &[(RelationExpr, usize)],
    s: usize,
    e: usize,
    l: usize,
    by_ends_len: &HashMap<(usize, usize, usize), Vec<&Path>>,
    index: &HashMap<&Path, usize>,
    n: usize,
    field: crate::linalg::Field,
) -> Vec<Vector> {
    let mut out = Vec::new();
    let empty = Vec::new();
    for (g, longest) in gens {
        if *longest > l {
            continue;
        }
        let room = l - longest;
        for a in 0..=room {
            let earlier = by_ends_len.get(&(s, g.start(), a)).unwrap_or(&empty);
            for b in 0..=room - a {
                let later = by_ends_len.get(&(g.end(), e, b)).unwrap_or(&empty);
                for q in earlier {
                    for p in later {
                        let mut v = zero_vector(field, n);
                        for (c, path) in &g.terms {
                            let full = compose(p, &compose(path, q).expect("composable")).expect("composable");
                            let k = index[&full];
                            v[k] = &v[k] + c;
                        }
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}
