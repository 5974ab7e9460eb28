//! The trivial extension `T(A) = A ⋉ DA` and its quiver.
//!
//! Basis of `T(A)`: the basis `b_0..b_{d-1}` of `A` followed by the dual
//! functionals `b_0*..b_{d-1}*`. The bimodule structure on `DA` is
//! `(a.f)(y) = f(y a)` and `(f.b)(y) = f(b y)`, so the dual of
//! `b in e_t A e_s` lies in `e_s DA e_t`.

mod relations;

use serde::Serialize;

use crate::algebra::{AlgebraParts, ArrowRep, FDAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vector, zero_vector};
use crate::linalg::{ExactMatrix, Scalar, Subspace, Vector};
use crate::quiver::{Arrow, Quiver};

pub use relations::{relations_up_to, RelationSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Base,
    Dual,
}

/// An arrow of the quiver of `T(A)` not coming from `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// Basis element of `A` whose dual functional represents the arrow.
    pub dual_of: usize,
    /// The representative as an element of `T(A)`.
    pub element: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrivialExtensionData {
    /// `T(A)`. Its arrow list is the old arrows followed by the new ones.
    pub algebra: FDAlgebra,
    pub base_dim: usize,
    pub parts: Vec<Part>,
    /// For each basis element of `T(A)`, the basis element of `A` it comes
    /// from (itself, or the one it is dual to).
    pub origin: Vec<usize>,
    /// Restriction `DA -> D(soc A)` on the echelon basis of the bimodule
    /// socle: row `q` evaluates at the `q`-th socle vector.
    pub socle_restriction: ExactMatrix,
    pub bimodule_socle: Subspace,
    pub old_arrow_count: usize,
    pub new_arrows: Vec<NewArrow>,
}

fn dual_label(l: &str) -> String {
    if l.contains('*') {
        format!("({l})*")
    } else {
        format!("{l}*")
    }
}

/// Arrow representatives of `A`, taken from the algebra when present and
/// read off from `r / r^2` otherwise.
fn base_arrows(a: &FDAlgebra) -> Vec<ArrowRep> {
    if !a.arrows().is_empty() || a.dim() == a.vertex_count() {
        a.arrows().to_vec()
    } else {
        a.quiver_of().1
    }
}

fn fresh_name(taken: &[String], base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Builds `T(A)` without degree tags.
pub fn trivial_extension(a: &FDAlgebra) -> TrivialExtensionData {
    build(a, None)
}

/// Graded `T(A)`: the base keeps its degrees and the dual of a degree `l`
/// element sits in degree `s + 1 - l`, `s` the top degree of `A`.
pub fn graded_trivial_extension(a: &FDAlgebra) -> Result<TrivialExtensionData> {
    let graded = a
        .graded_version()
        .ok_or_else(|| Error::NotGraded("no degree tags and relations are not length homogeneous".into()))?;
    let deg = graded.degrees().expect("graded");
    if deg[graded.vertex_count()..].contains(&0) {
        return Err(Error::NotGraded("degree 0 part is larger than the span of the idempotents".into()));
    }
    let s = graded.top_degree().unwrap_or(0);
    let mut degrees = deg.to_vec();
    degrees.extend(deg.iter().map(|&l| s + 1 - l));
    Ok(build(&graded, Some(degrees)))
}

fn build(a: &FDAlgebra, degrees: Option<Vec<u32>>) -> TrivialExtensionData {
    let f = a.field();
    let d = a.dim();
    let dual = |k: usize| d + k;
    let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); 2 * d]; 2 * d];
    for i in 0..d {
        for j in 0..d {
            table[i][j] = a.basis_product(i, j).clone();
        }
    }
    // dense copy of the structure constants: c[i][j][k]
    let c: Vec<Vec<Vector>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut v = zero_vector(f, d);
                    for (k, x) in a.basis_product(i, j) {
                        v[*k] = x.clone();
                    }
                    v
                })
                .collect()
        })
        .collect();
    for i in 0..d {
        for k in 0..d {
            // b_i . b_k* = sum_m c[m][i]_k b_m*
            table[i][dual(k)] = (0..d)
                .filter(|&m| !c[m][i][k].is_zero())
                .map(|m| (dual(m), c[m][i][k].clone()))
                .collect();
            // b_k* . b_i = sum_m c[i][m]_k b_m*
            table[dual(k)][i] = (0..d)
                .filter(|&m| !c[i][m][k].is_zero())
                .map(|m| (dual(m), c[i][m][k].clone()))
                .collect();
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| dual_label(l)));
    let mut peirce: Vec<(usize, usize)> = (0..d).map(|b| a.peirce(b)).collect();
    peirce.extend((0..d).map(|b| {
        let (s, t) = a.peirce(b);
        (t, s)
    }));

    let embed = |v: &[Scalar], offset: usize| -> Vector {
        let mut out = zero_vector(f, 2 * d);
        for (k, x) in v.iter().enumerate() {
            out[offset + k] = x.clone();
        }
        out
    };

    let socles = a.socles();
    let soc = socles.bimodule;
    let restriction_rows: Vec<Vector> = soc.basis().to_vec();
    let socle_restriction = ExactMatrix::new(f, d, restriction_rows).expect("socle vectors have length d");

    let old: Vec<ArrowRep> = base_arrows(a)
        .into_iter()
        .map(|x| ArrowRep {
            element: embed(&x.element, 0),
            ..x
        })
        .collect();
    let mut taken: Vec<String> = old.iter().map(|x| x.name.clone()).collect();
    let single = soc.dim() == 1;
    let mut new_arrows = Vec::new();
    for (n, &p) in soc.pivots().iter().enumerate() {
        let (s, t) = a.peirce(p);
        let base = if single { "β".to_string() } else { format!("β{}", n + 1) };
        let name = fresh_name(&taken, base);
        taken.push(name.clone());
        let mut element = zero_vector(f, 2 * d);
        element[dual(p)] = f.one();
        new_arrows.push(NewArrow {
            name,
            source: t,
            target: s,
            dual_of: p,
            element,
        });
    }
    let mut arrows = old.clone();
    arrows.extend(new_arrows.iter().map(|x| ArrowRep {
        name: x.name.clone(),
        source: x.source,
        target: x.target,
        element: x.element.clone(),
    }));

    let mut algebra = FDAlgebra::from_parts(AlgebraParts {
        field: f,
        labels,
        vertex_names: a.vertex_names().to_vec(),
        table,
        peirce,
        arrows,
        degrees: None,
    })
    .expect("trivial extension data is well formed");
    if let Some(deg) = degrees {
        algebra = algebra.with_degrees(deg).expect("dual grading is compatible");
    }
    TrivialExtensionData {
        algebra,
        base_dim: d,
        parts: (0..2 * d).map(|k| if k < d { Part::Base } else { Part::Dual }).collect(),
        origin: (0..2 * d).map(|k| k % d).collect(),
        socle_restriction,
        bimodule_socle: soc,
        old_arrow_count: old.len(),
        new_arrows,
    }
}

impl TrivialExtensionData {
    pub fn t(&self) -> &FDAlgebra {
        &self.algebra
    }

    /// Image of a new arrow's representative in `D(soc A)`.
    pub fn restrict_to_socle(&self, x: &[Scalar]) -> Vector {
        let d = self.base_dim;
        self.socle_restriction.mul_vec(&x[d..]).expect("dual part has length d")
    }

    /// The quiver of `T(A)`: old arrows then new arrows. Carries degrees
    /// when `T(A)` is graded.
    pub fn extended_quiver(&self) -> Quiver {
        let t = &self.algebra;
        let arrows = t
            .arrows()
            .iter()
            .map(|x| Arrow {
                name: x.name.clone(),
                source: x.source,
                target: x.target,
                degree: t.degrees().map(|deg| {
                    let k = x.element.iter().position(|c| !c.is_zero()).expect("nonzero arrow");
                    deg[k]
                }),
            })
            .collect();
        Quiver::new(t.vertex_names().to_vec(), arrows).expect("arrow names are distinct")
    }

    /// The new arrows as `(name, source, target, representative)`.
    pub fn new_arrows(&self) -> &[NewArrow] {
        &self.new_arrows
    }

    pub fn is_new_arrow(&self, arrow: usize) -> bool {
        arrow >= self.old_arrow_count
    }

    /// `phi(b2) phi(b1) = 0` for every composable pair of new arrows.
    pub fn check_new_products_vanish(&self) -> bool {
        let t = &self.algebra;
        self.new_arrows.iter().all(|b1| {
            self.new_arrows
                .iter()
                .filter(|b2| b2.source == b1.target)
                .all(|b2| is_zero_vector(&t.mul(&b2.element, &b1.element)))
        })
    }

    /// `<(a,f),(b,g)> = f(b) + g(a)`.
    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let d = self.base_dim;
        let f = self.algebra.field();
        let mut acc = f.zero();
        for k in 0..d {
            acc = &acc + &(&u[d + k] * &v[k]);
            acc = &acc + &(&v[d + k] * &u[k]);
        }
        acc
    }

    /// Symmetry, associativity and nondegeneracy of the pairing, checked on
    /// basis elements. Returns a description of the first failure.
    pub fn check_symmetric_form(&self) -> std::result::Result<(), String> {
        let t = &self.algebra;
        let n = t.dim();
        let basis: Vec<Vector> = (0..n).map(|i| t.basis_vector(i)).collect();
        let mut gram = Vec::with_capacity(n);
        for (i, u) in basis.iter().enumerate() {
            let row: Vector = basis.iter().map(|v| self.form(u, v)).collect();
            for (j, v) in basis.iter().enumerate() {
                if row[j] != self.form(v, u) {
                    return Err(format!("form is not symmetric at ({i}, {j})"));
                }
            }
            gram.push(row);
        }
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let uv = t.mul(u, v);
                for (k, w) in basis.iter().enumerate() {
                    if self.form(&uv, w) != self.form(u, &t.mul(v, w)) {
                        return Err(format!("form is not associative at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let m = ExactMatrix::new(t.field(), n, gram).expect("square");
        let rank = crate::linalg::row_reduce(&m).rank;
        if rank != n {
            return Err(format!("form has rank {rank} < {n}"));
        }
        Ok(())
    }

    /// Embeds an element of `A` as `(a, 0)`.
    pub fn embed_base(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.algebra.field(), 2 * self.base_dim);
        out[..self.base_dim].clone_from_slice(v);
        out
    }

    /// `r ⊕ DA`.
    pub fn expected_radical(&self) -> Subspace {
        let t = &self.algebra;
        Subspace::coordinate(t.field(), t.dim(), t.vertex_count()..t.dim())
    }

    /// `r^2 ⊕ (r DA + DA r)`, computed from the algebra `A` and the bimodule
    /// action only.
    pub fn expected_radical_square(&self, base: &FDAlgebra) -> Subspace {
        let t = &self.algebra;
        let d = self.base_dim;
        let mut gens: Vec<Vector> = if base.dim() > base.vertex_count() {
            base.radical_power(2).basis().iter().map(|v| self.embed_base(v)).collect()
        } else {
            Vec::new()
        };
        for b in base.vertex_count()..d {
            for k in 0..d {
                let x = t.basis_vector(b);
                let y = t.basis_vector(d + k);
                gens.push(t.mul(&x, &y));
                gens.push(t.mul(&y, &x));
            }
        }
        Subspace::from_vectors(t.field(), t.dim(), gens)
    }
}

#[cfg(test)]
mod tests;
