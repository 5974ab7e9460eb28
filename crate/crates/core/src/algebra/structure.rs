//! Radical filtration, socles and structural predicates.

use serde::Serialize;

use crate::algebra::fd::{ArrowRep, FDAlgebra};
use crate::linalg::matrix::{is_zero_vector, kernel_of_columns, unit_vector, zero_vector};
use crate::linalg::{subspace_quotient, Scalar, Subspace, Vector};
use crate::quiver::{Arrow, Quiver};

/// Left and right socles of the indecomposable projectives, and the socle of
/// `A` as a bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Socles {
    /// `left[i]` = `{x in A e_i : r x = 0}`.
    pub left: Vec<Subspace>,
    /// `right[j]` = `{x in e_j A : x r = 0}`.
    pub right: Vec<Subspace>,
    pub bimodule: Subspace,
}

impl Socles {
    /// Left socle of `A` as a left module, the sum of the `left` pieces.
    pub fn left_total(&self) -> Subspace {
        let mut acc = Subspace::zero(self.bimodule.field(), self.bimodule.ambient());
        for s in &self.left {
            acc = acc.sum(s);
        }
        acc
    }
}

/// Witness for one vertex of a Nakayama permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaWitness {
    pub vertex: usize,
    pub image: usize,
    /// `dim A e_vertex`, equal to `dim e_image A`.
    pub projective_dim: usize,
    /// The right socle of `e_image A` is one dimensional and lies in
    /// `e_image A e_vertex`.
    pub socle_source: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfinjectivityCertificate {
    /// `permutation[i] = j` with `A e_i` dual to `e_j A`.
    pub permutation: Vec<usize>,
    pub vertex_loewy_lengths: Vec<usize>,
    pub witnesses: Vec<NakayamaWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfinjectivityRefusal {
    pub vertex: usize,
    pub reason: String,
}

impl FDAlgebra {
    pub fn radical(&self) -> Subspace {
        Subspace::coordinate(self.field, self.dim(), self.vertex_count()..self.dim())
    }

    /// `r^m` for `m >= 1`.
    pub fn radical_power(&self, m: usize) -> Subspace {
        assert!(m >= 1, "radical powers start at 1");
        let mut powers = self.radical_powers_until(m);
        powers.pop().expect("at least one power")
    }

    /// `[r, r^2, ..., r^L]` with `r^L = 0` the first vanishing power. On a
    /// table whose radical span is not nilpotent (not a valid algebra) the
    /// list ends at the last power that still shrinks.
    pub fn radical_powers(&self) -> Vec<Subspace> {
        self.radical_powers_until(usize::MAX)
    }

    fn radical_powers_until(&self, m: usize) -> Vec<Subspace> {
        let d = self.dim();
        let rad_basis: Vec<usize> = (self.vertex_count()..d).collect();
        let mut out = vec![self.radical()];
        while out.len() < m && !out.last().unwrap().is_zero() {
            let prev = out.last().unwrap();
            let mut gens = Vec::new();
            for v in prev.basis() {
                for &b in &rad_basis {
                    let p = self.mul(v, &self.basis_vector(b));
                    gens.push(p);
                }
            }
            let next = Subspace::from_vectors(self.field, d, gens);
            if next.dim() == prev.dim() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// Least `L` with `r^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.radical_powers().len()
    }

    /// Loewy length of each `A e_i`.
    pub fn vertex_loewy_lengths(&self) -> Vec<usize> {
        let powers = self.radical_powers();
        (0..self.vertex_count())
            .map(|i| {
                let e = self.idempotent(i);
                let nonzero = powers
                    .iter()
                    .take_while(|p| p.basis().iter().any(|v| !is_zero_vector(&self.mul(v, &e))))
                    .count();
                nonzero + 1
            })
            .collect()
    }

    /// Elements supported on `coords` killed by every radical basis element,
    /// on the left, the right, or both.
    fn annihilated(&self, coords: &[usize], left: bool, right: bool) -> Subspace {
        let d = self.dim();
        let r = self.vertex_count();
        let rad_dim = d - r;
        let sides = [left, right].iter().filter(|&&s| s).count();
        let rows = sides * rad_dim * d;
        if coords.is_empty() {
            return Subspace::zero(self.field, d);
        }
        // row index (side, b, k) is compressed to the ones that occur
        let mut used = std::collections::BTreeMap::new();
        let mut images: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for &c in coords {
            let mut col = Vec::new();
            for b in r..d {
                let mut side = 0;
                if left {
                    for (k, x) in &self.table[b][c] {
                        col.push(((side * rad_dim + b - r) * d + k, x.clone()));
                    }
                    side += 1;
                }
                if right {
                    for (k, x) in &self.table[c][b] {
                        col.push(((side * rad_dim + b - r) * d + k, x.clone()));
                    }
                }
            }
            for (row, _) in &col {
                debug_assert!(*row < rows);
                let n = used.len();
                used.entry(*row).or_insert(n);
            }
            images.push(col);
        }
        let height = used.len();
        let columns: Vec<Vector> = images
            .into_iter()
            .map(|col| {
                let mut v = zero_vector(self.field, height);
                for (row, x) in col {
                    let k = used[&row];
                    v[k] = &v[k] + &x;
                }
                v
            })
            .collect();
        let kernel = if height == 0 {
            (0..coords.len())
                .map(|i| unit_vector(self.field, coords.len(), i))
                .collect()
        } else {
            kernel_of_columns(self.field, height, &columns)
        };
        let lifted = kernel
            .into_iter()
            .map(|k| {
                let mut v = zero_vector(self.field, d);
                for (x, &c) in k.into_iter().zip(coords) {
                    v[c] = x;
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.field, d, lifted)
    }

    pub fn socles(&self) -> Socles {
        let r = self.vertex_count();
        let d = self.dim();
        let with_source = |i: usize| (0..d).filter(|&b| self.peirce[b].0 == i).collect::<Vec<_>>();
        let with_target = |j: usize| (0..d).filter(|&b| self.peirce[b].1 == j).collect::<Vec<_>>();
        let all: Vec<usize> = (0..d).collect();
        Socles {
            left: (0..r).map(|i| self.annihilated(&with_source(i), true, false)).collect(),
            right: (0..r).map(|j| self.annihilated(&with_target(j), false, true)).collect(),
            bimodule: self.annihilated(&all, true, true),
        }
    }

    pub fn is_local(&self) -> bool {
        self.vertex_count() == 1
    }

    /// Dimension of `A e_i`.
    pub fn left_projective_dim(&self, i: usize) -> usize {
        self.peirce.iter().filter(|p| p.0 == i).count()
    }

    /// Dimension of `e_j A`.
    pub fn right_projective_dim(&self, j: usize) -> usize {
        self.peirce.iter().filter(|p| p.1 == j).count()
    }

    /// Decides selfinjectivity through socle types: `D(e_j A)` is a cyclic
    /// module with top at `i` exactly when the right socle of `e_j A` is one
    /// dimensional in `e_j A e_i`, and it is then isomorphic to `A e_i` iff
    /// the dimensions agree.
    pub fn is_selfinjective(&self) -> Result<SelfinjectivityCertificate, SelfinjectivityRefusal> {
        let r = self.vertex_count();
        let socles = self.socles();
        let mut socle_type = Vec::with_capacity(r);
        for (j, soc) in socles.right.iter().enumerate() {
            if soc.dim() != 1 {
                return Err(SelfinjectivityRefusal {
                    vertex: j,
                    reason: format!(
                        "right socle of e_{}A has dimension {}",
                        self.vertex_names[j],
                        soc.dim()
                    ),
                });
            }
            let pivot = soc.pivots()[0];
            let (s, t) = self.peirce[pivot];
            debug_assert_eq!(t, j);
            socle_type.push(s);
        }
        let mut permutation = Vec::with_capacity(r);
        let mut witnesses = Vec::with_capacity(r);
        let mut taken = vec![false; r];
        for i in 0..r {
            let need = self.left_projective_dim(i);
            let candidates: Vec<usize> = (0..r).filter(|&j| socle_type[j] == i).collect();
            let Some(&j) = candidates
                .iter()
                .find(|&&j| self.right_projective_dim(j) == need)
            else {
                let reason = match candidates.first() {
                    None => format!("no e_jA has socle of type {}", self.vertex_names[i]),
                    Some(&j) => format!(
                        "dim Ae_{} = {} but dim e_{}A = {}",
                        self.vertex_names[i],
                        need,
                        self.vertex_names[j],
                        self.right_projective_dim(j)
                    ),
                };
                return Err(SelfinjectivityRefusal { vertex: i, reason });
            };
            if taken[j] {
                return Err(SelfinjectivityRefusal {
                    vertex: i,
                    reason: format!("vertex {} is already the image of another vertex", self.vertex_names[j]),
                });
            }
            taken[j] = true;
            permutation.push(j);
            witnesses.push(NakayamaWitness {
                vertex: i,
                image: j,
                projective_dim: need,
                socle_source: i,
            });
        }
        Ok(SelfinjectivityCertificate {
            permutation,
            vertex_loewy_lengths: self.vertex_loewy_lengths(),
            witnesses,
        })
    }

    pub fn left_socle_in_bimodule_socle(&self) -> bool {
        let s = self.socles();
        s.bimodule.contains_subspace(&s.left_total())
    }

    /// Quiver of the algebra read off from `r / r^2`. Arrows are named after
    /// the basis elements chosen as representatives.
    pub fn quiver_of(&self) -> (Quiver, Vec<ArrowRep>) {
        let d = self.dim();
        let r = self.vertex_count();
        let rad2 = if d > r {
            self.radical_power(2)
        } else {
            Subspace::zero(self.field, d)
        };
        let q = subspace_quotient(self.field, d, rad2.basis()).expect("same ambient space");
        let mut arrows = Vec::new();
        let mut reps = Vec::new();
        for &k in q.kept_coordinates() {
            if k < r {
                continue;
            }
            let (s, t) = self.peirce[k];
            arrows.push(Arrow {
                name: self.labels[k].clone(),
                source: s,
                target: t,
                degree: None,
            });
            reps.push(ArrowRep {
                name: self.labels[k].clone(),
                source: s,
                target: t,
                element: self.basis_vector(k),
            });
        }
        let quiver = Quiver::new(self.vertex_names.clone(), arrows).expect("labels are distinct");
        (quiver, reps)
    }

    /// Radical of the trace form `(x, y) -> tr(L_{xy})`. In characteristic
    /// zero this is the Jacobson radical; `None` otherwise.
    pub fn trace_form_radical(&self) -> Option<Subspace> {
        if self.field.characteristic() != 0 {
            return None;
        }
        let d = self.dim();
        let traces: Vec<_> = (0..d)
            .map(|k| {
                (0..d).fold(self.field.zero(), |acc, m| {
                    let c = self.table[k][m]
                        .iter()
                        .find(|(i, _)| *i == m)
                        .map(|(_, x)| x.clone())
                        .unwrap_or_else(|| self.field.zero());
                    &acc + &c
                })
            })
            .collect();
        let columns: Vec<Vector> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        self.table[i][j]
                            .iter()
                            .fold(self.field.zero(), |acc, (k, x)| &acc + &(x * &traces[*k]))
                    })
                    .collect()
            })
            .collect();
        Some(Subspace::from_vectors(
            self.field,
            d,
            kernel_of_columns(self.field, d, &columns),
        ))
    }
}
