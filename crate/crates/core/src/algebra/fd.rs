//! Finite dimensional basic algebras given by structure constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, is_zero_vector, unit_vector, zero_vector};
use crate::linalg::{Field, Scalar, Vector};
use crate::quiver::Path;

/// Sparse coordinate vector, sorted by basis index.
pub type SparseVec = Vec<(usize, Scalar)>;

#[allow(dead_code)]
pub(crate) fn to_dense(field: Field, dim: usize, v: &SparseVec) -> Vector {
    let mut out = zero_vector(field, dim);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[allow(dead_code)]
pub(crate) fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// An arrow of the algebra's quiver together with the element representing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowRep {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub element: Vector,
}

/// How the basis of a quotient algebra was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum BuildRule {
    /// Relations homogeneous in path length.
    LengthHomogeneous,
    /// Relations homogeneous for the given arrow degrees.
    DegreeHomogeneous { max_arrow_degree: u32 },
    /// Truncation at a user supplied nilpotency bound. The result is correct
    /// provided all paths of that length lie in the ideal.
    NilpotencyBound { bound: usize },
}

/// Finite dimensional algebra over a field with a distinguished basis.
///
/// Basis conventions:
///  - the first `r` basis elements are the primitive idempotents `e_1..e_r`;
///  - the remaining basis elements span the radical;
///  - every basis element `b` satisfies `b = e_t b e_s` for a single pair,
///    recorded as `peirce[b] = (s, t)`: `b` "runs from `s` to `t`".
///
/// Products are written in function order: for an arrow `a: s -> t`,
/// `e_t * a = a = a * e_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct FDAlgebra {
    pub(crate) field: Field,
    pub(crate) labels: Vec<String>,
    pub(crate) vertex_names: Vec<String>,
    pub(crate) table: Vec<Vec<SparseVec>>,
    pub(crate) peirce: Vec<(usize, usize)>,
    pub(crate) arrows: Vec<ArrowRep>,
    pub(crate) degrees: Option<Vec<u32>>,
    pub(crate) basis_paths: Option<Vec<Path>>,
    pub(crate) length_homogeneous: bool,
    pub(crate) rule: Option<BuildRule>,
}

/// Raw data for [`FDAlgebra::from_parts`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub field: Field,
    pub labels: Vec<String>,
    pub vertex_names: Vec<String>,
    /// `table[i][j]` is the product `b_i * b_j`.
    pub table: Vec<Vec<SparseVec>>,
    pub peirce: Vec<(usize, usize)>,
    pub arrows: Vec<ArrowRep>,
    pub degrees: Option<Vec<u32>>,
}

impl FDAlgebra {
    /// Validates idempotent and Peirce data. Associativity is not checked
    /// here; see [`FDAlgebra::check_associativity`].
    pub fn from_parts(parts: AlgebraParts) -> Result<Self> {
        let d = parts.labels.len();
        let r = parts.vertex_names.len();
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        if parts.table.len() != d || parts.table.iter().any(|row| row.len() != d) {
            return bad(format!("structure table is not {d}x{d}"));
        }
        if parts.peirce.len() != d || r > d {
            return bad("Peirce data does not match the basis".into());
        }
        for row in &parts.table {
            for v in row {
                if v.iter().any(|(k, x)| *k >= d || x.field() != parts.field) {
                    return bad("structure constant outside the basis or field".into());
                }
            }
        }
        let alg = FDAlgebra {
            field: parts.field,
            labels: parts.labels,
            vertex_names: parts.vertex_names,
            table: parts.table,
            peirce: parts.peirce,
            arrows: parts.arrows,
            degrees: parts.degrees,
            basis_paths: None,
            length_homogeneous: false,
            rule: None,
        };
        alg.check_idempotents().map_err(Error::InvalidAlgebra)?;
        if let Some(deg) = &alg.degrees {
            if deg.len() != d || deg[..r].iter().any(|&x| x != 0) {
                return bad("idempotents must have degree 0".into());
            }
        }
        for a in &alg.arrows {
            if a.element.len() != d || a.source >= r || a.target >= r {
                return bad(format!("arrow `{}` is malformed", a.name));
            }
        }
        Ok(alg)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arrows(&self) -> &[ArrowRep] {
        &self.arrows
    }

    pub fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Highest degree carried by a basis element.
    pub fn top_degree(&self) -> Option<u32> {
        self.degrees.as_ref().map(|d| d.iter().copied().max().unwrap_or(0))
    }

    pub fn build_rule(&self) -> Option<BuildRule> {
        self.rule
    }

    /// Path representing each basis element, for quotients of path algebras.
    pub fn basis_paths(&self) -> Option<&[Path]> {
        self.basis_paths.as_deref()
    }

    pub fn peirce(&self, b: usize) -> (usize, usize) {
        self.peirce[b]
    }

    /// Basis indices `b` with `b = e_target b e_source`.
    pub fn peirce_block(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.peirce[b] == (source, target))
            .collect()
    }

    pub fn idempotent(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn unit(&self) -> Vector {
        let mut u = zero_vector(self.field, self.dim());
        for i in 0..self.vertex_count() {
            u[i] = self.field.one();
        }
        u
    }

    pub fn is_radical_basis(&self, b: usize) -> bool {
        b >= self.vertex_count()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        let d = self.dim();
        for v in [x, y] {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Product without the dimension check.
    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let row = &self.table[i][j];
                if row.is_empty() {
                    continue;
                }
                let c = a * b;
                for (k, s) in row {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    pub(crate) fn mul_basis_left(&self, b: usize, y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                for (k, s) in &self.table[b][j] {
                    out[*k] = &out[*k] + &(c * s);
                }
            }
        }
        out
    }

    fn check_idempotents(&self) -> std::result::Result<(), String> {
        let r = self.vertex_count();
        for i in 0..r {
            if self.peirce[i] != (i, i) {
                return Err(format!("idempotent {i} has Peirce type {:?}", self.peirce[i]));
            }
        }
        for b in 0..self.dim() {
            let (s, t) = self.peirce[b];
            if s >= r || t >= r {
                return Err(format!("basis element {} names a missing vertex", self.labels[b]));
            }
            for i in 0..r {
                let left = &self.table[i][b];
                let right = &self.table[b][i];
                let expect = |hit: bool, v: &SparseVec| -> bool {
                    if hit {
                        v.len() == 1 && v[0].0 == b && v[0].1.is_one()
                    } else {
                        v.is_empty()
                    }
                };
                if !expect(i == t, left) || !expect(i == s, right) {
                    return Err(format!(
                        "basis element {} is not of Peirce type e_{} * A * e_{}",
                        self.labels[b], t, s
                    ));
                }
            }
        }
        Ok(())
    }

    /// First basis triple violating associativity, if any.
    pub fn check_associativity(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = to_dense(self.field, d, &self.table[i][j]);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = to_dense(self.field, d, &self.table[j][k]);
                    let right = self.mul_basis_left(i, &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Sum of idempotents is the unit and `e_i e_j = δ_ij e_i`.
    pub fn check_idempotent_completeness(&self) -> bool {
        let u = self.unit();
        let r = self.vertex_count();
        for b in 0..self.dim() {
            let v = self.basis_vector(b);
            if self.mul(&u, &v) != v || self.mul(&v, &u) != v {
                return false;
            }
        }
        for i in 0..r {
            for j in 0..r {
                let p = self.mul(&self.idempotent(i), &self.idempotent(j));
                let expected = if i == j {
                    self.idempotent(i)
                } else {
                    zero_vector(self.field, self.dim())
                };
                if p != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Every product of homogeneous basis elements is concentrated in the
    /// sum of their degrees. Returns the first offending pair.
    pub fn check_grading(&self) -> Option<(usize, usize)> {
        let deg = self.degrees.as_ref()?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.table[i][j].iter().any(|(k, _)| deg[*k] != deg[i] + deg[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The same algebra with degree tags replaced.
    pub fn with_degrees(&self, degrees: Vec<u32>) -> Result<FDAlgebra> {
        if degrees.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: degrees.len(),
            });
        }
        let mut a = self.clone();
        a.degrees = Some(degrees);
        if a.degrees.as_ref().unwrap()[..a.vertex_count()].iter().any(|&d| d != 0) {
            return Err(Error::NotGraded("idempotents must have degree 0".into()));
        }
        if let Some((i, j)) = a.check_grading() {
            return Err(Error::NotGraded(format!(
                "product {} * {} is not homogeneous",
                a.labels[i], a.labels[j]
            )));
        }
        Ok(a)
    }

    /// Path length grading, available when the algebra is a quotient by
    /// relations homogeneous in length.
    pub fn length_graded(&self) -> Option<FDAlgebra> {
        if !self.length_homogeneous {
            return None;
        }
        let lengths = self
            .basis_paths
            .as_ref()?
            .iter()
            .map(|p| p.len() as u32)
            .collect();
        self.with_degrees(lengths).ok()
    }

    /// Degree tags if present, otherwise the path length grading if available.
    pub fn graded_version(&self) -> Option<FDAlgebra> {
        if self.is_graded() {
            Some(self.clone())
        } else {
            self.length_graded()
        }
    }

    /// Human readable rendering of an element.
    pub fn render(&self, v: &[Scalar]) -> String {
        if is_zero_vector(v) {
            return "0".into();
        }
        let mut s = String::new();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            if x.is_one() {
                s.push_str(&self.labels[i]);
            } else {
                s.push_str(&format!("({x})*{}", self.labels[i]));
            }
        }
        s
    }

    /// Linear combination of basis vectors.
    pub fn combination(&self, terms: &[(usize, Scalar)]) -> Vector {
        let mut v = zero_vector(self.field, self.dim());
        for (i, c) in terms {
            axpy(&mut v, c, &self.basis_vector(*i));
        }
        v
    }

    /// Overwrites one structure constant. Intended for negative-control
    /// fixtures that need a deliberately broken table.
    pub fn with_corrupted_product(&self, i: usize, j: usize, value: SparseVec) -> FDAlgebra {
        let mut a = self.clone();
        a.table[i][j] = value;
        a
    }
}
