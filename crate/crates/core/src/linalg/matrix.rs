//! Dense exact matrices, row reduction, subspaces and quotients.

use crate::error::{Error, Result};
use crate::linalg::field::{Field, Scalar};

/// Coordinate vector. All entries belong to one field.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, k: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[k] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl ExactMatrix {
    /// Builds a matrix from rows; every entry must lie in `field`.
    pub fn new(field: Field, cols: usize, data: Vec<Vector>) -> Result<Self> {
        for row in &data {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: bad.field().to_string(),
                });
            }
        }
        Ok(ExactMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![zero_vector(field, cols); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        ExactMatrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| unit_vector(field, n, i)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = ExactMatrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                if x.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field.to_string(),
                        found: x.field().to_string(),
                    });
                }
                m.data[i][j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field);
        self.data[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ExactMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                axpy(&mut out.data[i], a, &other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vector(r))
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.data
    }
}

/// In-place reduced row echelon form; returns the pivot columns. Zero rows
/// are dropped.
pub(crate) fn rref_in_place(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = -&row[c];
            axpy(row, &factor, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Result of [`row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    /// Nonzero rows of the reduced row echelon form.
    pub rref: Vec<Vector>,
    /// Kernel basis, itself in reduced echelon form.
    pub kernel_basis: Vec<Vector>,
}

pub fn row_reduce(m: &ExactMatrix) -> RowReduction {
    let field = m.field;
    let mut rows = m.data.clone();
    let pivots = rref_in_place(&mut rows, m.cols);
    let kernel = kernel_from_rref(field, &rows, &pivots, m.cols);
    let kernel = Subspace::from_vectors(field, m.cols, kernel).basis;
    RowReduction {
        rank: pivots.len(),
        pivot_columns: pivots,
        rref: rows,
        kernel_basis: kernel,
    }
}

fn kernel_from_rref(field: Field, rows: &[Vector], pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = unit_vector(field, cols, free);
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[free].is_zero() {
                    v[p] = -&row[free];
                }
            }
            v
        })
        .collect()
}

/// Kernel of the linear map whose matrix has the given columns, i.e. all
/// coefficient vectors `a` with `sum a_j col_j = 0`.
pub fn kernel_of_columns(field: Field, ambient: usize, columns: &[Vector]) -> Vec<Vector> {
    let m = ExactMatrix::from_columns(field, ambient, columns).expect("consistent columns");
    row_reduce(&m).kernel_basis
}

/// A linear subspace of `field^ambient`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(field: Field, ambient: usize, vectors: Vec<Vector>) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().filter(|v| !is_zero_vector(v)).collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
        }
        let pivots = rref_in_place(&mut rows, ambient);
        Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of standard basis vectors.
    pub fn coordinate(field: Field, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vecs = coords
            .into_iter()
            .map(|k| unit_vector(field, ambient, k))
            .collect();
        Subspace::from_vectors(field, ambient, vecs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the echelon basis. Zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates on the echelon basis, if `v` belongs to the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.field, self.ambient, vecs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let kernel = kernel_of_columns(self.field, self.ambient, &cols);
        let vecs = kernel
            .into_iter()
            .map(|k| {
                let mut acc = zero_vector(self.field, self.ambient);
                for (c, v) in k.iter().zip(&self.basis) {
                    axpy(&mut acc, c, v);
                }
                acc
            })
            .collect();
        Subspace::from_vectors(self.field, self.ambient, vecs)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.basis == other.basis
    }
}

/// Projection onto a quotient `field^ambient / sub`, realised on the
/// coordinates that are not pivots of the subspace's echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    sub: Subspace,
    kept: Vec<usize>,
}

impl QuotientMap {
    pub fn quotient_dim(&self) -> usize {
        self.kept.len()
    }

    /// Ambient coordinates whose classes form the quotient basis.
    pub fn kept_coordinates(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.sub.reduce(v);
        self.kept.iter().map(|&k| r[k].clone()).collect()
    }

    pub fn projection_matrix(&self) -> ExactMatrix {
        let field = self.sub.field;
        let n = self.sub.ambient;
        let columns: Vec<Vector> = (0..n).map(|i| self.project(&unit_vector(field, n, i))).collect();
        ExactMatrix::from_columns(field, self.kept.len(), &columns).expect("consistent shape")
    }
}

pub fn subspace_quotient(field: Field, ambient_dim: usize, sub_basis: &[Vector]) -> Result<QuotientMap> {
    if let Some(v) = sub_basis.iter().find(|v| v.len() != ambient_dim) {
        return Err(Error::DimensionMismatch {
            expected: ambient_dim,
            found: v.len(),
        });
    }
    let sub = Subspace::from_vectors(field, ambient_dim, sub_basis.to_vec());
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &sub.pivots {
        is_pivot[p] = true;
    }
    let kept = (0..ambient_dim).filter(|&i| !is_pivot[i]).collect();
    Ok(QuotientMap { sub, kept })
}
