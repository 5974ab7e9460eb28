//! Sparse column matrices and exact rank.
//!
//! Rank over `Q` is computed by fraction-free elimination on integer
//! columns (each column scaled to a primitive integer vector first). The
//! matrix is split into the connected components of its row/column incidence
//! graph before elimination; the rank of a block diagonal matrix is the sum
//! of the block ranks, and boundary matrices of graded algebras split into
//! many small blocks this way.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::field::{mul_mod, pow_mod, Field, Scalar};
use crate::linalg::matrix::ExactMatrix;

pub type SparseColumn<T> = Vec<(u32, T)>;

/// Matrix stored column by column; each column sorted by row index with no
/// explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    columns: Vec<SparseColumn<Scalar>>,
}

impl SparseMatrix {
    pub fn new(field: Field, rows: usize, mut columns: Vec<SparseColumn<Scalar>>) -> Result<Self> {
        for col in &mut columns {
            col.retain(|(_, x)| !x.is_zero());
            col.sort_by_key(|(r, _)| *r);
            if let Some((r, _)) = col.iter().find(|(r, _)| *r as usize >= rows) {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: *r as usize + 1,
                });
            }
            if let Some((_, x)) = col.iter().find(|(_, x)| x.field() != field) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: x.field().to_string(),
                });
            }
            if col.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidArgument("repeated row index in sparse column".into()));
            }
        }
        Ok(SparseMatrix {
            field,
            rows,
            columns,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, Scalar)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i as usize, j, x.clone());
            }
        }
        m
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: other.rows,
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<u32, Scalar> = Default::default();
                for (k, c) in col {
                    for (i, a) in &self.columns[*k as usize] {
                        let e = acc.entry(*i).or_insert_with(|| self.field.zero());
                        *e = &*e + &(a * c);
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix::new(self.field, self.rows, columns)
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let cols = self
                    .columns
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|(r, x)| (*r, x.to_i64().expect("residue") as u64))
                            .collect()
                    })
                    .collect();
                rank_mod_p(self.rows, cols, p)
            }
            Field::Rational => {
                let cols: Vec<SparseColumn<BigInt>> =
                    self.columns.iter().map(|c| primitive_integer_column(c)).collect();
                let small: Option<Vec<SparseColumn<i64>>> = cols
                    .iter()
                    .map(|c| c.iter().map(|(r, x)| x.to_i64().map(|v| (*r, v))).collect())
                    .collect();
                match small {
                    Some(small) => rank_integer(self.rows, small),
                    None => rank_generic::<BigInt>(self.rows, cols, &()),
                }
            }
        }
    }
}

/// Scales a rational column by the lcm of its denominators.
fn primitive_integer_column(col: &[(u32, Scalar)]) -> SparseColumn<BigInt> {
    let lcm = col.iter().fold(BigInt::one(), |acc, (_, x)| {
        acc.lcm(x.as_rational().expect("rational entry").denom())
    });
    col.iter()
        .map(|(r, x)| {
            let q = x.as_rational().expect("rational entry");
            (*r, q.numer() * (&lcm / q.denom()))
        })
        .collect()
}

/// Rank over `Q` of an integer matrix given by columns.
pub fn rank_integer(rows: usize, columns: Vec<SparseColumn<i64>>) -> usize {
    let mut total = 0;
    for block in components(rows, &columns) {
        let cols: Vec<SparseColumn<i64>> = block.iter().map(|&j| columns[j].clone()).collect();
        total += match try_rank_generic::<i64>(rows, cols, &()) {
            Some(r) => r,
            None => {
                let big = block
                    .iter()
                    .map(|&j| columns[j].iter().map(|(r, x)| (*r, BigInt::from(*x))).collect())
                    .collect();
                rank_generic::<BigInt>(rows, big, &())
            }
        };
    }
    total
}

pub fn rank_mod_p(rows: usize, columns: Vec<SparseColumn<u64>>, p: u64) -> usize {
    components(rows, &columns)
        .into_iter()
        .map(|block| {
            let cols = block.iter().map(|&j| columns[j].clone()).collect();
            rank_generic::<Residue>(rows, cols, &p)
        })
        .sum()
}

/// Column index sets of the connected components (columns with no entries
/// are dropped).
fn components<T>(rows: usize, columns: &[SparseColumn<T>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..rows).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for col in columns {
        if let Some((first, _)) = col.first() {
            let a = find(&mut parent, *first as usize);
            for (r, _) in &col[1..] {
                let b = find(&mut parent, *r as usize);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut index_of_root = std::collections::HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some((first, _)) = col.first() {
            let root = find(&mut parent, *first as usize);
            let k = *index_of_root.entry(root).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(j);
        }
    }
    out
}

type Residue = u64;

/// Coefficient domain for elimination.
trait Elim: Clone {
    type Ctx;
    /// `v <- b*v - a*p` (up to a unit) where `a = v[lead]`, `b = p[lead]`.
    fn eliminate(v: &[(u32, Self)], p: &[(u32, Self)], ctx: &Self::Ctx) -> Option<SparseColumn<Self>>;
    /// Scale to a canonical representative (primitive / monic).
    fn normalize(v: &mut SparseColumn<Self>, ctx: &Self::Ctx) -> Option<()>;
}

fn merge<T: Clone>(
    v: &[(u32, T)],
    p: &[(u32, T)],
    mut f: impl FnMut(Option<&T>, Option<&T>) -> Option<Option<T>>,
) -> Option<SparseColumn<T>> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let (row, x) = match (v.get(i), p.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                i += 1;
                j += 1;
                (a.0, f(Some(&a.1), Some(&b.1))?)
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                i += 1;
                (a.0, f(Some(&a.1), None)?)
            }
            (Some(a), None) => {
                i += 1;
                (a.0, f(Some(&a.1), None)?)
            }
            (_, Some(b)) => {
                j += 1;
                (b.0, f(None, Some(&b.1))?)
            }
            (None, None) => unreachable!(),
        };
        if let Some(x) = x {
            out.push((row, x));
        }
    }
    Some(out)
}

impl Elim for i64 {
    type Ctx = ();
    fn eliminate(v: &[(u32, i64)], p: &[(u32, i64)], _: &()) -> Option<SparseColumn<i64>> {
        let a = v[0].1;
        let b = p[0].1;
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        merge(v, p, |x, y| {
            let x = x.copied().unwrap_or(0).checked_mul(b)?;
            let y = y.copied().unwrap_or(0).checked_mul(a)?;
            let r = x.checked_sub(y)?;
            Some((r != 0).then_some(r))
        })
    }
    fn normalize(v: &mut SparseColumn<i64>, _: &()) -> Option<()> {
        let g = v.iter().fold(0i64, |g, (_, x)| g.gcd(x));
        let g = if v.first().is_some_and(|(_, x)| *x < 0) { g.checked_neg()? } else { g };
        if g != 1 && g != 0 {
            for (_, x) in v.iter_mut() {
                *x /= g;
            }
        }
        Some(())
    }
}

impl Elim for BigInt {
    type Ctx = ();
    fn eliminate(v: &[(u32, BigInt)], p: &[(u32, BigInt)], _: &()) -> Option<SparseColumn<BigInt>> {
        let g = v[0].1.gcd(&p[0].1);
        let a = &v[0].1 / &g;
        let b = &p[0].1 / &g;
        merge(v, p, |x, y| {
            let r = x.map_or_else(BigInt::zero, |x| x * &b) - y.map_or_else(BigInt::zero, |y| y * &a);
            Some((!Zero::is_zero(&r)).then_some(r))
        })
    }
    fn normalize(v: &mut SparseColumn<BigInt>, _: &()) -> Option<()> {
        let mut g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
        if v.first().is_some_and(|(_, x)| x.is_negative()) {
            g = -g;
        }
        if !g.is_one() && !Zero::is_zero(&g) {
            for (_, x) in v.iter_mut() {
                *x = &*x / &g;
            }
        }
        Some(())
    }
}

impl Elim for Residue {
    type Ctx = u64;
    fn eliminate(v: &[(u32, u64)], p: &[(u32, u64)], m: &u64) -> Option<SparseColumn<u64>> {
        // pivot columns are monic
        let a = v[0].1;
        merge(v, p, |x, y| {
            let x = x.copied().unwrap_or(0);
            let y = mul_mod(y.copied().unwrap_or(0), a, *m);
            let r = (x + m - y) % m;
            Some((r != 0).then_some(r))
        })
    }
    fn normalize(v: &mut SparseColumn<u64>, m: &u64) -> Option<()> {
        if let Some((_, lead)) = v.first() {
            let inv = pow_mod(*lead, m - 2, *m);
            for (_, x) in v.iter_mut() {
                *x = mul_mod(*x, inv, *m);
            }
        }
        Some(())
    }
}

fn rank_generic<T: Elim>(rows: usize, columns: Vec<SparseColumn<T>>, ctx: &T::Ctx) -> usize {
    try_rank_generic(rows, columns, ctx).expect("unbounded coefficient domain")
}

/// Incremental echelon form keyed by leading row index. `None` signals
/// coefficient overflow.
fn try_rank_generic<T: Elim>(rows: usize, mut columns: Vec<SparseColumn<T>>, ctx: &T::Ctx) -> Option<usize> {
    columns.sort_by_key(Vec::len);
    let mut pivots: Vec<Option<SparseColumn<T>>> = vec![None; rows];
    let mut rank = 0;
    for mut v in columns {
        T::normalize(&mut v, ctx)?;
        loop {
            let Some(&(lead, _)) = v.first() else { break };
            match &pivots[lead as usize] {
                Some(p) => {
                    v = T::eliminate(&v, p, ctx)?;
                    debug_assert!(v.first().is_none_or(|(r, _)| *r != lead));
                    T::normalize(&mut v, ctx)?;
                }
                None => {
                    pivots[lead as usize] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Rank of a dense integer matrix by the same routines; test helper and
/// small-case entry point.
pub fn rank_of_rows_i64(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let columns = (0..ncols)
        .map(|j| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| r[j] != 0)
                .map(|(i, r)| (i as u32, r[j]))
                .collect()
        })
        .collect();
    rank_integer(rows.len(), columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::row_reduce;
    use proptest::prelude::*;

    #[test]
    fn block_diagonal_rank() {
        let f = Field::Rational;
        let m = SparseMatrix::new(
            f,
            4,
            vec![
                vec![(0, f.from_i64(1)), (1, f.from_i64(2))],
                vec![(0, f.from_i64(2)), (1, f.from_i64(4))],
                vec![(2, f.from_i64(3))],
                vec![],
                vec![(3, f.from_i64(-1)), (2, f.from_i64(1))],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.rank(), row_reduce(&m.to_dense()).rank);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![vec![big, big - 1, 7], vec![big - 2, big, 11], vec![1, 1, 1]];
        let dense = ExactMatrix::new(
            Field::Rational,
            3,
            rows.iter()
                .map(|r| r.iter().map(|&x| Field::Rational.from_i64(x)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(rank_of_rows_i64(&rows), row_reduce(&dense).rank);
    }

    #[test]
    fn rational_entries() {
        let f = Field::Rational;
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let m = SparseMatrix::new(
            f,
            2,
            vec![vec![(0, half.clone()), (1, f.one())], vec![(0, f.one()), (1, f.from_i64(2))]],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    fn dense_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..4], c), r)
        })
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(rows in dense_rows()) {
            let f = Field::Rational;
            let dense = ExactMatrix::new(
                f,
                rows[0].len(),
                rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect(),
            ).unwrap();
            prop_assert_eq!(rank_of_rows_i64(&rows), row_reduce(&dense).rank);

            let p = Field::prime(5).unwrap();
            let dense_p = ExactMatrix::new(
                p,
                rows[0].len(),
                rows.iter().map(|r| r.iter().map(|&x| p.from_i64(x)).collect()).collect(),
            ).unwrap();
            let cols = (0..rows[0].len()).map(|j| {
                rows.iter().enumerate()
                    .map(|(i, r)| (i as u32, p.from_i64(r[j])))
                    .collect()
            }).collect();
            let sparse_p = SparseMatrix::new(p, rows.len(), cols).unwrap();
            prop_assert_eq!(sparse_p.rank(), row_reduce(&dense_p).rank);
        }
    }
}
