//! Hochschild homology in low degrees from the bar complex.
//!
//! Degree `n` chains are tuples `(b_0, b_1, ..., b_n)` of basis indices. In
//! the normalized variant the factors after the first run over a basis of
//! `B / k·1`: the unit is written in the algebra basis, its first nonzero
//! coordinate is dropped, and the remaining basis elements represent the
//! quotient. Products landing in a reduced slot are reduced by subtracting
//! the matching multiple of the unit.

use serde::Serialize;

use crate::algebra::{FDAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::matrix::ExactMatrix;
use crate::linalg::sparse::SparseColumn;
use crate::linalg::{row_reduce, Scalar, SparseMatrix};

pub const DEFAULT_DIM_CAP: usize = 50_000;
pub const DIM_CAP_ENV: &str = "TRIVEXT_DIM_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Normalized,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HHOptions {
    pub variant: Variant,
    /// Largest chain module, in basis tuples, that will be assembled.
    pub cap: usize,
}

impl Default for HHOptions {
    fn default() -> Self {
        HHOptions {
            variant: Variant::Normalized,
            cap: DEFAULT_DIM_CAP,
        }
    }
}

impl HHOptions {
    /// Default options with the cap taken from `TRIVEXT_DIM_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let cap = match std::env::var(DIM_CAP_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{DIM_CAP_ENV}={s} is not a nonnegative integer")))?,
            Err(_) => DEFAULT_DIM_CAP,
        };
        Ok(HHOptions {
            cap,
            ..HHOptions::default()
        })
    }
}

/// Shape of one chain module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainModuleDescriptor {
    pub degree: usize,
    /// Algebra dimension, the range of the first factor.
    pub first_factor: usize,
    /// Range of each later factor.
    pub later_factor: usize,
    /// `first_factor * later_factor^degree`, saturating.
    pub dimension: usize,
}

pub fn chain_module(b: &FDAlgebra, n: usize, variant: Variant) -> ChainModuleDescriptor {
    let d = b.dim();
    let later = match variant {
        Variant::Normalized => d.saturating_sub(1),
        Variant::Full => d,
    };
    let dimension = u32::try_from(n)
        .ok()
        .and_then(|e| later.checked_pow(e))
        .and_then(|p| p.checked_mul(d))
        .unwrap_or(usize::MAX);
    ChainModuleDescriptor {
        degree: n,
        first_factor: d,
        later_factor: later,
        dimension,
    }
}

/// Precomputed products between basis elements, expressed in the
/// coordinates of the slot they land in.
struct Tables {
    later: usize,
    /// `first[a][s]`: `b_a * lift(s)`, full coordinates.
    first: Vec<Vec<SparseVec>>,
    /// `inner[s][t]`: `lift(s) * lift(t)`, reduced coordinates.
    inner: Vec<Vec<SparseVec>>,
    /// `wrap[s][a]`: `lift(s) * b_a`, full coordinates.
    wrap: Vec<Vec<SparseVec>>,
    field: crate::linalg::Field,
}

impl Tables {
    fn new(b: &FDAlgebra, variant: Variant) -> Self {
        let d = b.dim();
        let field = b.field();
        let unit = b.unit();
        let (kept, dropped): (Vec<usize>, Option<usize>) = match variant {
            Variant::Full => ((0..d).collect(), None),
            Variant::Normalized => {
                let z = unit.iter().position(|x| !x.is_zero()).expect("nonzero unit");
                ((0..d).filter(|&k| k != z).collect(), Some(z))
            }
        };
        let mut slot = vec![None; d];
        for (s, &k) in kept.iter().enumerate() {
            slot[k] = Some(s);
        }
        let reduce = |v: &SparseVec| -> SparseVec {
            let Some(z) = dropped else {
                return v.clone();
            };
            let mut dense = vec![field.zero(); kept.len()];
            let c = v
                .iter()
                .find(|(k, _)| *k == z)
                .map(|(_, x)| x * &unit[z].inv().expect("unit coordinate"));
            for (k, x) in v {
                if let Some(s) = slot[*k] {
                    dense[s] = &dense[s] + x;
                }
            }
            if let Some(c) = c {
                for (s, &k) in kept.iter().enumerate() {
                    if !unit[k].is_zero() {
                        dense[s] = &dense[s] - &(&c * &unit[k]);
                    }
                }
            }
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        };
        let first = (0..d)
            .map(|a| kept.iter().map(|&k| b.basis_product(a, k).clone()).collect())
            .collect();
        let inner = kept
            .iter()
            .map(|&i| kept.iter().map(|&j| reduce(b.basis_product(i, j))).collect())
            .collect();
        let wrap = kept
            .iter()
            .map(|&k| (0..d).map(|a| b.basis_product(k, a).clone()).collect())
            .collect();
        Tables {
            later: kept.len(),
            first,
            inner,
            wrap,
            field,
        }
    }
}

fn sign(field: crate::linalg::Field, i: usize) -> Scalar {
    if i.is_multiple_of(2) {
        field.one()
    } else {
        field.from_i64(-1)
    }
}

fn cap_check(c: ChainModuleDescriptor, cap: usize) -> Result<()> {
    if c.dimension > cap {
        return Err(Error::CapExceeded {
            degree: c.degree,
            required: c.dimension,
            cap,
        });
    }
    Ok(())
}

/// Matrix of `b_n : C_n -> C_(n-1)`.
pub fn boundary_matrix(b: &FDAlgebra, n: usize, variant: Variant, cap: usize) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("boundary degree must be at least 1".into()));
    }
    let source = chain_module(b, n, variant);
    cap_check(source, cap)?;
    let target = chain_module(b, n - 1, variant);
    if target.dimension > u32::MAX as usize {
        return Err(Error::CapExceeded {
            degree: n - 1,
            required: target.dimension,
            cap,
        });
    }
    let t = Tables::new(b, variant);
    let field = t.field;
    let m = t.later;
    let signs: Vec<Scalar> = (0..=n).map(|i| sign(field, i)).collect();

    let mut digits = vec![0usize; n + 1];
    let mut out_digits = vec![0usize; n];
    let encode = |ds: &[usize]| ds[1..].iter().fold(ds[0], |acc, &s| acc * m + s) as u32;
    let mut columns = Vec::with_capacity(source.dimension);
    for col in 0..source.dimension {
        let mut rest = col;
        for k in (1..=n).rev() {
            digits[k] = rest % m;
            rest /= m;
        }
        digits[0] = rest;
        let mut entries: SparseColumn<Scalar> = Vec::new();

        // b_0 b_1 in the first slot
        out_digits[1..].copy_from_slice(&digits[2..]);
        for (k, x) in &t.first[digits[0]][digits[1]] {
            out_digits[0] = *k;
            entries.push((encode(&out_digits), x.clone()));
        }
        // b_i b_(i+1) in reduced slot i
        for i in 1..n {
            out_digits[..i].copy_from_slice(&digits[..i]);
            out_digits[i + 1..].copy_from_slice(&digits[i + 2..]);
            for (s, x) in &t.inner[digits[i]][digits[i + 1]] {
                out_digits[i] = *s;
                entries.push((encode(&out_digits), &signs[i] * x));
            }
        }
        // b_n b_0 in the first slot
        out_digits[1..].copy_from_slice(&digits[1..n]);
        for (k, x) in &t.wrap[digits[n]][digits[0]] {
            out_digits[0] = *k;
            entries.push((encode(&out_digits), &signs[n] * x));
        }
        columns.push(combine(entries));
    }
    SparseMatrix::new(field, target.dimension, columns)
}

fn combine(mut entries: SparseColumn<Scalar>) -> SparseColumn<Scalar> {
    entries.sort_by_key(|(r, _)| *r);
    let mut out: SparseColumn<Scalar> = Vec::with_capacity(entries.len());
    for (r, x) in entries {
        match out.last_mut() {
            Some((q, y)) if *q == r => *y = &*y + &x,
            _ => out.push((r, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HHDegree {
    pub n: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapHit {
    pub degree: usize,
    pub required: usize,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HHReport {
    pub algebra: String,
    pub variant: Variant,
    pub requested_max: usize,
    pub dims: Vec<HHDegree>,
    /// `ranks[k]` is the rank of `b_(k+1)`.
    pub ranks: Vec<usize>,
    pub chain_dims: Vec<usize>,
    pub cap_hit: Option<CapHit>,
}

impl HHReport {
    pub fn dim(&self, n: usize) -> Option<usize> {
        self.dims.iter().find(|h| h.n == n).map(|h| h.dim)
    }

    pub fn dims_vec(&self) -> Vec<usize> {
        self.dims.iter().map(|h| h.dim).collect()
    }

    /// Highest degree with a computed dimension.
    pub fn reached(&self) -> Option<usize> {
        self.dims.last().map(|h| h.n)
    }

    pub fn is_truncated(&self) -> bool {
        self.cap_hit.is_some()
    }
}

/// `dim HH_n(B)` for `0 <= n <= n_max`. Stops at the first chain module above
/// the cap and reports the degrees reached. Fails if the ranks are
/// inconsistent with `b b = 0`, which only happens for non-associative
/// structure constants.
pub fn hh_dims(b: &FDAlgebra, n_max: usize, options: &HHOptions) -> Result<HHReport> {
    let mut ranks = Vec::new();
    let mut chain_dims = vec![b.dim()];
    let mut cap_hit = None;
    for n in 1..=n_max + 1 {
        match boundary_matrix(b, n, options.variant, options.cap) {
            Ok(m) => {
                chain_dims.push(m.cols());
                ranks.push(m.rank());
            }
            Err(Error::CapExceeded { degree, required, cap }) => {
                cap_hit = Some(CapHit { degree, required, cap });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let rank = |k: usize| if k == 0 { 0 } else { ranks[k - 1] };
    let dims = (0..=n_max)
        .take_while(|&n| n < ranks.len())
        .map(|n| {
            let dim = chain_dims[n]
                .checked_sub(rank(n) + rank(n + 1))
                .ok_or_else(|| Error::Invariant(format!("boundary maps around degree {n} do not compose to zero")))?;
            Ok(HHDegree { n, dim })
        })
        .collect::<Result<_>>()?;
    Ok(HHReport {
        algebra: identifier(b),
        variant: options.variant,
        requested_max: n_max,
        dims,
        ranks,
        chain_dims,
        cap_hit,
    })
}

fn identifier(b: &FDAlgebra) -> String {
    format!("dim {} over {} [{}]", b.dim(), b.field(), b.labels().join(", "))
}

/// First `n` in `1..=n_max` with `b_n b_(n+1) != 0`.
pub fn check_boundary_squares(b: &FDAlgebra, n_max: usize, variant: Variant, cap: usize) -> Result<Option<usize>> {
    let mut prev = boundary_matrix(b, 1, variant, cap)?;
    for n in 1..=n_max {
        let next = boundary_matrix(b, n + 1, variant, cap)?;
        if !prev.mul(&next)?.is_zero() {
            return Ok(Some(n));
        }
        prev = next;
    }
    Ok(None)
}

/// `dim B - dim [B, B]`, from the span of the commutators of basis elements.
pub fn commutator_quotient_dim(b: &FDAlgebra) -> usize {
    let d = b.dim();
    let field = b.field();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![field.zero(); d];
            for (k, x) in b.basis_product(i, j) {
                v[*k] = &v[*k] + x;
            }
            for (k, x) in b.basis_product(j, i) {
                v[*k] = &v[*k] - x;
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
    }
    if rows.is_empty() {
        return d;
    }
    let m = ExactMatrix::new(field, d, rows).expect("commutator rows");
    d - row_reduce(&m).rank
}
