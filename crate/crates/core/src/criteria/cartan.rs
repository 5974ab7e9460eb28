//! Graded Cartan matrices and their determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::FDAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{int_det, poly_det, IntPolynomial, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedCartanData {
    pub r: usize,
    /// Top degree.
    pub s: u32,
    /// `components[l][i][j]` = dimension of `e_j A_l e_i`.
    pub components: Vec<Vec<Vec<u64>>>,
    pub matrix: PolyMatrix,
    pub determinant: IntPolynomial,
}

/// Ungraded Cartan matrix: entry `(i, j)` is `dim e_j A e_i`.
pub fn cartan_matrix(a: &FDAlgebra) -> Vec<Vec<BigInt>> {
    let r = a.vertex_count();
    let mut c = vec![vec![BigInt::zero(); r]; r];
    for b in 0..a.dim() {
        let (s, t) = a.peirce(b);
        c[s][t] += 1;
    }
    c
}

pub fn graded_cartan(a: &FDAlgebra) -> Result<GradedCartanData> {
    let deg = a
        .degrees()
        .ok_or_else(|| Error::NotGraded("the algebra carries no degrees".into()))?;
    let r = a.vertex_count();
    if deg[r..].contains(&0) {
        return Err(Error::NotGraded("degree 0 part is not spanned by the idempotents".into()));
    }
    let s = a.top_degree().unwrap_or(0);
    let mut components = vec![vec![vec![0u64; r]; r]; s as usize + 1];
    for b in 0..a.dim() {
        let (i, j) = a.peirce(b);
        components[deg[b] as usize][i][j] += 1;
    }
    let entries = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    IntPolynomial::new(components.iter().map(|c| BigInt::from(c[i][j])).collect())
                })
                .collect()
        })
        .collect();
    let matrix = PolyMatrix::new(entries)?;
    let determinant = poly_det(&matrix);
    Ok(GradedCartanData {
        r,
        s,
        components,
        matrix,
        determinant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CartanOutcome {
    #[serde(rename = "infinite_hhdim")]
    InfiniteHHdim { determinant: IntPolynomial },
    Inconclusive { reason: String },
}

/// Fires when the characteristic is zero and the determinant is not 1.
pub fn cartan_criterion(g: &GradedCartanData, characteristic: u64) -> CartanOutcome {
    if characteristic != 0 {
        return CartanOutcome::Inconclusive {
            reason: "criterion requires characteristic zero".into(),
        };
    }
    if g.determinant.is_one() {
        CartanOutcome::Inconclusive {
            reason: "graded Cartan determinant is 1".into(),
        }
    } else {
        CartanOutcome::InfiniteHHdim {
            determinant: g.determinant.clone(),
        }
    }
}

/// Expected shape of the graded Cartan data of a graded trivial extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantShape {
    pub r: usize,
    /// Top degree of the base algebra; `T(A)` has top degree `s + 1`.
    pub s: u32,
    pub determinant_degree: usize,
    /// `p_ij`: entry `(i, j)` of `C(x)` with `delta_ij (1 + x^(s+1))` removed.
    pub off_identity: Vec<Vec<IntPolynomial>>,
}

pub fn trivial_extension_determinant_shape(g: &GradedCartanData) -> Result<DeterminantShape> {
    let fail = |m: String| Err(Error::Invariant(m));
    let r = g.r;
    if g.s == 0 {
        return fail("a graded trivial extension has positive top degree".into());
    }
    let s = g.s - 1;
    let is_identity = |c: &Vec<Vec<u64>>| (0..r).all(|i| (0..r).all(|j| c[i][j] == u64::from(i == j)));
    if !is_identity(&g.components[0]) {
        return fail("degree 0 component is not the identity".into());
    }
    if !is_identity(&g.components[g.s as usize]) {
        return fail(format!("degree {} component is not the identity", g.s));
    }
    let corner = &IntPolynomial::one() + &IntPolynomial::monomial(BigInt::one(), g.s as usize);
    let mut off_identity = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let e = g.matrix.get(i, j);
            let p = if i == j { e - &corner } else { e.clone() };
            if !p.constant_term().is_zero() {
                return fail(format!("p_({i},{j}) has a constant term"));
            }
            if p.degree().is_some_and(|d| d > s as usize) {
                return fail(format!("p_({i},{j}) = {p} has degree above {s}"));
            }
            row.push(p);
        }
        off_identity.push(row);
    }
    let det = &g.determinant;
    let expected = r * (s as usize + 1);
    if !det.constant_term().is_one() {
        return fail(format!("determinant {det} does not have constant term 1"));
    }
    if det.degree() != Some(expected) {
        return fail(format!("determinant {det} does not have degree {expected}"));
    }
    if !det.leading_coeff().is_one() {
        return fail(format!("determinant {det} is not monic"));
    }
    Ok(DeterminantShape {
        r,
        s,
        determinant_degree: expected,
        off_identity,
    })
}

/// `det C(1)` next to the determinant of the ungraded Cartan matrix.
pub fn determinant_at_one(a: &FDAlgebra, g: &GradedCartanData) -> (BigInt, BigInt) {
    (g.determinant.eval(&BigInt::one()), int_det(&cartan_matrix(a)))
}
