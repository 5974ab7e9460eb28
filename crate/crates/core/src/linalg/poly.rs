//! Integer polynomials and square matrices over `Z[x]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial with arbitrary precision integer coefficients; index = degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a
    /// remainder over `Z`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let mut rem = self.coeffs.clone();
        let lead = divisor.leading_coeff();
        let n = self.coeffs.len();
        if n <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    /// Serialized as its coefficient list (lowest degree first), each as a
    /// decimal string so that large coefficients survive JSON round trips.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

/// Square matrix over `Z[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Vec<IntPolynomial>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<IntPolynomial>>) -> Result<Self> {
        let size = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != size) {
            return Err(Error::NotSquare {
                rows: size,
                cols: row.len(),
            });
        }
        Ok(PolyMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { IntPolynomial::one() } else { IntPolynomial::zero() })
                    .collect()
            })
            .collect();
        PolyMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<IntPolynomial>] {
        &self.entries
    }

    /// Integer matrix obtained by substituting `x`.
    pub fn eval(&self, x: &BigInt) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x)).collect())
            .collect()
    }
}

/// Determinant by fraction-free (Bareiss) elimination over `Z[x]`. Every
/// intermediate division is exact, so no rational coefficients appear.
pub fn poly_det(m: &PolyMatrix) -> IntPolynomial {
    let n = m.size;
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut a = m.entries.clone();
    let mut sign = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return IntPolynomial::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Determinant of an integer matrix, via the same fraction-free routine.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let pm = PolyMatrix::new(
        m.iter()
            .map(|r| r.iter().map(|c| IntPolynomial::constant(c.clone())).collect())
            .collect(),
    )
    .expect("square integer matrix");
    poly_det(&pm).constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// Laplace expansion along the first row; independent of Bareiss.
    fn cofactor_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
        let n = m.len();
        if n == 0 {
            return IntPolynomial::one();
        }
        let mut acc = IntPolynomial::zero();
        for j in 0..n {
            let minor: Vec<Vec<IntPolynomial>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1, 0, 1]).to_string(), "1 + x^2 + x^4");
        assert_eq!(p(&[0, -2, 3]).to_string(), "-2x + 3x^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2])), None);
        assert_eq!(p(&[1, 1]).div_exact(&p(&[1, 2, 1])), None);
    }

    #[test]
    fn det_examples() {
        assert!(poly_det(&PolyMatrix::identity(3)).is_one());
        let d = PolyMatrix::new(vec![vec![p(&[1, 1]), p(&[])], vec![p(&[]), p(&[1, 1])]]).unwrap();
        assert_eq!(poly_det(&d), p(&[1, 2, 1]));
        let t = PolyMatrix::new(vec![
            vec![p(&[1, 0, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[1, 0, 1])],
        ])
        .unwrap();
        assert_eq!(poly_det(&t), p(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn zero_pivot_requires_row_swap() {
        let m = PolyMatrix::new(vec![vec![p(&[]), p(&[0, 1])], vec![p(&[1]), p(&[2])]]).unwrap();
        assert_eq!(poly_det(&m), p(&[0, -1]));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            PolyMatrix::new(vec![vec![p(&[1]), p(&[1])]]),
            Err(Error::NotSquare { .. })
        ));
    }

    fn poly_matrix() -> impl Strategy<Value = Vec<Vec<IntPolynomial>>> {
        (1usize..=4).prop_flat_map(|n| {
            proptest::collection::vec(
                proptest::collection::vec(
                    proptest::collection::vec(-3i64..=3, 0..=4).prop_map(|c| p(&c)),
                    n,
                ),
                n,
            )
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in poly_matrix()) {
            let pm = PolyMatrix::new(m.clone()).unwrap();
            prop_assert_eq!(poly_det(&pm), cofactor_det(&m));
        }
    }
}
