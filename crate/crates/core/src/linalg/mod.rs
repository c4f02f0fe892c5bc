//! Exact dense matrices over a [`Field`].
//!
//! Elimination always pivots on the first nonzero entry of a column, so
//! every derived basis is deterministic.

mod subspace;

pub(crate) use subspace::stack as stack_functionals;
pub use subspace::{annihilator, DualVector, Subspace};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Polynomial;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
pub(crate) struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            field.check(&e.field())?;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64s(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            field,
            rows,
            cols,
            entries: entries.iter().map(|&e| field.from_i64(e)).collect(),
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
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

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let cols: Vec<_> = indices.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.field, self.rows, &cols)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row count");
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.field, self.rows, &cols)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Block-diagonal matrix; blocks may be rectangular or empty.
    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Matrix {
            entries: self.entries.iter().map(|e| e * c).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(i, j)] - &(&factor * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Echelon { reduced, pivots } = self.echelon();
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&reduced[(r, free)];
            }
            vectors.push(v);
        }
        Subspace::from_matrix(&Matrix::from_columns(self.field, self.cols, &vectors))
    }

    /// Basis of the column space.
    pub fn range_basis(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// One exact solution `x` of `self * x = b` (free variables set to zero).
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        self.field.check(&b.field)?;
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side has {} rows, expected {}",
                b.rows, self.rows
            )));
        }
        let Echelon { reduced, pivots } = self.hstack(b).echelon();
        if pivots.last().is_some_and(|&c| c >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = reduced[(r, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        if !self.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        self.solve(&Self::identity(self.field, n))
    }

    fn flattened(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    /// Monic annihilating polynomial of least degree: the first linear
    /// dependence in `I, A, A^2, ...` viewed as vectors.
    pub fn minimal_polynomial(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        let mut powers = vec![Self::identity(self.field, n)];
        for k in 0..=n {
            let krylov = Matrix::from_columns(
                self.field,
                n * n,
                &powers[..k].iter().map(Matrix::flattened).collect::<Vec<_>>(),
            );
            let target = Matrix::from_columns(self.field, n * n, &[powers[k].flattened()]);
            if let Ok(c) = krylov.solve(&target) {
                let mut coeffs: Vec<Scalar> = (0..k).map(|i| -&c[(i, 0)]).collect();
                coeffs.push(self.field.one());
                return Ok(Polynomial::from_raw(self.field, coeffs));
            }
            powers.push(&powers[k] * self);
        }
        Err(Error::internal("no annihilating polynomial of degree <= n"))
    }

    /// The matrix of `self` on an invariant subspace, in the coordinates of
    /// the subspace's stored basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Matrix> {
        self.restrict_to_basis(s.basis())
    }

    /// As [`Matrix::restrict`] for an arbitrary ordered basis (full column rank).
    pub fn restrict_to_basis(&self, basis: &Matrix) -> Result<Matrix> {
        self.require_square()?;
        let image = self.checked_mul(basis)?;
        basis.solve(&image).map_err(|e| match e {
            Error::Inconsistent => Error::NotInvariant,
            other => other,
        })
    }

    /// Renders rows of whitespace-separated entries.
    pub fn to_rows_text(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = &out[(i, j)] + &(a * &rhs[(k, j)]);
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        Matrix {
            entries,
            ..self.clone()
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_rows_text() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{characteristic_polynomial, random_matrix};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64s(Q, rows, cols, e)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(Matrix::zeros(Q, 2, 3).rank(), 0);
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = m(2, 2, &[0, 0, 1, 0]).kernel_basis();
        assert_eq!(k.basis(), &m(2, 1, &[0, 1]));
        assert_eq!(m(2, 2, &[1, 1, 0, 1]).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 2).kernel_basis(), Subspace::full(Q, 2));
    }

    #[test]
    fn range_examples() {
        assert_eq!(Matrix::identity(Q, 2).range_basis(), Subspace::full(Q, 2));
        assert_eq!(Matrix::zeros(Q, 2, 2).range_basis().dim(), 0);
        assert_eq!(m(2, 2, &[1, 1, 1, 1]).range_basis().basis(), &m(2, 1, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let b = m(2, 1, &[3, -4]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), b);
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b), Err(Error::Inconsistent));
        let a = m(1, 2, &[1, 1]);
        let x = a.solve(&m(1, 1, &[1])).unwrap();
        assert_eq!(&a * &x, m(1, 1, &[1]));
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(
            Matrix::identity(Q, 2).minimal_polynomial().unwrap(),
            Polynomial::from_i64s(Q, &[-1, 1])
        );
        assert_eq!(
            m(2, 2, &[0, 1, 0, 0]).minimal_polynomial().unwrap(),
            Polynomial::from_i64s(Q, &[0, 0, 1])
        );
        assert_eq!(
            m(2, 2, &[0, -1, 1, 0]).minimal_polynomial().unwrap(),
            Polynomial::from_i64s(Q, &[1, 0, 1])
        );
        assert!(Matrix::zeros(Q, 0, 0).minimal_polynomial().unwrap().is_one());
        assert!(matches!(
            Matrix::zeros(Q, 1, 2).minimal_polynomial(),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn restrict_examples() {
        let a = m(2, 2, &[1, 0, 0, 2]);
        let e1 = Subspace::from_matrix(&m(2, 1, &[1, 0]));
        assert_eq!(a.restrict(&e1).unwrap(), m(1, 1, &[1]));
        assert_eq!(a.restrict(&Subspace::full(Q, 2)).unwrap(), a);
        let n = m(3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
        let ker = n.kernel_basis();
        assert!(n.restrict(&ker).unwrap().is_zero());
        let not_inv = Subspace::from_matrix(&m(2, 1, &[1, 1]));
        assert_eq!(a.restrict(&not_inv), Err(Error::NotInvariant));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::identity(Q, 3).inverse().unwrap(), Matrix::identity(Q, 3));
        assert_eq!(m(2, 2, &[1, 1, 0, 1]).inverse().unwrap(), m(2, 2, &[1, -1, 0, 1]));
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::SingularMatrix));
    }

    fn any_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(7)),
            Just(Q)
        ]
    }

    proptest! {
        #[test]
        fn rank_nullity(field in any_field(), rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
            let a = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), field, rows, cols);
            prop_assert_eq!(a.rank() + a.kernel_basis().dim(), cols);
            prop_assert!((&a * a.kernel_basis().basis()).is_zero());
        }

        #[test]
        fn solve_by_substitution(field in any_field(), n in 1usize..5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, field, n, n + 1);
            let x0 = random_matrix(&mut rng, field, n + 1, 2);
            let b = &a * &x0;
            let x = a.solve(&b).unwrap();
            prop_assert_eq!(&a * &x, b);
        }

        #[test]
        fn minimal_divides_characteristic(field in any_field(), n in 0usize..=5, seed in any::<u64>()) {
            let a = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), field, n, n);
            let minpoly = a.minimal_polynomial().unwrap();
            prop_assert!(minpoly.eval_at_matrix(&a).unwrap().is_zero());
            prop_assert!(minpoly.divides(&characteristic_polynomial(&a)).unwrap());
            // No proper monic divisor of lower degree annihilates: every
            // quotient by a factor leaves a nonzero matrix.
            if let Some(d) = minpoly.degree().filter(|&d| d > 0) {
                for (prime, _) in crate::poly::factor(&minpoly).unwrap().factors {
                    let reduced = minpoly.exact_div(&prime);
                    prop_assert!(reduced.degree().unwrap() < d);
                    prop_assert!(!reduced.eval_at_matrix(&a).unwrap().is_zero());
                }
            }
        }
    }
}
