use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::Matrix;

/// A subspace of `F^n`, stored as the columns of a matrix in reduced column
/// echelon form. Equal subspaces therefore have equal stored bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// The column span of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let echelon = m.transpose().echelon();
        let rank = echelon.pivots.len();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|i| echelon.reduced.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: m.rows(),
            basis: Matrix::from_columns(m.field(), m.rows(), &rows),
        }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::zeros(field, n, 0),
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::identity(field, n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, vectors: &Matrix) -> bool {
        self.basis.solve(vectors).is_ok()
    }

    /// `a * self ⊆ self`.
    pub fn is_invariant_under(&self, a: &Matrix) -> bool {
        self.contains(&(a * &self.basis))
    }

    /// `self ∩ other = {0}`.
    pub fn is_independent_of(&self, other: &Subspace) -> bool {
        self.basis.hstack(&other.basis).rank() == self.dim() + other.dim()
    }
}

/// A linear functional on `F^n`, stored as a `1 x n` row. The pairing is
/// the matrix product `row * v`; the adjoint of `A` acts by `row * A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualVector {
    row: Matrix,
}

impl DualVector {
    pub fn new(row: Matrix) -> Result<Self> {
        if row.rows() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "functional must be one row, got {}",
                row.rows()
            )));
        }
        Ok(DualVector { row })
    }

    pub fn from_scalars(field: Field, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        DualVector {
            row: Matrix::new(field, 1, n, entries).expect("entries share the field"),
        }
    }

    /// The coordinate functional `e_i^*`.
    pub fn coordinate(field: Field, n: usize, i: usize) -> Self {
        let mut row = Matrix::zeros(field, 1, n);
        row[(0, i)] = field.one();
        DualVector { row }
    }

    pub fn row(&self) -> &Matrix {
        &self.row
    }

    pub fn dim(&self) -> usize {
        self.row.cols()
    }

    /// `<v, self>` for a column vector `v` (`n x 1`).
    pub fn pair(&self, v: &Matrix) -> Scalar {
        (&self.row * v)[(0, 0)].clone()
    }

    /// The adjoint action `A^* t = t * A`.
    pub fn apply_adjoint(&self, a: &Matrix) -> Self {
        DualVector { row: &self.row * a }
    }
}

/// Stacks functionals as the rows of one matrix.
pub(crate) fn stack(field: Field, n: usize, t: &[DualVector]) -> Matrix {
    t.iter().fold(Matrix::zeros(field, 0, n), |acc, d| acc.vstack(d.row()))
}

/// `{v : <v, t> = 0 for all t in T}`.
pub fn annihilator(field: Field, ambient_dim: usize, t: &[DualVector]) -> Subspace {
    stack(field, ambient_dim, t).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn canonical_basis_is_unique() {
        let a = Subspace::from_matrix(&Matrix::from_i64s(Q, 3, 2, &[1, 2, 1, 0, 0, 3]));
        let b = Subspace::from_matrix(&Matrix::from_i64s(Q, 3, 2, &[3, 1, 1, 1, 3, 0]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn annihilator_examples() {
        let e1 = DualVector::coordinate(Q, 2, 0);
        let ann = annihilator(Q, 2, std::slice::from_ref(&e1));
        assert_eq!(ann.basis(), &Matrix::from_i64s(Q, 2, 1, &[0, 1]));
        assert_eq!(annihilator(Q, 2, &[]), Subspace::full(Q, 2));
        assert_eq!(annihilator(Q, 2, &[e1, DualVector::coordinate(Q, 2, 1)]).dim(), 0);
    }

    #[test]
    fn annihilator_dimension() {
        let t = vec![
            DualVector::from_scalars(Q, vec![Q.from_i64(1), Q.from_i64(2), Q.from_i64(0)]),
            DualVector::from_scalars(Q, vec![Q.from_i64(2), Q.from_i64(4), Q.from_i64(0)]),
        ];
        assert_eq!(annihilator(Q, 3, &t).dim(), 3 - stack(Q, 3, &t).rank());
    }

    #[test]
    fn adjoint_pairing() {
        let a = Matrix::from_i64s(Q, 2, 2, &[1, 2, 3, 4]);
        let t = DualVector::from_scalars(Q, vec![Q.from_i64(5), Q.from_i64(-1)]);
        let v = Matrix::from_i64s(Q, 2, 1, &[2, 7]);
        assert_eq!(t.apply_adjoint(&a).pair(&v), t.pair(&(&a * &v)));
    }
}
