//! Invariant complements by duality.
//!
//! If `S` is `A`-invariant, `T` is a set of functionals spanning an
//! `A^*`-invariant subspace, and the pairing between `S` and `T` is
//! nondegenerate, then `ann(T)` is an `A`-invariant complement of `S`.
//! Only the square case `|T| = dim S` is supported; there nondegeneracy is
//! exactly invertibility of the Gram matrix.

use crate::error::{Error, Result};
use crate::linalg::{annihilator, stack_functionals, DualVector, Matrix, Subspace};

/// `V = summand ⊕ complement`, both invariant under the splitting map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualitySplit {
    pub summand: Subspace,
    pub complement: Subspace,
    /// `gram[(i, j)] = <s_i, t_j>` in the order the inputs were given.
    pub gram: Matrix,
}

impl DualitySplit {
    /// Summand basis followed by complement basis; invertible by construction.
    pub fn direct_sum_certificate(&self) -> Matrix {
        self.summand.basis().hstack(self.complement.basis())
    }
}

/// Splits `V = span(s_basis) ⊕ ann(t)`.
///
/// `s_basis` holds the summand's basis as columns, in the order used for
/// the Gram matrix.
pub fn split_by_duality(a: &Matrix, s_basis: &Matrix, t: &[DualVector]) -> Result<DualitySplit> {
    let field = a.field();
    let n = a.require_square()?;
    field.check(&s_basis.field())?;
    if s_basis.rows() != n || t.iter().any(|d| d.dim() != n) {
        return Err(Error::ShapeMismatch(
            "subspace and functionals must live on the same space".into(),
        ));
    }
    if s_basis.rank() != s_basis.cols() {
        return Err(Error::ShapeMismatch("summand basis is linearly dependent".into()));
    }
    if t.len() != s_basis.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{} functionals for a {}-dimensional summand",
            t.len(),
            s_basis.cols()
        )));
    }
    let summand = Subspace::from_matrix(s_basis);
    if !summand.is_invariant_under(a) {
        return Err(Error::NotInvariant);
    }
    let stacked = stack_functionals(field, n, t);
    let dual_span = stacked.transpose();
    if dual_span.solve(&(&stacked * a).transpose()).is_err() {
        return Err(Error::NotInvariant);
    }
    let gram = (&stacked * s_basis).transpose();
    if !gram.is_invertible() {
        return Err(Error::DegeneratePairing);
    }
    let complement = annihilator(field, n, t);
    if !complement.is_invariant_under(a) {
        return Err(Error::NotInvariant);
    }
    let split = DualitySplit {
        summand,
        complement,
        gram,
    };
    if !split.direct_sum_certificate().is_invertible() {
        return Err(Error::internal("duality split is not a direct sum"));
    }
    Ok(split)
}
