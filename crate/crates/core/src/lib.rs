//! Exact canonical forms over the rationals and prime fields.
//!
//! Two constructions are provided, each with a change-of-basis certificate
//! that is checked before it is returned:
//!
//! * [`jordan_canonical`]: the generalized Jordan form of a square matrix,
//!   built from companion matrices of the irreducible factors of the
//!   minimal polynomial. It coincides with the classical Jordan form when
//!   every factor is linear.
//! * [`contragredient_canonical`]: the canonical form of a pair
//!   `A: F^n -> F^m`, `B: F^m -> F^n` under `(A, B) -> (S A T^{-1}, T B S^{-1})`.
//!
//! Both rely on one device: an invariant complement of an invariant
//! subspace is obtained as the annihilator of a suitable set of
//! functionals ([`split_by_duality`]).
//!
//! ```
//! use canform::{jordan_canonical, Field, Matrix};
//!
//! let a = Matrix::from_i64s(Field::Rationals, 2, 2, &[0, -1, 1, 0]);
//! let report = jordan_canonical(&a).unwrap();
//! assert_eq!(report.form.blocks().len(), 1);
//! assert_eq!(report.form.blocks()[0].prime.to_string(), "x^2 + 1");
//! ```

pub mod contra;
pub mod duality;
pub mod error;
pub mod field;
pub mod format;
pub mod jordan;
pub mod linalg;
pub mod poly;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use contra::{
    contragredient_canonical, contragredient_canonical_with, is_contra_equivalent, is_contra_equivalent_with,
    rank_profile, ContraBlock, ContraPair, ContraReport, RankProfile,
};
pub use duality::{split_by_duality, DualitySplit};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use format::{parse_field, parse_matrix, render_matrix};
pub use jordan::{
    block_multiplicities_by_kernels, is_similar, is_similar_with, jordan_canonical, jordan_canonical_with,
    GeneralizedJordanBlock, JordanForm, JordanReport,
};
pub use linalg::{annihilator, DualVector, Matrix, Subspace};
pub use poly::{factor, factor_with, FactorOptions, Polynomial, PrimePowerFactorization};
