//! Brute-force verifiers and random instance generators for the test suites.
//!
//! Everything here is deliberately naive: exhaustive enumeration over small
//! finite fields, cofactor expansion, eigenvalue scans. None of it shares
//! code paths with the canonical-form engines beyond basic arithmetic.

use rand::Rng;

use crate::contra::ContraPair;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::poly::Polynomial;

/// Limits on exhaustive enumeration: a finite field and a largest dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_dim: usize,
    pub field: Field,
}

impl EnumerationBudget {
    pub fn new(field: Field, max_dim: usize) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::InfiniteField);
        }
        Ok(EnumerationBudget { max_dim, field })
    }

    /// GF(2), n <= 3.
    pub fn similarity_default() -> Self {
        EnumerationBudget {
            max_dim: 3,
            field: Field::Prime(2),
        }
    }

    /// GF(2), m, n <= 2.
    pub fn contra_default() -> Self {
        EnumerationBudget {
            max_dim: 2,
            field: Field::Prime(2),
        }
    }

    fn admit(&self, field: Field, dims: &[usize]) -> Result<()> {
        self.field.check(&field)?;
        if !field.is_finite() {
            return Err(Error::InfiniteField);
        }
        if dims.iter().any(|&d| d > self.max_dim) {
            return Err(Error::BudgetExceeded);
        }
        Ok(())
    }
}

/// Every `rows x cols` matrix over a prime field, in lexicographic order of
/// the row-major entries.
pub fn all_matrices(field: Field, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let p = field.modulus().ok_or(Error::InfiniteField)?;
    let cells = rows * cols;
    let total = (p as u128)
        .checked_pow(cells as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::BudgetExceeded)?;
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut entries = vec![field.zero(); cells];
        for e in entries.iter_mut().rev() {
            *e = field.element((code % p as u128) as u64);
            code /= p as u128;
        }
        out.push(Matrix::new(field, rows, cols, entries)?);
    }
    Ok(out)
}

/// All invertible `n x n` matrices over a prime field.
pub fn general_linear(field: Field, n: usize) -> Result<Vec<Matrix>> {
    Ok(all_matrices(field, n, n)?
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect())
}

/// Whether `Q A = B Q` for some invertible `Q`.
pub fn similar_by_search(a: &Matrix, b: &Matrix, budget: &EnumerationBudget) -> Result<bool> {
    a.field().check(&b.field())?;
    let n = a.require_square()?;
    if b.require_square()? != n {
        return Ok(false);
    }
    budget.admit(a.field(), &[n])?;
    Ok(general_linear(a.field(), n)?.iter().any(|q| (q * a) == (b * q)))
}

/// Whether `A T = S C` and `B S = T D` for some invertible `S`, `T`.
pub fn contra_equiv_by_search(p: &ContraPair, q: &ContraPair, budget: &EnumerationBudget) -> Result<bool> {
    p.field().check(&q.field())?;
    if (p.m(), p.n()) != (q.m(), q.n()) {
        return Ok(false);
    }
    budget.admit(p.field(), &[p.m(), p.n()])?;
    let gl_m = general_linear(p.field(), p.m())?;
    let gl_n = general_linear(p.field(), p.n())?;
    Ok(gl_m.iter().any(|s| {
        gl_n.iter()
            .any(|t| (p.a() * t) == (s * q.a()) && (p.b() * s) == (t * q.b()))
    }))
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn irreducible_by_trial(f: &Polynomial) -> Result<bool> {
    let field = f.field();
    let p = field.modulus().ok_or(Error::InfiniteField)?;
    let deg = f.degree().ok_or(Error::ConstantPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if deg > 6 {
        return Err(Error::BudgetExceeded);
    }
    for d in 1..=deg / 2 {
        let count = p.checked_pow(d as u32).ok_or(Error::BudgetExceeded)?;
        for mut code in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(field.element(code % p));
                code /= p;
            }
            coeffs.push(field.one());
            let g = Polynomial::new(field, coeffs)?;
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A uniformly random scalar over GF(p); an integer in `[-5, 5]` over Q.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    match field.modulus() {
        Some(p) => field.element(rng.random_range(0..p)),
        None => field.from_i64(rng.random_range(-5..=5)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    Matrix::new(field, rows, cols, entries).expect("entries share the field")
}

/// Rejection-sampled invertible matrix.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let q = random_matrix(rng, field, n, n);
        if q.inverse().is_ok() {
            return q;
        }
    }
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, field: Field, m: usize, n: usize) -> ContraPair {
    let a = random_matrix(rng, field, m, n);
    let b = random_matrix(rng, field, n, m);
    ContraPair::new(a, b).expect("shapes are compatible")
}

/// `(S A T^{-1}, T B S^{-1})`.
pub fn conjugate_pair(p: &ContraPair, s: &Matrix, t: &Matrix) -> ContraPair {
    let s_inv = s.inverse().expect("S invertible");
    let t_inv = t.inverse().expect("T invertible");
    ContraPair::new(&(s * p.a()) * &t_inv, &(t * p.b()) * &s_inv).expect("shapes are compatible")
}

/// Random monic polynomial of the given degree.
pub fn random_monic<R: Rng + ?Sized>(rng: &mut R, field: Field, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Scalar> = (0..degree).map(|_| random_scalar(rng, field)).collect();
    coeffs.push(field.one());
    Polynomial::new(field, coeffs).expect("coefficients share the field")
}

/// `det(xI - A)` by cofactor expansion along the first row.
pub fn characteristic_polynomial(a: &Matrix) -> Polynomial {
    let n = a.rows();
    let field = a.field();
    let x = Polynomial::x(field);
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::constant(-&a[(i, j)]);
                    if i == j {
                        &x + &c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    cofactor_det(field, &entries, 0, &cols)
}

fn cofactor_det(field: Field, m: &[Vec<Polynomial>], row: usize, cols: &[usize]) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(field);
    }
    let mut acc = Polynomial::zero(field);
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
        let term = &m[row][c] * &cofactor_det(field, m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Classical Jordan structure over GF(p): `(eigenvalue, block size)` pairs,
/// sorted by eigenvalue then descending size, from the ranks of
/// `(A - λI)^j`. `None` if some eigenvalue lies outside the field.
pub fn classical_jordan(a: &Matrix) -> Result<Option<Vec<(u64, usize)>>> {
    let n = a.require_square()?;
    let field = a.field();
    let p = field.modulus().ok_or(Error::InfiniteField)?;
    let mut blocks = Vec::new();
    for lambda in 0..p {
        let shifted = a - &Matrix::identity(field, n).scale(&field.element(lambda));
        let mut ranks = vec![n];
        let mut power = Matrix::identity(field, n);
        loop {
            power = &power * &shifted;
            let r = power.rank();
            let stable = r == *ranks.last().expect("nonempty");
            ranks.push(r);
            if stable {
                break;
            }
        }
        ranks.push(*ranks.last().expect("nonempty"));
        let mut found = Vec::new();
        for j in 1..ranks.len() - 1 {
            let count = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
            found.extend(std::iter::repeat_n((lambda, j), count));
        }
        found.reverse();
        blocks.extend(found);
    }
    if blocks.iter().map(|&(_, s)| s).sum::<usize>() != n {
        return Ok(None);
    }
    Ok(Some(blocks))
}
