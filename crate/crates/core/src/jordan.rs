//! Generalized Jordan normal form over an arbitrary supported field.
//!
//! The space is first split into primary components `ker f_i(A)^{k_i}`
//! using Bezout projectors. Each component is then peeled one
//! indecomposable block at a time: a cyclic vector `v` and a dual vector
//! `v'` generate a chain and a dual chain whose pairing is triangular, and
//! the annihilator of the dual chain is an invariant complement on which
//! the process repeats.
//!
//! Block layout for a prime `f = x^d - a_1 x^{d-1} - ... - a_d` with power
//! `k`: `k` copies of the companion matrix `C` on the diagonal (ones on the
//! first subdiagonal, last column `(a_d, ..., a_1)`), linked by `d x d`
//! cells below the diagonal carrying a single 1 in their top-right corner.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::duality::{split_by_duality, DualitySplit};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{DualVector, Matrix, Subspace};
use crate::poly::{bezout_multi, factor_with, FactorOptions, Polynomial};

/// One block `prime^power` of the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedJordanBlock {
    pub prime: Polynomial,
    pub power: usize,
}

impl GeneralizedJordanBlock {
    pub fn new(prime: Polynomial, power: usize) -> Self {
        debug_assert!(prime.is_monic() && prime.degree().unwrap_or(0) > 0 && power > 0);
        GeneralizedJordanBlock { prime, power }
    }

    pub fn degree(&self) -> usize {
        self.prime.degree().expect("prime is nonzero")
    }

    pub fn size(&self) -> usize {
        self.degree() * self.power
    }

    /// `(a_1, ..., a_d)` with `prime = x^d - a_1 x^{d-1} - ... - a_d`.
    pub fn companion_coefficients(&self) -> Vec<Scalar> {
        let d = self.degree();
        (1..=d).map(|j| -&self.prime.coeff(d - j)).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.prime == Polynomial::x(self.prime.field())
    }

    /// Canonical order: prime degree, prime coefficients, then descending power.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.prime
            .cmp_canonical(&other.prime)
            .then(other.power.cmp(&self.power))
    }

    pub fn matrix(&self) -> Matrix {
        let field = self.prime.field();
        let d = self.degree();
        let mut m = Matrix::zeros(field, self.size(), self.size());
        for cell in 0..self.power {
            let o = cell * d;
            for i in 1..d {
                m[(o + i, o + i - 1)] = field.one();
            }
            for i in 0..d {
                m[(o + i, o + d - 1)] = -&self.prime.coeff(i);
            }
            if cell + 1 < self.power {
                m[(o + d, o + d - 1)] = field.one();
            }
        }
        m
    }
}

/// Multiset of blocks, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanForm {
    field: Field,
    blocks: Vec<GeneralizedJordanBlock>,
}

impl JordanForm {
    pub fn new(field: Field, mut blocks: Vec<GeneralizedJordanBlock>) -> Self {
        blocks.sort_by(GeneralizedJordanBlock::cmp_canonical);
        JordanForm { field, blocks }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn blocks(&self) -> &[GeneralizedJordanBlock] {
        &self.blocks
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(GeneralizedJordanBlock::size).sum()
    }

    pub fn matrix(&self) -> Matrix {
        assemble_form(&self.blocks, self.field)
    }

    /// Blocks whose prime is not `x`.
    pub fn nonsingular_part(&self) -> JordanForm {
        JordanForm {
            field: self.field,
            blocks: self.blocks.iter().filter(|b| !b.is_nilpotent()).cloned().collect(),
        }
    }

    pub fn nilpotent_part(&self) -> JordanForm {
        JordanForm {
            field: self.field,
            blocks: self.blocks.iter().filter(|b| b.is_nilpotent()).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanReport {
    pub form: JordanForm,
    pub form_matrix: Matrix,
    /// Columns are the new basis: `transform^{-1} * A * transform = form_matrix`.
    pub transform: Matrix,
}

/// `ker f_i(A)^{k_i}` together with its prime and exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub prime: Polynomial,
    pub power: usize,
    pub component: Subspace,
}

/// Block-diagonal assembly of the given blocks, in the given order.
pub fn assemble_form(blocks: &[GeneralizedJordanBlock], field: Field) -> Matrix {
    let mats: Vec<Matrix> = blocks.iter().map(GeneralizedJordanBlock::matrix).collect();
    Matrix::block_diag(field, &mats)
}

pub fn primary_decomposition(a: &Matrix) -> Result<Vec<PrimaryComponent>> {
    primary_decomposition_with(a, &FactorOptions::default())
}

/// Splits `F^n` into the primary components of `A`. Each component is the
/// range of the projector `h_i(A) g_i(A)` and is checked against the
/// kernel characterization.
pub fn primary_decomposition_with(a: &Matrix, opts: &FactorOptions) -> Result<Vec<PrimaryComponent>> {
    let n = a.require_square()?;
    let minpoly = a.minimal_polynomial()?;
    if minpoly.is_one() {
        return Ok(Vec::new());
    }
    let factors = factor_with(&minpoly, opts)?.factors;
    let cofactors: Vec<Polynomial> = factors.iter().map(|(f, k)| minpoly.exact_div(&f.pow(*k))).collect();
    let cert = bezout_multi(&cofactors)?;
    let mut out = Vec::with_capacity(factors.len());
    for (((prime, power), g), h) in factors.into_iter().zip(&cofactors).zip(&cert.cofactors) {
        let projector = (h * g).eval_at_matrix(a)?;
        let component = projector.range_basis();
        let kernel = prime.pow(power).eval_at_matrix(a)?.kernel_basis();
        if component != kernel {
            return Err(Error::internal("projector range differs from primary kernel"));
        }
        out.push(PrimaryComponent {
            prime,
            power,
            component,
        });
    }
    let all = out
        .iter()
        .fold(Matrix::zeros(a.field(), n, 0), |acc, c| acc.hstack(c.component.basis()));
    if all.cols() != n || all.rank() != n {
        return Err(Error::internal("primary components do not form a direct sum"));
    }
    Ok(out)
}

/// Powers `f(A)^0..f(A)^{k-1}` and `A^0..A^{d-1}`.
struct ChainOperators {
    f_powers: Vec<Matrix>,
    a_powers: Vec<Matrix>,
}

impl ChainOperators {
    fn new(a: &Matrix, prime: &Polynomial, k: usize) -> Result<Self> {
        let n = a.require_square()?;
        let d = prime.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
        if k == 0 {
            return Err(Error::internal("block power must be positive"));
        }
        let f_a = prime.eval_at_matrix(a)?;
        let mut f_powers = vec![Matrix::identity(a.field(), n)];
        for i in 1..k {
            f_powers.push(&f_powers[i - 1] * &f_a);
        }
        let mut a_powers = vec![Matrix::identity(a.field(), n)];
        for j in 1..d {
            a_powers.push(&a_powers[j - 1] * a);
        }
        Ok(ChainOperators { f_powers, a_powers })
    }

    fn k(&self) -> usize {
        self.f_powers.len()
    }

    fn d(&self) -> usize {
        self.a_powers.len()
    }

    /// `f(A)^i A^j`.
    fn op(&self, i: usize, j: usize) -> Matrix {
        &self.f_powers[i] * &self.a_powers[j]
    }
}

/// First standard basis vector `v` with `f(A)^{k-1} A^{d-1} v != 0`.
pub fn cyclic_vector(a: &Matrix, prime: &Polynomial, k: usize) -> Result<Matrix> {
    let ops = ChainOperators::new(a, prime, k)?;
    cyclic_vector_from(a, &ops)
}

fn cyclic_vector_from(a: &Matrix, ops: &ChainOperators) -> Result<Matrix> {
    let w = ops.op(ops.k() - 1, ops.d() - 1);
    let j = (0..w.cols())
        .find(|&j| w.column(j).iter().any(|e| !e.is_zero()))
        .ok_or_else(|| Error::internal("no cyclic vector: power exceeds the local minimal polynomial"))?;
    let mut v = Matrix::zeros(a.field(), a.rows(), 1);
    v[(j, 0)] = a.field().one();
    Ok(v)
}

/// `v'` with `<f(A)^{k-1} A^j v, v'> = 0` for `j < d-1` and `= 1` for `j = d-1`.
pub fn dual_cyclic_vector(a: &Matrix, v: &Matrix, prime: &Polynomial, k: usize) -> Result<DualVector> {
    let ops = ChainOperators::new(a, prime, k)?;
    dual_cyclic_vector_from(a, v, &ops)
}

fn dual_cyclic_vector_from(a: &Matrix, v: &Matrix, ops: &ChainOperators) -> Result<DualVector> {
    let field = a.field();
    let d = ops.d();
    let rows = (0..d).fold(Matrix::zeros(field, 0, a.rows()), |acc, j| {
        acc.vstack(&(&ops.op(ops.k() - 1, j) * v).transpose())
    });
    let mut rhs = Matrix::zeros(field, d, 1);
    rhs[(d - 1, 0)] = field.one();
    let y = rows.solve(&rhs)?;
    DualVector::new(y.transpose())
}

/// `f(A)^{i1} A^{i2} v` for `i1 < k`, `i2 < d`, in lexicographic order.
pub fn chain_basis(a: &Matrix, v: &Matrix, prime: &Polynomial, k: usize) -> Result<Matrix> {
    let ops = ChainOperators::new(a, prime, k)?;
    chain_basis_from(a, v, &ops)
}

fn chain_basis_from(a: &Matrix, v: &Matrix, ops: &ChainOperators) -> Result<Matrix> {
    let mut cols = Vec::with_capacity(ops.k() * ops.d());
    for i1 in 0..ops.k() {
        for i2 in 0..ops.d() {
            cols.push((&ops.op(i1, i2) * v).column(0));
        }
    }
    let chain = Matrix::from_columns(a.field(), a.rows(), &cols);
    if chain.rank() != chain.cols() {
        return Err(Error::internal("chain vectors are linearly dependent"));
    }
    Ok(chain)
}

/// `v' f(A)^{i1} A^{i2}` for `i1 < k`, `i2 < d`, in lexicographic order.
pub fn dual_chain(a: &Matrix, v_dual: &DualVector, prime: &Polynomial, k: usize) -> Result<Vec<DualVector>> {
    let ops = ChainOperators::new(a, prime, k)?;
    let mut out = Vec::with_capacity(ops.k() * ops.d());
    for i1 in 0..ops.k() {
        for i2 in 0..ops.d() {
            out.push(v_dual.apply_adjoint(&ops.op(i1, i2)));
        }
    }
    let stacked = out
        .iter()
        .fold(Matrix::zeros(a.field(), 0, a.rows()), |acc, t| acc.vstack(t.row()));
    if stacked.rank() != out.len() {
        return Err(Error::internal("dual chain is linearly dependent"));
    }
    Ok(out)
}

/// One indecomposable summand of a primary component and its invariant
/// complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSplit {
    /// Chain basis in lexicographic order; `A` acts on it as one block.
    pub chain: Matrix,
    pub rest: Subspace,
    /// The duality split, with its Gram matrix in triangular order.
    pub split: DualitySplit,
}

/// Splits off one block `prime^k`, where `prime^k` must be the minimal
/// polynomial of `a`.
pub fn split_component(a: &Matrix, prime: &Polynomial, k: usize) -> Result<ComponentSplit> {
    let ops = ChainOperators::new(a, prime, k)?;
    let (k, d) = (ops.k(), ops.d());
    let v = cyclic_vector_from(a, &ops)?;
    let v_dual = dual_cyclic_vector_from(a, &v, &ops)?;
    let chain = chain_basis_from(a, &v, &ops)?;
    // Reordered pairing: s_(i1,i2) = f^(i1) A^(d-1-i2) v against
    // t_(j1,j2) = v' f^(k-1-j1) A^(j2), upper unitriangular.
    let mut s_cols = Vec::with_capacity(k * d);
    let mut t = Vec::with_capacity(k * d);
    for i1 in 0..k {
        for i2 in 0..d {
            s_cols.push((&ops.op(i1, d - 1 - i2) * &v).column(0));
            t.push(v_dual.apply_adjoint(&ops.op(k - 1 - i1, i2)));
        }
    }
    let s_basis = Matrix::from_columns(a.field(), a.rows(), &s_cols);
    let split = split_by_duality(a, &s_basis, &t)?;
    Ok(ComponentSplit {
        chain,
        rest: split.complement.clone(),
        split,
    })
}

/// Largest `m` with `prime^m = minpoly`, or an error if `minpoly` is not a
/// pure power of `prime`.
fn exact_power(minpoly: &Polynomial, prime: &Polynomial) -> Result<usize> {
    let mut rest = minpoly.clone();
    let mut m = 0;
    while !rest.is_one() {
        let (q, r) = rest.divmod(prime)?;
        if !r.is_zero() {
            return Err(Error::internal("restricted minimal polynomial is not a prime power"));
        }
        rest = q;
        m += 1;
    }
    Ok(m)
}

pub fn jordan_canonical(a: &Matrix) -> Result<JordanReport> {
    jordan_canonical_with(a, &FactorOptions::default())
}

pub fn jordan_canonical_with(a: &Matrix, opts: &FactorOptions) -> Result<JordanReport> {
    let n = a.require_square()?;
    let field = a.field();
    let mut pieces: Vec<(GeneralizedJordanBlock, Matrix)> = Vec::new();
    for comp in primary_decomposition_with(a, opts)? {
        let mut basis = comp.component.basis().clone();
        while basis.cols() > 0 {
            let local = a.restrict_to_basis(&basis)?;
            // The maximal power may drop as blocks are removed.
            let power = exact_power(&local.minimal_polynomial()?, &comp.prime)?;
            let piece = split_component(&local, &comp.prime, power)?;
            pieces.push((
                GeneralizedJordanBlock::new(comp.prime.clone(), power),
                &basis * &piece.chain,
            ));
            basis = &basis * piece.rest.basis();
        }
    }
    pieces.sort_by(|x, y| x.0.cmp_canonical(&y.0));
    let transform = pieces
        .iter()
        .fold(Matrix::zeros(field, n, 0), |acc, (_, c)| acc.hstack(c));
    let form = JordanForm::new(field, pieces.into_iter().map(|(b, _)| b).collect());
    let form_matrix = form.matrix();
    if !transform.is_invertible() || (a * &transform) != (&transform * &form_matrix) {
        return Err(Error::internal("similarity certificate failed to verify"));
    }
    Ok(JordanReport {
        form,
        form_matrix,
        transform,
    })
}

/// Block counts for `prime` from kernel dimensions `n_j = dim ker prime(A)^j`:
/// blocks of size `j * deg` number `(Δn_{j-1} - Δn_j) / deg`.
pub fn block_multiplicities_by_kernels(a: &Matrix, prime: &Polynomial) -> Result<BTreeMap<usize, usize>> {
    let n = a.require_square()?;
    a.field().check(&prime.field())?;
    let d = prime.degree().filter(|&d| d > 0).ok_or(Error::NotAFactor)?;
    if !prime.is_monic() || !prime.divides(&a.minimal_polynomial()?)? {
        return Err(Error::NotAFactor);
    }
    let f_a = prime.eval_at_matrix(a)?;
    let mut dims = vec![0usize];
    let mut power = Matrix::identity(a.field(), n);
    loop {
        power = &power * &f_a;
        let next = power.kernel_basis().dim();
        let last = *dims.last().expect("nonempty");
        dims.push(next);
        if next == last {
            break;
        }
    }
    let delta: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
    let mut counts = BTreeMap::new();
    for j in 1..delta.len() {
        let diff = delta[j - 1] - delta[j];
        if !diff.is_multiple_of(d) {
            return Err(Error::internal(
                "kernel dimension differences are not multiples of the degree",
            ));
        }
        if diff > 0 {
            counts.insert(j * d, diff / d);
        }
    }
    Ok(counts)
}

pub fn is_similar(a: &Matrix, b: &Matrix) -> Result<bool> {
    is_similar_with(a, b, &FactorOptions::default())
}

/// Similarity by comparison of canonical block multisets.
pub fn is_similar_with(a: &Matrix, b: &Matrix, opts: &FactorOptions) -> Result<bool> {
    a.field().check(&b.field())?;
    a.require_square()?;
    b.require_square()?;
    if a.rows() != b.rows() {
        return Ok(false);
    }
    Ok(jordan_canonical_with(a, opts)?.form == jordan_canonical_with(b, opts)?.form)
}
