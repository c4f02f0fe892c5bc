//! Canonical form of a pair `A: V -> W`, `B: W -> V` under
//! `(A, B) ~ (S A T^{-1}, T B S^{-1})`.
//!
//! The Fitting decomposition of `BA` and `AB` separates an invertible part,
//! handled by the generalized Jordan form of `BA`, from a nilpotent part.
//! On the nilpotent part both maps are packed into the single operator
//! `M(v, w) = (B w, A v)` on `V ⊕ W`; a longest nonzero power of `M`
//! yields an alternating chain, and duality against the transposed chain
//! splits it off. Because every vector and functional involved is
//! homogeneous, the complement splits again into a `V` part and a `W` part.

use std::cmp::Reverse;

use crate::duality::split_by_duality;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::jordan::{is_similar_with, jordan_canonical_with, JordanForm};
use crate::linalg::{annihilator, DualVector, Matrix, Subspace};
use crate::poly::FactorOptions;

/// `A` is `m x n`, `B` is `n x m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContraPair {
    a: Matrix,
    b: Matrix,
}

impl ContraPair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        a.field().check(&b.field())?;
        if a.rows() != b.cols() || a.cols() != b.rows() {
            return Err(Error::ShapeMismatch(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(ContraPair { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// Rows of `A`, the dimension of `W`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Columns of `A`, the dimension of `V`.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn ab(&self) -> Matrix {
        &self.a * &self.b
    }

    pub fn ba(&self) -> Matrix {
        &self.b * &self.a
    }
}

/// One summand of the canonical pair. Nilpotent kinds carry the size
/// parameter `s`: the larger of the two local dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContraBlock {
    /// `(I, J)` with `J` the nonsingular part of the Jordan form of `AB`.
    Invertible(JordanForm),
    /// `A_i = (I_{s-1} 0)`, `B_i = (0; I_{s-1})`.
    WideShift(usize),
    /// `A_i = (0; I_{s-1})`, `B_i = (I_{s-1} 0)`.
    TallShift(usize),
    /// `(I_s, J_s)`.
    IdentityNilpotent(usize),
    /// `(J_s, I_s)`.
    NilpotentIdentity(usize),
    /// Zero maps on the leftover dimensions.
    Zero { v_dim: usize, w_dim: usize },
}

impl ContraBlock {
    pub fn kind(&self) -> &'static str {
        match self {
            ContraBlock::Invertible(_) => "Invertible",
            ContraBlock::WideShift(_) => "WideShift",
            ContraBlock::TallShift(_) => "TallShift",
            ContraBlock::IdentityNilpotent(_) => "IdentityNilpotent",
            ContraBlock::NilpotentIdentity(_) => "NilpotentIdentity",
            ContraBlock::Zero { .. } => "Zero",
        }
    }

    fn kind_rank(&self) -> usize {
        match self {
            ContraBlock::Invertible(_) => 0,
            ContraBlock::WideShift(_) => 1,
            ContraBlock::TallShift(_) => 2,
            ContraBlock::IdentityNilpotent(_) => 3,
            ContraBlock::NilpotentIdentity(_) => 4,
            ContraBlock::Zero { .. } => 5,
        }
    }

    /// Size parameter of a nilpotent kind, total dimension otherwise.
    pub fn size(&self) -> usize {
        match self {
            ContraBlock::Invertible(j) => j.total_dim(),
            ContraBlock::WideShift(s)
            | ContraBlock::TallShift(s)
            | ContraBlock::IdentityNilpotent(s)
            | ContraBlock::NilpotentIdentity(s) => *s,
            ContraBlock::Zero { v_dim, w_dim } => v_dim + w_dim,
        }
    }

    /// `(rows, cols)` of `A_i`, that is `(dim W_i, dim V_i)`.
    pub fn a_shape(&self) -> (usize, usize) {
        match self {
            ContraBlock::Invertible(j) => (j.total_dim(), j.total_dim()),
            ContraBlock::WideShift(s) => (s - 1, *s),
            ContraBlock::TallShift(s) => (*s, s - 1),
            ContraBlock::IdentityNilpotent(s) | ContraBlock::NilpotentIdentity(s) => (*s, *s),
            ContraBlock::Zero { v_dim, w_dim } => (*w_dim, *v_dim),
        }
    }

    pub fn a_matrix(&self, field: Field) -> Matrix {
        let (rows, cols) = self.a_shape();
        match self {
            ContraBlock::Invertible(_) | ContraBlock::IdentityNilpotent(_) => Matrix::identity(field, rows),
            ContraBlock::WideShift(_) => shifted_identity(field, rows, cols, 0),
            ContraBlock::TallShift(_) | ContraBlock::NilpotentIdentity(_) => shifted_identity(field, rows, cols, 1),
            ContraBlock::Zero { .. } => Matrix::zeros(field, rows, cols),
        }
    }

    pub fn b_matrix(&self, field: Field) -> Matrix {
        let (cols, rows) = self.a_shape();
        match self {
            ContraBlock::Invertible(j) => j.matrix(),
            ContraBlock::NilpotentIdentity(_) => Matrix::identity(field, rows),
            ContraBlock::TallShift(_) => shifted_identity(field, rows, cols, 0),
            ContraBlock::WideShift(_) | ContraBlock::IdentityNilpotent(_) => shifted_identity(field, rows, cols, 1),
            ContraBlock::Zero { .. } => Matrix::zeros(field, rows, cols),
        }
    }
}

/// Ones at `(i + offset, i)`.
fn shifted_identity(field: Field, rows: usize, cols: usize, offset: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..cols.min(rows.saturating_sub(offset)) {
        m[(i + offset, i)] = field.one();
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContraReport {
    pub blocks: Vec<ContraBlock>,
    pub canonical_a: Matrix,
    pub canonical_b: Matrix,
    /// `m x m`, columns are the new basis of `W`.
    pub s: Matrix,
    /// `n x n`, columns are the new basis of `V`.
    pub t: Matrix,
}

/// Ranks of the alternating products ending in `A` (`A, BA, ABA, ...`) and
/// ending in `B` (`B, AB, BAB, ...`), for lengths `1..=2t`, `t = min(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankProfile {
    pub t: usize,
    pub a_chain: Vec<usize>,
    pub b_chain: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingDecomposition {
    pub v1: Subspace,
    pub v2: Subspace,
    pub w1: Subspace,
    pub w2: Subspace,
    pub r: usize,
}

fn stabilization_index(c: &Matrix) -> usize {
    let mut rank = c.rows();
    let mut power = Matrix::identity(c.field(), c.rows());
    let mut r = 0;
    loop {
        power = &power * c;
        let next = power.rank();
        if next == rank {
            return r;
        }
        rank = next;
        r += 1;
    }
}

/// `V = range (BA)^r ⊕ ker (BA)^r`, `W = range (AB)^r ⊕ ker (AB)^r`, where
/// `r` stabilizes the ranks of both `BA` and `AB`.
pub fn fitting_decomposition(p: &ContraPair) -> Result<FittingDecomposition> {
    let (ba, ab) = (p.ba(), p.ab());
    let r = stabilization_index(&ba).max(stabilization_index(&ab));
    let (ba_r, ab_r) = (ba.pow(r)?, ab.pow(r)?);
    let fit = FittingDecomposition {
        v1: ba_r.range_basis(),
        v2: ba_r.kernel_basis(),
        w1: ab_r.range_basis(),
        w2: ab_r.kernel_basis(),
        r,
    };
    let maps_into = |m: &Matrix, from: &Subspace, to: &Subspace| to.contains(&(m * from.basis()));
    if !(maps_into(p.a(), &fit.v1, &fit.w1)
        && maps_into(p.a(), &fit.v2, &fit.w2)
        && maps_into(p.b(), &fit.w1, &fit.v1)
        && maps_into(p.b(), &fit.w2, &fit.v2)
        && fit.v1.dim() == fit.w1.dim()
        && fit.v1.is_independent_of(&fit.v2)
        && fit.w1.is_independent_of(&fit.w2)
        && fit.v1.dim() + fit.v2.dim() == p.n()
        && fit.w1.dim() + fit.w2.dim() == p.m())
    {
        return Err(Error::internal("Fitting decomposition failed to verify"));
    }
    Ok(fit)
}

/// Ordered bases of `V_1` and `W_1` on which `A = I` and `B` is in
/// generalized Jordan form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertiblePart {
    /// `None` when `V_1 = 0`.
    pub form: Option<JordanForm>,
    pub v_basis: Matrix,
    pub w_basis: Matrix,
}

pub fn invertible_part(p: &ContraPair, fit: &FittingDecomposition, opts: &FactorOptions) -> Result<InvertiblePart> {
    let v1 = fit.v1.basis();
    let local = p.ba().restrict_to_basis(v1)?;
    let report = jordan_canonical_with(&local, opts)?;
    let v_basis = v1 * &report.transform;
    let w_basis = p.a() * &v_basis;
    if !Subspace::from_matrix(&w_basis).eq(&fit.w1) {
        return Err(Error::internal("A does not map V1 onto W1"));
    }
    if report.form.blocks().iter().any(|b| b.is_nilpotent()) {
        return Err(Error::internal("invertible part has a nilpotent block"));
    }
    let form = (v1.cols() > 0).then_some(report.form);
    Ok(InvertiblePart { form, v_basis, w_basis })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
}

/// A longest nonzero alternating product and a vector it does not kill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestChain {
    /// Number of letters; 0 when both maps are zero.
    pub length: usize,
    /// The rightmost letter, applied first.
    pub ends_in: Letter,
    /// A standard coordinate vector of `V ⊕ W` (with `V` first).
    pub x: Matrix,
}

/// `M(v, w) = (B w, A v)` on `V ⊕ W`.
fn combined_operator(a: &Matrix, b: &Matrix) -> Matrix {
    let (m, n) = (a.rows(), a.cols());
    let field = a.field();
    let top = Matrix::zeros(field, n, n).hstack(b);
    let bottom = a.hstack(&Matrix::zeros(field, m, m));
    top.vstack(&bottom)
}

/// On a pair whose `BA` and `AB` are nilpotent.
pub fn longest_chain(a: &Matrix, b: &Matrix) -> Result<LongestChain> {
    let pair = ContraPair::new(a.clone(), b.clone())?;
    let n = pair.n();
    let big = combined_operator(a, b);
    let dim = big.rows();
    let mut power = Matrix::identity(a.field(), dim);
    let mut length = 0;
    loop {
        let next = &power * &big;
        if next.is_zero() {
            break;
        }
        power = next;
        length += 1;
        if length > dim {
            return Err(Error::internal("alternating products are not nilpotent"));
        }
    }
    let j = (0..dim)
        .find(|&j| power.column(j).iter().any(|e| !e.is_zero()))
        .unwrap_or(0);
    let mut x = Matrix::zeros(a.field(), dim, 1);
    if dim > 0 {
        x[(j, 0)] = a.field().one();
    }
    let ends_in = if j < n { Letter::A } else { Letter::B };
    Ok(LongestChain { length, ends_in, x })
}

/// A nilpotent block split off a nilpotent pair, in local coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentSplit {
    pub block: ContraBlock,
    /// Chain vectors lying in `V`, in chain order.
    pub v3: Matrix,
    /// Chain vectors lying in `W`, in chain order.
    pub w3: Matrix,
    pub v4: Subspace,
    pub w4: Subspace,
}

pub fn split_nilpotent(a: &Matrix, b: &Matrix, chain: &LongestChain) -> Result<NilpotentSplit> {
    let field = a.field();
    let (m, n) = (a.rows(), a.cols());
    let l = chain.length;
    if l == 0 {
        return Err(Error::internal("no nonzero alternating product to split"));
    }
    let big = combined_operator(a, b);
    let mut s_cols = vec![chain.x.clone()];
    for i in 1..=l {
        s_cols.push(&big * &s_cols[i - 1]);
    }
    let top = &s_cols[l];
    let c = (0..n + m)
        .find(|&c| !top[(c, 0)].is_zero())
        .ok_or_else(|| Error::internal("chain end is zero"))?;
    // t_j = y' M^(l-j); pairs with s_i to zero for i > j and nonzero for i = j.
    let mut t = vec![DualVector::coordinate(field, n + m, c)];
    for _ in 0..l {
        let prev = t.last().expect("nonempty").apply_adjoint(&big);
        t.push(prev);
    }
    t.reverse();
    let s_basis = s_cols
        .iter()
        .fold(Matrix::zeros(field, n + m, 0), |acc, col| acc.hstack(col));
    let split = split_by_duality(&big, &s_basis, &t).map_err(|e| match e {
        Error::DegeneratePairing => Error::internal("chain pairing is degenerate"),
        other => other,
    })?;

    let in_v = |col: &Matrix| (n..n + m).all(|i| col[(i, 0)].is_zero());
    let part = |col: &Matrix, range: std::ops::Range<usize>| {
        let entries = range.map(|i| col[(i, 0)].clone()).collect::<Vec<_>>();
        Matrix::new(field, entries.len(), 1, entries).expect("same field")
    };
    let mut v3 = Matrix::zeros(field, n, 0);
    let mut w3 = Matrix::zeros(field, m, 0);
    for col in &s_cols {
        if in_v(col) {
            v3 = v3.hstack(&part(col, 0..n));
        } else {
            w3 = w3.hstack(&part(col, n..n + m));
        }
    }
    let mut v_funcs = Vec::new();
    let mut w_funcs = Vec::new();
    for f in &t {
        let row = f.row();
        let v_side: Vec<_> = (0..n).map(|i| row[(0, i)].clone()).collect();
        let w_side: Vec<_> = (n..n + m).map(|i| row[(0, i)].clone()).collect();
        match (v_side.iter().all(|e| e.is_zero()), w_side.iter().all(|e| e.is_zero())) {
            (false, true) => v_funcs.push(DualVector::from_scalars(field, v_side)),
            (true, false) => w_funcs.push(DualVector::from_scalars(field, w_side)),
            _ => return Err(Error::internal("dual chain functional is not homogeneous")),
        }
    }
    let v4 = annihilator(field, n, &v_funcs);
    let w4 = annihilator(field, m, &w_funcs);
    let graded = Matrix::block_diag(field, &[v4.basis().clone(), w4.basis().clone()]);
    if Subspace::from_matrix(&graded) != split.complement {
        return Err(Error::internal("complement does not split into V and W parts"));
    }

    let block = match (l % 2, chain.ends_in) {
        (0, Letter::A) => ContraBlock::WideShift(1 + l / 2),
        (0, Letter::B) => ContraBlock::TallShift(1 + l / 2),
        (_, Letter::A) => ContraBlock::IdentityNilpotent(l.div_ceil(2)),
        (_, Letter::B) => ContraBlock::NilpotentIdentity(l.div_ceil(2)),
    };
    Ok(NilpotentSplit { block, v3, w3, v4, w4 })
}

pub fn contragredient_canonical(p: &ContraPair) -> Result<ContraReport> {
    contragredient_canonical_with(p, &FactorOptions::default())
}

pub fn contragredient_canonical_with(p: &ContraPair, opts: &FactorOptions) -> Result<ContraReport> {
    let field = p.field();
    let fit = fitting_decomposition(p)?;
    // (block, V-side basis, W-side basis), all in ambient coordinates.
    let mut pieces: Vec<(ContraBlock, Matrix, Matrix)> = Vec::new();
    let inv = invertible_part(p, &fit, opts)?;
    if let Some(form) = inv.form {
        pieces.push((ContraBlock::Invertible(form), inv.v_basis, inv.w_basis));
    }

    let mut vb = fit.v2.basis().clone();
    let mut wb = fit.w2.basis().clone();
    let mut nilpotent = Vec::new();
    loop {
        let a_loc = wb
            .solve(&(p.a() * &vb))
            .map_err(|_| Error::internal("A does not preserve the nilpotent part"))?;
        let b_loc = vb
            .solve(&(p.b() * &wb))
            .map_err(|_| Error::internal("B does not preserve the nilpotent part"))?;
        if a_loc.is_zero() && b_loc.is_zero() {
            break;
        }
        let chain = longest_chain(&a_loc, &b_loc)?;
        let sp = split_nilpotent(&a_loc, &b_loc, &chain)?;
        nilpotent.push((sp.block, &vb * &sp.v3, &wb * &sp.w3));
        vb = &vb * sp.v4.basis();
        wb = &wb * sp.w4.basis();
    }
    nilpotent.sort_by_key(|(blk, _, _)| (blk.kind_rank(), Reverse(blk.size())));
    pieces.extend(nilpotent);
    if vb.cols() + wb.cols() > 0 {
        pieces.push((
            ContraBlock::Zero {
                v_dim: vb.cols(),
                w_dim: wb.cols(),
            },
            vb,
            wb,
        ));
    }

    let t = pieces
        .iter()
        .fold(Matrix::zeros(field, p.n(), 0), |acc, (_, v, _)| acc.hstack(v));
    let s = pieces
        .iter()
        .fold(Matrix::zeros(field, p.m(), 0), |acc, (_, _, w)| acc.hstack(w));
    let blocks: Vec<ContraBlock> = pieces.into_iter().map(|(b, _, _)| b).collect();
    let (canonical_a, canonical_b) = assemble_pair(&blocks, field);
    if !s.is_invertible()
        || !t.is_invertible()
        || (p.a() * &t) != (&s * &canonical_a)
        || (p.b() * &s) != (&t * &canonical_b)
    {
        return Err(Error::internal("contragredient certificate failed to verify"));
    }
    Ok(ContraReport {
        blocks,
        canonical_a,
        canonical_b,
        s,
        t,
    })
}

/// Block-diagonal `(A, B)` for the given blocks, in the given order.
pub fn assemble_pair(blocks: &[ContraBlock], field: Field) -> (Matrix, Matrix) {
    let a: Vec<Matrix> = blocks.iter().map(|b| b.a_matrix(field)).collect();
    let b: Vec<Matrix> = blocks.iter().map(|b| b.b_matrix(field)).collect();
    (Matrix::block_diag(field, &a), Matrix::block_diag(field, &b))
}

pub fn rank_profile(p: &ContraPair) -> RankProfile {
    let t = p.m().min(p.n());
    let chain = |first: &Matrix, second: &Matrix| {
        let mut out = Vec::with_capacity(2 * t);
        let mut product = first.clone();
        for k in 0..2 * t {
            if k > 0 {
                product = (if k % 2 == 0 { first } else { second }) * &product;
            }
            out.push(product.rank());
        }
        out
    };
    RankProfile {
        t,
        a_chain: chain(p.a(), p.b()),
        b_chain: chain(p.b(), p.a()),
    }
}

pub fn is_contra_equivalent(p: &ContraPair, q: &ContraPair) -> Result<bool> {
    is_contra_equivalent_with(p, q, &FactorOptions::default())
}

/// Equivalence via similarity of `AB` and `CD` together with equal rank profiles.
pub fn is_contra_equivalent_with(p: &ContraPair, q: &ContraPair, opts: &FactorOptions) -> Result<bool> {
    p.field().check(&q.field())?;
    if (p.m(), p.n()) != (q.m(), q.n()) {
        return Ok(false);
    }
    Ok(rank_profile(p) == rank_profile(q) && is_similar_with(&p.ab(), &q.ab(), opts)?)
}
