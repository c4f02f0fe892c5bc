//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored from the constant term upward with no trailing
//! zeros; the zero polynomial has no coefficients.

mod factor;

pub use factor::{factor, factor_with, FactorOptions, PrimePowerFactorization};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Cofactors `h_i` with `sum g_i * h_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub cofactors: Vec<Polynomial>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            field.check(&c.field())?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn x(field: Field) -> Self {
        Self::from_i64s(field, &[0, 1])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_raw(c.field(), vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_raw(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        Self::from_raw(self.field, coeffs)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        Ok(self * other)
    }

    /// Euclidean division: `self = divisor * quotient + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.field.check(&divisor.field)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_raw(self.field, quot), Self::from_raw(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of a division known to be exact.
    pub(crate) fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "division expected to be exact");
        q
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g` the monic gcd and `s*self + t*other = g`.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.field.check(&other.field)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let lc_inv = r0.leading().expect("gcd is nonzero").inv()?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        let base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluates the polynomial at a square matrix with Horner's scheme.
    pub fn eval_at_matrix(&self, a: &Matrix) -> Result<Matrix> {
        self.field.check(&a.field())?;
        let n = a.require_square()?;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                let v = &acc[(i, i)] + c;
                acc[(i, i)] = v;
            }
        }
        Ok(acc)
    }

    /// Total order: degree first, then coefficients from the constant term
    /// upward compared by canonical representative.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.cmp_canonical(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    /// Parses `x^2 - 2/3x + 1` style text, or `poly: c0 c1 c2 ...`.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let text = text.trim();
        if let Some(list) = text.strip_prefix("poly:") {
            let coeffs = list
                .split_whitespace()
                .map(|t| Scalar::parse(t, field))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_raw(field, coeffs));
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(None, "empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = Self::zero(field);
        for term in terms {
            acc = &acc + &parse_term(term, field)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, field: Field) -> Result<Polynomial> {
    let bad = || Error::parse(None, format!("invalid polynomial term `{term}`"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_text, power) = match body.find('x') {
        None => (body, 0),
        Some(pos) => {
            let coeff = body[..pos].trim_end_matches('*');
            let rest = &body[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|p| p.parse::<usize>().ok())
                    .ok_or_else(bad)?
            };
            (coeff, power)
        }
    };
    let mut coeff = if coeff_text.is_empty() {
        if power == 0 {
            return Err(bad());
        }
        field.one()
    } else {
        if coeff_text.starts_with('-') || coeff_text.starts_with('+') {
            return Err(bad());
        }
        Scalar::parse(coeff_text, field)?
    };
    if negative {
        coeff = -&coeff;
    }
    Ok(Polynomial::monomial(coeff, power))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Polynomial::from_raw(self.field, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Polynomial::from_raw(self.field, coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_raw(self.field, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_raw(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Cofactors `h_i` with `sum g_i h_i = 1` by iterated extended Euclid.
/// The identity is checked before returning.
pub fn bezout_multi(g: &[Polynomial]) -> Result<BezoutCertificate> {
    let first = g.first().ok_or(Error::NotCoprime)?;
    let field = first.field();
    for p in g {
        field.check(&p.field())?;
    }
    let mut acc = first.clone();
    let mut cofactors = vec![Polynomial::one(field)];
    for p in &g[1..] {
        if acc.is_zero() && p.is_zero() {
            cofactors.push(Polynomial::zero(field));
            continue;
        }
        let (d, s, t) = acc.extended_gcd(p)?;
        for h in cofactors.iter_mut() {
            *h = &*h * &s;
        }
        cofactors.push(t);
        acc = d;
    }
    if acc.is_zero() {
        return Err(Error::NotCoprime);
    }
    // Normalize a lone nonzero constant (g = [c]).
    let lc_inv = acc.leading().expect("nonzero").inv()?;
    let acc = acc.scale(&lc_inv);
    if !acc.is_one() {
        return Err(Error::NotCoprime);
    }
    let cofactors: Vec<_> = cofactors.iter().map(|h| h.scale(&lc_inv)).collect();
    let check = g
        .iter()
        .zip(&cofactors)
        .fold(Polynomial::zero(field), |s, (gi, hi)| &s + &(gi * hi));
    if !check.is_one() {
        return Err(Error::internal("Bezout identity failed to verify"));
    }
    Ok(BezoutCertificate { cofactors })
}
