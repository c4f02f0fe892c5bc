//! Factorization into monic irreducibles over GF(p) and over Q.
//!
//! GF(p): squarefree decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.
//!
//! Q: squarefree decomposition over Q, then for each squarefree part a
//! primitive integer polynomial is factored modulo one prime larger than
//! twice the coefficient bound of any factor, and true factors are
//! recovered by subset recombination with exact trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// `unit * prod prime^power`, primes monic, irreducible and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    pub unit: Scalar,
    pub factors: Vec<(Polynomial, usize)>,
}

impl PrimePowerFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, k)| &acc * &f.pow(*k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Seed of the equal-degree splitting probes.
    pub seed: u64,
    /// Largest degree accepted for factorization over Q.
    pub max_rational_degree: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            seed: 0,
            max_rational_degree: 12,
        }
    }
}

pub fn factor(p: &Polynomial) -> Result<PrimePowerFactorization> {
    factor_with(p, &FactorOptions::default())
}

pub fn factor_with(p: &Polynomial, opts: &FactorOptions) -> Result<PrimePowerFactorization> {
    let degree = p.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let unit = p.leading().expect("nonconstant").clone();
    let monic = p.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let factors = match p.field() {
        Field::Prime(_) => factor_monic_gfp(&monic, &mut rng)?,
        Field::Rationals => {
            if degree > opts.max_rational_degree {
                return Err(Error::DegreeBoundExceeded {
                    degree,
                    cap: opts.max_rational_degree,
                });
            }
            factor_monic_rational(&monic, &mut rng)?
        }
    };
    let factors = sorted_canonically(factors);
    let result = PrimePowerFactorization { unit, factors };
    if result.expand() != *p {
        return Err(Error::internal("factorization does not reproduce its input"));
    }
    Ok(result)
}

pub(crate) fn sorted_canonically(mut factors: Vec<(Polynomial, usize)>) -> Vec<(Polynomial, usize)> {
    factors.sort_by(|(a, _), (b, _)| a.cmp_canonical(b));
    factors
}

fn factor_monic_gfp(f: &Polynomial, rng: &mut ChaCha8Rng) -> Result<Vec<(Polynomial, usize)>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_gfp(f)? {
        for (group, d) in distinct_degree(&part)? {
            for prime in equal_degree(&group, d, rng)? {
                out.push((prime, mult));
            }
        }
    }
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial over GF(p): monic,
/// squarefree, pairwise coprime parts with multiplicities.
fn squarefree_gfp(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let field = f.field();
    let p = field.modulus().expect("finite field") as usize;
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g(x)^p since Frobenius fixes GF(p).
        for (g, m) in squarefree_gfp(&pth_root(f, p))? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_gfp(&pth_root(&c, p))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

fn pth_root(f: &Polynomial, p: usize) -> Polynomial {
    let coeffs = f.coeffs().iter().step_by(p).cloned().collect();
    Polynomial::from_raw(f.field(), coeffs)
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree, tagged with that degree.
fn distinct_degree(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let field = f.field();
    let p = BigUint::from(field.modulus().expect("finite field"));
    let x = Polynomial::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&p, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    Ok(out)
}

/// Cantor-Zassenhaus: splits a product of distinct monic irreducibles of
/// degree `d` into its factors.
fn equal_degree(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let p = field.modulus().expect("finite field");
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let probe = Polynomial::from_raw(field, (0..n).map(|_| field.element(rng.random_range(0..p))).collect());
        if probe.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = probe.gcd(f)?;
        if g.is_one() {
            let b = if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)).
                let mut term = probe.rem(f)?;
                let mut acc = term.clone();
                for _ in 1..d {
                    term = (&term * &term).rem(f)?;
                    acc = &acc + &term;
                }
                acc
            } else {
                &probe.pow_mod(&exponent, f)? - &Polynomial::one(field)
            };
            if b.is_zero() {
                continue;
            }
            g = b.gcd(f)?;
        }
        let deg = g.degree().unwrap_or(0);
        if deg > 0 && deg < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.exact_div(&g), d, rng)?);
            return Ok(out);
        }
    }
}

fn factor_monic_rational(f: &Polynomial, rng: &mut ChaCha8Rng) -> Result<Vec<(Polynomial, usize)>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_rational(f)? {
        for prime in factor_squarefree_integer(&part, rng)? {
            out.push((prime, mult));
        }
    }
    Ok(out)
}

/// Yun's squarefree decomposition (characteristic zero).
fn squarefree_rational(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let df = f.derivative();
    let a = f.gcd(&df)?;
    let mut b = f.exact_div(&a);
    let c = df.exact_div(&a);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let ai = b.gcd(&d)?;
        b = b.exact_div(&ai);
        let c = d.exact_div(&ai);
        d = &c - &b.derivative();
        if ai.degree().unwrap_or(0) > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Primitive integer coefficients of a rational polynomial (positive lead).
fn primitive_integer(f: &Polynomial) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f.coeffs().iter().map(|c| c.as_rational().expect("rational")).collect();
    let lcm = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (*q * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn integer_poly(coeffs: &[BigInt]) -> Polynomial {
    let q = Field::Rationals;
    Polynomial::from_raw(q, coeffs.iter().map(|c| q.from_bigint(c)).collect())
}

/// Monic irreducible factors over Q of a monic squarefree polynomial.
fn factor_squarefree_integer(f: &Polynomial, rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let ints = primitive_integer(f);
    let lc = ints.last().expect("nonzero").abs();
    let norm2: BigInt = ints.iter().map(|c| c * c).sum();
    // Every factor's coefficients, rescaled to leading coefficient lc, are
    // bounded by lc * 2^n * ||f||_2.
    let bound = &lc * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let start = (bound * 2u32 + 1u32)
        .to_u64()
        .filter(|&b| b < (1u64 << 62))
        .ok_or(Error::CoefficientBoundExceeded)?;
    let integer = integer_poly(&ints);

    let mut candidate = start | 1;
    let (modulus, local) = loop {
        if is_prime_u64(candidate) {
            let field = Field::Prime(candidate);
            let reduced = Polynomial::from_raw(field, ints.iter().map(|c| field.from_bigint(c)).collect());
            if reduced.gcd(&reduced.derivative())?.is_one() {
                let monic = reduced.monic();
                let mut local = Vec::new();
                for (group, d) in distinct_degree(&monic)? {
                    local.extend(equal_degree(&group, d, rng)?);
                }
                break (candidate, local);
            }
        }
        candidate += 2;
    };

    let field = Field::Prime(modulus);
    let mut remaining = integer;
    let mut local = local;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= local.len() {
        let lc_rem = primitive_integer(&remaining).last().cloned().expect("nonzero");
        for subset in combinations(local.len(), size) {
            let product = subset
                .iter()
                .fold(Polynomial::constant(field.from_bigint(&lc_rem)), |acc, &i| {
                    &acc * &local[i]
                });
            let lifted = symmetric_lift(&product, modulus);
            let candidate = integer_poly(&primitive_integer(&lifted));
            if candidate.divides(&remaining)? {
                remaining = remaining.exact_div(&candidate);
                found.push(candidate.monic());
                local = local
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.degree().unwrap_or(0) > 0 {
        found.push(remaining.monic());
    }
    Ok(found)
}

/// Maps residues to integers in (-p/2, p/2].
fn symmetric_lift(f: &Polynomial, p: u64) -> Polynomial {
    let q = Field::Rationals;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let v = c.residue().expect("residue");
            let v = if v > p / 2 {
                BigInt::from(v) - BigInt::from(p)
            } else {
                BigInt::from(v)
            };
            q.from_bigint(&v)
        })
        .collect();
    Polynomial::from_raw(q, coeffs)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime_trial;
    use crate::oracle::irreducible_by_trial;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn p(field: Field, c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(field, c)
    }

    #[test]
    fn examples() {
        let f = factor(&p(Q, &[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(Q, &[-1, 1]), 1), (p(Q, &[1, 1]), 1)]);
        let gf2 = Field::Prime(2);
        let f = factor(&p(gf2, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(gf2, &[1, 1]), 2)]);
        let f = factor(&p(Q, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(Q, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(factor(&p(Q, &[3])), Err(Error::ConstantPolynomial));
        assert_eq!(factor(&Polynomial::zero(Q)), Err(Error::ConstantPolynomial));
        let big = p(Q, &[1; 14]);
        assert_eq!(factor(&big), Err(Error::DegreeBoundExceeded { degree: 13, cap: 12 }));
        let opts = FactorOptions {
            max_rational_degree: 13,
            ..Default::default()
        };
        assert!(factor_with(&big, &opts).is_ok());
    }

    #[test]
    fn nonmonic_rational_unit() {
        // 6x^2 - x - 1 = 6 (x - 1/2)(x + 1/3)
        let f = factor(&p(Q, &[-1, -1, 6])).unwrap();
        assert_eq!(f.unit, Q.from_i64(6));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p(Q, &[-1, -1, 6]));
    }

    #[test]
    fn inseparable_gf3() {
        // x^6 + 2x^3 + 1 = (x^3 + 1)^2 = (x + 1)^6 over GF(3)
        let gf3 = Field::Prime(3);
        let f = factor(&p(gf3, &[1, 0, 0, 2, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(gf3, &[1, 1]), 6)]);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Q but splits modulo every prime.
        let f = factor(&p(Q, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(Q, &[1, 0, 0, 0, 1]), 1)]);
        // (x^2 - 2)(x^2 + x + 1)(x - 3)^2
        let g = &(&p(Q, &[-2, 0, 1]) * &p(Q, &[1, 1, 1])) * &p(Q, &[-3, 1]).pow(2);
        let f = factor(&g).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), is_prime_trial(n), "{n}");
        }
        assert!(is_prime_u64((1 << 61) - 1));
    }

    fn finite_field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
    }

    proptest! {
        #[test]
        fn finite_field_reconstruction(field in finite_field(), coeffs in prop::collection::vec(0i64..7, 1..=8), seed in 0u64..4) {
            let mut c = coeffs;
            c.push(1);
            let f = p(field, &c);
            let fac = factor_with(&f, &FactorOptions { seed, ..Default::default() }).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (prime, _) in &fac.factors {
                prop_assert!(prime.is_monic());
                if prime.degree().unwrap() <= 4 {
                    prop_assert!(irreducible_by_trial(prime).unwrap());
                }
            }
        }

        #[test]
        fn rational_reconstruction(coeffs in prop::collection::vec(-9i64..10, 1..=6)) {
            let mut c = coeffs;
            c.push(1);
            let f = p(Q, &c);
            let fac = factor(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (a, _) in &fac.factors {
                for (b, _) in &fac.factors {
                    if a != b {
                        prop_assert!(a.gcd(b).unwrap().is_one());
                    }
                }
            }
        }
    }
}
