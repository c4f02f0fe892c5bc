//! Exact scalars: the rationals and prime fields GF(p).
//!
//! A [`Scalar`] always carries its field, so values from different fields
//! can be detected and rejected. The operator impls (`&a + &b`, ...) panic
//! on a field mismatch; they are meant for code that already established a
//! common field (every [`Matrix`](crate::Matrix) and
//! [`Polynomial`](crate::Polynomial) does). Use [`Scalar::arith`] for the
//! checked form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// GF(p); rejects composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_trial(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::CompositeModulus(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: u64::try_from(r).expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Embeds a rational. Fails in GF(p) when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(_) => self.from_bigint(q.numer()).checked_div(&self.from_bigint(q.denom())),
        }
    }

    /// The `i`-th element in enumeration order of a finite field (`0..p`).
    pub fn element(&self, i: u64) -> Scalar {
        match *self {
            Field::Rationals => self.from_i64(i as i64),
            Field::Prime(p) => Scalar::Residue {
                value: i % p,
                modulus: p,
            },
        }
    }

    pub(crate) fn check(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "gf {p}"),
        }
    }
}

pub(crate) fn is_prime_trial(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// The four field operations accepted by [`Scalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Checked arithmetic: mismatched fields and division by zero are errors.
    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        self.field().check(&other.field())?;
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => return self.checked_div(other),
        })
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.field().check(&other.field())?;
        Ok(self * &other.inv()?)
    }

    /// Total order on canonical representatives: rationals by value,
    /// residues by their integer representative in `[0, p)`.
    pub fn cmp_canonical(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value),
        }
    }

    /// True for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// Parses `n`, `-n`, or `n/d` (the last only over the rationals).
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::parse(None, format!("invalid scalar `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => {
                if field.is_finite() {
                    return Err(Error::parse(None, format!("fraction `{text}` not allowed in {field}")));
                }
                (n.trim(), Some(d.trim()))
            }
            None => (text, None),
        };
        let parse_int = |s: &str, allow_sign: bool| -> Result<BigInt> {
            let digits = if allow_sign {
                s.strip_prefix('-').unwrap_or(s)
            } else {
                s
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let num = parse_int(num, true)?;
        match den {
            None => Ok(field.from_bigint(&num)),
            Some(d) => {
                let den = parse_int(d, false)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn gf7_products_and_inverses() {
        let f = Field::prime(7).unwrap();
        assert_eq!(&f.from_i64(3) * &f.from_i64(5), f.from_i64(1));
        assert_eq!(
            f.from_i64(1).arith(&f.from_i64(3), ArithOp::Div).unwrap(),
            f.from_i64(5)
        );
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
    }

    #[test]
    fn errors() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.one().arith(&f.zero(), ArithOp::Div), Err(Error::DivisionByZero));
        assert!(matches!(
            f.one().arith(&q(1, 1), ArithOp::Add),
            Err(Error::FieldMismatch(..))
        ));
        assert_eq!(Field::prime(9), Err(Error::CompositeModulus(9)));
        assert_eq!(Field::prime(1), Err(Error::CompositeModulus(1)));
        assert!(Field::prime(101).is_ok());
    }

    #[test]
    fn parsing() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Scalar::parse("-3/2", Field::Rationals).unwrap(), q(-3, 2));
        assert_eq!(Scalar::parse("6/-4", Field::Rationals).ok(), None);
        assert_eq!(Scalar::parse("9", f7).unwrap(), f7.from_i64(2));
        assert_eq!(Scalar::parse("-1", f7).unwrap(), f7.from_i64(6));
        assert!(matches!(Scalar::parse("1/2", f7), Err(Error::Parse { .. })));
        assert_eq!(Scalar::parse("1/0", Field::Rationals), Err(Error::ZeroDenominator));
        assert!(Scalar::parse("abc", Field::Rationals).is_err());
        assert!(Scalar::parse("", Field::Rationals).is_err());
        assert_eq!(q(4, 6).to_string(), "2/3");
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(7)),
            Just(Field::Prime(101)),
            Just(Field::Rationals),
        ]
    }

    fn element(field: Field, n: i64, d: i64) -> Scalar {
        match field {
            Field::Rationals => q(n, d),
            _ => field.from_i64(n),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(field in field_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50,
                        da in 1i64..9, db in 1i64..9, dc in 1i64..9) {
            let (a, b, c) = (element(field, a, da), element(field, b, db), element(field, c, dc));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, field.zero());
            prop_assert_eq!(&a + &(-&a), field.zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), field.one());
            }
        }

        #[test]
        fn canonicalization_idempotent(field in field_strategy(), n in -1000i64..1000, d in 1i64..50) {
            let x = element(field, n, d);
            let again = Scalar::parse(&x.to_string(), field).unwrap();
            prop_assert_eq!(again, x);
        }
    }
}
