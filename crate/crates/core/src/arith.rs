//! Exact scalar arithmetic over prime fields GF(p) and the rationals.
//!
//! A [`Scalar`] carries its own field tag, so vectors and matrices never need
//! a separate field handle to do arithmetic. The operator impls (`+`, `-`,
//! `*`, unary `-`) panic when the operands live in different fields: every
//! container in this crate checks field agreement at construction, so a
//! mismatch there is a bug. Use [`field_op`] for the checked variant.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Prime(u32),
    Rationals,
}

/// The ground field: GF(p) for a verified prime p < 2^31, or Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(FieldKind);

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(FieldKind::Prime(p as u32)))
    }

    pub const fn rationals() -> Field {
        Field(FieldKind::Rationals)
    }

    pub fn kind(&self) -> FieldKind {
        self.0
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self.0 {
            FieldKind::Prime(p) => p,
            FieldKind::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, FieldKind::Prime(_))
    }

    /// Number of elements, `None` for Q.
    pub fn size(&self) -> Option<u64> {
        match self.0 {
            FieldKind::Prime(p) => Some(p as u64),
            FieldKind::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0 {
            FieldKind::Prime(p) => Scalar(Repr::Residue {
                value: v.rem_euclid(p as i64) as u32,
                p,
            }),
            FieldKind::Rationals => Scalar(Repr::Rational(Box::new(BigRational::from_integer(
                BigInt::from(v),
            )))),
        }
    }

    /// The residue `v mod p`; only meaningful for prime fields.
    pub fn residue(&self, v: u32) -> Scalar {
        match self.0 {
            FieldKind::Prime(p) => Scalar(Repr::Residue { value: v % p, p }),
            FieldKind::Rationals => self.from_i64(v as i64),
        }
    }

    /// All field elements in residue order, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.0 {
            FieldKind::Prime(p) => Some((0..p).map(|v| self.residue(v)).collect()),
            FieldKind::Rationals => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Residue { value: u32, p: u32 },
    // num-rational keeps fractions reduced with a positive denominator.
    Rational(Box<BigRational>),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            a.field().to_string(),
            b.field().to_string(),
        ));
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

/// Parses `-?digits(/digits)?` into a canonical scalar of `field`.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let bad = || Error::ParseScalar(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if let Some(d) = den {
        if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    match field.kind() {
        FieldKind::Prime(p) => {
            if den.is_some() {
                return Err(Error::RationalLiteralInPrimeField(text.to_string()));
            }
            let r = n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits");
            Ok(field.residue(r))
        }
        FieldKind::Rationals => {
            let d: BigInt = match den {
                Some(d) => d.parse().map_err(|_| bad())?,
                None => BigInt::one(),
            };
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Scalar(Repr::Rational(Box::new(BigRational::new(n, d)))))
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Residue { p, .. } => Field(FieldKind::Prime(*p)),
            Repr::Rational(_) => Field::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 0,
            Repr::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 1,
            Repr::Rational(r) => r.is_one(),
        }
    }

    /// The residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Residue { value, .. } => Some(*value),
            Repr::Rational(_) => None,
        }
    }

    /// `(numerator, denominator)` for rational scalars.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match &self.0 {
            Repr::Rational(r) => Some((r.numer().clone(), r.denom().clone())),
            Repr::Residue { .. } => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: inv_mod(*value, *p),
                p: *p,
            }),
            Repr::Rational(r) => Scalar(Repr::Rational(Box::new(r.recip()))),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, p: q }) if p == q => {
                Scalar(Repr::Residue {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => {
                Scalar(Repr::Rational(Box::new(a.as_ref() + b.as_ref())))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, p: q }) if p == q => {
                Scalar(Repr::Residue {
                    value: ((*a as u64 + (*p - *b) as u64) % *p as u64) as u32,
                    p: *p,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => {
                Scalar(Repr::Rational(Box::new(a.as_ref() - b.as_ref())))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, p: q }) if p == q => {
                Scalar(Repr::Residue {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => {
                Scalar(Repr::Rational(Box::new(a.as_ref() * b.as_ref())))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: (*p - *value) % *p,
                p: *p,
            }),
            Repr::Rational(r) => Scalar(Repr::Rational(Box::new(-r.as_ref()))),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Residues order by value, rationals numerically. Scalars of different
/// fields order by field tag, which only matters for use as map keys.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, p: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue { .. }, Repr::Rational(_)) => Ordering::Less,
            (Repr::Rational(_), Repr::Residue { .. }) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Residue { value, .. } => write!(f, "{value}"),
            Repr::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Scalar {
    /// Negative when rational and below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_negative(),
            Repr::Residue { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn field_op_examples() {
        let f3 = gf(3);
        assert_eq!(
            field_op(&f3.from_i64(2), &f3.from_i64(2), FieldOp::Mul).unwrap(),
            f3.from_i64(1)
        );
        let q = Field::rationals();
        let half = parse_scalar("1/2", q).unwrap();
        let third = parse_scalar("1/3", q).unwrap();
        assert_eq!(
            field_op(&half, &third, FieldOp::Add).unwrap(),
            parse_scalar("5/6", q).unwrap()
        );
    }

    #[test]
    fn division_in_gf5_matches_exhaustive_search() {
        let f5 = gf(5);
        let (three, four) = (f5.from_i64(3), f5.from_i64(4));
        // oracle: the unique x with 4x = 3 mod 5
        let x = (0..5u32).find(|x| (4 * x) % 5 == 3).unwrap();
        assert_eq!(x, 2);
        assert_eq!(
            field_op(&three, &four, FieldOp::Div).unwrap(),
            f5.residue(x)
        );
    }

    #[test]
    fn field_op_errors() {
        let f5 = gf(5);
        assert_eq!(
            field_op(&f5.one(), &f5.zero(), FieldOp::Div),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            field_op(&f5.one(), &gf(3).one(), FieldOp::Add),
            Err(Error::FieldMismatch(..))
        ));
        assert!(matches!(
            field_op(&f5.one(), &Field::rationals().one(), FieldOp::Mul),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(2147483647).is_ok());
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1 << 31), Err(Error::NotPrime(1 << 31)));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_scalar("7", gf(5)).unwrap(), gf(5).from_i64(2));
        assert_eq!(parse_scalar("-1", gf(5)).unwrap(), gf(5).from_i64(4));
        let q = Field::rationals();
        let s = parse_scalar("-1/2", q).unwrap();
        assert_eq!(s.as_fraction().unwrap(), (BigInt::from(-1), BigInt::from(2)));
        let s = parse_scalar("2/4", q).unwrap();
        assert_eq!(s.as_fraction().unwrap(), (BigInt::from(1), BigInt::from(2)));
        let s = parse_scalar("3/-4", q);
        assert!(matches!(s, Err(Error::ParseScalar(_))));
        let s = parse_scalar("6/-0", q);
        assert!(matches!(s, Err(Error::ParseScalar(_))));
    }

    #[test]
    fn parse_errors() {
        let q = Field::rationals();
        assert_eq!(parse_scalar("1/0", q), Err(Error::DivisionByZero));
        assert!(matches!(parse_scalar("x", q), Err(Error::ParseScalar(_))));
        assert!(matches!(parse_scalar("", q), Err(Error::ParseScalar(_))));
        assert!(matches!(parse_scalar("1.5", q), Err(Error::ParseScalar(_))));
        assert!(matches!(parse_scalar("+3", q), Err(Error::ParseScalar(_))));
        assert!(matches!(
            parse_scalar("1/2", gf(7)),
            Err(Error::RationalLiteralInPrimeField(_))
        ));
    }

    #[test]
    fn fermat_little_theorem() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = gf(p);
            for x in f.elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
                assert!(x.pow(p - 1).is_one(), "{x}^{} in GF({p})", p - 1);
            }
        }
    }

    fn scalar_in(field: Field) -> BoxedStrategy<Scalar> {
        match field.kind() {
            FieldKind::Prime(p) => (0..p).prop_map(move |v| field.residue(v)).boxed(),
            FieldKind::Rationals => (-50i64..50, 1i64..20)
                .prop_map(move |(n, d)| parse_scalar(&format!("{n}/{d}"), field).unwrap())
                .boxed(),
        }
    }

    fn any_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(gf(2)),
            Just(gf(3)),
            Just(gf(7)),
            Just(gf(2147483647)),
            Just(Field::rationals())
        ]
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        any_field().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn render_parse_roundtrip((a, _, _) in triple()) {
            let text = a.to_string();
            prop_assert_eq!(parse_scalar(&text, a.field()).unwrap(), a);
        }
    }
}
