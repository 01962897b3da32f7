use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field shared by every matrix of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rational numbers, with arbitrary-precision numerators and denominators.
    Rationals,
    /// The prime field of the given characteristic (`p < 2^31`).
    Prime(u32),
}

impl FieldSpec {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Embeds `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.from_i64(num) * inv)
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let reduce = |b: &BigInt| -> u32 {
                    let m = BigInt::from(p);
                    let r = ((b % &m) + &m) % &m;
                    r.to_u32().expect("residue fits")
                };
                let num = self.from_i64(reduce(q.numer()) as i64);
                let den = self.from_i64(reduce(q.denom()) as i64);
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator of {q} vanishes mod {p}")))?;
                Ok(num * inv)
            }
        }
    }

    /// Parses a canonical scalar string: `"3"`, `"-2/5"` over the rationals,
    /// `"3 mod 5"` (or a plain integer / fraction, reduced) over a prime field.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim().replace('\u{2212}', "-");
        if let Some((lhs, rhs)) = s.split_once("mod") {
            let FieldSpec::Prime(p) = self else {
                return Err(Error::Parse(format!("modular literal {s:?} over the rationals")));
            };
            let modulus: u32 = rhs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            if modulus != p {
                return Err(Error::FieldMismatch(format!("literal {s:?} is not in F_{p}")));
            }
            let v: i64 = lhs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in {s:?}")))?;
            return Ok(self.from_i64(v));
        }
        let q: BigRational = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar literal {s:?}")))?;
        self.from_rational(&q)
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.field() == self
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Every element of a prime field, in residue order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p as i64).map(|v| self.from_i64(v)).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the active field.
///
/// Arithmetic between scalars of different fields is a logic error and panics;
/// matrix constructors reject mixed-field input up front.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
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

    /// The rational value, when over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// An integer representative: the value of an integral rational that fits in `i32`,
    /// or the residue of a modular scalar.
    pub fn small_integer(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i32().map(i64::from),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => Some(i64::from(*value)),
        }
    }

    /// Sign in the ordered case; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    fn expect_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order over the rationals, residue order over a prime field.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse("-4/10").unwrap().to_string(), "-2/5");
        assert_eq!(q.parse("\u{2212}3").unwrap().to_string(), "-3");
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.parse("7").unwrap().to_string(), "2 mod 5");
        assert_eq!(f5.parse("1/2").unwrap().to_string(), "3 mod 5");
        assert_eq!(f5.parse("4 mod 5").unwrap(), f5.from_i64(-1));
        assert!(f5.parse("1 mod 7").is_err());
        assert!(q.parse("1 mod 7").is_err());
        assert!(f5.parse("1/5").is_err());
    }

    #[test]
    fn prime_constructor_rejects_composites() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert_eq!(FieldSpec::prime(2147483647).unwrap(), FieldSpec::Prime(2147483647));
    }

    #[test]
    fn modular_inverse() {
        let f = FieldSpec::Prime(7);
        for v in 1..7 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }
}
