//! Exact scalars: arbitrary-precision rationals, prime fields F_q and their
//! quadratic extensions F_{q^2}.
//!
//! Arithmetic between scalars of different fields panics. Public entry points
//! that accept user data validate fields up front (see [`Field::check_all`]).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; keeps products inside u128 math
/// cheap and residues inside u32 for the enumeration kernels.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    /// F_q[s]/(s^2 - nonresidue).
    Quadratic { q: u64, nonresidue: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, q: u64 },
    Fq2 { a: u64, b: u64, q: u64, nr: u64 },
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, q: u64) -> Option<u64> {
    if a % q == 0 {
        None
    } else {
        Some(powmod(a, q - 2, q))
    }
}

/// Tonelli-Shanks square root modulo an odd prime.
pub(crate) fn sqrtmod(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (q - 1) / 2, q) != 1 {
        return None;
    }
    let mut s = 0;
    let mut t = q - 1;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (q - 1) / 2, q) != q - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, t, q);
    let mut x = powmod(a, (t + 1) / 2, q);
    let mut b = powmod(a, t, q);
    while b != 1 {
        let mut i = 0;
        let mut bb = b;
        while bb != 1 {
            bb = mulmod(bb, bb, q);
            i += 1;
        }
        let mut g = c;
        for _ in 0..(m - i - 1) {
            g = mulmod(g, g, q);
        }
        x = mulmod(x, g, q);
        c = mulmod(g, g, q);
        b = mulmod(b, c, q);
        m = i;
    }
    Some(x)
}

fn smallest_nonresidue(q: u64) -> u64 {
    (2..q).find(|&n| powmod(n, (q - 1) / 2, q) == q - 1).expect("odd prime has a nonresidue")
}

impl Field {
    /// The prime field F_q. Characteristics 2 and 3 are rejected.
    pub fn prime(q: u64) -> Result<Field> {
        if q < 5 || !is_prime(q) || q >= MAX_PRIME {
            return Err(Error::UnsupportedField(format!(
                "F_{q}: modulus must be a prime with 5 <= q < 2^31"
            )));
        }
        Ok(Field::Prime(q))
    }

    pub fn quadratic(q: u64) -> Result<Field> {
        Field::prime(q)?;
        Ok(Field::Quadratic { q, nonresidue: smallest_nonresidue(q) })
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(q) | Field::Quadratic { q, .. } => q,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Rational => None,
            Field::Prime(q) => Some(q),
            Field::Quadratic { q, .. } => Some(q * q),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(q) => Scalar::Fp { v: n.rem_euclid(q as i64) as u64, q },
            Field::Quadratic { q, nonresidue } => {
                Scalar::Fq2 { a: n.rem_euclid(q as i64) as u64, b: 0, q, nr: nonresidue }
            }
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod q.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rat(r.clone())),
            Field::Prime(q) | Field::Quadratic { q, .. } => {
                let m = BigInt::from(q);
                let num = r.numer().mod_floor(&m).to_u64().unwrap();
                let den = r.denom().mod_floor(&m).to_u64().unwrap();
                let inv = invmod(den, q).ok_or(Error::DivisionByZero)?;
                let v = mulmod(num, inv, q);
                Ok(match *self {
                    Field::Prime(_) => Scalar::Fp { v, q },
                    Field::Quadratic { nonresidue, .. } => Scalar::Fq2 { a: v, b: 0, q, nr: nonresidue },
                    Field::Rational => unreachable!(),
                })
            }
        }
    }

    /// Reinterprets a scalar of another field in this one (rationals map by
    /// reduction, F_q embeds into F_{q^2}).
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, Scalar::Rat(r)) => self.from_rational(r),
            (Field::Prime(q), Scalar::Fp { q: q2, .. }) if q == q2 => Ok(s.clone()),
            (Field::Quadratic { q, nonresidue }, Scalar::Fp { v, q: q2 }) if q == q2 => {
                Ok(Scalar::Fq2 { a: *v, b: 0, q: *q, nr: *nonresidue })
            }
            (Field::Quadratic { .. }, Scalar::Fq2 { .. }) if s.field() == *self => Ok(s.clone()),
            _ => Err(Error::MixedFields(format!("cannot coerce {s} into {self}"))),
        }
    }

    /// Checks that every scalar lives in this field.
    pub fn check_all<'a>(&self, it: impl IntoIterator<Item = &'a Scalar>) -> Result<()> {
        for s in it {
            if s.field() != *self {
                return Err(Error::MixedFields(format!("{s} is not in {self}")));
            }
        }
        Ok(())
    }

    /// All elements of a finite field in a fixed order.
    pub fn elements(&self) -> Vec<Scalar> {
        match *self {
            Field::Rational => vec![],
            Field::Prime(q) => (0..q).map(|v| Scalar::Fp { v, q }).collect(),
            Field::Quadratic { q, nonresidue } => (0..q * q)
                .map(|i| Scalar::Fq2 { a: i % q, b: i / q, q, nr: nonresidue })
                .collect(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(q) => write!(f, "F_{q}"),
            Field::Quadratic { q, .. } => write!(f, "F_{q}^2"),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn int(n: i64) -> Scalar {
    rat(n, 1)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match *self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp { q, .. } => Field::Prime(q),
            Scalar::Fq2 { q, nr, .. } => Field::Quadratic { q, nonresidue: nr },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Fq2 { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Fq2 { a, b, .. } => *a == 1 && *b == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { v, q } => Scalar::Fp { v: invmod(*v, *q)?, q: *q },
            Scalar::Fq2 { a, b, q, nr } => {
                // (a + bs)^{-1} = (a - bs) / (a^2 - nr b^2)
                let n = (mulmod(*a, *a, *q) + *q - mulmod(*nr, mulmod(*b, *b, *q), *q)) % *q;
                let ni = invmod(n, *q)?;
                Scalar::Fq2 { a: mulmod(*a, ni, *q), b: mulmod((*q - *b) % *q, ni, *q), q: *q, nr: *nr }
            }
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

    /// Square root inside the same field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Fp { v, q } => sqrtmod(*v, *q).map(|v| Scalar::Fp { v, q: *q }),
            Scalar::Fq2 { .. } => {
                // Brute force is fine: this path is only reached for tiny q.
                self.field().elements().into_iter().find(|x| &(x * x) == self)
            }
        }
    }

    /// Canonical string: rationals as "n" or "n/d", F_q residues as integers,
    /// F_{q^2} elements as "a+b*s".
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }

    pub fn parse_rational(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational literal: `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rat(BigRational::new(n, d)))
    }

    /// Integer view of a rational scalar, if it is integral.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => {
                let n = r.numer();
                let d = r.denom();
                // Scale down huge operands to keep the quotient finite.
                let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as usize;
                let n = n >> shift;
                let d = d >> shift;
                let dn = d.to_f64().unwrap_or(f64::INFINITY);
                if dn == 0.0 {
                    return if n.sign() == Sign::Minus { f64::NEG_INFINITY } else { f64::INFINITY };
                }
                n.to_f64().unwrap_or(0.0) / dn
            }
            Scalar::Fp { v, .. } => *v as f64,
            Scalar::Fq2 { a, .. } => *a as f64,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Fq2 { a, b, .. } => {
                if *b == 0 {
                    write!(f, "{a}")
                } else {
                    write!(f, "{a}+{b}*s")
                }
            }
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("arithmetic between scalars of different fields: {} and {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Fp { v, q }, Scalar::Fp { v: w, q: q2 }) if q == q2 => Scalar::Fp { v: (v + w) % q, q: *q },
            (Scalar::Fq2 { a, b, q, nr }, Scalar::Fq2 { a: c, b: d, q: q2, .. }) if q == q2 => {
                Scalar::Fq2 { a: (a + c) % q, b: (b + d) % q, q: *q, nr: *nr }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Fp { v, q } => Scalar::Fp { v: (q - v) % q, q: *q },
            Scalar::Fq2 { a, b, q, nr } => Scalar::Fq2 { a: (q - a) % q, b: (q - b) % q, q: *q, nr: *nr },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Fp { v, q }, Scalar::Fp { v: w, q: q2 }) if q == q2 => Scalar::Fp { v: mulmod(*v, *w, *q), q: *q },
            (Scalar::Fq2 { a, b, q, nr }, Scalar::Fq2 { a: c, b: d, q: q2, .. }) if q == q2 => {
                let q = *q;
                let re = (mulmod(*a, *c, q) + mulmod(*nr, mulmod(*b, *d, q), q)) % q;
                let im = (mulmod(*a, *d, q) + mulmod(*b, *c, q)) % q;
                Scalar::Fq2 { a: re, b: im, q, nr: *nr }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
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
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_characteristic() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(101).is_ok());
    }

    #[test]
    fn rational_normalization() {
        let x = rat(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Scalar::parse_rational("-3/2").unwrap(), x);
        assert_eq!(Scalar::parse_rational(" 7 ").unwrap(), int(7));
        assert!(Scalar::parse_rational("1/0").is_err());
    }

    #[test]
    fn quadratic_extension_inverse() {
        let f = Field::quadratic(11).unwrap();
        for x in f.elements().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(f.elements().len(), 121);
    }

    #[test]
    fn sqrt_mod_p() {
        for q in [5u64, 7, 11, 13, 101] {
            for a in 0..q {
                if let Some(r) = sqrtmod(a, q) {
                    assert_eq!(mulmod(r, r, q), a);
                }
            }
        }
        assert_eq!(rat(9, 4).sqrt(), Some(rat(3, 2)));
        assert_eq!(int(2).sqrt(), None);
    }

    #[test]
    fn reduction_mod_q() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_rational(&BigRational::new(3.into(), 2.into())).unwrap(), Scalar::Fp { v: 5, q: 7 });
        assert!(f.from_rational(&BigRational::new(1.into(), 7.into())).is_err());
    }
}
