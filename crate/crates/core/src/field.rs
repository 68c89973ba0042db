//! Exact scalars over the rationals and prime fields.
//!
//! A [`Scalar`] carries its field with it. Rationals are reduced fractions of
//! arbitrary-precision integers; prime-field elements are canonical residues
//! in `[0, p)` with `p < 2^31`, multiplied in 64-bit to avoid overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_PRIME: u64 = 1 << 31;

/// The field `K`: either `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// `F_p`, checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements for `F_p`, `None` for `Q`.
    pub fn order(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(v)))),
            FieldSpec::Prime(p) => Scalar(Repr::Mod {
                v: v.rem_euclid(p as i64) as u32,
                p,
            }),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Rat(BigRational::from_integer(v.clone()))),
            FieldSpec::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar(Repr::Mod {
                    v: r.to_u32().expect("residue fits"),
                    p,
                })
            }
        }
    }

    /// A rational number mapped into the field; fails in `F_p` if `p` divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar(Repr::Rat(r.clone()))),
            FieldSpec::Prime(_) => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                Ok(num * den.inv()?)
            }
        }
    }

    /// All elements in ascending residue order (finite fields only).
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |v| Scalar(Repr::Mod { v, p }))),
        }
    }

    /// Parses "3/4", "-2" (any field) into a scalar of this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| bad())?,
                BigInt::from_str(b.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(num, den))
            .map_err(|_| bad())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix('F')
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("invalid field {s:?}, expected Q or F<p>")))?;
        FieldSpec::prime(p)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod { v: u32, p: u32 },
}

/// An exact element of `Q` or `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rat(_) => FieldSpec::Rationals,
            Repr::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod { v, .. } => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Mod { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Mod { v, .. } => Some(*v),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rat(r) => Scalar(Repr::Rat(r.recip())),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: pow_mod(*v as u64, (*p - 2) as u64, *p as u64) as u32,
                p: *p,
            }),
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    fn check(&self, other: &Scalar) {
        if self.field() != other.field() {
            mismatch(self, other);
        }
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
        match &self.0 {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on `Q`, residue order on `F_p`; scalars of different fields
/// are ordered by field first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Mod { v: a, p: pa }, Repr::Mod { v: b, p: pb }) => (pa, a).cmp(&(pb, b)),
            _ => self.field().cmp(&other.field()),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, .. }) => Scalar(Repr::Mod {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, .. }) => Scalar(Repr::Mod {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            _ => unreachable!(),
        }
    }
}

/// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rat(a) => Scalar(Repr::Rat(-a)),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: if *v == 0 { 0 } else { *p - *v },
                p: *p,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
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
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Positive integer divisors of `|v|` (trial division), ascending. `v` must be nonzero.
pub(crate) fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            let other = &v / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime divisors of `|v|`, ascending. `v` must be nonzero.
pub(crate) fn prime_divisors(v: &BigInt) -> Vec<BigInt> {
    let mut v = v.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            out.push(d.clone());
            while (&v % &d).is_zero() {
                v /= &d;
            }
        }
        d += 1;
    }
    if v > BigInt::one() {
        out.push(v);
    }
    out
}
