//! Dense univariate polynomials over `Q` or `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{divisors, prime_divisors, FieldSpec, Scalar};

/// Largest number of candidate polynomials the irreducible sieve will enumerate.
pub const SIEVE_CAP: u64 = 1 << 20;

/// Polynomial with coefficients stored lowest degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Carries a nontrivial monic factor that divides the input exactly.
    Reducible(Poly),
    /// Only possible over `Q` in degree >= 4.
    Unknown,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Self::trimmed(field, coeffs)
    }

    /// `X - a`.
    pub fn linear(a: &Scalar) -> Self {
        let field = a.field();
        Self::trimmed(field, vec![-a, field.one()])
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, c.field()));
        }
        Ok(Self::trimmed(field, coeffs))
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::trimmed(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trimmed(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for callers that already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Self::trimmed(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Euclidean division: `self = q*b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let lb = b.leading().ok_or(Error::DivisionByZeroPoly)?;
        let lb_inv = lb.inv()?;
        let db = b.deg();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lb_inv;
            if !c.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate() {
                    r[k + i] = &r[k + i] - &(&c * bc);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((
            Self::trimmed(self.field, q),
            Self::trimmed(self.field, r),
        ))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// True iff `self` divides `other` exactly. The zero polynomial divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "{b} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        a.check_field(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r;
        }
        Ok(x.monic())
    }

    /// Coefficient reversal `P*`; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Self::trimmed(self.field, c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * &self.field.from_i64(k as i64))
            .collect();
        Self::trimmed(self.field, c)
    }

    /// Distinct roots lying in the field, ascending.
    ///
    /// Over `F_p` every residue is tried. Over `Q` the candidates come from the
    /// rational root theorem applied to the denominator-cleared polynomial.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match self.field {
            FieldSpec::Prime(_) => Ok(self
                .field
                .elements()
                .expect("finite field")
                .filter(|x| self.eval(x).is_zero())
                .collect()),
            FieldSpec::Rationals => Ok(self.rational_roots()),
        }
    }

    fn integer_coeffs(&self) -> Vec<BigInt> {
        let rats: Vec<&BigRational> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().expect("rational coefficient"))
            .collect();
        let lcm = rats
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        rats.iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect()
    }

    fn rational_roots(&self) -> Vec<Scalar> {
        let mut ints = self.integer_coeffs();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(BigRational::zero());
            let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
            ints.drain(..lead_zeros);
        }
        if ints.len() > 1 {
            let c0 = &ints[0];
            let cn = ints.last().expect("nonempty");
            for r in divisors(c0) {
                for s in divisors(cn) {
                    for cand in [BigRational::new(r.clone(), s.clone()), BigRational::new(-r.clone(), s.clone())] {
                        let x = Scalar::from(cand.clone());
                        if self.eval(&x).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.into_iter().map(Scalar::from).collect()
    }

    /// Eisenstein's criterion at the prime `q` for a monic integer polynomial.
    pub fn eisenstein(&self, q: &BigInt) -> Result<bool> {
        if self.field != FieldSpec::Rationals {
            return Err(Error::FieldMismatch(FieldSpec::Rationals, self.field));
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self
            .coeffs
            .iter()
            .any(|c| !c.as_rational().expect("rational").is_integer())
        {
            return Err(Error::NonIntegerCoefficients);
        }
        if q < &BigInt::from(2) || prime_divisors(q) != vec![q.clone()] {
            return Err(Error::NotPrime(u64::try_from(q.clone()).unwrap_or(0)));
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().expect("rational").to_integer())
            .collect();
        let n = ints.len() - 1;
        let lower_divisible = ints[..n].iter().all(|c| (c % q).is_zero());
        let lead_ok = !(&ints[n] % q).is_zero();
        let q2 = q * q;
        let const_ok = !(&ints[0] % &q2).is_zero();
        Ok(lower_divisible && lead_ok && const_ok)
    }

    /// Decides irreducibility of a monic nonconstant polynomial.
    pub fn irreducibility(&self) -> Result<Irreducibility> {
        if self.is_zero() || self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = self.deg();
        if d == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        if let Some(r) = self.roots()?.first() {
            return Ok(Irreducibility::Reducible(Poly::linear(r)));
        }
        if d <= 3 {
            return Ok(Irreducibility::Irreducible);
        }
        match self.field {
            FieldSpec::Prime(p) => {
                for irr in monic_irreducibles(p, d / 2)?.into_iter().flatten() {
                    if irr.divides(self) {
                        return Ok(Irreducibility::Reducible(irr));
                    }
                }
                Ok(Irreducibility::Irreducible)
            }
            FieldSpec::Rationals => {
                if self.eisenstein_somewhere() {
                    Ok(Irreducibility::Irreducible)
                } else {
                    Ok(Irreducibility::Unknown)
                }
            }
        }
    }

    /// Tries Eisenstein at every prime dividing the constant term.
    fn eisenstein_somewhere(&self) -> bool {
        let integral = self
            .coeffs
            .iter()
            .all(|c| c.as_rational().is_some_and(|r| r.is_integer()));
        if !integral || !self.is_monic() || self.coeff(0).is_zero() {
            return false;
        }
        let c0 = self.coeff(0).as_rational().expect("rational").to_integer();
        prime_divisors(&c0)
            .iter()
            .any(|q| self.eisenstein(q).unwrap_or(false))
    }

    /// Factorization of a monic polynomial into monic irreducibles with multiplicities,
    /// sorted by [`Ord`] on the factors.
    ///
    /// Always available over `F_p`. Over `Q`, rational roots are stripped and the
    /// cofactor must be of degree at most 3 or satisfy Eisenstein at some prime.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        let mut rest = self.clone();
        let mut take = |rest: &mut Poly, f: &Poly| {
            let mut k = 0;
            while !rest.is_constant() && f.divides(rest) {
                *rest = rest.exact_div(f).expect("divides");
                k += 1;
            }
            if k > 0 {
                out.push((f.clone(), k));
            }
        };
        match self.field {
            FieldSpec::Prime(p) => {
                let bound = self.deg() / 2;
                for irr in monic_irreducibles(p, bound)?.into_iter().flatten() {
                    if rest.deg() < 2 * irr.deg() {
                        break;
                    }
                    take(&mut rest, &irr);
                }
                if !rest.is_constant() {
                    // Whatever is left has no factor of degree <= deg/2.
                    let r = rest.clone();
                    take(&mut rest, &r);
                }
            }
            FieldSpec::Rationals => {
                for r in self.roots()? {
                    take(&mut rest, &Poly::linear(&r));
                }
                if !rest.is_constant() {
                    if rest.deg() <= 3 || rest.eisenstein_somewhere() {
                        let r = rest.clone();
                        take(&mut rest, &r);
                    } else {
                        return Err(Error::FactorizationUnavailable(format!(
                            "cannot factor {rest} over Q"
                        )));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Serialized form: coefficient strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn parse_coeffs(field: FieldSpec, coeffs: &[String]) -> Result<Poly> {
        let c = coeffs
            .iter()
            .map(|s| field.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::trimmed(field, c))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        FieldSpec::Rationals
            .from_rational(&r)
            .expect("rationals always embed")
    }
}

/// All monic irreducible polynomials over `F_p` of degree `1..=max_deg`, grouped by
/// degree, generated by sieving out products of lower-degree irreducibles.
pub fn monic_irreducibles(p: u32, max_deg: usize) -> Result<Vec<Vec<Poly>>> {
    let field = FieldSpec::Prime(p);
    let mut by_deg: Vec<Vec<Poly>> = Vec::new();
    for d in 1..=max_deg {
        let count = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if count > SIEVE_CAP {
            return Err(Error::TooLarge {
                size: count,
                cap: SIEVE_CAP,
            });
        }
        let mut found = Vec::new();
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                coeffs.push(field.from_i64((k % p as u64) as i64));
                k /= p as u64;
            }
            coeffs.push(field.one());
            let cand = Poly::trimmed(field, coeffs);
            let composite = by_deg
                .iter()
                .take(d / 2)
                .flatten()
                .any(|f| f.divides(&cand));
            if !composite {
                found.push(cand);
            }
        }
        by_deg.push(found);
    }
    Ok(by_deg)
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by field, then degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.as_rational().is_some_and(|r| r.is_negative());
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.field)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::trimmed(self.field, c)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::trimmed(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::trimmed(self.field, c)
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);
