//! Exact arithmetic over Q and over cyclotomic fields Q(zeta_N).
//!
//! A [`CyclotomicNumber`] is stored at its minimal conductor in the basis
//! described in [`basis`], with zero coefficients dropped. Two equal values
//! therefore have identical stored forms, which makes the derived `Eq` and
//! `Hash` implementations value-based.

mod basis;
mod literal;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use literal::{parse_literal, LiteralError};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("value `{0}` is not rational")]
    NotRational(String),
    #[error("value of conductor {from} does not embed into Q(zeta_{to})")]
    IncompatibleConductor { from: u32, to: u32 },
}

/// Exact element of a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    /// `(exponent, coefficient)` pairs, sorted, nonzero, basis exponents only.
    terms: Vec<(u32, Rational)>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: 1,
            terms: vec![(0, q)],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `zeta_n^k`; negative `k` is allowed.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        let j = k.rem_euclid(n as i64) as u32;
        Self::from_terms(n, vec![(j, Rational::one())])
    }

    /// Builds `sum c * zeta_n^j` from arbitrary exponents (not necessarily
    /// basis exponents, repeats allowed).
    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![Rational::zero(); n as usize];
        for (j, c) in terms {
            dense[(j % n) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    fn from_dense(n: u32, dense: Vec<Rational>) -> Self {
        let (conductor, terms) = basis::canonicalize(n, dense);
        CyclotomicNumber { conductor, terms }
    }

    /// Minimal N with the value in Q(zeta_N); 1 for rationals.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` pairs at [`Self::conductor`].
    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    /// Coordinates in the canonical basis of Q(zeta_n). Fails unless the
    /// conductor divides `n`.
    pub fn embed(&self, n: u32) -> Result<Vec<(u32, Rational)>, ExactError> {
        if n == 0 || !n.is_multiple_of(self.conductor) {
            return Err(ExactError::IncompatibleConductor {
                from: self.conductor,
                to: n,
            });
        }
        let scale = n / self.conductor;
        Ok(self.terms.iter().map(|(j, c)| (j * scale, c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Result<Rational, ExactError> {
        if !self.is_rational() {
            return Err(ExactError::NotRational(self.to_string()));
        }
        Ok(self
            .terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero))
    }

    /// Integer value, if the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .ok()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(j, c)| (*j, c * q)).collect(),
        }
    }

    /// Image under the Galois automorphism `zeta -> zeta^k`, `k` coprime to
    /// the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(k.gcd(&(n as u64)), 1, "Galois exponent must be a unit");
        if n == 1 {
            return self.clone();
        }
        Self::from_terms(
            n,
            self.terms
                .iter()
                .map(|(j, c)| ((*j as u64 * k % n as u64) as u32, c.clone())),
        )
    }

    /// Complex conjugate, `zeta^k -> zeta^(N-k)`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn norm_squared(&self) -> Self {
        self * &self.conjugate()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the field norm: `x^-1 = prod_{s != 1} s(x) / N(x)`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Ok(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).as_rational().expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }

    /// Exact sum of many values. Accumulates at the least common conductor,
    /// where no reduction is needed, and canonicalizes once.
    pub fn sum<'a>(values: impl IntoIterator<Item = &'a CyclotomicNumber>) -> Self {
        let values: Vec<&CyclotomicNumber> = values.into_iter().filter(|v| !v.is_zero()).collect();
        match values.len() {
            0 => return Self::zero(),
            1 => return values[0].clone(),
            _ => {}
        }
        let n = values.iter().fold(1u32, |acc, v| acc.lcm(&v.conductor));
        let mut dense = vec![Rational::zero(); n as usize];
        for v in values {
            let scale = n / v.conductor;
            for (j, c) in &v.terms {
                dense[(j * scale) as usize] += c;
            }
        }
        Self::from_dense(n, dense)
    }

    fn add_scaled(&self, other: &Self, sign: &Rational) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(sign);
        }
        let n = self.conductor.lcm(&other.conductor);
        let mut dense = vec![Rational::zero(); n as usize];
        let (sa, sb) = (n / self.conductor, n / other.conductor);
        for (j, c) in &self.terms {
            dense[(j * sa) as usize] += c;
        }
        for (j, c) in &other.terms {
            dense[(j * sb) as usize] += c * sign;
        }
        Self::from_dense(n, dense)
    }

    fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Ok(q) = self.as_rational() {
            return other.scale(&q);
        }
        if let Ok(q) = other.as_rational() {
            return self.scale(&q);
        }
        let n = self.conductor.lcm(&other.conductor);
        let (sa, sb) = (n / self.conductor, n / other.conductor);
        let mut dense = vec![Rational::zero(); n as usize];
        for (ja, ca) in &self.terms {
            for (jb, cb) in &other.terms {
                let j = ((ja * sa) as u64 + (jb * sb) as u64) % n as u64;
                dense[j as usize] += ca * cb;
            }
        }
        Self::from_dense(n, dense)
    }
}

impl Default for CyclotomicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<BigInt> for CyclotomicNumber {
    fn from(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.add_scaled(rhs, &Rational::one())
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.add_scaled(rhs, &-Rational::one())
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.multiply(rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.scale(&-Rational::one())
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self + rhs;
    }
}

/// Serialized as a literal string, e.g. `"1/2 - z7"`.
impl serde::Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (j, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *j == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "z{}", self.conductor)?;
            if *j != 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

impl std::str::FromStr for CyclotomicNumber {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s)
    }
}
