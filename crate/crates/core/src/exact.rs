//! Exact scalars for Laplacian eigenvalues: rationals and quadratic
//! integers `(x + y*sqrt(D)) / 2` with `D` square-free.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

pub type Rational = Ratio<i64>;

/// Splits `k = x^2 * d` with `d` square-free, by trial division.
pub fn square_free_decompose(k: i64) -> Result<(i64, i64)> {
    if k <= 0 {
        return Err(invalid(format!("square-free decomposition needs k >= 1, got {k}")));
    }
    let mut rest = k;
    let mut root = 1i64;
    let mut p = 2i64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            root *= p;
        }
        p += 1;
    }
    Ok((root, rest))
}

pub fn is_square_free(k: i64) -> bool {
    k >= 1 && matches!(square_free_decompose(k), Ok((1, _)))
}

/// Exact integer square root when `k` is a perfect square.
pub fn exact_sqrt(k: i64) -> Option<i64> {
    if k < 0 {
        return None;
    }
    let (root, rest) = square_free_decompose(k.max(1)).ok()?;
    match (k, rest) {
        (0, _) => Some(0),
        (_, 1) => Some(root),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(Rational),
    /// `(x + y*sqrt(radicand)) / 2`, with `y != 0` and `radicand > 1` square-free.
    Surd { x: i64, y: i64, radicand: i64 },
}

impl ExactScalar {
    pub fn integer(k: i64) -> Self {
        ExactScalar::Rational(Rational::from_integer(k))
    }

    /// Canonical form of `(x + y*sqrt(d)) / 2` for any `d >= 0`: square
    /// factors of `d` move into `y`, and perfect squares collapse to rationals.
    pub fn surd(x: i64, y: i64, d: i64) -> Result<Self> {
        if d < 0 {
            return Err(invalid(format!("negative radicand {d}")));
        }
        if y == 0 || d == 0 {
            return Ok(ExactScalar::Rational(Rational::new(x, 2)));
        }
        let (root, radicand) = square_free_decompose(d)?;
        let y = y * root;
        if radicand == 1 {
            Ok(ExactScalar::Rational(Rational::new(x + y, 2)))
        } else {
            Ok(ExactScalar::Surd { x, y, radicand })
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            ExactScalar::Rational(q) => *q.numer() as f64 / *q.denom() as f64,
            ExactScalar::Surd { x, y, radicand } => (x as f64 + y as f64 * (radicand as f64).sqrt()) / 2.0,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            ExactScalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    pub fn radicand(&self) -> i64 {
        match *self {
            ExactScalar::Rational(_) => 1,
            ExactScalar::Surd { radicand, .. } => radicand,
        }
    }

    pub fn to_quadratic(&self) -> QuadraticNumber {
        match *self {
            ExactScalar::Rational(q) => QuadraticNumber::rational(q),
            ExactScalar::Surd { x, y, radicand } => QuadraticNumber {
                rational: Rational::new(x, 2),
                irrational: Rational::new(y, 2),
                radicand,
            },
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactScalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            ExactScalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            ExactScalar::Surd { x, y, radicand } => {
                let sign = if y < 0 { '-' } else { '+' };
                match y.unsigned_abs() {
                    1 => write!(f, "({x}{sign}sqrt({radicand}))/2"),
                    c => write!(f, "({x}{sign}{c}*sqrt({radicand}))/2"),
                }
            }
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("not an exact scalar: {s:?}"));
        let s = s.trim();
        if let Some(body) = s.strip_prefix('(').and_then(|r| r.strip_suffix(")/2")) {
            let split = body[1..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .ok_or_else(bad)?;
            let x: i64 = body[..split].parse().map_err(|_| bad())?;
            let sign = if &body[split..=split] == "-" { -1 } else { 1 };
            let rest = &body[split + 1..];
            let (coeff, radical) = rest.split_once("sqrt(").ok_or_else(bad)?;
            let y: i64 = match coeff {
                "" => 1,
                c => c.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            let d: i64 = radical.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return ExactScalar::surd(x, sign * y, d);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            return Ok(ExactScalar::Rational(Rational::new(p, q)));
        }
        s.parse::<i64>().map(ExactScalar::integer).map_err(|_| bad())
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element `a + b*sqrt(d)` of a real quadratic field, used to check
/// algebraic identities between eigenvalues without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub rational: Rational,
    pub irrational: Rational,
    /// Square-free; `1` means the number is rational.
    pub radicand: i64,
}

impl QuadraticNumber {
    pub fn rational(q: Rational) -> Self {
        QuadraticNumber {
            rational: q,
            irrational: Rational::from_integer(0),
            radicand: 1,
        }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(Rational::from_integer(k))
    }

    fn is_rational(&self) -> bool {
        self.radicand == 1 || self.irrational == Rational::from_integer(0)
    }

    fn field_with(&self, other: &Self) -> i64 {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => 1,
            (false, true) => self.radicand,
            (true, false) => other.radicand,
            (false, false) => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "operands lie in different quadratic fields"
                );
                self.radicand
            }
        }
    }

    fn normalised(self) -> Self {
        if self.irrational == Rational::from_integer(0) {
            Self::rational(self.rational)
        } else {
            self
        }
    }
}

impl Add for QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: Self) -> Self {
        let radicand = self.field_with(&rhs);
        QuadraticNumber {
            rational: self.rational + rhs.rational,
            irrational: self.irrational + rhs.irrational,
            radicand,
        }
        .normalised()
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self {
        QuadraticNumber {
            rational: -self.rational,
            irrational: -self.irrational,
            radicand: self.radicand,
        }
    }
}

impl Sub for QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> Self {
        let radicand = self.field_with(&rhs);
        let d = Rational::from_integer(radicand);
        QuadraticNumber {
            rational: self.rational * rhs.rational + self.irrational * rhs.irrational * d,
            irrational: self.rational * rhs.irrational + self.irrational * rhs.rational,
            radicand,
        }
        .normalised()
    }
}
