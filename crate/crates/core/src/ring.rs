//! Exact scalars and the coefficient-ring contract shared by every engine
//! in the crate.
//!
//! Every ring used here is a commutative ℚ-algebra: plain rationals, ℚ[y],
//! the bigraded symmetric-function ring and rational cobordism classes of a
//! point. Power series and cohomology polynomials are generic over [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed as _, ToPrimitive as _};

/// Arbitrary-precision rational scalar.
pub type Q = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds the rational `num/den`. Panics if `den` is zero.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Q {
    let mut acc = BigInt::from(1u32);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return q(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Converts an integral rational to `i64`, if it fits.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Exact commutative ℚ-algebra with unit.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// The image of a rational under the structure map ℚ → R.
    fn from_rational(c: Q) -> Self;
    /// Returns `Some(c)` when `self == from_rational(c)`.
    fn as_rational(&self) -> Option<Q>;

    fn scale(&self, c: &Q) -> Self {
        self.clone() * Self::from_rational(c.clone())
    }

    fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Ring for Q {
    fn zero() -> Self {
        <Q as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <Q as num_traits::One>::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_rational(c: Q) -> Self {
        c
    }
    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
}

/// Univariate polynomial over ℚ in a free variable `y`; `coeffs[k]` is the
/// coefficient of `y^k`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| q(c)).collect())
    }

    /// The variable `y`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(<Q as Ring>::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &Q) -> Q {
        let mut acc = <Q as Ring>::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == <Q as Ring>::one();
            match k {
                0 => write!(f, "{}", fmt_q(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", fmt_q(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        self + (-rhs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return QPoly::default();
        }
        let mut out = vec![<Q as Ring>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Ring for QPoly {
    fn zero() -> Self {
        QPoly::default()
    }
    fn one() -> Self {
        QPoly::from_ints(&[1])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(c: Q) -> Self {
        QPoly::new(vec![c])
    }
    fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(<Q as Ring>::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
    fn scale(&self, c: &Q) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}
