//! Truncated univariate power series over any exact ℚ-algebra, and the
//! named characteristic series used for genera and Todd classes.
//!
//! A series of order `N` carries the coefficients of `x^0 ..= x^N`. Binary
//! operations truncate to the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{factorial, q, Q, QPoly, Ring};
use crate::symfunc::{BigradedElement, Partition};

#[derive(Clone, PartialEq)]
pub struct TruncSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients beyond `order`.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Self { order, coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, vec![])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, R::one())
    }

    pub fn constant(order: usize, c: R) -> Self {
        Self::new(order, vec![c])
    }

    /// The series `x`.
    pub fn variable(order: usize) -> Self {
        Self::new(order, vec![R::zero(), R::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order), self.coeffs.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn times(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// `s(c·x)`: coefficient `k` multiplied by `c^k`.
    pub fn rescale(&self, c: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self { order: self.order, coeffs: out }
    }

    /// `x^k · s`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.order, coeffs)
    }

    fn unit_constant(&self) -> Result<Q> {
        match self.coeffs[0].as_rational() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::NonUnitConstant { coeff: format!("{:?}", self.coeffs[0]) }),
        }
    }

    /// Multiplicative inverse. The constant term must be a nonzero scalar.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = Q::one() / self.unit_constant()?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(R::from_rational(inv0.clone()));
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-acc.scale(&inv0));
        }
        Ok(Self { order: self.order, coeffs: out })
    }

    /// `self ∘ inner`, i.e. `self(inner(x))`. `inner` must have zero
    /// constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant { coeff: format!("{:?}", inner.coeffs[0]) });
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for a in self.coeffs[..=order].iter().rev() {
            acc = acc * inner.clone() + Self::constant(order, a.clone());
        }
        Ok(acc)
    }

    /// The series `g` with `self(g(x)) = x`. Needs zero constant term and
    /// a nonzero scalar linear term.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant { coeff: format!("{:?}", self.coeffs[0]) });
        }
        let lin = self.coeff(1);
        let a1 = match lin.as_rational() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::NonUnitLinear { coeff: format!("{lin:?}") }),
        };
        let inv1 = Q::one() / a1;
        let mut g = Self::new(self.order, vec![R::zero(), R::from_rational(inv1.clone())]);
        // Fix one coefficient per pass: the x^n coefficient of self(g) is
        // linear in g_n with slope a1.
        for n in 2..=self.order {
            let err = self.compose(&g)?.coeff(n);
            g.coeffs[n] = g.coeffs[n].clone() - err.scale(&inv1);
        }
        Ok(g)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = (1..=self.order).map(|k| self.coeffs[k].scale(&q(k as i64))).collect();
        Self::new(self.order.saturating_sub(1), coeffs)
    }

    /// Antiderivative with zero constant term; the order grows by one.
    fn integral(&self) -> Self {
        let mut coeffs = vec![R::zero()];
        for k in 0..=self.order {
            coeffs.push(self.coeffs[k].scale(&(Q::one() / q(k as i64 + 1))));
        }
        Self::new(self.order + 1, coeffs)
    }

    /// `exp(s)` for `s` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant { coeff: format!("{:?}", self.coeffs[0]) });
        }
        // F' = s' F, so n F_n = Σ_{k=1}^{n} k s_k F_{n-k}.
        let mut out = vec![R::one()];
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].scale(&q(k as i64)) * out[n - k].clone();
            }
            out.push(acc.scale(&(Q::one() / q(n as i64))));
        }
        Ok(Self { order: self.order, coeffs: out })
    }

    /// `log(s)` for `s` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != R::one() {
            return Err(Error::ConstantNotOne { coeff: format!("{:?}", self.coeffs[0]) });
        }
        if self.order == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative() * self.inverse()?;
        Ok(quotient.integral())
    }

    /// Product over the parts of `λ` of the part-indexed coefficients:
    /// the coefficient of `m_λ` in `Π_i s(x_i)` when `s(0) = 1`.
    pub fn coeff_profile(&self, lam: &Partition) -> R {
        lam.parts().iter().fold(R::one(), |acc, &p| acc * self.coeff(p as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(order {}, {:?})", self.order, self.coeffs)
    }
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_fn(order, |k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_fn(order, |k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|a| -a.clone())
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![R::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        Self { order, coeffs: out }
    }
}

/// `e^{c x}` to the given order.
pub fn exp_linear<R: Ring>(order: usize, c: &R) -> TruncSeries<R> {
    TruncSeries::from_fn(order, |k| R::from_rational(Q::one() / factorial(k))).rescale(c)
}

/// `(1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!`.
pub fn todd_reciprocal(order: usize) -> TruncSeries<Q> {
    TruncSeries::from_fn(order, |k| {
        let c = Q::one() / factorial(k + 1);
        if k % 2 == 0 {
            c
        } else {
            -c
        }
    })
}

/// The Todd series `x / (1 - e^{-x})`.
pub fn todd_series(order: usize) -> TruncSeries<Q> {
    todd_reciprocal(order).inverse().expect("constant term is 1")
}

/// `x(1 + y e^{-x(1+y)}) / (1 - e^{-x(1+y)})` over `ℚ[y]`, the tangent
/// series of the `χ_y` genus.
pub fn chi_y_q(order: usize) -> TruncSeries<QPoly> {
    // With a = 1 + y:  Q(x) = todd(a x) + y · ((e^{-a x} - 1) / a) · todd(a x),
    // and (e^{-a x} - 1)/a = Σ_{k≥1} (-1)^k a^{k-1} x^k / k!  is polynomial in y.
    let a = QPoly::from_ints(&[1, 1]);
    let todd_ax = todd_series(order).map(|c| QPoly::from_rational(c.clone())).rescale(&a);
    let shifted_exp = TruncSeries::from_fn(order, |k| {
        if k == 0 {
            return QPoly::zero();
        }
        let c = Q::one() / factorial(k);
        let c = if k % 2 == 0 { c } else { -c };
        a.pow(k - 1).scale(&c)
    });
    todd_ax.clone() + shifted_exp.times(&QPoly::var()) * todd_ax
}

/// `sinh(x)/x` and `cosh(x)`.
fn sinh_over_x(order: usize) -> TruncSeries<Q> {
    TruncSeries::from_fn(order, |k| if k % 2 == 0 { Q::one() / factorial(k + 1) } else { Q::zero() })
}

fn cosh(order: usize) -> TruncSeries<Q> {
    TruncSeries::from_fn(order, |k| if k % 2 == 0 { Q::one() / factorial(k) } else { Q::zero() })
}

/// `tanh(x)/x`, the normal series of the signature.
pub fn tanh_over_x(order: usize) -> TruncSeries<Q> {
    sinh_over_x(order) * cosh(order).inverse().expect("constant term is 1")
}

/// `x/tanh(x)`, the tangent series of the signature.
pub fn signature_series(order: usize) -> TruncSeries<Q> {
    tanh_over_x(order).inverse().expect("constant term is 1")
}

/// `(x/2)/sinh(x/2)`, the tangent series of the Â genus.
pub fn ahat_series(order: usize) -> TruncSeries<Q> {
    sinh_over_x(order).rescale(&crate::ring::qf(1, 2)).inverse().expect("constant term is 1")
}

/// `(e^{2x} - e^{-2x}) / (4x) = Â(4x)^{-1}`: the normal series whose genus
/// is `2^{2n} Â` on a manifold of complex dimension `n`.
pub fn ahat_scaled_normal(order: usize) -> TruncSeries<Q> {
    let pos = exp_linear(order + 1, &q(2));
    let neg = exp_linear(order + 1, &q(-2));
    let diff = pos - neg;
    TruncSeries::from_fn(order, |k| diff.coeff(k + 1) / q(4))
}

/// `1 + x`, the tangent series whose genus is the top Chern number.
pub fn euler_series(order: usize) -> TruncSeries<Q> {
    TruncSeries::new(order, vec![q(1), q(1)])
}

fn lift(s: &TruncSeries<Q>) -> TruncSeries<BigradedElement> {
    s.map(|c| BigradedElement::from_rational(c.clone()))
}

/// `T_2(x) = Π_j (1 - y_j x)^{-1} = Σ_a h_a(y) x^a`.
pub fn t2_series(order: usize) -> TruncSeries<BigradedElement> {
    TruncSeries::from_fn(order, |a| BigradedElement::hy(Partition::row(a as u32)))
}

/// `Σ_m h_m(z) w^m` for a series `w` with zero constant term, i.e. the
/// single-variable identity `Π_k (1 - z_k w)^{-1}` evaluated at `w`.
pub fn complete_z_at(w: &TruncSeries<BigradedElement>) -> Result<TruncSeries<BigradedElement>> {
    let outer = TruncSeries::from_fn(w.order(), |m| BigradedElement::hz(Partition::row(m as u32)));
    outer.compose(w)
}

/// `T_1(x) = Π_k (1 - z_k x / Π_j (1 - y_j x))^{-1}`.
pub fn t1_series(order: usize) -> TruncSeries<BigradedElement> {
    let w = t2_series(order).shift(1);
    complete_z_at(&w).expect("w has zero constant term")
}

/// The per-root Todd class of the transformation `τ`: `T_1(x) · T_2(x)`.
pub fn t_tau_series(order: usize) -> TruncSeries<BigradedElement> {
    t1_series(order) * t2_series(order)
}

/// `T_A` per root: `T_1` with `x` replaced by `1 - e^{-x}`.
pub fn ta_series(order: usize) -> TruncSeries<BigradedElement> {
    let one_minus_exp = lift(&todd_reciprocal(order)).shift(1);
    t1_series(order).compose(&one_minus_exp).expect("1 - e^{-x} has zero constant term")
}

/// `T_B` per root: `((1 - e^{-x})/x) · Σ_a h_a(y) (1 - e^{-x})^a`.
pub fn tb_series(order: usize) -> TruncSeries<BigradedElement> {
    let recip = lift(&todd_reciprocal(order));
    let one_minus_exp = recip.shift(1);
    recip * t2_series(order).compose(&one_minus_exp).expect("zero constant term")
}
