use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::{fmt_q, Q, Ring};

use super::{Basis, Partition, SymFn};

/// Element of `Λ[y] ⊗ Λ[z] ⊗ ℚ` in the product basis `h_λ(y) · h_μ(z)`.
///
/// Both factors are free polynomial rings on the `h_k`, so multiplication
/// is partition union in each slot.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BigradedElement {
    coeffs: BTreeMap<(Partition, Partition), Q>,
}

impl BigradedElement {
    pub fn from_terms(terms: impl IntoIterator<Item = ((Partition, Partition), Q)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Self { coeffs }
    }

    /// The basis element `h_y(y) · h_z(z)`.
    pub fn basis(y: Partition, z: Partition) -> Self {
        Self::from_terms([((y, z), Q::one())])
    }

    /// `h_λ(y)`.
    pub fn hy(lam: Partition) -> Self {
        Self::basis(lam, Partition::empty())
    }

    /// `h_λ(z)`.
    pub fn hz(lam: Partition) -> Self {
        Self::basis(Partition::empty(), lam)
    }

    /// Embeds a symmetric function in the `y` slot.
    pub fn from_y(f: &SymFn) -> Self {
        let h = f.to_basis(Basis::H);
        Self::from_terms(h.coeffs().iter().map(|(p, c)| ((p.clone(), Partition::empty()), c.clone())))
    }

    /// Embeds a symmetric function in the `z` slot.
    pub fn from_z(f: &SymFn) -> Self {
        let h = f.to_basis(Basis::H);
        Self::from_terms(h.coeffs().iter().map(|(p, c)| ((Partition::empty(), p.clone()), c.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), Q> {
        &self.coeffs
    }

    pub fn coeff(&self, y: &Partition, z: &Partition) -> Q {
        self.coeffs.get(&(y.clone(), z.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms of total degree `|λy| + |λz| = d`.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|((y, z), _)| y.weight() + z.weight() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether every term has total degree `d` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.coeffs.keys().all(|(y, z)| y.weight() + z.weight() == d)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Applies `h_a(y) ↦ y_values[a - 1]` and `h_a(z) ↦ z_values[a - 1]`.
    pub fn specialize<R: Ring>(&self, y_values: &[R], z_values: &[R]) -> crate::error::Result<R> {
        let mut acc = R::zero();
        for ((y, z), c) in &self.coeffs {
            let mut term = R::from_rational(c.clone());
            for (lam, vals) in [(y, y_values), (z, z_values)] {
                for &part in lam.parts() {
                    let v = vals.get(part as usize - 1).ok_or(crate::error::Error::InsufficientValues {
                        needed: part as usize,
                        given: vals.len(),
                    })?;
                    term = term * v.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

impl fmt::Debug for BigradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BigradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, ((y, z), c)) in self.coeffs.iter().enumerate() {
            let negative = c < &Q::zero();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            let mut factors = Vec::new();
            if !y.is_empty() {
                factors.push(format!("h{y}(y)"));
            }
            if !z.is_empty() {
                factors.push(format!("h{z}(z)"));
            }
            if factors.is_empty() || mag != Q::one() {
                factors.insert(0, fmt_q(&mag));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for BigradedElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_terms(self.coeffs.into_iter().chain(rhs.coeffs))
    }
}

impl Neg for BigradedElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for BigradedElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for BigradedElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut terms = Vec::with_capacity(self.coeffs.len() * rhs.coeffs.len());
        for ((ya, za), ca) in &self.coeffs {
            for ((yb, zb), cb) in &rhs.coeffs {
                terms.push(((ya.union(yb), za.union(zb)), ca * cb));
            }
        }
        Self::from_terms(terms)
    }
}

impl Ring for BigradedElement {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::basis(Partition::empty(), Partition::empty())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(c: Q) -> Self {
        Self::from_terms([((Partition::empty(), Partition::empty()), c)])
    }
    fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => {
                let ((y, z), c) = self.coeffs.iter().next().unwrap();
                (y.is_empty() && z.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }
    fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, a)| (k.clone(), a * c)))
    }
}
