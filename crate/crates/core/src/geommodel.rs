//! Products of complex projective spaces as a test universe.
//!
//! `M = CP^{n_1} × ... × CP^{n_r}` has cohomology `R[x_1..x_r]/(x_i^{n_i+1})`
//! and cobordism `Ω[u_1..u_r]/(u_i^{n_i+1})`, where `u_i` is the cobordism
//! first Chern class of the pulled-back hyperplane bundle. The monomial
//! `Π u_i^{a_i}` is dual to the sub-product `Π CP^{n_i - a_i}`, which gives
//! an independent route to the classes of virtual Chern submanifolds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cobord::{cp_product, fgl_inverse, CobordClass, GradedClass};
use crate::error::{Error, Result};
use crate::pseries::TruncSeries;
use crate::ring::{q, Q, Ring};
use crate::symfunc::{partitions_of, Basis, Partition, SymFn};

/// `CP^{n_1} × ... × CP^{n_r}`; the empty list is the point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjProduct {
    dims: Vec<usize>,
}

impl ProjProduct {
    pub fn new(dims: impl Into<Vec<usize>>) -> Self {
        Self { dims: dims.into() }
    }

    pub fn point() -> Self {
        Self { dims: vec![] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    /// Total complex dimension.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn shape(&self) -> Arc<[usize]> {
        self.dims.clone().into()
    }

    pub fn constant<R: Ring>(&self, c: R) -> CohoPoly<R> {
        CohoPoly::constant(c).with_shape(self.shape())
    }

    /// The generator of factor `i` (hyperplane class `x_i` or `u_i`).
    pub fn generator<R: Ring>(&self, i: usize) -> CohoPoly<R> {
        let mut key = vec![0u32; i + 1];
        key[i] = 1;
        CohoPoly::from_terms(Some(self.shape()), [(key, R::one())])
    }

    /// `Σ_i a_i x_i` for an integer degree vector.
    pub fn linear<R: Ring>(&self, degrees: &[i64]) -> CohoPoly<R> {
        degrees
            .iter()
            .enumerate()
            .fold(self.constant(R::zero()), |acc, (i, &a)| acc + self.generator::<R>(i).scale(&q(a)))
    }

    /// Kronecker pairing with the fundamental class: the coefficient of the
    /// top monomial; components of other degrees pair to zero.
    pub fn pair<R: Ring>(&self, p: &CohoPoly<R>) -> R {
        p.coeff(&trim(self.dims.iter().map(|&d| d as u32).collect()))
    }

    /// Cohomology tangent roots: `x_i` with multiplicity `n_i + 1` (the
    /// roots of `τ ⊕ ℂ^r`).
    pub fn tangent_roots<R: Ring>(&self) -> Vec<CohoPoly<R>> {
        self.dims
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(self.generator(i), n + 1))
            .collect()
    }

    /// Tangent monomial Chern numbers, evaluated on the tangent roots
    /// through power sums.
    pub fn tangent_numbers(&self) -> BTreeMap<Partition, Q> {
        let n = self.dim();
        let roots = self.tangent_roots::<Q>();
        let power_sums: Vec<CohoPoly<Q>> = (1..=n.max(1))
            .map(|k| roots.iter().fold(self.constant(Q::zero()), |acc, r| acc + r.pow(k)))
            .collect();
        partitions_of(n)
            .into_iter()
            .map(|lam| {
                let f = SymFn::basis_element(Basis::M, lam.clone());
                let class = f.evaluate(Basis::P, &power_sums).expect("enough power sums");
                (lam, self.pair(&class))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// The cobordism class of `M`, from normal Chern numbers computed by
    /// expanding `c(ν) = Π (1 + x_i)^{-(n_i+1)}` and substituting the
    /// resulting Chern classes into the e-basis expansion of each `m_λ`.
    pub fn normal_numbers(&self) -> CobordClass {
        let n = self.dim();
        let tangent = self.tangent_roots::<Q>();
        let classes = chern_classes(self, &[], &tangent, n.max(1));
        CobordClass::from_normal(
            n,
            partitions_of(n).into_iter().map(|lam| {
                let f = SymFn::basis_element(Basis::M, lam.clone());
                let class = f.evaluate(Basis::E, &classes).expect("enough Chern classes");
                (lam, self.pair(&class))
            }),
        )
    }

    /// `⟨c_n(τ), [M]⟩`.
    pub fn euler_char(&self) -> Q {
        let n = self.dim();
        if n == 0 {
            return Q::one();
        }
        let classes = chern_classes(self, &self.tangent_roots::<Q>(), &[], n);
        self.pair(&classes[n - 1])
    }

    /// `Π_roots s(r)` for a multiplicative class with per-root series `s`.
    pub fn multiplicative_class<R: Ring>(&self, s: &TruncSeries<R>, roots: &[CohoPoly<R>]) -> CohoPoly<R> {
        roots.iter().fold(self.constant(R::one()), |acc, r| acc * series_at(s, r))
    }
}

impl fmt::Display for ProjProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "pt");
        }
        let names: Vec<String> = self.dims.iter().map(|d| format!("CP({d})")).collect();
        write!(f, "{}", names.join("*"))
    }
}

fn trim(mut key: Vec<u32>) -> Vec<u32> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

/// Polynomial in the factor generators of a [`ProjProduct`], truncated by
/// `x_i^{n_i+1} = 0`. Exponent vectors are stored with trailing zeros
/// trimmed, so constants need no knowledge of the model.
#[derive(Clone)]
pub struct CohoPoly<R> {
    shape: Option<Arc<[usize]>>,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> CohoPoly<R> {
    pub fn constant(c: R) -> Self {
        Self::from_terms(None, [(vec![], c)])
    }

    fn from_terms(shape: Option<Arc<[usize]>>, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Self {
        let mut out = Self { shape, terms: BTreeMap::new() };
        for (k, c) in terms {
            out.add_term(trim(k), c);
        }
        out
    }

    fn with_shape(mut self, shape: Arc<[usize]>) -> Self {
        self.shape = Some(shape);
        self
    }

    fn add_term(&mut self, key: Vec<u32>, c: R) {
        if let Some(shape) = &self.shape {
            if key.iter().enumerate().any(|(i, &a)| a as usize > shape.get(i).copied().unwrap_or(0)) {
                return;
            }
        }
        let merged = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    fn join_shape(&self, other: &Self) -> Option<Arc<[usize]>> {
        match (&self.shape, &other.shape) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "polynomials on different models");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Coefficient of the monomial with exponent vector `key`.
    pub fn coeff(&self, key: &[u32]) -> R {
        self.terms.get(&trim(key.to_vec())).cloned().unwrap_or_else(R::zero)
    }

    /// Iterates over `(exponent vector, coefficient)`, trailing zeros trimmed.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &R)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    /// The component of cohomological degree `2k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        Self {
            shape: self.shape.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.iter().map(|&a| a as usize).sum::<usize>() == k)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> CohoPoly<S> {
        CohoPoly::from_terms(self.shape.clone(), self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn times(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }
}

impl<R: Ring> PartialEq for CohoPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for CohoPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (j, &a) in k.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{}", j + 1)?,
                    _ => write!(f, "*x{}^{a}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> Add for CohoPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = Self { shape: self.join_shape(&rhs), terms: self.terms };
        for (k, c) in rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl<R: Ring> Neg for CohoPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { shape: self.shape, terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<R: Ring> Sub for CohoPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

impl<R: Ring> Mul for CohoPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self { shape: self.join_shape(&rhs), terms: BTreeMap::new() };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(add_exponents(ka, kb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Ring> Ring for CohoPoly<R> {
    fn zero() -> Self {
        Self { shape: None, terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(c: Q) -> Self {
        Self::constant(R::from_rational(c))
    }
    fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).and_then(R::as_rational),
            _ => None,
        }
    }
    fn scale(&self, c: &Q) -> Self {
        self.map(|a| a.scale(c))
    }
}

/// Evaluates `s(root)` in the truncated ring. `root` must be nilpotent
/// (zero constant term), and `s` must have order at least the model
/// dimension for the result to be exact.
pub fn series_at<R: Ring>(s: &TruncSeries<R>, root: &CohoPoly<R>) -> CohoPoly<R> {
    debug_assert!(root.coeff(&[]).is_zero(), "root must have zero constant term");
    let mut acc = CohoPoly::zero();
    for c in s.coeffs().iter().rev() {
        acc = acc * root.clone() + CohoPoly::constant(c.clone());
    }
    acc
}

/// `c_1, ..., c_count` of the virtual bundle with Chern roots
/// `positive - negative`, i.e. coefficients of `Π(1 + r t) / Π(1 + s t)`.
pub fn chern_classes<R: Ring>(
    model: &ProjProduct,
    positive: &[CohoPoly<R>],
    negative: &[CohoPoly<R>],
    count: usize,
) -> Vec<CohoPoly<R>> {
    let mut c = vec![model.constant(R::zero()); count + 1];
    c[0] = model.constant(R::one());
    for r in positive {
        for k in (1..=count).rev() {
            c[k] = c[k].clone() + r.clone() * c[k - 1].clone();
        }
    }
    for r in negative {
        // dividing by (1 + r t): c'_k = c_k - r c'_{k-1}
        for k in 1..=count {
            c[k] = c[k].clone() - r.clone() * c[k - 1].clone();
        }
    }
    c.split_off(1)
}

/// One summand of a bundle expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Summand {
    /// `O(a_1, ..., a_r)`: the line bundle with first Chern class `Σ a_i x_i`.
    Line(Vec<i64>),
    Tangent,
    /// The stable normal bundle, `-τ` in K-theory.
    Normal,
    ConjTangent,
    ConjNormal,
}

impl Summand {
    pub fn conj(&self) -> Summand {
        match self {
            Summand::Line(a) => Summand::Line(a.iter().map(|x| -x).collect()),
            Summand::Tangent => Summand::ConjTangent,
            Summand::ConjTangent => Summand::Tangent,
            Summand::Normal => Summand::ConjNormal,
            Summand::ConjNormal => Summand::Normal,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Line(a) => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "O({})", parts.join(","))
            }
            Summand::Tangent => write!(f, "tau"),
            Summand::Normal => write!(f, "nu"),
            Summand::ConjTangent => write!(f, "conj(tau)"),
            Summand::ConjNormal => write!(f, "conj(nu)"),
        }
    }
}

/// A (virtual) complex vector bundle over a model: a sum of summands.
/// The empty sum is the zero bundle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bundle {
    pub summands: Vec<Summand>,
}

/// Chern roots of a virtual bundle: the positive part and the part that
/// is subtracted.
pub type Roots<T> = (Vec<T>, Vec<T>);

/// A cobordism Chern root: the zero root, `u_i`, or `ι(u_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CobordRoot {
    Zero,
    Std(usize),
    Conj(usize),
}

impl Bundle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn tangent() -> Self {
        Self { summands: vec![Summand::Tangent] }
    }

    pub fn normal() -> Self {
        Self { summands: vec![Summand::Normal] }
    }

    pub fn line(degrees: impl Into<Vec<i64>>) -> Self {
        Self { summands: vec![Summand::Line(degrees.into())] }
    }

    pub fn sum(mut self, other: Bundle) -> Self {
        self.summands.extend(other.summands);
        self
    }

    pub fn conj(&self) -> Self {
        Self { summands: self.summands.iter().map(Summand::conj).collect() }
    }

    fn check_lines(&self, model: &ProjProduct) -> Result<()> {
        for s in &self.summands {
            if let Summand::Line(a) = s {
                if a.len() != model.factors() {
                    return Err(Error::FactorMismatch { expected: model.factors(), got: a.len() });
                }
            }
        }
        Ok(())
    }

    /// Cohomology Chern roots as degree vectors, split into the positive
    /// and the negative (virtual) part.
    pub fn cohomology_roots(&self, model: &ProjProduct) -> Result<Roots<Vec<i64>>> {
        self.check_lines(model)?;
        let r = model.factors();
        let tangent = |sign: i64| -> Vec<Vec<i64>> {
            model
                .dims()
                .iter()
                .enumerate()
                .flat_map(|(i, &n)| {
                    let mut v = vec![0; r];
                    v[i] = sign;
                    std::iter::repeat_n(v, n + 1)
                })
                .collect()
        };
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for s in &self.summands {
            match s {
                Summand::Line(a) => pos.push(a.clone()),
                Summand::Tangent => pos.extend(tangent(1)),
                Summand::ConjTangent => pos.extend(tangent(-1)),
                Summand::Normal => neg.extend(tangent(1)),
                Summand::ConjNormal => neg.extend(tangent(-1)),
            }
        }
        Ok((pos, neg))
    }

    /// Cohomology Chern roots as polynomials over `R`.
    pub fn cohomology_root_polys<R: Ring>(&self, model: &ProjProduct) -> Result<Roots<CohoPoly<R>>> {
        let (pos, neg) = self.cohomology_roots(model)?;
        let lift = |v: Vec<Vec<i64>>| v.iter().map(|d| model.linear(d)).collect();
        Ok((lift(pos), lift(neg)))
    }

    fn cobordism_roots(&self, model: &ProjProduct) -> Result<Roots<CobordRoot>> {
        let (pos, neg) = self.cohomology_roots(model)?;
        let convert = |v: Vec<Vec<i64>>| -> Result<Vec<CobordRoot>> {
            v.into_iter()
                .map(|d| {
                    let nonzero: Vec<(usize, i64)> =
                        d.iter().copied().enumerate().filter(|&(_, a)| a != 0).collect();
                    match nonzero.as_slice() {
                        [] => Ok(CobordRoot::Zero),
                        [(i, 1)] => Ok(CobordRoot::Std(*i)),
                        [(i, -1)] => Ok(CobordRoot::Conj(*i)),
                        _ => Err(Error::NotRepresentable { bundle: self.to_string() }),
                    }
                })
                .collect()
        };
        Ok((convert(pos)?, convert(neg)?))
    }

    /// Whether every root is `0`, `u_i` or `ι(u_i)` at the cobordism level.
    pub fn is_cobordism_representable(&self, model: &ProjProduct) -> bool {
        self.cobordism_roots(model).is_ok()
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// `f(η)` in complex cobordism of the model: `f` evaluated on the cobordism
/// Chern roots of `η` (`u_i` for standard lines, `ι(u_i)` for conjugates,
/// inverse total class for the virtual part).
pub fn cobordism_chern_poly(model: &ProjProduct, bundle: &Bundle, f: &SymFn) -> Result<CohoPoly<GradedClass>> {
    let (pos, neg) = bundle.cobordism_roots(model)?;
    let n = model.dim();
    let iota = fgl_inverse(n.max(1));
    let to_poly = |r: &CobordRoot| -> Option<CohoPoly<GradedClass>> {
        match *r {
            CobordRoot::Zero => None,
            CobordRoot::Std(i) => Some(model.generator(i)),
            CobordRoot::Conj(i) => Some(series_at(&iota, &model.generator(i))),
        }
    };
    let pos: Vec<_> = pos.iter().filter_map(to_poly).collect();
    let neg: Vec<_> = neg.iter().filter_map(to_poly).collect();
    let f_e = f.to_basis(Basis::E);
    let top_part = f_e.coeffs().keys().flat_map(|p| p.parts().first().copied()).max().unwrap_or(0) as usize;
    let classes = chern_classes(model, &pos, &neg, top_part.max(1));
    let value = f_e.evaluate(Basis::E, &classes)?;
    Ok(value + model.constant(GradedClass::zero()))
}

/// Cobordism class of the virtual submanifold dual to `p`:
/// `c · Π u_i^{a_i} ↦ c × Π CP^{n_i - a_i}`.
pub fn dual_class(model: &ProjProduct, p: &CohoPoly<GradedClass>) -> GradedClass {
    let mut out = GradedClass::zero();
    for (key, c) in p.terms() {
        let exps = (0..model.factors()).map(|i| key.get(i).copied().unwrap_or(0) as usize);
        if exps.clone().zip(model.dims()).any(|(a, &n)| a > n) {
            continue;
        }
        let sub = cp_product(exps.zip(model.dims()).map(|(a, &n)| n - a));
        out = out + c.clone() * GradedClass::from(sub);
    }
    out
}

/// The virtual Chern submanifold `[m_λ(η)]`.
pub fn chern_submanifold(model: &ProjProduct, lam: &Partition, bundle: &Bundle) -> Result<GradedClass> {
    let f = SymFn::basis_element(Basis::M, lam.clone());
    Ok(dual_class(model, &cobordism_chern_poly(model, bundle, &f)?))
}

/// The tangent virtual Pontrjagin submanifold `[(-1)^k c_{2k}(τ ⊕ τ̄)]`.
pub fn pontryagin_submanifold(model: &ProjProduct, k: usize) -> GradedClass {
    let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
    let f = SymFn::basis_element(Basis::E, Partition::row(2 * k as u32)).scale(&sign);
    let bundle = Bundle::tangent().sum(Bundle::tangent().conj());
    let poly = cobordism_chern_poly(model, &bundle, &f).expect("τ ⊕ τ̄ is representable");
    dual_class(model, &poly)
}

/// The class of the model itself, as a graded class.
pub fn model_class(model: &ProjProduct) -> GradedClass {
    model.normal_numbers().into()
}

#[cfg(test)]
mod tests;
