//! Both sides of each Chern-number relation, evaluated exactly on products
//! of projective spaces, plus the congruence, integrality and parity checks
//! derived from them.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cobord::CobordClass;
use crate::error::{Error, Result};
use crate::geommodel::{
    chern_submanifold, model_class, pontryagin_submanifold, series_at, Bundle, CohoPoly, ProjProduct,
};
use crate::pseries::{
    ahat_scaled_normal, chi_y_q, t1_series, t2_series, t_tau_series, ta_series, tanh_over_x, tb_series,
    todd_reciprocal, todd_series, TruncSeries,
};
use crate::ring::{fmt_q, q, Q, QPoly, Ring};
use crate::symfunc::{h_values_of_variables, partitions_up_to, BigradedElement, Partition};

/// The relations the engine can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "thm3")]
    Thm3,
    #[serde(rename = "thm4.1")]
    Thm41,
    #[serde(rename = "thm4.2")]
    Thm42,
    #[serde(rename = "bv")]
    Bv,
    #[serde(rename = "thm5.1")]
    Thm51,
    #[serde(rename = "cor-as")]
    CorAs,
    #[serde(rename = "euler-even")]
    EulerEven,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Thm3,
        Relation::Thm41,
        Relation::Thm42,
        Relation::Bv,
        Relation::Thm51,
        Relation::CorAs,
        Relation::EulerEven,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::Thm3 => "thm3",
            Relation::Thm41 => "thm4.1",
            Relation::Thm42 => "thm4.2",
            Relation::Bv => "bv",
            Relation::Thm51 => "thm5.1",
            Relation::CorAs => "cor-as",
            Relation::EulerEven => "euler-even",
        }
    }

    /// Whether the relation takes a bundle argument.
    pub fn needs_bundle(self) -> bool {
        matches!(self, Relation::Thm51 | Relation::CorAs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Relation::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

/// One `h_μ(y) h_ν(z)` coefficient of a serialized bigraded value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTerm {
    pub y_partition: Partition,
    pub z_partition: Partition,
    pub numerator: String,
    pub denominator: String,
}

/// A side of a relation, in serializable form. Rationals are kept as
/// decimal strings so that nothing is lost in transit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Value {
    /// Sorted by `(y_partition, z_partition)`.
    Bigraded(Vec<BigradedTerm>),
    /// Coefficients of `1, y, y^2, ...`.
    Poly(Vec<String>),
    Scalar(String),
}

fn parse_q(num: &str, den: &str) -> Option<Q> {
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    (d != BigInt::from(0)).then(|| Q::new(n, d))
}

fn parse_q_str(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => parse_q(n, d),
        None => parse_q(s, "1"),
    }
}

impl Value {
    pub fn as_bigraded(&self) -> Option<BigradedElement> {
        match self {
            Value::Bigraded(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    let c = parse_q(&t.numerator, &t.denominator)?;
                    out.push(((t.y_partition.clone(), t.z_partition.clone()), c));
                }
                Some(BigradedElement::from_terms(out))
            }
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<QPoly> {
        match self {
            Value::Poly(cs) => cs.iter().map(|c| parse_q_str(c)).collect::<Option<Vec<_>>>().map(QPoly::new),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<Q> {
        match self {
            Value::Scalar(s) => parse_q_str(s),
            _ => None,
        }
    }
}

impl From<&BigradedElement> for Value {
    fn from(b: &BigradedElement) -> Self {
        Value::Bigraded(
            b.terms()
                .iter()
                .map(|((y, z), c)| BigradedTerm {
                    y_partition: y.clone(),
                    z_partition: z.clone(),
                    numerator: c.numer().to_string(),
                    denominator: c.denom().to_string(),
                })
                .collect(),
        )
    }
}

impl From<&QPoly> for Value {
    fn from(p: &QPoly) -> Self {
        Value::Poly(p.coeffs().iter().map(fmt_q).collect())
    }
}

impl From<&Q> for Value {
    fn from(c: &Q) -> Self {
        Value::Scalar(fmt_q(c))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bigraded(_) => match self.as_bigraded() {
                Some(b) => write!(f, "{b}"),
                None => write!(f, "<malformed>"),
            },
            Value::Poly(_) => match self.as_poly() {
                Some(p) => write!(f, "{p}"),
                None => write!(f, "<malformed>"),
            },
            Value::Scalar(s) => f.write_str(s),
        }
    }
}

/// Outcome of checking one relation on one model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relation: Relation,
    pub manifold: String,
    pub bundle: Option<String>,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
    /// Complex dimension of the model, i.e. the top degree compared.
    pub degrees: usize,
    pub millis: u64,
}

impl VerificationReport {
    fn new(relation: Relation, model: &ProjProduct, bundle: Option<&Bundle>, lhs: Value, rhs: Value, equal: bool, start: Instant) -> Self {
        Self {
            relation,
            manifold: model.to_string(),
            bundle: bundle.map(|b| b.to_string()),
            lhs,
            rhs,
            equal,
            degrees: model.dim(),
            millis: start.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.equal { "ok" } else { "FAIL" };
        write!(f, "{:<10} {:<16}", self.relation.id(), self.manifold)?;
        if let Some(b) = &self.bundle {
            write!(f, " {b:<12}")?;
        }
        write!(f, " {status:<4} lhs = {}  rhs = {}", self.lhs, self.rhs)
    }
}

fn lift_poly(s: &TruncSeries<Q>) -> TruncSeries<QPoly> {
    s.map(|c| QPoly::from_rational(c.clone()))
}

/// `⟨T_τ(ν), [M]⟩`, read off from the normal Chern numbers.
pub fn thm3_lhs(m: &CobordClass) -> BigradedElement {
    m.genus(&t_tau_series(m.dim()))
}

/// `S*_(y)(M) + Σ_{0<|λ|≤n} h_λ(z) S*_(y)([m_λ(ν)])`.
pub fn thm3_rhs(model: &ProjProduct) -> BigradedElement {
    let n = model.dim();
    let nu = Bundle::normal();
    partitions_up_to(n).into_iter().fold(BigradedElement::zero(), |acc, lam| {
        let class = if lam.is_empty() {
            model_class(model)
        } else {
            chern_submanifold(model, &lam, &nu).expect("the normal bundle is representable")
        };
        acc + BigradedElement::hz(lam) * BigradedElement::from_y(&class.s_star_y())
    })
}

pub fn thm3(model: &ProjProduct) -> VerificationReport {
    let start = Instant::now();
    let lhs = thm3_lhs(&model.normal_numbers());
    let rhs = thm3_rhs(model);
    let equal = lhs == rhs;
    VerificationReport::new(Relation::Thm3, model, None, (&lhs).into(), (&rhs).into(), equal, start)
}

/// Normal series of the `χ_y` genus, over `ℚ[y]`.
pub fn chi_y_normal(order: usize) -> TruncSeries<QPoly> {
    chi_y_q(order).inverse().expect("constant term is 1")
}

/// Left side `(1+y)^n T(M)` of the tangent `χ_y` relation.
pub fn thm4_1_lhs(model: &ProjProduct) -> QPoly {
    let n = model.dim();
    let todd = model.normal_numbers().genus(&todd_reciprocal(n));
    QPoly::from_ints(&[1, 1]).pow(n).scale(&todd)
}

/// Right side `χ_y(M) + Σ_k y^k χ_y([c_k(τ)])`.
pub fn thm4_1_rhs(model: &ProjProduct) -> QPoly {
    let n = model.dim();
    let s = chi_y_normal(n);
    let tau = Bundle::tangent();
    (0..=n).fold(QPoly::zero(), |acc, k| {
        let class = chern_submanifold(model, &Partition::column(k), &tau).expect("τ is representable");
        acc + QPoly::var().pow(k) * class.genus(&s)
    })
}

pub fn thm4_1(model: &ProjProduct) -> VerificationReport {
    let start = Instant::now();
    let lhs = thm4_1_lhs(model);
    let rhs = thm4_1_rhs(model);
    let equal = lhs == rhs;
    VerificationReport::new(Relation::Thm41, model, None, (&lhs).into(), (&rhs).into(), equal, start)
}

fn check_div4(model: &ProjProduct) -> Result<()> {
    if model.dim().is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::WrongDimension { dim: 2 * model.dim() })
    }
}

/// `2^{4k} Â(M)` for a manifold of real dimension `4k`.
pub fn thm4_2_lhs(model: &ProjProduct) -> Result<Q> {
    check_div4(model)?;
    Ok(model.normal_numbers().genus(&ahat_scaled_normal(model.dim())))
}

/// `σ(M) + Σ_k (-1)^k σ([P_k(τ)])`.
pub fn thm4_2_rhs(model: &ProjProduct) -> Result<Q> {
    check_div4(model)?;
    let n = model.dim();
    let s = tanh_over_x(n);
    let mut acc = model.normal_numbers().genus(&s);
    for k in 1..=n / 2 {
        let sigma = pontryagin_submanifold(model, k).genus(&s);
        acc = if k % 2 == 0 { acc + sigma } else { acc - sigma };
    }
    Ok(acc)
}

pub fn thm4_2(model: &ProjProduct) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = thm4_2_lhs(model)?;
    let rhs = thm4_2_rhs(model)?;
    let equal = lhs == rhs;
    Ok(VerificationReport::new(Relation::Thm42, model, None, (&lhs).into(), (&rhs).into(), equal, start))
}

/// Number of ones in the binary expansion of `n`.
pub fn alpha(n: usize) -> u32 {
    n.count_ones()
}

/// Reports `value mod 2^{α(k)}` against zero, where `value` is the
/// signature sum of a manifold of real dimension `4k`. A non-integral value
/// is reported unreduced.
pub fn bv_congruence(model: &ProjProduct) -> Result<VerificationReport> {
    let start = Instant::now();
    let value = thm4_2_rhs(model)?;
    let modulus = BigInt::from(1u64 << alpha(model.dim() / 2));
    let residue = if value.is_integer() {
        Q::from_integer(value.numer().mod_floor(&modulus))
    } else {
        value
    };
    let zero = Q::zero();
    let equal = residue.is_zero();
    Ok(VerificationReport::new(Relation::Bv, model, None, (&residue).into(), (&zero).into(), equal, start))
}

/// `Π_{roots of η} s(x) · Π_{virtual roots of η} s(x)^{-1}` as a class on the model.
fn bundle_class(model: &ProjProduct, bundle: &Bundle, s: &TruncSeries<BigradedElement>) -> Result<CohoPoly<BigradedElement>> {
    let (pos, neg) = bundle.cohomology_root_polys::<BigradedElement>(model)?;
    let inv = s.inverse()?;
    Ok(model.multiplicative_class(s, &pos) * model.multiplicative_class(&inv, &neg))
}

/// `⟨T_1(η) T_2(ν), [M]⟩`, computed in cohomology of the model.
pub fn thm5_1_lhs(model: &ProjProduct, eta: &Bundle) -> Result<BigradedElement> {
    let n = model.dim();
    let t1 = bundle_class(model, eta, &t1_series(n))?;
    let t2 = bundle_class(model, &Bundle::normal(), &t2_series(n))?;
    Ok(model.pair(&(t1 * t2)))
}

/// `S*_(y)(M) + Σ_{0<|λ|≤n} h_λ(z) S*_(y)([m_λ(η)])`, from the cobordism duals.
pub fn thm5_1_rhs(model: &ProjProduct, eta: &Bundle) -> Result<BigradedElement> {
    let n = model.dim();
    let mut acc = BigradedElement::zero();
    for lam in partitions_up_to(n) {
        let class = if lam.is_empty() { model_class(model) } else { chern_submanifold(model, &lam, eta)? };
        acc = acc + BigradedElement::hz(lam) * BigradedElement::from_y(&class.s_star_y());
    }
    Ok(acc)
}

pub fn thm5_1(model: &ProjProduct, eta: &Bundle) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = thm5_1_lhs(model, eta)?;
    let rhs = thm5_1_rhs(model, eta)?;
    let equal = lhs == rhs;
    Ok(VerificationReport::new(Relation::Thm51, model, Some(eta), (&lhs).into(), (&rhs).into(), equal, start))
}

/// `⟨T_A(η) T_B(ν), [M]⟩`.
pub fn cor_as_value(model: &ProjProduct, eta: &Bundle) -> Result<BigradedElement> {
    let n = model.dim();
    let ta = bundle_class(model, eta, &ta_series(n))?;
    let tb = bundle_class(model, &Bundle::normal(), &tb_series(n))?;
    Ok(model.pair(&(ta * tb)))
}

/// Compares the value against its coefficientwise floor, so the report is
/// equal exactly when every coefficient is an integer.
pub fn cor_as(model: &ProjProduct, eta: &Bundle) -> Result<VerificationReport> {
    let start = Instant::now();
    let value = cor_as_value(model, eta)?;
    let floor = BigradedElement::from_terms(value.terms().iter().map(|(k, c)| (k.clone(), c.floor())));
    let equal = value.is_integral();
    debug_assert_eq!(equal, value == floor);
    Ok(VerificationReport::new(Relation::CorAs, model, Some(eta), (&value).into(), (&floor).into(), equal, start))
}

/// The polynomial in `z` obtained by splitting off the tangent line of the
/// `CP^1` factor `factor` with `z_1 = z`, other `z` and all `y` zero:
/// `⟨x/(1-e^{-x}) Π_{roots of τ_1} x_i(1 - z(1-e^{-x_i}))/(1-e^{-x_i}), [M]⟩`
/// where `x = 2 x_factor` and `τ_1 = τ - O(2)`.
pub fn euler_even_poly(model: &ProjProduct, factor: usize) -> Result<QPoly> {
    if model.dims().get(factor) != Some(&1) {
        return Err(Error::NoLineFactor { factor });
    }
    let n = model.dim();
    let todd = lift_poly(&todd_series(n));
    let one_minus_exp = lift_poly(&todd_reciprocal(n)).shift(1);
    let per_root = todd.clone() * (TruncSeries::one(n) - one_minus_exp.times(&QPoly::var()));
    let mut degrees = vec![0; model.factors()];
    degrees[factor] = 2;
    let line: CohoPoly<QPoly> = model.linear(&degrees);
    let tau: Vec<CohoPoly<QPoly>> = model.tangent_roots();
    let class = model.multiplicative_class(&per_root, &tau)
        * series_at(&per_root.inverse()?, &line)
        * series_at(&todd, &line);
    Ok(model.pair(&class))
}

/// The first `CP^1` factor, if any.
pub fn line_factor(model: &ProjProduct) -> Option<usize> {
    model.dims().iter().position(|&d| d == 1)
}

/// Checks that the `z^{n-1}` coefficient is `(-1)^{n-1} χ(M)/2`, an integer.
pub fn euler_even(model: &ProjProduct, factor: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = model.dim();
    let coeff = euler_even_poly(model, factor)?.coeff(n - 1);
    let half = model.euler_char() / q(2);
    let expected = if n % 2 == 1 { half } else { -half };
    let equal = coeff == expected && coeff.is_integer();
    let bundle = Bundle::line({
        let mut d = vec![0; model.factors()];
        d[factor] = 2;
        d
    });
    Ok(VerificationReport::new(Relation::EulerEven, model, Some(&bundle), (&coeff).into(), (&expected).into(), equal, start))
}

/// Specializes a bigraded identity: `h_a(y) ↦` the `a`-th coefficient of
/// `y_series`, and the `z` slot to the given finitely many variables.
pub fn specialize_relation<R: Ring>(rel: &BigradedElement, y_series: &TruncSeries<R>, z_values: &[R]) -> Result<R> {
    let deg = rel
        .terms()
        .keys()
        .map(|(y, z)| y.weight().max(z.weight()))
        .max()
        .unwrap_or(0);
    if y_series.order() < deg {
        return Err(Error::OrderTooSmall { have: y_series.order(), need: deg });
    }
    let y_values: Vec<R> = (1..=deg).map(|a| y_series.coeff(a)).collect();
    let z_values = h_values_of_variables(z_values, deg);
    rel.specialize(&y_values, &z_values)
}

/// One entry of the verification matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub relation: Relation,
    pub model: ProjProduct,
    pub bundle: Option<Bundle>,
}

impl Case {
    pub fn run(&self) -> Result<VerificationReport> {
        let bundle = || self.bundle.clone().unwrap_or_default();
        match self.relation {
            Relation::Thm3 => Ok(thm3(&self.model)),
            Relation::Thm41 => Ok(thm4_1(&self.model)),
            Relation::Thm42 => thm4_2(&self.model),
            Relation::Bv => bv_congruence(&self.model),
            Relation::Thm51 => thm5_1(&self.model, &bundle()),
            Relation::CorAs => cor_as(&self.model, &bundle()),
            Relation::EulerEven => {
                let factor = line_factor(&self.model).ok_or(Error::NoLineFactor { factor: 0 })?;
                euler_even(&self.model, factor)
            }
        }
    }
}

/// Products of projective spaces of total complex dimension `0..=max`,
/// factors in weakly decreasing order.
pub fn models_up_to(max: usize) -> Vec<ProjProduct> {
    partitions_up_to(max)
        .into_iter()
        .map(|l| ProjProduct::new(l.parts().iter().map(|&d| d as usize).collect::<Vec<_>>()))
        .collect()
}

/// Bundles tried against each model: zero, the coordinate lines and their
/// conjugates, a sum of two lines, and `τ`, `ν`, `τ̄`. With `all_lines`,
/// every line `O(a)` with entries in `{-1, 0, 1, 2}` is added as well.
pub fn test_bundles(model: &ProjProduct, all_lines: bool) -> Vec<Bundle> {
    let r = model.factors();
    let mut out = vec![Bundle::zero(), Bundle::tangent(), Bundle::normal(), Bundle::tangent().conj()];
    if r == 0 {
        return out;
    }
    let unit = |i: usize, a: i64| {
        let mut d = vec![0; r];
        d[i] = a;
        Bundle::line(d)
    };
    for i in 0..r {
        out.push(unit(i, 1));
        out.push(unit(i, -1));
    }
    out.push(unit(0, 1).sum(unit(r - 1, 1)));
    if all_lines {
        let mut d = vec![-1i64; r];
        loop {
            let b = Bundle::line(d.clone());
            if !out.contains(&b) && d.iter().any(|&a| a != 0) {
                out.push(b);
            }
            let Some(i) = d.iter().position(|&a| a < 2) else { break };
            d[i] += 1;
            d[..i].iter_mut().for_each(|a| *a = -1);
        }
    }
    out
}

/// The full matrix: every relation on every model of dimension at most
/// `max_dim`. Bundle relations are capped at dimension 3.
pub fn test_matrix(max_dim: usize) -> Vec<Case> {
    let models = models_up_to(max_dim);
    let mut cases = Vec::new();
    for relation in Relation::ALL {
        for model in &models {
            let case = |bundle| Case { relation, model: model.clone(), bundle };
            match relation {
                Relation::Thm3 | Relation::Thm41 => cases.push(case(None)),
                Relation::Thm42 | Relation::Bv if model.dim() % 2 == 0 => cases.push(case(None)),
                Relation::EulerEven if line_factor(model).is_some() => cases.push(case(None)),
                Relation::Thm51 if model.dim() <= 3 => {
                    cases.extend(test_bundles(model, false).into_iter().map(|b| case(Some(b))))
                }
                Relation::CorAs if model.dim() <= 3 => {
                    cases.extend(test_bundles(model, true).into_iter().map(|b| case(Some(b))))
                }
                _ => {}
            }
        }
    }
    cases
}

/// Runs cases concurrently; results come back in input order.
pub fn run_matrix(cases: &[Case]) -> Vec<Result<VerificationReport>> {
    cases.par_iter().map(Case::run).collect()
}

#[cfg(test)]
mod tests;
