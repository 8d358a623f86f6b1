//! Rational complex cobordism classes of a point.
//!
//! A class is identified with its vector of NORMAL monomial Chern numbers
//! `m_λ(ν(M))[M]`, which is faithful after tensoring with ℚ. Tangent numbers
//! are reachable through [`normal_from_tangent`], the degree-`n` antipode.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::pseries::TruncSeries;
use crate::ring::{fmt_q, q, Q, Ring};
use crate::symfunc::{
    mat_inverse, monomial_count, partitions_of, Basis, Partition, SymFn, TransitionMatrix,
};

/// Homogeneous rational cobordism class of complex dimension `dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct CobordClass {
    dim: usize,
    normal_m: BTreeMap<Partition, Q>,
}

impl CobordClass {
    pub fn zero(dim: usize) -> Self {
        Self { dim, normal_m: BTreeMap::new() }
    }

    /// `c` times the class of a point.
    pub fn scalar(c: Q) -> Self {
        Self::from_normal(0, [(Partition::empty(), c)])
    }

    pub fn point() -> Self {
        Self::scalar(Q::one())
    }

    /// Builds a class from normal numbers. Panics if a key has the wrong weight.
    pub fn from_normal(dim: usize, numbers: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut normal_m = BTreeMap::new();
        for (p, c) in numbers {
            assert_eq!(p.weight(), dim, "Chern number {p} does not match dimension {dim}");
            *normal_m.entry(p).or_insert_with(Q::zero) += c;
        }
        normal_m.retain(|_, c: &mut Q| !c.is_zero());
        Self { dim, normal_m }
    }

    pub fn from_tangent(dim: usize, numbers: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let tangent: BTreeMap<Partition, Q> = numbers.into_iter().collect();
        Self::from_normal(dim, normal_from_tangent(&tangent, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normal_numbers(&self) -> &BTreeMap<Partition, Q> {
        &self.normal_m
    }

    pub fn normal(&self, lam: &Partition) -> Q {
        self.normal_m.get(lam).cloned().unwrap_or_else(Q::zero)
    }

    pub fn tangent_numbers(&self) -> BTreeMap<Partition, Q> {
        normal_from_tangent(&self.normal_m, self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.normal_m.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_normal(self.dim, self.normal_m.iter().map(|(p, a)| (p.clone(), a * c)))
    }

    /// Cartesian product: `m_λ(A×B) = Σ_{μ⊔ν=λ} m_μ(A) m_ν(B)`.
    pub fn product(&self, other: &CobordClass) -> CobordClass {
        let dim = self.dim + other.dim;
        let mut out = BTreeMap::new();
        for lam in partitions_of(dim) {
            let mut acc = Q::zero();
            for (mu, nu) in lam.splittings() {
                if mu.weight() != self.dim {
                    continue;
                }
                let (Some(a), Some(b)) = (self.normal_m.get(&mu), other.normal_m.get(&nu)) else {
                    continue;
                };
                acc += a * b;
            }
            out.insert(lam, acc);
        }
        Self::from_normal(dim, out)
    }

    /// Genus with NORMAL characteristic series `s` (for a tangent series
    /// `Q` pass `Q^{-1}`): `Σ_λ coeff_profile(s, λ) · m_λ(M)`.
    /// `s` must have order at least `dim` and constant term 1.
    pub fn genus<R: Ring>(&self, s: &TruncSeries<R>) -> R {
        assert!(s.order() >= self.dim, "series order {} below dimension {}", s.order(), self.dim);
        debug_assert_eq!(s.coeff(0), R::one());
        self.normal_m
            .iter()
            .fold(R::zero(), |acc, (lam, c)| acc + s.coeff_profile(lam).scale(c))
    }

    /// The universal symmetric genus `Σ_λ h_λ(y) m_λ(M)`, in the h-basis.
    pub fn s_star_y(&self) -> SymFn {
        SymFn::from_terms(Basis::H, self.normal_m.iter().map(|(p, c)| (p.clone(), c.clone())))
    }

    /// Coordinates in the ℚ-basis of products `CP^{λ_1} × ... × CP^{λ_k}`,
    /// keyed by `λ`; the point is the empty partition.
    pub fn in_cp_basis(&self) -> BTreeMap<Partition, Q> {
        let inv = cp_basis_inverse(self.dim);
        let mut out = BTreeMap::new();
        for (j, lam) in inv.parts.iter().enumerate() {
            let mut acc = Q::zero();
            for (i, mu) in inv.parts.iter().enumerate() {
                if let Some(v) = self.normal_m.get(mu) {
                    acc += v * &inv.entries[i][j];
                }
            }
            if !acc.is_zero() {
                out.insert(lam.clone(), acc);
            }
        }
        out
    }

    fn add_same_dim(self, rhs: CobordClass) -> CobordClass {
        assert_eq!(self.dim, rhs.dim, "adding classes of different dimension");
        Self::from_normal(self.dim, self.normal_m.into_iter().chain(rhs.normal_m))
    }
}

impl Add for CobordClass {
    type Output = CobordClass;
    fn add(self, rhs: CobordClass) -> CobordClass {
        self.add_same_dim(rhs)
    }
}

impl Sub for CobordClass {
    type Output = CobordClass;
    fn sub(self, rhs: CobordClass) -> CobordClass {
        self.add_same_dim(-rhs)
    }
}

impl Neg for CobordClass {
    type Output = CobordClass;
    fn neg(self) -> CobordClass {
        self.scale(&-Q::one())
    }
}

impl fmt::Debug for CobordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CobordClass(dim {}, normal {:?})", self.dim, self.normal_m)
    }
}

/// Writes a linear combination of CP products, e.g. `3*CP(1) - 2*CP(1)*CP(1)`.
fn write_cp_combination(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<Partition, Q>, first: &mut bool) -> fmt::Result {
    for (lam, c) in terms {
        let neg = *c < Q::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (*first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        *first = false;
        let name = if lam.is_empty() {
            "pt".to_string()
        } else {
            lam.parts().iter().map(|p| format!("CP({p})")).collect::<Vec<_>>().join("*")
        };
        if mag == Q::one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{}*{name}", fmt_q(&mag))?;
        }
    }
    Ok(())
}

impl fmt::Display for CobordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        write_cp_combination(f, &self.in_cp_basis(), &mut first)
    }
}

fn antipode_memo() -> &'static Mutex<HashMap<usize, Arc<TransitionMatrix>>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<TransitionMatrix>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Matrix of the antipode on the monomial basis in degree `n`:
/// `S(m_λ) = Σ_μ A[λ][μ] m_μ`.
fn antipode_matrix(n: usize) -> Arc<TransitionMatrix> {
    if let Some(hit) = antipode_memo().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let parts = partitions_of(n);
    let entries = parts
        .iter()
        .map(|lam| {
            let s = SymFn::basis_element(Basis::M, lam.clone()).antipode();
            parts.iter().map(|mu| s.coeff(mu)).collect()
        })
        .collect();
    let built = Arc::new(TransitionMatrix { parts, entries });
    antipode_memo().lock().unwrap().entry(n).or_insert(built).clone()
}

/// Converts tangent monomial Chern numbers of weight `n` to normal ones,
/// `m_λ(ν)[M] = Σ_μ S(m_λ)_μ · m_μ(τ)[M]`. The map is its own inverse.
pub fn normal_from_tangent(tangent: &BTreeMap<Partition, Q>, n: usize) -> BTreeMap<Partition, Q> {
    let a = antipode_matrix(n);
    let mut out = BTreeMap::new();
    for lam in &a.parts {
        let mut acc = Q::zero();
        for (mu, entry) in a.parts.iter().zip(a.row(lam)) {
            if let Some(v) = tangent.get(mu) {
                acc += entry * v;
            }
        }
        if !acc.is_zero() {
            out.insert(lam.clone(), acc);
        }
    }
    out
}

/// Inverse of the `[CP^λ] → normal numbers` matrix in degree `n`.
fn cp_basis_inverse(n: usize) -> Arc<TransitionMatrix> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<TransitionMatrix>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let parts = partitions_of(n);
    let rows: Vec<Vec<Q>> = parts
        .iter()
        .map(|lam| {
            let class = cp_product(lam.parts().iter().map(|&p| p as usize));
            parts.iter().map(|mu| class.normal(mu)).collect()
        })
        .collect();
    let built = Arc::new(TransitionMatrix { parts, entries: mat_inverse(&rows) });
    memo.lock().unwrap().entry(n).or_insert(built).clone()
}

/// The class of `CP^n` with its standard complex structure.
pub fn cp(n: usize) -> CobordClass {
    static MEMO: OnceLock<Mutex<HashMap<usize, CobordClass>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // τ ⊕ 1 = (n+1) O(1): all n+1 tangent roots equal the hyperplane class.
    let built = CobordClass::from_tangent(
        n,
        partitions_of(n).into_iter().map(|lam| {
            let c = monomial_count(&lam, n + 1);
            (lam, c)
        }),
    );
    memo.lock().unwrap().entry(n).or_insert(built).clone()
}

/// `CP^{n_1} × ... × CP^{n_r}`; the point for an empty list.
pub fn cp_product(dims: impl IntoIterator<Item = usize>) -> CobordClass {
    dims.into_iter().fold(CobordClass::point(), |acc, n| acc.product(&cp(n)))
}

/// The class `N^{2n}` with `m_(n) = (n+1)!` and every other normal number zero.
pub fn n_class(n: usize) -> CobordClass {
    assert!(n >= 1, "N^{{2n}} is defined for n >= 1");
    CobordClass::from_normal(n, [(Partition::row(n as u32), crate::ring::factorial(n + 1))])
}

/// An inhomogeneous rational cobordism class: one homogeneous component
/// per complex dimension. This is the coefficient ring `Ω^U_* ⊗ ℚ`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GradedClass {
    components: BTreeMap<usize, CobordClass>,
}

impl GradedClass {
    pub fn components(&self) -> &BTreeMap<usize, CobordClass> {
        &self.components
    }

    pub fn component(&self, dim: usize) -> CobordClass {
        self.components.get(&dim).cloned().unwrap_or_else(|| CobordClass::zero(dim))
    }

    /// Largest dimension with a nonzero component.
    pub fn top_dim(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    /// Sum of `genus` over the components.
    pub fn genus<R: Ring>(&self, s: &TruncSeries<R>) -> R {
        self.components.values().fold(R::zero(), |acc, c| acc + c.genus(s))
    }

    pub fn s_star_y(&self) -> SymFn {
        self.components.values().fold(SymFn::zero(Basis::H), |acc, c| acc + c.s_star_y())
    }

    fn insert_add(&mut self, c: CobordClass) {
        let dim = c.dim();
        let merged = match self.components.remove(&dim) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.components.insert(dim, merged);
        }
    }
}

impl From<CobordClass> for GradedClass {
    fn from(c: CobordClass) -> Self {
        let mut g = GradedClass::default();
        g.insert_add(c);
        g
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for c in self.components.values() {
            write_cp_combination(f, &c.in_cp_basis(), &mut first)?;
        }
        Ok(())
    }
}

impl Add for GradedClass {
    type Output = GradedClass;
    fn add(mut self, rhs: GradedClass) -> GradedClass {
        for c in rhs.components.into_values() {
            self.insert_add(c);
        }
        self
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        GradedClass { components: self.components.into_iter().map(|(d, c)| (d, -c)).collect() }
    }
}

impl Sub for GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: GradedClass) -> GradedClass {
        self + (-rhs)
    }
}

impl Mul for GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: GradedClass) -> GradedClass {
        let mut out = GradedClass::default();
        for a in self.components.values() {
            for b in rhs.components.values() {
                out.insert_add(a.product(b));
            }
        }
        out
    }
}

impl Ring for GradedClass {
    fn zero() -> Self {
        GradedClass::default()
    }
    fn one() -> Self {
        CobordClass::point().into()
    }
    fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
    fn from_rational(c: Q) -> Self {
        CobordClass::scalar(c).into()
    }
    fn as_rational(&self) -> Option<Q> {
        match self.components.len() {
            0 => Some(Q::zero()),
            1 => self.components.get(&0).map(|c| c.normal(&Partition::empty())),
            _ => None,
        }
    }
    fn scale(&self, c: &Q) -> Self {
        let mut out = GradedClass::default();
        for comp in self.components.values() {
            out.insert_add(comp.scale(c));
        }
        out
    }
}

/// Mishchenko logarithm `u + Σ_{n≥1} [CP^n] u^{n+1} / (n+1)` to order `order`.
pub fn mishchenko_log(order: usize) -> TruncSeries<GradedClass> {
    TruncSeries::from_fn(order, |k| match k {
        0 => GradedClass::zero(),
        1 => GradedClass::one(),
        _ => GradedClass::from(cp(k - 1)).scale(&(Q::one() / q(k as i64))),
    })
}

/// Formal inverse `ι(u) = mog^{-1}(-mog(u))`: the cobordism first Chern
/// class of the conjugate of a line bundle with first Chern class `u`.
pub fn fgl_inverse(order: usize) -> TruncSeries<GradedClass> {
    let mog = mishchenko_log(order);
    let inv = mog.comp_inverse().expect("mog has unit linear term");
    inv.compose(&-mog).expect("mog has zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseries::{ahat_series, chi_y_q, euler_series, tanh_over_x, todd_reciprocal, todd_series};
    use crate::ring::{factorial, qf, QPoly};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn cp_normal_numbers() {
        assert_eq!(cp(0), CobordClass::point());
        assert_eq!(cp(1).normal(&p(&[1])), q(-2));
        assert_eq!(cp(2).normal(&p(&[2])), q(-3));
        assert_eq!(cp(2).normal(&p(&[1, 1])), q(6));
    }

    #[test]
    fn cp_normal_numbers_by_inverse_series() {
        // Oracle: c(ν) = (1+x)^{-(n+1)}, so c_k(ν) = (-1)^k C(n+k, k) x^k,
        // and m_(1^n)(ν) = e_n(ν) = c_n(ν).
        for n in 1..=5usize {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = crate::ring::binomial(2 * n, n) * q(sign);
            assert_eq!(cp(n).normal(&Partition::column(n)), expected, "CP^{n}");
        }
    }

    #[test]
    fn normal_tangent_conversion() {
        let t = BTreeMap::from([(p(&[1]), q(2))]);
        assert_eq!(normal_from_tangent(&t, 1), BTreeMap::from([(p(&[1]), q(-2))]));
        let pt = BTreeMap::from([(Partition::empty(), q(5))]);
        assert_eq!(normal_from_tangent(&pt, 0), pt);
        for n in 0..=5 {
            let c = cp_product([n]);
            assert_eq!(normal_from_tangent(&c.tangent_numbers(), n), c.normal_numbers().clone());
        }
    }

    #[test]
    fn products() {
        let c11 = cp(1).product(&cp(1));
        assert_eq!(c11.normal(&p(&[1, 1])), q(4));
        assert_eq!(c11.normal(&p(&[2])), q(0));
        assert_eq!(cp(3).product(&CobordClass::point()), cp(3));
        let gens: Vec<CobordClass> = (0..=3).map(cp).collect();
        for a in &gens {
            for b in &gens {
                assert_eq!(a.product(b), b.product(a));
                for c in &gens {
                    if a.dim() + b.dim() + c.dim() <= 5 {
                        assert_eq!(a.product(b).product(c), a.product(&b.product(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn n_classes() {
        let n1 = n_class(1);
        assert_eq!(n1.normal(&p(&[1])), q(2));
        assert_eq!(n1, -cp(1));
        let n2 = n_class(2);
        assert_eq!(n2.normal(&p(&[2])), q(6));
        assert_eq!(n2.normal(&p(&[1, 1])), q(0));
        for n in 1..=5u32 {
            let expected = SymFn::basis_element(Basis::H, Partition::row(n)).scale(&factorial(n as usize + 1));
            assert_eq!(n_class(n as usize).s_star_y(), expected);
        }
    }

    #[test]
    fn s_star_y_values() {
        assert_eq!(cp(1).s_star_y(), SymFn::basis_element(Basis::H, p(&[1])).scale(&q(-2)));
        assert_eq!(CobordClass::point().s_star_y(), SymFn::one(Basis::H));
    }

    #[test]
    fn classical_genera() {
        let todd_normal = todd_reciprocal(6);
        for n in 0..=4 {
            assert_eq!(cp(n).genus(&todd_normal), q(1), "Todd(CP^{n})");
            assert_eq!(cp(n).genus(&euler_series(6).inverse().unwrap()), q(n as i64 + 1));
        }
        assert_eq!(cp(2).genus(&tanh_over_x(4)), q(1));
        assert_eq!(cp(4).genus(&tanh_over_x(4)), q(1));
        assert_eq!(cp(2).genus(&ahat_series(4).inverse().unwrap()), qf(-1, 8));
        let chi = cp(2).genus(&chi_y_q(4).inverse().unwrap());
        assert_eq!(chi, QPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn genus_is_multiplicative() {
        let series: Vec<TruncSeries<Q>> = vec![
            todd_series(5).inverse().unwrap(),
            tanh_over_x(5),
            euler_series(5).inverse().unwrap(),
        ];
        let chi = chi_y_q(5).inverse().unwrap();
        for a in 0..=4 {
            for b in 0..=(4 - a) {
                let prod = cp(a).product(&cp(b));
                for s in &series {
                    assert_eq!(prod.genus(s), cp(a).genus(s) * cp(b).genus(s));
                }
                assert_eq!(prod.genus(&chi), cp(a).genus(&chi) * cp(b).genus(&chi));
            }
        }
    }

    #[test]
    fn cp_basis_coordinates() {
        let c = cp(1).product(&cp(2)).scale(&q(3)) - cp(3);
        let coords = c.in_cp_basis();
        assert_eq!(coords.get(&p(&[2, 1])), Some(&q(3)));
        assert_eq!(coords.get(&p(&[3])), Some(&q(-1)));
        assert_eq!(coords.len(), 2);
        assert_eq!(cp(1).scale(&q(3)).to_string(), "3*CP(1)");
        assert_eq!(CobordClass::point().to_string(), "pt");
    }

    #[test]
    fn mishchenko_log_shape() {
        let mog = mishchenko_log(6);
        assert_eq!(mog.coeff(1), GradedClass::one());
        assert_eq!(mog.coeff(2), GradedClass::from(cp(1)).scale(&qf(1, 2)));
        assert!(mog.comp_inverse().is_ok());
    }

    #[test]
    fn fgl_inverse_low_order() {
        let iota = fgl_inverse(6);
        assert_eq!(iota.coeff(1), -GradedClass::one());
        assert_eq!(iota.coeff(2), -GradedClass::from(cp(1)));
        let twice = iota.compose(&iota).unwrap();
        assert_eq!(twice.truncate(5), TruncSeries::variable(5));
        let mog = mishchenko_log(6);
        let sum = mog.compose(&iota).unwrap() + mog;
        assert!(sum.is_zero());
    }
}
