//! The ring of symmetric functions over ℚ in the four classical bases.
//!
//! The ring is taken in infinitely many variables (free on `h_1, h_2, ...`),
//! so nothing here ever materializes a variable list except the
//! transition-matrix builder, which expands basis elements in
//! `max(6, n)` variables where they are faithful in degree `n`.

mod bigraded;
mod cauchy;
mod partition;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{factorial, fmt_q, Q, Ring};

pub use bigraded::BigradedElement;
pub use cauchy::{cauchy_check, cauchy_forms, CauchyForms};
pub use partition::{partitions_of, partitions_up_to, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Monomial symmetric functions `m_λ`.
    M,
    /// Complete homogeneous `h_λ`.
    H,
    /// Elementary `e_λ`.
    E,
    /// Power sums `p_λ`.
    P,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::M, Basis::H, Basis::E, Basis::P];

    pub fn symbol(self) -> char {
        match self {
            Basis::M => 'm',
            Basis::H => 'h',
            Basis::E => 'e',
            Basis::P => 'p',
        }
    }
}

/// Square change-of-basis matrix in one degree. Rows and columns are both
/// indexed by `parts` in canonical order, and
/// `from_λ = Σ_μ entries[λ][μ] · to_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    pub parts: Vec<Partition>,
    pub entries: Vec<Vec<Q>>,
}

impl TransitionMatrix {
    fn index(&self, p: &Partition) -> usize {
        self.parts
            .binary_search(p)
            .unwrap_or_else(|_| panic!("partition {p} not of degree {}", p.weight()))
    }

    pub fn get(&self, row: &Partition, col: &Partition) -> &Q {
        &self.entries[self.index(row)][self.index(col)]
    }

    pub fn row(&self, row: &Partition) -> &[Q] {
        &self.entries[self.index(row)]
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|c| c.is_integer())
    }

    pub fn mul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        TransitionMatrix { parts: self.parts.clone(), entries: mat_mul(&self.entries, &other.entries) }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, c)| if i == j { *c == Q::one() } else { c.is_zero() })
        })
    }
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Gauss-Jordan inverse over ℚ. The matrices inverted here are transition
/// matrices between bases, hence always invertible.
pub(crate) fn mat_inverse(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular transition matrix");
        m.swap(col, pivot);
        let inv = Q::one() / m[col][col].clone();
        for c in m[col].iter_mut() {
            *c *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (c, p) in m[r].iter_mut().zip(&pivot_row) {
                    *c -= &factor * p;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

type Monomials = BTreeMap<Vec<u32>, Q>;

fn poly_mul(a: &Monomials, b: &Monomials) -> Monomials {
    let mut out = Monomials::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn exponent_vectors(total: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in exponent_vectors(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Generator `e_j`, `h_j` or `p_j` as an explicit polynomial in `k` variables.
fn generator_poly(basis: Basis, j: u32, k: usize) -> Monomials {
    let mut out = Monomials::new();
    match basis {
        Basis::H => {
            for e in exponent_vectors(j, k) {
                out.insert(e, Q::one());
            }
        }
        Basis::E => {
            for e in exponent_vectors(j, k) {
                if e.iter().all(|&x| x <= 1) {
                    out.insert(e, Q::one());
                }
            }
        }
        Basis::P => {
            for i in 0..k {
                let mut e = vec![0; k];
                e[i] = j;
                out.insert(e, Q::one());
            }
        }
        Basis::M => unreachable!("m is not multiplicative"),
    }
    out
}

/// Matrix expressing `basis_λ` in the monomial basis, degree `n`.
fn to_monomial(basis: Basis, n: usize) -> Vec<Vec<Q>> {
    let parts = partitions_of(n);
    let k = n.max(6);
    let size = parts.len();
    if basis == Basis::M {
        return (0..size)
            .map(|i| (0..size).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
    }
    let mut gens: HashMap<u32, Monomials> = HashMap::new();
    parts
        .iter()
        .map(|lam| {
            let mut poly = Monomials::from([(vec![0; k], Q::one())]);
            for &part in lam.parts() {
                let g = gens.entry(part).or_insert_with(|| generator_poly(basis, part, k));
                poly = poly_mul(&poly, g);
            }
            parts
                .iter()
                .map(|mu| {
                    let mut key: Vec<u32> = mu.parts().to_vec();
                    key.resize(k, 0);
                    poly.get(&key).cloned().unwrap_or_else(Q::zero)
                })
                .collect()
        })
        .collect()
}

type Memo = Mutex<HashMap<(Basis, Basis, usize), Arc<TransitionMatrix>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Change-of-basis matrix from `from` to `to` in degree `n`; memoized.
pub fn transition(from: Basis, to: Basis, n: usize) -> Arc<TransitionMatrix> {
    if let Some(hit) = memo().lock().unwrap().get(&(from, to, n)) {
        return hit.clone();
    }
    // Computed outside the lock; a racing thread computes the same value.
    let entries = if from == to {
        to_monomial(Basis::M, n)
    } else if to == Basis::M {
        to_monomial(from, n)
    } else {
        let a = transition(from, Basis::M, n);
        let b = transition(to, Basis::M, n);
        mat_mul(&a.entries, &mat_inverse(&b.entries))
    };
    let built = Arc::new(TransitionMatrix { parts: partitions_of(n), entries });
    memo().lock().unwrap().entry((from, to, n)).or_insert(built).clone()
}

/// An inhomogeneous symmetric function stored in one basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFn {
    basis: Basis,
    coeffs: BTreeMap<Partition, Q>,
}

impl SymFn {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, coeffs: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, p: Partition) -> Self {
        Self::from_terms(basis, [(p, Q::one())])
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (p, c) in terms {
            *coeffs.entry(p).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &Partition) -> Q {
        self.coeffs.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest weight with a nonzero coefficient (0 for the zero function).
    pub fn degree_bound(&self) -> usize {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(p, a)| (p.clone(), a * c)))
    }

    pub fn to_basis(&self, target: Basis) -> SymFn {
        if target == self.basis {
            return self.clone();
        }
        let mut out: BTreeMap<Partition, Q> = BTreeMap::new();
        for (lam, c) in &self.coeffs {
            let t = transition(self.basis, target, lam.weight());
            for (mu, entry) in t.parts.iter().zip(t.row(lam)) {
                if !entry.is_zero() {
                    *out.entry(mu.clone()).or_insert_with(Q::zero) += c * entry;
                }
            }
        }
        Self::from_terms(target, out)
    }

    /// Hopf antipode, `S(h_n) = (-1)^n e_n`, extended as a ring map.
    /// The result is expressed in the same basis as `self`.
    pub fn antipode(&self) -> SymFn {
        let in_h = self.to_basis(Basis::H);
        let flipped = SymFn::from_terms(
            Basis::E,
            in_h.coeffs.into_iter().map(|(p, c)| {
                let sign = if p.weight() % 2 == 0 { c } else { -c };
                (p, sign)
            }),
        );
        flipped.to_basis(self.basis)
    }

    /// Evaluates the ring map `Λ → R` that sends the multiplicative
    /// generator `g_k` of `basis` (one of h, e, p) to `gens[k - 1]`.
    pub fn evaluate<R: Ring>(&self, basis: Basis, gens: &[R]) -> Result<R> {
        assert!(basis != Basis::M, "monomials do not generate the ring");
        let conv = self.to_basis(basis);
        let needed =
            conv.coeffs.keys().flat_map(|p| p.parts().first().copied()).max().unwrap_or(0) as usize;
        if needed > gens.len() {
            return Err(Error::InsufficientValues { needed, given: gens.len() });
        }
        let mut acc = R::zero();
        for (p, c) in &conv.coeffs {
            let mut term = R::from_rational(c.clone());
            for &part in p.parts() {
                term = term * gens[part as usize - 1].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Ring homomorphism `h_a ↦ values[a - 1]`.
    pub fn specialize_h<R: Ring>(&self, values: &[R]) -> Result<R> {
        self.evaluate(Basis::H, values)
    }
}

impl fmt::Debug for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}{}", fmt_q(c), self.basis.symbol(), p)?;
        }
        Ok(())
    }
}

impl Add for SymFn {
    type Output = SymFn;
    fn add(self, rhs: SymFn) -> SymFn {
        let rhs = rhs.to_basis(self.basis);
        SymFn::from_terms(self.basis, self.coeffs.into_iter().chain(rhs.coeffs))
    }
}

impl Neg for SymFn {
    type Output = SymFn;
    fn neg(self) -> SymFn {
        self.scale(&-Q::one())
    }
}

impl Sub for SymFn {
    type Output = SymFn;
    fn sub(self, rhs: SymFn) -> SymFn {
        self + (-rhs)
    }
}

impl Mul for SymFn {
    type Output = SymFn;
    fn mul(self, rhs: SymFn) -> SymFn {
        let a = self.to_basis(Basis::H);
        let b = rhs.to_basis(Basis::H);
        let mut terms = Vec::new();
        for (pa, ca) in &a.coeffs {
            for (pb, cb) in &b.coeffs {
                terms.push((pa.union(pb), ca * cb));
            }
        }
        SymFn::from_terms(Basis::H, terms).to_basis(self.basis)
    }
}

/// `m_λ(1, ..., 1)` with `k` ones: the number of distinct rearrangements
/// of `λ` padded by zeros to length `k`.
pub fn monomial_count(lam: &Partition, k: usize) -> Q {
    if lam.len() > k {
        return Q::zero();
    }
    let mut denom = factorial(k - lam.len());
    for m in lam.multiplicities().values() {
        denom *= factorial(*m);
    }
    factorial(k) / denom
}

/// Images of `h_1, ..., h_deg` under the specialization to finitely many
/// variables: the coefficients of `Π_i (1 - v_i t)^{-1}`.
pub fn h_values_of_variables<R: Ring>(vars: &[R], deg: usize) -> Vec<R> {
    let mut coeffs = vec![R::zero(); deg + 1];
    coeffs[0] = R::one();
    for v in vars {
        for a in 1..=deg {
            let prev = coeffs[a - 1].clone();
            coeffs[a] = coeffs[a].clone() + v.clone() * prev;
        }
    }
    coeffs.split_off(1)
}
