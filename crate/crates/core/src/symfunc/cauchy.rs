//! Three routes to `Π_{i,j} (1 - z_i y_j)^{-1}` compared degree by degree
//! in the `m(z) ⊗ m(y)` basis.

use crate::pseries::TruncSeries;
use crate::ring::{q, Q, Ring};

use super::{partitions_of, transition, Basis, BigradedElement, Partition, SymFn};

/// The three forms of the Cauchy kernel in one degree `d`, as matrices
/// `[μ][ν]` holding the coefficient of `m_μ(z) m_ν(y)`, rows and columns
/// indexed by `parts`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyForms {
    pub degree: usize,
    pub parts: Vec<Partition>,
    pub product: Vec<Vec<Q>>,
    pub exponential: Vec<Vec<Q>>,
    pub sum: Vec<Vec<Q>>,
}

impl CauchyForms {
    pub fn agree(&self) -> bool {
        self.product == self.exponential && self.product == self.sum
    }
}

/// Coefficient of `z^row · y^col` in `Π_{i,j} Σ_a (z_i y_j)^a`: the number of
/// nonnegative integer matrices with the given row and column sums.
fn count_matrices(rows: &[u32], cols: &mut [u32]) -> u64 {
    let Some((&first, rest)) = rows.split_first() else {
        return u64::from(cols.iter().all(|&c| c == 0));
    };
    fn fill(remaining: u32, j: usize, rest: &[u32], cols: &mut [u32]) -> u64 {
        if j == cols.len() {
            return if remaining == 0 { count_matrices(rest, cols) } else { 0 };
        }
        let mut total = 0;
        for a in 0..=remaining.min(cols[j]) {
            cols[j] -= a;
            total += fill(remaining - a, j + 1, rest, cols);
            cols[j] += a;
        }
        total
    }
    fill(first, 0, rest, cols)
}

fn padded(p: &Partition, k: usize) -> Vec<u32> {
    let mut v = p.parts().to_vec();
    v.resize(k, 0);
    v
}

/// `exp(Σ_k p_k(z) p_k(y) / k)` as a series in the total degree, with
/// coefficients in the `h ⊗ h` basis.
fn exponential_form(n: usize) -> TruncSeries<BigradedElement> {
    let gen = TruncSeries::from_fn(n, |k| {
        if k == 0 {
            return BigradedElement::zero();
        }
        let pk = SymFn::basis_element(Basis::P, Partition::row(k as u32));
        let (pz, py) = (BigradedElement::from_z(&pk), BigradedElement::from_y(&pk));
        (pz * py).scale(&(Q::one() / q(k as i64)))
    });
    gen.exp().expect("generator has zero constant term")
}

/// All three forms for every degree `0..=n`, the product form expanded in
/// `max(n, 6)` variables of each kind.
pub fn cauchy_forms(n: usize) -> Vec<CauchyForms> {
    let k = n.max(6);
    let exp_form = exponential_form(n);
    (0..=n)
        .map(|d| {
            let parts = partitions_of(d);
            let hm = transition(Basis::H, Basis::M, d);
            let product = parts
                .iter()
                .map(|mu| {
                    parts
                        .iter()
                        .map(|nu| q(count_matrices(&padded(mu, k), &mut padded(nu, k)) as i64))
                        .collect()
                })
                .collect();
            // 1 + Σ h_λ(z) m_λ(y): h_ν(z) = Σ_μ hm[ν][μ] m_μ(z).
            let sum = parts
                .iter()
                .map(|mu| parts.iter().map(|nu| hm.get(nu, mu).clone()).collect())
                .collect();
            let elem = exp_form.coeff(d);
            let mut exponential = vec![vec![Q::zero(); parts.len()]; parts.len()];
            for ((ly, lz), c) in elem.terms() {
                for (i, mu) in parts.iter().enumerate() {
                    let a = hm.get(lz, mu);
                    if a.is_zero() {
                        continue;
                    }
                    for (j, nu) in parts.iter().enumerate() {
                        exponential[i][j] += c * a * hm.get(ly, nu);
                    }
                }
            }
            CauchyForms { degree: d, parts, product, exponential, sum }
        })
        .collect()
}

/// True iff the product, exponential and sum forms of the Cauchy identity
/// coincide in every degree up to `n`.
pub fn cauchy_check(n: usize) -> bool {
    cauchy_forms(n).iter().all(CauchyForms::agree)
}
