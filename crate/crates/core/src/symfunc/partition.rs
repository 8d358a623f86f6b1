use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An integer partition: a weakly decreasing list of positive parts.
///
/// Partitions are ordered by weight, then reverse-lexicographically, so
/// `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition, weight 0.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Self::new([n])
    }

    /// The partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::new(self.parts.iter().chain(&other.parts).copied())
    }

    /// Part multiplicities, keyed by part size.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// All ways to split the multiset of parts into an ordered pair
    /// `(mu, nu)` with `mu ∪ nu = self`, each distinct pair listed once.
    pub fn splittings(&self) -> Vec<(Partition, Partition)> {
        let mult: Vec<(u32, usize)> = self.multiplicities().into_iter().collect();
        let mut out = Vec::new();
        let mut left = Vec::new();
        split_rec(&mult, 0, &mut left, &mut out);
        out.into_iter()
            .map(|l: Vec<(u32, usize)>| {
                let mu = Partition::new(l.iter().flat_map(|&(p, k)| std::iter::repeat_n(p, k)));
                let nu = Partition::new(
                    mult.iter()
                        .zip(&l)
                        .flat_map(|(&(p, total), &(_, k))| std::iter::repeat_n(p, total - k)),
                );
                (mu, nu)
            })
            .collect()
    }
}

fn split_rec(
    mult: &[(u32, usize)],
    i: usize,
    left: &mut Vec<(u32, usize)>,
    out: &mut Vec<Vec<(u32, usize)>>,
) {
    if i == mult.len() {
        out.push(left.clone());
        return;
    }
    let (p, total) = mult[i];
    for k in 0..=total {
        left.push((p, k));
        split_rec(mult, i + 1, left, out);
        left.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err("partition parts must be weakly decreasing".into());
        }
        Ok(Partition { parts })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(n as u32, n as u32, &mut cur, &mut out);
    out
}

fn gen(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        cur.push(p);
        gen(remaining - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions of weight `0..=n`, in canonical order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}
