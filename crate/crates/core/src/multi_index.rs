//! Multi-indices and the graded-lexicographic monomial basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::special::{binomial_u64, factorial};

/// A multi-index `m = (m_1, …, m_d)` of non-negative integers.
///
/// The ordering is graded lexicographic: first by `|m|`, then by the
/// entries compared left to right with larger entries first, so that
/// `(1,0)` precedes `(0,1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// The unit index `e_j` (zero-based `j`).
    pub fn unit(d: usize, j: usize) -> Self {
        let mut m = vec![0; d];
        m[j] = 1;
        MultiIndex(m)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|m| = Σ m_j`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `m! = Π m_j!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when every entry stays non-negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Extend by zero entries to dimension `d`.
    pub fn extend_to(&self, d: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e.resize(d.max(self.dim()), 0);
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of dimension `d` with `|m| ≤ max_degree`, in graded
/// lexicographic order. The length is `C(max_degree + d, d)`.
pub fn enumerate_basis(d: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial_u64((max_degree + d) as u64, d as u64) as usize);
    for deg in 0..=max_degree as u32 {
        enumerate_shell(d, deg, &mut out);
    }
    out
}

/// All multi-indices of dimension `d` with `|m| = degree`, in basis order.
pub fn enumerate_shell(d: usize, degree: u32, out: &mut Vec<MultiIndex>) {
    let mut cur = vec![0u32; d];
    fill(&mut cur, 0, degree, out);
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let d = cur.len();
    if d == 0 {
        return;
    }
    if pos == d - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k;
        fill(cur, pos + 1, remaining - k, out);
    }
    cur[pos] = 0;
}

/// An enumerated basis with position lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    d: usize,
    max_degree: usize,
    indices: Vec<MultiIndex>,
    positions: BTreeMap<MultiIndex, usize>,
}

impl Basis {
    pub fn new(d: usize, max_degree: usize) -> Self {
        let indices = enumerate_basis(d, max_degree);
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Basis {
            d,
            max_degree,
            indices,
            positions,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn into_indices(self) -> Vec<MultiIndex> {
        self.indices
    }
}
