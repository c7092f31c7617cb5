//! Finite posets and lattices.
//!
//! A [`FinPoset`] stores the full order relation as bitset rows (both the up-
//! and the down-closure of every element), so meets, joins and the
//! exhaustive law checks in [`FinPoset::classify`] are direct lookups.

mod classify;
mod hasse;
mod iso;

pub use classify::{FailureWitness, ForbiddenSublattice, Law, PosetProfile};
pub use iso::{IsoOptions, DEFAULT_ISO_BOUND};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("poset has no elements")]
    Empty,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` listed twice")]
    DuplicateElement(String),
    #[error("`{0}` and `{1}` are distinct but below each other")]
    NotAntisymmetric(String, String),
    #[error("poset has {size} elements, bound is {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("DOT input, line {line}: {message}")]
    Dot { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn or_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// A finite partial order on labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[i]` holds every `j` with `i ≤ j`.
    up: Vec<Bits>,
    /// `down[i]` holds every `j` with `j ≤ i`.
    down: Vec<Bits>,
}

/// On-disk poset: elements plus generating pairs; the reflexive-transitive
/// closure is taken on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl FinPoset {
    fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
        if labels.is_empty() {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(l.clone()));
            }
        }
        Ok(index)
    }

    /// Builds the poset generated by `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn from_relation<S: AsRef<str>>(labels: Vec<String>, pairs: &[(S, S)]) -> Result<Self, LatticeError> {
        let index = Self::index_labels(&labels)?;
        let n = labels.len();
        let mut up: Vec<Bits> = (0..n)
            .map(|i| {
                let mut b = Bits::new(n);
                b.set(i);
                b
            })
            .collect();
        for (a, b) in pairs {
            let find = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
            };
            let (i, j) = (find(a.as_ref())?, find(b.as_ref())?);
            up[i].set(j);
        }
        // Warshall on bit rows
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.get(k) {
                    row.or_with(&row_k);
                }
            }
        }
        Self::from_up_rows(labels, index, up)
    }

    fn from_up_rows(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<Bits>) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut down: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                if i != j && up[j].get(i) {
                    return Err(LatticeError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
                down[j].set(i);
            }
        }
        Ok(FinPoset {
            labels,
            index,
            up,
            down,
        })
    }

    /// Builds a poset from an order predicate that is already known to be a
    /// partial order (reflexive and transitive).
    pub(crate) fn from_order_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, LatticeError> {
        let index = Self::index_labels(&labels)?;
        let n = labels.len();
        let up = (0..n)
            .map(|i| {
                let mut b = Bits::new(n);
                for j in 0..n {
                    if leq(i, j) {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        Self::from_up_rows(labels, index, up)
    }

    /// The family ordered by inclusion; labels are `{a,b,…}` with members in
    /// the given order. Duplicate sets are collapsed.
    pub fn from_family<S: AsRef<str>>(sets: &[Vec<S>]) -> Result<Self, LatticeError> {
        let mut seen = BTreeSet::new();
        let mut family: Vec<(String, BTreeSet<String>)> = Vec::new();
        for s in sets {
            let members: BTreeSet<String> = s.iter().map(|x| x.as_ref().to_string()).collect();
            if seen.insert(members.clone()) {
                let label = format!("{{{}}}", s.iter().map(|x| x.as_ref()).collect::<Vec<_>>().join(","));
                family.push((label, members));
            }
        }
        let labels = family.iter().map(|(l, _)| l.clone()).collect();
        Self::from_order_fn(labels, |i, j| family[i].1.is_subset(&family[j].1))
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        Self::from_order_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Result<Self, LatticeError> {
        Self::from_order_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i == j)
    }

    /// The five-element non-modular lattice `0 < a < c < 1`, `0 < b < 1`.
    pub fn pentagon() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_relation(labels, &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
            .expect("pentagon is a partial order")
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, LatticeError> {
        Self::from_relation(file.elements.clone(), &file.leq)
    }

    /// Elements in order, with the cover pairs as generators.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            leq: self.hasse(),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LatticeError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn leq_labels(&self, a: &str, b: &str) -> Result<bool, LatticeError> {
        Ok(self.leq(self.index_of(a)?, self.index_of(b)?))
    }

    pub(crate) fn up_set(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    pub(crate) fn down_set(&self, i: usize) -> &Bits {
        &self.down[i]
    }

    /// Greatest lower bound of `i` and `j`, if one exists.
    pub fn meet_idx(&self, i: usize, j: usize) -> Option<usize> {
        let lower = self.down[i].and(&self.down[j]);
        let found = lower.iter().find(|&g| lower.is_subset_of(&self.down[g]));
        found
    }

    /// Least upper bound of `i` and `j`, if one exists.
    pub fn join_idx(&self, i: usize, j: usize) -> Option<usize> {
        let upper = self.up[i].and(&self.up[j]);
        let found = upper.iter().find(|&l| upper.is_subset_of(&self.up[l]));
        found
    }

    /// `Ok(None)` when the two elements have no greatest lower bound.
    pub fn meet(&self, a: &str, b: &str) -> Result<Option<String>, LatticeError> {
        let m = self.meet_idx(self.index_of(a)?, self.index_of(b)?);
        Ok(m.map(|i| self.labels[i].clone()))
    }

    /// `Ok(None)` when the two elements have no least upper bound.
    pub fn join(&self, a: &str, b: &str) -> Result<Option<String>, LatticeError> {
        let m = self.join_idx(self.index_of(a)?, self.index_of(b)?);
        Ok(m.map(|i| self.labels[i].clone()))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.size()).find(|&i| self.up[i].count() == self.size())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.size()).find(|&i| self.down[i].count() == self.size())
    }

    /// Componentwise order on pairs, labelled `(x|y)`, row-major.
    pub fn product(&self, other: &FinPoset) -> FinPoset {
        let m = other.size();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a}|{b})")))
            .collect();
        Self::from_order_fn(labels, |p, q| self.leq(p / m, q / m) && other.leq(p % m, q % m))
            .expect("product of posets is a poset")
    }
}
