//! Hypergraphs `(X, Y ⊆ P(X))` with complete unions, restrictions and the
//! finitized freeness and independence conditions.
//!
//! "Infinite subset" is replaced by "subset of size at least τ" throughout.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lrk::serialize_big;

/// Largest set whose subsets the freeness and independence checks enumerate.
pub const MAX_SUBSET_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("complete union of an empty sequence")]
    EmptySequence,
    #[error("threshold must be at least 1")]
    InvalidThreshold,
    #[error("set of {size} vertices is too large to enumerate (bound {bound})")]
    TooLarge { size: usize, bound: usize },
    #[error("decomposition needs disjoint sets")]
    NotDisjoint,
    #[error("decomposition needs independent sets; subsets {0:?} and {1:?} are not cut out together")]
    NotIndependent(Vec<String>, Vec<String>),
}

/// Size from which a subset counts as "large".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Threshold(usize);

impl Threshold {
    pub fn new(tau: usize) -> Result<Self, HyperError> {
        if tau == 0 {
            return Err(HyperError::InvalidThreshold);
        }
        Ok(Threshold(tau))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Vertices sorted by label; each edge a sorted list of vertex positions.
/// Sorting positions therefore sorts edges by their labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphFile", into = "HypergraphFile")]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: BTreeSet<Vec<usize>>,
}

/// Wire form: `{"vertices":["1","2"],"edges":[["1"],["1","2"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl TryFrom<HypergraphFile> for Hypergraph {
    type Error = HyperError;

    fn try_from(f: HypergraphFile) -> Result<Self, HyperError> {
        Hypergraph::new(f.vertices, f.edges)
    }
}

impl From<Hypergraph> for HypergraphFile {
    fn from(h: Hypergraph) -> Self {
        HypergraphFile {
            edges: h.edges(),
            vertices: h.vertices,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnionKind {
    Disjoint,
    Chain,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    PowerOfTwo(u32),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionProfile {
    pub count: usize,
    /// `2^|A ∖ acl0|`.
    #[serde(serialize_with = "serialize_big")]
    pub predicted: BigUint,
    pub dichotomy: Dichotomy,
}

/// Decomposition report for a family of sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDecomposition {
    /// [`Hypergraph::check_decomposition`] on every pair.
    pub pairwise: bool,
    /// The restriction to the union equals the complete union of the
    /// restrictions.
    pub joint: bool,
    /// Independence is only defined for pairs, so a family of three or more
    /// sets is checked pairwise and flagged.
    pub flagged: bool,
}

fn to_strings<S: AsRef<str>>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}

impl Hypergraph {
    /// Vertices are deduplicated; edges collapse duplicates and must lie
    /// inside the vertex set.
    pub fn new<V, E, I>(vertices: V, edges: E) -> Result<Self, HyperError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = I>,
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let vertices: Vec<String> = vertices
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut h = Hypergraph {
            vertices,
            edges: BTreeSet::new(),
        };
        for e in edges {
            let labels: Vec<String> = e.into_iter().map(|v| v.as_ref().to_string()).collect();
            let edge = h.positions(&labels)?;
            h.edges.insert(edge);
        }
        Ok(h)
    }

    /// `(X, P(X))`.
    pub fn powerset<V>(vertices: V) -> Result<Self, HyperError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
    {
        let h = Self::new(vertices, Vec::<Vec<String>>::new())?;
        let n = h.vertices.len();
        if n > MAX_SUBSET_BITS {
            return Err(HyperError::TooLarge {
                size: n,
                bound: MAX_SUBSET_BITS,
            });
        }
        let edges = (0..1u64 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        Ok(Hypergraph { edges, ..h })
    }

    /// `({}, {{}})`, the identity of complete union.
    pub fn unit() -> Self {
        Hypergraph {
            vertices: Vec::new(),
            edges: [Vec::new()].into(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges as label lists in canonical order.
    pub fn edges(&self) -> Vec<Vec<String>> {
        self.edges.iter().map(|e| self.labels(e)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn labels(&self, pos: &[usize]) -> Vec<String> {
        pos.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Sorted, deduplicated positions of the given labels.
    fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, HyperError> {
        let mut out = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                self.vertices
                    .binary_search_by(|v| v.as_str().cmp(l))
                    .map_err(|_| HyperError::UnknownVertex(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Edges whose vertices are all unions of one edge per component.
    pub fn complete_union(hs: &[Hypergraph]) -> Result<Hypergraph, HyperError> {
        if hs.is_empty() {
            return Err(HyperError::EmptySequence);
        }
        let mut acc: Vec<String> = Vec::new();
        let mut edges: BTreeSet<BTreeSet<String>> = [BTreeSet::new()].into();
        for h in hs {
            acc.extend(h.vertices.iter().cloned());
            let parts: Vec<Vec<String>> = h.edges();
            edges = edges
                .iter()
                .flat_map(|e| {
                    parts.iter().map(move |z| {
                        let mut u = e.clone();
                        u.extend(z.iter().cloned());
                        u
                    })
                })
                .collect();
        }
        Hypergraph::new(acc, edges)
    }

    /// Disjoint takes priority when the vertex sets are also a chain.
    pub fn union_kind(hs: &[Hypergraph]) -> Result<UnionKind, HyperError> {
        if hs.is_empty() {
            return Err(HyperError::EmptySequence);
        }
        let sets: Vec<BTreeSet<&String>> = hs.iter().map(|h| h.vertices.iter().collect()).collect();
        let pairs = || (0..sets.len()).flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)));
        if pairs().all(|(i, j)| sets[i].is_disjoint(&sets[j])) {
            return Ok(UnionKind::Disjoint);
        }
        if pairs().all(|(i, j)| sets[i].is_subset(&sets[j]) || sets[j].is_subset(&sets[i])) {
            return Ok(UnionKind::Chain);
        }
        Ok(UnionKind::General)
    }

    /// `(A, {A ∩ Z : Z ∈ Y})`.
    pub fn restrict<S: AsRef<str>>(&self, a: &[S]) -> Result<Hypergraph, HyperError> {
        let pos = self.positions(a)?;
        let vertices = self.labels(&pos);
        let edges = self
            .edges
            .iter()
            .map(|e| {
                // positions in the restricted vertex list
                pos.iter()
                    .enumerate()
                    .filter(|(_, p)| e.binary_search(p).is_ok())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Hypergraph { vertices, edges })
    }

    /// Traces `A ∩ Z` of all edges as bitmasks over the positions `a`.
    fn traces(&self, a: &[usize]) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| {
                a.iter()
                    .enumerate()
                    .filter(|(_, p)| e.binary_search(p).is_ok())
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect()
    }

    fn checked_positions<S: AsRef<str>>(&self, a: &[S]) -> Result<Vec<usize>, HyperError> {
        let pos = self.positions(a)?;
        if pos.len() > MAX_SUBSET_BITS {
            return Err(HyperError::TooLarge {
                size: pos.len(),
                bound: MAX_SUBSET_BITS,
            });
        }
        Ok(pos)
    }

    /// Every subset of `A` with at least τ elements is `A ∩ Z` for an edge `Z`.
    pub fn is_h_free<S: AsRef<str>>(&self, a: &[S], t: Threshold) -> Result<bool, HyperError> {
        let pos = self.checked_positions(a)?;
        let traces: HashSet<u64> = self.traces(&pos).into_iter().collect();
        Ok(large_masks(pos.len(), t).all(|m| traces.contains(&m)))
    }

    /// First pair of large subsets `A' ⊆ A`, `B' ⊆ B` not cut out by one edge.
    fn independence_gap(&self, a: &[usize], b: &[usize], t: Threshold) -> Option<(u64, u64)> {
        let ta = self.traces(a);
        let tb = self.traces(b);
        let realized: HashSet<(u64, u64)> = ta.into_iter().zip(tb).collect();
        large_masks(a.len(), t).find_map(|ma| {
            large_masks(b.len(), t)
                .find(|&mb| !realized.contains(&(ma, mb)))
                .map(|mb| (ma, mb))
        })
    }

    /// For all large `A' ⊆ A` and `B' ⊆ B` one edge `Z` has `A ∩ Z = A'` and
    /// `B ∩ Z = B'`.
    pub fn are_h_independent<S: AsRef<str>>(&self, a: &[S], b: &[S], t: Threshold) -> Result<bool, HyperError> {
        let pa = self.checked_positions(a)?;
        let pb = self.checked_positions(b)?;
        Ok(self.independence_gap(&pa, &pb, t).is_none())
    }

    /// For disjoint independent `A` and `B`: every edge of the restriction to
    /// `A ∪ B` splits into edges of the two restrictions, and every pair of
    /// large edges of the two restrictions is realized by one edge.
    pub fn check_decomposition<S: AsRef<str>>(&self, a: &[S], b: &[S], t: Threshold) -> Result<bool, HyperError> {
        let pa = self.checked_positions(a)?;
        let pb = self.checked_positions(b)?;
        if pa.iter().any(|p| pb.binary_search(p).is_ok()) {
            return Err(HyperError::NotDisjoint);
        }
        if let Some((ma, mb)) = self.independence_gap(&pa, &pb, t) {
            let pick = |pos: &[usize], m: u64| -> Vec<String> {
                pos.iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &p)| self.vertices[p].clone())
                    .collect()
            };
            return Err(HyperError::NotIndependent(pick(&pa, ma), pick(&pb, mb)));
        }
        let ra = self.restrict(&self.labels(&pa))?;
        let rb = self.restrict(&self.labels(&pb))?;
        let mut union = self.labels(&pa);
        union.extend(self.labels(&pb));
        let rab = self.restrict(&union)?;
        let edges_a: BTreeSet<Vec<String>> = ra.edges().into_iter().collect();
        let edges_b: BTreeSet<Vec<String>> = rb.edges().into_iter().collect();
        let edges_ab: BTreeSet<BTreeSet<String>> = rab.edges().into_iter().map(|e| e.into_iter().collect()).collect();
        let in_a: BTreeSet<&String> = ra.vertices.iter().collect();
        let splits = edges_ab.iter().all(|e| {
            let (pa, pb): (Vec<String>, Vec<String>) = e.iter().cloned().partition(|v| in_a.contains(v));
            edges_a.contains(&pa) && edges_b.contains(&pb)
        });
        let large = |e: &Vec<String>| e.len() >= t.get();
        let realized = edges_a.iter().filter(|e| large(e)).all(|x| {
            edges_b.iter().filter(|e| large(e)).all(|y| {
                let u: BTreeSet<String> = x.iter().chain(y).cloned().collect();
                edges_ab.contains(&u)
            })
        });
        Ok(splits && realized)
    }

    /// Pairwise decomposition of every pair, and whether the restriction to
    /// the union of the family is the complete union of the restrictions.
    pub fn check_family_decomposition<S: AsRef<str>>(
        &self,
        sets: &[Vec<S>],
        t: Threshold,
    ) -> Result<FamilyDecomposition, HyperError> {
        let mut pairwise = true;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                pairwise &= self.check_decomposition(&sets[i], &sets[j], t)?;
            }
        }
        let restrictions = sets.iter().map(|s| self.restrict(s)).collect::<Result<Vec<_>, _>>()?;
        let union: Vec<String> = sets.iter().flat_map(|s| to_strings(s)).collect();
        let joint = match Hypergraph::complete_union(&restrictions) {
            Ok(cu) => cu == self.restrict(&union)?,
            Err(HyperError::EmptySequence) => true,
            Err(e) => return Err(e),
        };
        Ok(FamilyDecomposition {
            pairwise,
            joint,
            flagged: sets.len() >= 3,
        })
    }

    /// Size of the restriction to `A` against the prediction `2^|A ∖ acl0|`.
    pub fn restriction_profile<S: AsRef<str>>(&self, a: &[S], acl0: &[S]) -> Result<RestrictionProfile, HyperError> {
        let pa = self.positions(a)?;
        let pacl = self.positions(acl0)?;
        let count = self.restrict(a)?.edge_count();
        let free = pa.iter().filter(|p| pacl.binary_search(p).is_err()).count();
        let dichotomy = if count.is_power_of_two() {
            Dichotomy::PowerOfTwo(count.trailing_zeros())
        } else {
            Dichotomy::Other
        };
        Ok(RestrictionProfile {
            count,
            predicted: BigUint::from(1u32) << free,
            dichotomy,
        })
    }
}

/// Bitmasks over `n` positions with at least `t` bits set, ascending.
fn large_masks(n: usize, t: Threshold) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(move |m| m.count_ones() as usize >= t.get())
}
