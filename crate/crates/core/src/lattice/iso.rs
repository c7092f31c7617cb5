use std::collections::HashMap;

use super::{FinPoset, LatticeError};

pub const DEFAULT_ISO_BOUND: usize = 256;

#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    /// Largest poset size the search accepts.
    pub bound: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            bound: DEFAULT_ISO_BOUND,
        }
    }
}

/// Colour refinement run on both posets with a shared palette, so equal
/// colours mean equal invariants across the two.
fn refine(p1: &FinPoset, p2: &FinPoset) -> (Vec<u32>, Vec<u32>) {
    let base = |p: &FinPoset| -> Vec<Vec<u32>> {
        let h = p.heights();
        (0..p.size())
            .map(|i| vec![p.down_set(i).count() as u32, p.up_set(i).count() as u32, h[i] as u32])
            .collect()
    };
    let covers1 = p1.cover_lists();
    let covers2 = p2.cover_lists();
    let mut palette: HashMap<Vec<u32>, u32> = HashMap::new();
    let paint = |sigs: Vec<Vec<u32>>, palette: &mut HashMap<Vec<u32>, u32>| -> Vec<u32> {
        sigs.into_iter()
            .map(|s| {
                let next = palette.len() as u32;
                *palette.entry(s).or_insert(next)
            })
            .collect()
    };
    let mut c1 = paint(base(p1), &mut palette);
    let mut c2 = paint(base(p2), &mut palette);
    let classes = |c: &[u32]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    loop {
        let step = |c: &[u32], covers: &(Vec<Vec<usize>>, Vec<Vec<usize>>)| -> Vec<Vec<u32>> {
            (0..c.len())
                .map(|i| {
                    let mut below: Vec<u32> = covers.0[i].iter().map(|&j| c[j]).collect();
                    let mut above: Vec<u32> = covers.1[i].iter().map(|&j| c[j]).collect();
                    below.sort_unstable();
                    above.sort_unstable();
                    let mut sig = vec![c[i], u32::MAX];
                    sig.extend(below);
                    sig.push(u32::MAX);
                    sig.extend(above);
                    sig
                })
                .collect()
        };
        let mut next_palette = HashMap::new();
        let n1 = paint(step(&c1, &covers1), &mut next_palette);
        let n2 = paint(step(&c2, &covers2), &mut next_palette);
        let stable = classes(&n1) == classes(&c1) && classes(&n2) == classes(&c2);
        c1 = n1;
        c2 = n2;
        if stable {
            return (c1, c2);
        }
    }
}

struct Search<'a> {
    p1: &'a FinPoset,
    p2: &'a FinPoset,
    c1: Vec<u32>,
    c2: Vec<u32>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, v: usize) -> bool {
        let u = self.order[depth];
        self.order[..depth].iter().all(|&w| {
            let img = self.map[w];
            self.p1.leq(w, u) == self.p2.leq(img, v) && self.p1.leq(u, w) == self.p2.leq(v, img)
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        for v in 0..self.p2.size() {
            if self.used[v] || self.c2[v] != self.c1[u] || !self.consistent(depth, v) {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[v] = false;
        }
        false
    }
}

impl FinPoset {
    /// Lower and upper cover lists per element.
    pub(crate) fn cover_lists(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.size();
        let mut below = vec![Vec::new(); n];
        let mut above = vec![Vec::new(); n];
        for (a, b) in self.covers() {
            below[b].push(a);
            above[a].push(b);
        }
        (below, above)
    }

    /// An order isomorphism onto `other` as `(self label, other label)`
    /// pairs in element order, or `None`.
    pub fn isomorphism(&self, other: &FinPoset) -> Result<Option<Vec<(String, String)>>, LatticeError> {
        self.isomorphism_with(other, IsoOptions::default())
    }

    pub fn isomorphism_with(
        &self,
        other: &FinPoset,
        opts: IsoOptions,
    ) -> Result<Option<Vec<(String, String)>>, LatticeError> {
        for p in [self, other] {
            if p.size() > opts.bound {
                return Err(LatticeError::TooLarge {
                    size: p.size(),
                    bound: opts.bound,
                });
            }
        }
        if self.size() != other.size() {
            return Ok(None);
        }
        let (c1, c2) = refine(self, other);
        let histogram = |c: &[u32]| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v
        };
        if histogram(&c1) != histogram(&c2) {
            return Ok(None);
        }
        // height order keeps every placed element next to placed covers;
        // ties go to the rarest colour first
        let mut freq: HashMap<u32, usize> = HashMap::new();
        for &c in &c1 {
            *freq.entry(c).or_default() += 1;
        }
        let h = self.heights();
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&i| (h[i], freq[&c1[i]], i));
        let n = self.size();
        let mut s = Search {
            p1: self,
            p2: other,
            c1,
            c2,
            order,
            map: vec![0; n],
            used: vec![false; n],
        };
        if !s.extend(0) {
            return Ok(None);
        }
        Ok(Some(
            (0..n)
                .map(|i| (self.labels[i].clone(), other.labels[s.map[i]].clone()))
                .collect(),
        ))
    }

    pub fn isomorphic(&self, other: &FinPoset) -> Result<bool, LatticeError> {
        Ok(self.isomorphism(other)?.is_some())
    }
}
