//! Rudin–Keisler lattices of quite o-minimal Ehrenfeucht theories.
//!
//! A theory is summarised by a [`TypeSpectrum`]: `k` non-isolated types
//! `p1..pk` in Γ₁ and `s` types `q1..qs` in Γ₂. An isomorphism type of a
//! prime model over a finite set is a [`SignedTypeSet`]: for each type,
//! either not realized, realized with tag 0, or (Γ₂ only) realized with
//! tag 1.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{FinPoset, IsoOptions};

pub const DEFAULT_MAX_ELEMENTS: usize = 4096;
/// Largest `k` and `s` accepted by the closed-form operations.
pub const MAX_PARAMETER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LrkError {
    #[error("LRK({k},{s}) has more than {bound} elements")]
    TooLarge { k: usize, s: usize, bound: usize },
    #[error("k = {k}, s = {s}: parameters are limited to {MAX_PARAMETER}")]
    ParameterBound { k: usize, s: usize },
    #[error("signed type-set belongs to LRK({0},{1}), expected LRK({2},{3})")]
    SpectrumMismatch(usize, usize, usize, usize),
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("type `{0}` appears twice")]
    DuplicateType(String),
    #[error("type `{0}` is in Γ₁ and only takes tag 0")]
    GammaOneTag(String),
    #[error("malformed pair `{0}`, expected name:tag")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TypeSpectrum {
    pub k: usize,
    pub s: usize,
}

impl TypeSpectrum {
    pub fn new(k: usize, s: usize) -> Self {
        TypeSpectrum { k, s }
    }

    /// `p1..pk` followed by `q1..qs`.
    pub fn type_names(&self) -> Vec<String> {
        (1..=self.k)
            .map(|i| format!("p{i}"))
            .chain((1..=self.s).map(|i| format!("q{i}")))
            .collect()
    }

    fn position(&self, name: &str) -> Option<usize> {
        let (prefix, count, offset) = match name.as_bytes().first() {
            Some(b'p') => ("p", self.k, 0),
            Some(b'q') => ("q", self.s, self.k),
            _ => return None,
        };
        let digits = name.strip_prefix(prefix)?;
        if digits.starts_with('0') {
            return None;
        }
        let i: usize = digits.parse().ok()?;
        (1..=count).contains(&i).then(|| offset + i - 1)
    }

    /// Each type with the size of its countable-model spectrum: three
    /// patterns for a Γ₁ type, six for a Γ₂ type.
    pub fn type_labels(&self) -> Vec<(String, &'static str)> {
        self.type_names()
            .into_iter()
            .enumerate()
            .map(|(i, n)| (n, if i < self.k { "3-spectrum" } else { "6-spectrum" }))
            .collect()
    }

    /// `2^k · 3^s`, if it fits.
    pub fn lattice_size(&self) -> Option<usize> {
        let k = u32::try_from(self.k).ok()?;
        let s = u32::try_from(self.s).ok()?;
        2usize.checked_pow(k)?.checked_mul(3usize.checked_pow(s)?)
    }

    fn check_parameters(&self) -> Result<(), LrkError> {
        if self.k > MAX_PARAMETER || self.s > MAX_PARAMETER {
            return Err(LrkError::ParameterBound { k: self.k, s: self.s });
        }
        Ok(())
    }
}

/// Whether and how a prime model realizes one type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeState {
    Absent,
    /// Pair `(p, 0)`.
    Zero,
    /// Pair `(p, 1)`; Γ₂ only.
    One,
}

impl TypeState {
    fn tag(self) -> Option<u8> {
        match self {
            TypeState::Absent => None,
            TypeState::Zero => Some(0),
            TypeState::One => Some(1),
        }
    }

    fn from_tag(tag: Option<u8>) -> Self {
        match tag {
            None => TypeState::Absent,
            Some(0) => TypeState::Zero,
            Some(_) => TypeState::One,
        }
    }
}

/// An element of LRK(k, s). Construction rejects a tag 1 on a Γ₁ type, so
/// every value is valid for its spectrum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedTypeSet {
    spectrum: (usize, usize),
    states: Vec<TypeState>,
}

impl SignedTypeSet {
    /// The empty set (prime model over ∅).
    pub fn empty(spec: &TypeSpectrum) -> Self {
        SignedTypeSet {
            spectrum: (spec.k, spec.s),
            states: vec![TypeState::Absent; spec.k + spec.s],
        }
    }

    pub fn new<S: AsRef<str>>(spec: &TypeSpectrum, pairs: &[(S, u8)]) -> Result<Self, LrkError> {
        let mut out = Self::empty(spec);
        for (name, tag) in pairs {
            let name = name.as_ref();
            let i = spec
                .position(name)
                .ok_or_else(|| LrkError::UnknownType(name.to_string()))?;
            if out.states[i] != TypeState::Absent {
                return Err(LrkError::DuplicateType(name.to_string()));
            }
            match tag {
                0 => out.states[i] = TypeState::Zero,
                1 if i >= spec.k => out.states[i] = TypeState::One,
                1 => return Err(LrkError::GammaOneTag(name.to_string())),
                _ => return Err(LrkError::Malformed(format!("{name}:{tag}"))),
            }
        }
        Ok(out)
    }

    /// Reads the text form `p1:0,q2:1`; `{}` or an empty string is ∅.
    pub fn parse(spec: &TypeSpectrum, text: &str) -> Result<Self, LrkError> {
        let text = text.trim();
        if text.is_empty() || text == "{}" {
            return Ok(Self::empty(spec));
        }
        let pairs = text
            .split(',')
            .map(|p| {
                let (n, t) = p
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| LrkError::Malformed(p.to_string()))?;
                let tag = t.parse::<u8>().map_err(|_| LrkError::Malformed(p.to_string()))?;
                Ok((n.to_string(), tag))
            })
            .collect::<Result<Vec<_>, LrkError>>()?;
        Self::new(spec, &pairs)
    }

    pub fn spectrum(&self) -> TypeSpectrum {
        TypeSpectrum::new(self.spectrum.0, self.spectrum.1)
    }

    pub fn states(&self) -> &[TypeState] {
        &self.states
    }

    /// `(type name, tag)` pairs sorted by name.
    pub fn pairs(&self) -> Vec<(String, u8)> {
        let names = self.spectrum().type_names();
        let mut out: Vec<(String, u8)> = self
            .states
            .iter()
            .zip(names)
            .filter_map(|(st, n)| st.tag().map(|t| (n, t)))
            .collect();
        out.sort();
        out
    }

    pub fn is_empty(&self) -> bool {
        self.states.iter().all(|&s| s == TypeState::Absent)
    }

    fn check(&self, spec: &TypeSpectrum) -> Result<(), LrkError> {
        if self.spectrum != (spec.k, spec.s) {
            return Err(LrkError::SpectrumMismatch(
                self.spectrum.0,
                self.spectrum.1,
                spec.k,
                spec.s,
            ));
        }
        Ok(())
    }
}

impl fmt::Display for SignedTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.pairs().into_iter().map(|(n, t)| format!("{n}:{t}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for SignedTypeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All `2^k · 3^s` elements, ordered lexicographically by state vector
/// (`p1..pk` then `q1..qs`, absent < tag 0 < tag 1).
pub fn lrk_elements(spec: &TypeSpectrum) -> Result<Vec<SignedTypeSet>, LrkError> {
    lrk_elements_bounded(spec, DEFAULT_MAX_ELEMENTS)
}

pub fn lrk_elements_bounded(spec: &TypeSpectrum, bound: usize) -> Result<Vec<SignedTypeSet>, LrkError> {
    let too_large = LrkError::TooLarge {
        k: spec.k,
        s: spec.s,
        bound,
    };
    match spec.lattice_size() {
        Some(n) if n <= bound => {}
        _ => return Err(too_large),
    }
    let mut out = vec![SignedTypeSet::empty(spec)];
    // build the product one coordinate at a time, last coordinate fastest
    for i in 0..spec.k + spec.s {
        let options: &[TypeState] = if i < spec.k {
            &[TypeState::Absent, TypeState::Zero]
        } else {
            &[TypeState::Absent, TypeState::Zero, TypeState::One]
        };
        out = out
            .into_iter()
            .flat_map(|x| {
                options.iter().map(move |&st| {
                    let mut y = x.clone();
                    y.states[i] = st;
                    y
                })
            })
            .collect();
    }
    Ok(out)
}

/// Common pairs, plus `(p,0)` when one side has `(p,0)` and the other `(p,1)`.
pub fn lrk_meet(x: &SignedTypeSet, y: &SignedTypeSet, spec: &TypeSpectrum) -> Result<SignedTypeSet, LrkError> {
    x.check(spec)?;
    y.check(spec)?;
    let states = x
        .states
        .iter()
        .zip(&y.states)
        .map(|(a, b)| {
            let tag = match (a.tag(), b.tag()) {
                (Some(s), Some(t)) if s == t => Some(s),
                (Some(0), Some(1)) | (Some(1), Some(0)) => Some(0),
                _ => None,
            };
            TypeState::from_tag(tag)
        })
        .collect();
    Ok(SignedTypeSet {
        spectrum: x.spectrum,
        states,
    })
}

/// Rules i–iv: common pairs; pairs of `X` whose type does not occur in `Y`;
/// pairs of `Y` whose type does not occur in `X`; `(p,1)` for mixed tags.
pub fn lrk_join(x: &SignedTypeSet, y: &SignedTypeSet, spec: &TypeSpectrum) -> Result<SignedTypeSet, LrkError> {
    x.check(spec)?;
    y.check(spec)?;
    let states = x
        .states
        .iter()
        .zip(&y.states)
        .map(|(a, b)| {
            let tag = match (a.tag(), b.tag()) {
                (Some(s), Some(t)) if s == t => Some(s),
                (Some(s), None) => Some(s),
                (None, Some(t)) => Some(t),
                (Some(0), Some(1)) | (Some(1), Some(0)) => Some(1),
                _ => None,
            };
            TypeState::from_tag(tag)
        })
        .collect();
    Ok(SignedTypeSet {
        spectrum: x.spectrum,
        states,
    })
}

/// LRK(k, s) ordered by `X ≤ Y ⟺ X ∧ Y = X`, labelled by text form.
pub fn lrk_lattice(spec: &TypeSpectrum) -> Result<FinPoset, LrkError> {
    lrk_lattice_bounded(spec, DEFAULT_MAX_ELEMENTS)
}

pub fn lrk_lattice_bounded(spec: &TypeSpectrum, bound: usize) -> Result<FinPoset, LrkError> {
    let elems = lrk_elements_bounded(spec, bound)?;
    let labels = elems.iter().map(ToString::to_string).collect();
    let leq = |i: usize, j: usize| lrk_meet(&elems[i], &elems[j], spec).expect("same spectrum") == elems[i];
    Ok(FinPoset::from_order_fn(labels, leq).expect("meet order is a partial order"))
}

/// `3^k · 6^s`, exactly.
pub fn count_countable_models(spec: &TypeSpectrum) -> Result<BigUint, LrkError> {
    spec.check_parameters()?;
    Ok(BigUint::from(3u32).pow(spec.k as u32) * BigUint::from(6u32).pow(spec.s as u32))
}

pub(crate) fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.collect_str(n),
    }
}

/// Closed-form classification of LRK(k, s).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LrkClass {
    pub k: usize,
    pub s: usize,
    /// Serialized as a number when it fits in 64 bits, else a decimal string.
    #[serde(serialize_with = "serialize_big")]
    pub size: BigUint,
    #[serde(rename = "lattice")]
    pub is_lattice: bool,
    #[serde(rename = "boolean")]
    pub is_boolean: bool,
    #[serde(rename = "linear")]
    pub is_linear: bool,
}

pub fn classify_lrk(spec: &TypeSpectrum) -> Result<LrkClass, LrkError> {
    spec.check_parameters()?;
    Ok(LrkClass {
        k: spec.k,
        s: spec.s,
        size: BigUint::from(2u32).pow(spec.k as u32) * BigUint::from(3u32).pow(spec.s as u32),
        is_lattice: true,
        is_boolean: spec.k >= 1 && spec.s == 0,
        is_linear: spec.k + spec.s <= 1,
    })
}

/// The spectrum of a disjoint union of two theories, with the product
/// decomposition checked by isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointUnion {
    pub combined: TypeSpectrum,
    /// `LRK(combined) ≅ LRK(first) × LRK(second)`.
    pub product_isomorphic: bool,
    /// Both factors linear and one of them has a single countable model.
    pub is_linear: bool,
}

pub fn disjoint_union(a: &TypeSpectrum, b: &TypeSpectrum) -> Result<DisjointUnion, LrkError> {
    disjoint_union_bounded(a, b, DEFAULT_MAX_ELEMENTS)
}

pub fn disjoint_union_bounded(a: &TypeSpectrum, b: &TypeSpectrum, bound: usize) -> Result<DisjointUnion, LrkError> {
    let combined = TypeSpectrum::new(a.k + b.k, a.s + b.s);
    let whole = lrk_lattice_bounded(&combined, bound)?;
    let product = lrk_lattice_bounded(a, bound)?.product(&lrk_lattice_bounded(b, bound)?);
    let product_isomorphic = whole
        .isomorphism_with(&product, IsoOptions { bound })
        .expect("sizes already bounded")
        .is_some();
    let linear = |t: &TypeSpectrum| t.k + t.s <= 1;
    let single_model = |t: &TypeSpectrum| t.k + t.s == 0;
    Ok(DisjointUnion {
        combined,
        product_isomorphic,
        is_linear: linear(a) && linear(b) && (single_model(a) || single_model(b)),
    })
}
