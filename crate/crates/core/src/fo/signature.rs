use std::collections::{BTreeMap, BTreeSet};

use super::FoError;

const KEYWORDS: [&str; 2] = ["exists", "forall"];

/// `[A-Za-z_][A-Za-z0-9_]*`, excluding the quantifier keywords.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&s)
}

/// Relation symbols with arities plus constant symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    relations: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
}

impl Signature {
    pub fn new<R, C>(relations: R, constants: C) -> Result<Self, FoError>
    where
        R: IntoIterator<Item = (String, usize)>,
        C: IntoIterator<Item = String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in relations {
            sig.add_relation(name, arity)?;
        }
        for name in constants {
            sig.add_constant(name)?;
        }
        Ok(sig)
    }

    pub fn add_relation(&mut self, name: impl Into<String>, arity: usize) -> Result<(), FoError> {
        let name = name.into();
        self.check_fresh(&name)?;
        if arity == 0 {
            return Err(FoError::InvalidSignature(format!(
                "relation `{name}` must have arity at least 1"
            )));
        }
        self.relations.insert(name, arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: impl Into<String>) -> Result<(), FoError> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.constants.insert(name);
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<(), FoError> {
        if !is_identifier(name) {
            return Err(FoError::InvalidSignature(format!(
                "`{name}` is not a valid symbol name"
            )));
        }
        if self.relations.contains_key(name) || self.constants.contains(name) {
            return Err(FoError::InvalidSignature(format!("symbol `{name}` declared twice")));
        }
        Ok(())
    }

    pub fn arity(&self, relation: &str) -> Option<usize> {
        self.relations.get(relation).copied()
    }

    pub fn has_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }
}
