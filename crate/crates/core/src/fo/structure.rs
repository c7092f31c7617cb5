use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::signature::Signature;
use super::FoError;

// Dense membership tables are kept while n^arity stays below this.
const DENSE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RelTable {
    pub(crate) arity: usize,
    pub(crate) tuples: BTreeSet<Vec<usize>>,
    dense: Option<Vec<bool>>,
}

impl RelTable {
    fn new(arity: usize, tuples: BTreeSet<Vec<usize>>, n: usize) -> Self {
        let dense = n
            .checked_pow(arity as u32)
            .filter(|&size| size <= DENSE_LIMIT)
            .map(|size| {
                let mut table = vec![false; size];
                for t in &tuples {
                    table[Self::slot(t, n)] = true;
                }
                table
            });
        RelTable { arity, tuples, dense }
    }

    fn slot(t: &[usize], n: usize) -> usize {
        t.iter().fold(0, |acc, &e| acc * n + e)
    }

    pub(crate) fn contains(&self, t: &[usize], n: usize) -> bool {
        match &self.dense {
            Some(table) => table[Self::slot(t, n)],
            None => self.tuples.contains(t),
        }
    }
}

/// A finite structure: an ordered universe of labelled elements, relation
/// tables over it and interpretations of the constants.
///
/// Elements are addressed by label in the public API and by their position
/// in the universe internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinStructure {
    pub(crate) sig: Signature,
    pub(crate) universe: Vec<String>,
    index: HashMap<String, usize>,
    pub(crate) relations: BTreeMap<String, RelTable>,
    pub(crate) constants: BTreeMap<String, usize>,
}

impl FinStructure {
    /// Builds a structure; the signature is read off the relation and
    /// constant declarations.
    pub fn new<U, R, C>(universe: U, relations: R, constants: C) -> Result<Self, FoError>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        R: IntoIterator<Item = (String, usize, Vec<Vec<String>>)>,
        C: IntoIterator<Item = (String, String)>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(FoError::InvalidStructure("universe is empty".into()));
        }
        let mut index = HashMap::with_capacity(universe.len());
        for (i, label) in universe.iter().enumerate() {
            if label.is_empty() {
                return Err(FoError::InvalidStructure("empty element label".into()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(FoError::InvalidStructure(format!("element `{label}` listed twice")));
            }
        }
        let n = universe.len();
        let mut sig = Signature::default();
        let mut tables = BTreeMap::new();
        for (name, arity, tuples) in relations {
            sig.add_relation(name.clone(), arity)?;
            let mut set = BTreeSet::new();
            for t in tuples {
                if t.len() != arity {
                    return Err(FoError::InvalidStructure(format!(
                        "tuple {t:?} of `{name}` does not have length {arity}"
                    )));
                }
                let idx = t
                    .iter()
                    .map(|l| index.get(l).copied().ok_or_else(|| FoError::UnknownElement(l.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                set.insert(idx);
            }
            tables.insert(name, RelTable::new(arity, set, n));
        }
        let mut consts = BTreeMap::new();
        for (name, label) in constants {
            sig.add_constant(name.clone())?;
            let e = *index.get(&label).ok_or(FoError::UnknownElement(label))?;
            consts.insert(name, e);
        }
        Ok(FinStructure {
            sig,
            universe,
            index,
            relations: tables,
            constants: consts,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.universe[i]
    }

    pub fn labels<'a>(&'a self, idx: &'a [usize]) -> Vec<String> {
        idx.iter().map(|&i| self.universe[i].clone()).collect()
    }

    /// Tuples of `relation` as labels, in universe order.
    pub fn relation_tuples(&self, relation: &str) -> Option<Vec<Vec<String>>> {
        self.relations.get(relation).map(|r| {
            r.tuples
                .iter()
                .map(|t| t.iter().map(|&i| self.universe[i].clone()).collect())
                .collect()
        })
    }

    pub fn holds(&self, relation: &str, tuple: &[&str]) -> Result<bool, FoError> {
        let table = self
            .relations
            .get(relation)
            .ok_or_else(|| FoError::UnknownSymbol(relation.to_string()))?;
        if tuple.len() != table.arity {
            return Err(FoError::ArityMismatch {
                name: relation.to_string(),
                expected: table.arity,
                found: tuple.len(),
            });
        }
        let idx = self.indices(tuple)?;
        Ok(table.contains(&idx, self.size()))
    }

    pub(crate) fn rel_contains(&self, relation: &RelTable, t: &[usize]) -> bool {
        relation.contains(t, self.size())
    }

    pub fn constant_value(&self, name: &str) -> Option<&str> {
        self.constants.get(name).map(|&i| self.universe[i].as_str())
    }

    /// Positions of the constant interpretations, sorted and deduplicated.
    pub fn constant_elements(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.constants.values().copied().collect();
        set.into_iter().collect()
    }

    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, FoError> {
        labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                self.element_index(l)
                    .ok_or_else(|| FoError::UnknownElement(l.to_string()))
            })
            .collect()
    }

    /// Resolves a subset given by labels to sorted, deduplicated positions.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, FoError> {
        let set: BTreeSet<usize> = self.indices(labels)?.into_iter().collect();
        Ok(set.into_iter().collect())
    }

    /// Checks that a subset is nonempty and contains every constant.
    pub(crate) fn check_closed_subset(&self, subset: &[usize]) -> Result<(), FoError> {
        if subset.is_empty() {
            return Err(FoError::InvalidSubset("subset is empty".into()));
        }
        for (name, &e) in &self.constants {
            if subset.binary_search(&e).is_err() {
                return Err(FoError::InvalidSubset(format!(
                    "subset misses `{}`, the value of constant `{name}`",
                    self.universe[e]
                )));
            }
        }
        Ok(())
    }

    /// The substructure induced on `subset`: universe order is inherited,
    /// relations keep exactly the tuples lying inside the subset.
    pub fn induced_substructure<S: AsRef<str>>(&self, subset: &[S]) -> Result<FinStructure, FoError> {
        let idx = self.subset(subset)?;
        self.induced_on(&idx)
    }

    pub(crate) fn induced_on(&self, idx: &[usize]) -> Result<FinStructure, FoError> {
        self.check_closed_subset(idx)?;
        let inside = |t: &Vec<usize>| t.iter().all(|e| idx.binary_search(e).is_ok());
        let relations = self.relations.iter().map(|(name, table)| {
            let tuples = table
                .tuples
                .iter()
                .filter(|t| inside(t))
                .map(|t| t.iter().map(|&e| self.universe[e].clone()).collect())
                .collect();
            (name.clone(), table.arity, tuples)
        });
        let constants = self
            .constants
            .iter()
            .map(|(name, &e)| (name.clone(), self.universe[e].clone()));
        FinStructure::new(
            idx.iter().map(|&e| self.universe[e].clone()),
            relations.collect::<Vec<_>>(),
            constants.collect::<Vec<_>>(),
        )
    }
}

/// Values for free variables, by element label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, String>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, element: impl Into<String>) -> Self {
        self.0.insert(var.into(), element.into());
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, element: impl Into<String>) {
        self.0.insert(var.into(), element.into());
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.0.get(var).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v.into())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(ps: &[(&str, &str)]) -> Vec<Vec<String>> {
        ps.iter()
            .flat_map(|(a, b)| [vec![a.to_string(), b.to_string()], vec![b.to_string(), a.to_string()]])
            .collect()
    }

    fn example4() -> FinStructure {
        FinStructure::new(
            ["a1", "a2", "a3"],
            vec![("R".to_string(), 2, pairs(&[("a1", "a3"), ("a2", "a3")]))],
            vec![
                ("c1".to_string(), "a1".to_string()),
                ("c2".to_string(), "a2".to_string()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(FinStructure::new(Vec::<String>::new(), vec![], vec![]).is_err());
        assert!(FinStructure::new(["a", "a"], vec![], vec![]).is_err());
        let bad_tuple = vec![("R".to_string(), 2, vec![vec!["a".to_string()]])];
        assert!(FinStructure::new(["a"], bad_tuple, vec![]).is_err());
        let outside = vec![("R".to_string(), 1, vec![vec!["b".to_string()]])];
        assert_eq!(
            FinStructure::new(["a"], outside, vec![]).unwrap_err(),
            FoError::UnknownElement("b".into())
        );
        assert!(FinStructure::new(["a"], vec![], vec![("c".to_string(), "z".to_string())]).is_err());
    }

    #[test]
    fn induced_substructure_drops_tuples() {
        let m = example4();
        let sub = m.induced_substructure(&["a1", "a2"]).unwrap();
        assert_eq!(sub.universe(), ["a1", "a2"]);
        assert!(sub.relation_tuples("R").unwrap().is_empty());
        assert_eq!(sub.constant_value("c2"), Some("a2"));
    }

    #[test]
    fn induced_on_universe_is_identity() {
        let m = example4();
        assert_eq!(m.induced_substructure(&["a3", "a1", "a2"]).unwrap(), m);
    }

    #[test]
    fn induced_substructure_errors() {
        let m = example4();
        assert!(matches!(
            m.induced_substructure::<&str>(&[]).unwrap_err(),
            FoError::InvalidSubset(_)
        ));
        assert!(matches!(
            m.induced_substructure(&["a1", "a3"]).unwrap_err(),
            FoError::InvalidSubset(_)
        ));
    }
}
