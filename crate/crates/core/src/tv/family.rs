use std::collections::HashSet;

use crate::fo::{FinStructure, FoError, Formula, Signature, Term};

/// A finite list of formulas standing in for "all formulas of the language".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaFamily {
    formulas: Vec<Formula>,
    subformula_closed: bool,
}

impl Default for FormulaFamily {
    fn default() -> Self {
        FormulaFamily::new(Vec::new())
    }
}

impl FormulaFamily {
    pub fn new(formulas: Vec<Formula>) -> Self {
        let subformula_closed = Self::compute_closed(&formulas);
        FormulaFamily {
            formulas,
            subformula_closed,
        }
    }

    fn compute_closed(formulas: &[Formula]) -> bool {
        let members: HashSet<&Formula> = formulas.iter().collect();
        formulas
            .iter()
            .all(|f| f.children().into_iter().all(|c| members.contains(c)))
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn is_subformula_closed(&self) -> bool {
        self.subformula_closed
    }

    /// The family extended by every missing subformula; members keep their
    /// positions and new subformulas are appended in discovery order.
    pub fn subformula_closure(&self) -> FormulaFamily {
        let mut seen: HashSet<Formula> = HashSet::new();
        let mut out = Vec::new();
        for f in &self.formulas {
            if seen.insert(f.clone()) {
                out.push(f.clone());
            }
        }
        let mut i = 0;
        while i < out.len() {
            let fresh: Vec<Formula> = out[i]
                .children()
                .into_iter()
                .filter(|c| seen.insert((*c).clone()))
                .cloned()
                .collect();
            out.extend(fresh);
            i += 1;
        }
        FormulaFamily::new(out)
    }

    /// The sub-list at the given positions.
    pub fn select(&self, positions: &[usize]) -> FormulaFamily {
        FormulaFamily::new(positions.iter().map(|&i| self.formulas[i].clone()).collect())
    }

    pub(crate) fn check_against(&self, m: &FinStructure) -> Result<(), FoError> {
        self.formulas.iter().try_for_each(|f| m.check_formula(f))
    }

    /// Quantifier-rank ≤ 1 formulas in the relation symbols of `sig` (no
    /// constants), over a bound variable `x` and a parameter `y`: every
    /// literal and conjunction of two literals, each also under `exists x`
    /// and `forall x`. The result is subformula-closed.
    pub fn rank_one(sig: &Signature) -> FormulaFamily {
        let vars = ["x", "y"];
        let mut atoms = Vec::new();
        for (rel, arity) in sig.relations() {
            let mut idx = vec![0usize; arity];
            loop {
                let args = idx.iter().map(|&i| Term::var(vars[i])).collect();
                atoms.push(Formula::atom(rel, args));
                let mut k = 0;
                while k < arity {
                    idx[k] += 1;
                    if idx[k] < vars.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == arity {
                    break;
                }
            }
        }
        atoms.push(Formula::eq(Term::var("x"), Term::var("y")));

        let literals: Vec<Formula> = atoms
            .iter()
            .flat_map(|a| [a.clone(), Formula::not(a.clone())])
            .collect();
        let mut matrices = literals.clone();
        for i in 0..literals.len() {
            for j in i + 1..literals.len() {
                matrices.push(Formula::and(literals[i].clone(), literals[j].clone()));
            }
        }
        let mut members = matrices.clone();
        for m in &matrices {
            members.push(Formula::exists("x", m.clone()));
            members.push(Formula::forall("x", m.clone()));
        }
        FormulaFamily::new(members).subformula_closure()
    }
}

impl FromIterator<Formula> for FormulaFamily {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        FormulaFamily::new(iter.into_iter().collect())
    }
}
