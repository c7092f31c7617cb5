use std::collections::BTreeSet;

use serde::Serialize;

use crate::fo::{Assignment, FinStructure, FoError, Formula};

/// Outcome of a Tarski–Vaught test. Serializes as
/// `{"outcome":"pass"}` or `{"outcome":"fail","formula":…,"params":…,"witnesses":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum TvVerdict {
    Pass,
    Fail(TvFailure),
}

impl TvVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, TvVerdict::Pass)
    }

    pub fn failure(&self) -> Option<&TvFailure> {
        match self {
            TvVerdict::Pass => None,
            TvVerdict::Fail(f) => Some(f),
        }
    }
}

/// The first counterexample found: a family member, parameters from the
/// parameter pool, and every element of `M` satisfying the matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TvFailure {
    /// The family member, printed.
    pub formula: String,
    /// Parameter values, in the order of `param_vars`.
    pub params: Vec<String>,
    /// All elements `a` of `M` with `M ⊨ matrix(a, params)`.
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub member: usize,
    #[serde(skip)]
    pub variable: String,
    #[serde(skip)]
    pub matrix: Formula,
    #[serde(skip)]
    pub param_vars: Vec<String>,
    /// Elements that were allowed to serve as witness.
    #[serde(skip)]
    pub candidate: Vec<String>,
    /// Universes of the substructures a candidate had to satisfy the matrix in.
    #[serde(skip)]
    pub scopes: Vec<Vec<String>>,
}

impl TvFailure {
    /// Candidate elements that are also witnesses in `M`.
    pub fn witnesses_in_candidate(&self) -> Vec<String> {
        let cand: BTreeSet<&String> = self.candidate.iter().collect();
        self.witnesses.iter().filter(|w| cand.contains(w)).cloned().collect()
    }

    fn assignment(&self, witness: Option<&str>) -> Assignment {
        let mut a: Assignment = self
            .param_vars
            .iter()
            .cloned()
            .zip(self.params.iter().cloned())
            .collect();
        if let Some(w) = witness {
            a.insert(self.variable.clone(), w);
        }
        a
    }

    /// Re-checks the counterexample with plain evaluation: `M` satisfies the
    /// existential closure on the parameters, the witness list is exact, and
    /// no candidate satisfies the matrix in every scope.
    pub fn reverify(&self, m: &FinStructure) -> Result<bool, FoError> {
        let closure = Formula::exists(self.variable.clone(), self.matrix.clone());
        if !m.evaluate(&closure, &self.assignment(None))? {
            return Ok(false);
        }
        let mut witnesses = Vec::new();
        for e in m.universe() {
            if m.evaluate(&self.matrix, &self.assignment(Some(e)))? {
                witnesses.push(e.clone());
            }
        }
        if witnesses != self.witnesses {
            return Ok(false);
        }
        let subs = self
            .scopes
            .iter()
            .map(|s| m.induced_substructure(s))
            .collect::<Result<Vec<_>, _>>()?;
        for c in &self.candidate {
            let mut everywhere = true;
            for sub in &subs {
                if !sub.evaluate(&self.matrix, &self.assignment(Some(c)))? {
                    everywhere = false;
                    break;
                }
            }
            if everywhere {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
