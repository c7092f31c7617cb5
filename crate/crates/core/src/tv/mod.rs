//! Tarski–Vaught tests relative to a finite [`FormulaFamily`].
//!
//! A finite structure has no proper elementary substructures for the full
//! language, so every test here quantifies over an explicit family instead.
//! Each member `exists x. ψ` contributes the condition "if `M ⊨ ∃x ψ(x, ā)`
//! then a witness lies in the candidate set", with `ā` ranging over
//! parameter tuples; a member `forall x. ψ` contributes the same condition
//! for `¬ψ`. Other members contribute nothing on their own but matter for
//! subformula closure.

mod check;
mod enumerate;
mod family;
mod verdict;

pub use check::{generated_substructure, tv_check, tv_join_check, tv_join_check_with, tv_pair_check, JoinParams};
pub use enumerate::{
    enumerate_substructural, substructural_lattice, EnumerateOptions, SubstructuralLattice, DEFAULT_MAX_UNIVERSE,
};
pub use family::FormulaFamily;
pub use verdict::{TvFailure, TvVerdict};

use thiserror::Error;

use crate::fo::FoError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TvError {
    #[error(transparent)]
    Fo(#[from] FoError),
    #[error("candidate sets have an empty intersection")]
    EmptyIntersection,
    #[error("universe has {size} elements, enumeration bound is {bound}")]
    UniverseTooLarge { size: usize, bound: usize },
}
