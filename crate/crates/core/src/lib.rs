//! Finite fragments of the model theory of hypergraphs of elementary
//! submodels.
//!
//! * [`fo`]: finite relational structures, formulas, evaluation and
//!   Ehrenfeucht–Fraïssé equivalence.
//! * [`tv`]: Tarski–Vaught tests relative to a finite formula family and the
//!   candidate lattice of substructural sets.
//! * [`hypergraph`]: the algebra of set families (complete unions,
//!   restrictions, freeness and independence).
//! * [`lattice`]: finite posets, lattice classification, products,
//!   isomorphism and Hasse diagrams.
//! * [`lrk`]: the lattices of signed type-sets describing prime models of
//!   quite o-minimal theories with finitely many countable models.

pub mod fixtures;
pub mod fo;
pub mod hypergraph;
pub mod io;
pub mod lattice;
pub mod lrk;
pub mod tv;
