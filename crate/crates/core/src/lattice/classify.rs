use rayon::prelude::*;
use serde::Serialize;

use super::FinPoset;

/// The lattice law a [`FailureWitness`] refutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    /// The two elements have no greatest lower bound.
    Meet,
    /// The two elements have no least upper bound.
    Join,
    /// `x ≤ z` but `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`, elements `[x, y, z]`.
    Modularity,
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, elements `[x, y, z]`.
    Distributivity,
    /// The element has no complement.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub law: Law,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetProfile {
    pub size: usize,
    pub is_lattice: bool,
    pub is_meet_semilattice: bool,
    pub is_join_semilattice: bool,
    pub is_distributive: bool,
    pub is_modular: bool,
    pub is_boolean: bool,
    pub is_linear: bool,
    pub is_atomic: bool,
    pub failure_witness: Option<FailureWitness>,
}

/// A five-element sublattice showing non-distributivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ForbiddenSublattice {
    /// Pentagon `[bottom, a, c, b, top]` with `a < c`.
    N5([usize; 5]),
    /// Diamond `[bottom, a, b, c, top]` with `a, b, c` pairwise incomparable.
    M3([usize; 5]),
}

struct Tables {
    n: usize,
    meet: Vec<Option<u32>>,
    join: Vec<Option<u32>>,
}

impl Tables {
    fn build(p: &FinPoset) -> Tables {
        let n = p.size();
        let rows = |f: &(dyn Fn(usize, usize) -> Option<usize> + Sync)| -> Vec<Option<u32>> {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|i| (0..n).map(move |j| f(i, j).map(|x| x as u32)))
                .collect()
        };
        Tables {
            n,
            meet: rows(&|i, j| p.meet_idx(i, j)),
            join: rows(&|i, j| p.join_idx(i, j)),
        }
    }

    #[inline]
    fn m(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.n + j].expect("lattice") as usize
    }

    #[inline]
    fn j(&self, i: usize, j: usize) -> usize {
        self.join[i * self.n + j].expect("lattice") as usize
    }

    /// First triple in lexicographic order violating `law`.
    fn first_triple(&self, law: impl Fn(usize, usize, usize) -> bool + Sync) -> Option<[usize; 3]> {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .find_map_first(|x| (0..n).find_map(|y| (0..n).find(|&z| !law(x, y, z)).map(|z| [x, y, z])))
    }
}

impl FinPoset {
    /// Every flag by exhaustive check. For non-lattices the law flags
    /// (distributive, modular, Boolean) are false.
    pub fn classify(&self) -> PosetProfile {
        let n = self.size();
        let t = Tables::build(self);
        let first_none = |tab: &[Option<u32>]| tab.iter().position(Option::is_none).map(|k| [k / n, k % n]);
        let no_meet = first_none(&t.meet);
        let no_join = first_none(&t.join);
        let is_meet_semilattice = no_meet.is_none();
        let is_join_semilattice = no_join.is_none();
        let is_lattice = is_meet_semilattice && is_join_semilattice;
        let is_linear = (0..n).all(|i| (0..n).all(|j| self.leq(i, j) || self.leq(j, i)));
        let is_atomic = self.is_atomic();

        let names = |ix: &[usize]| ix.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>();
        let witness = |law, ix: &[usize]| {
            Some(FailureWitness {
                law,
                elements: names(ix),
            })
        };

        let mut profile = PosetProfile {
            size: n,
            is_lattice,
            is_meet_semilattice,
            is_join_semilattice,
            is_distributive: false,
            is_modular: false,
            is_boolean: false,
            is_linear,
            is_atomic,
            failure_witness: None,
        };
        if let Some(pair) = no_meet {
            profile.failure_witness = witness(Law::Meet, &pair);
            return profile;
        }
        if let Some(pair) = no_join {
            profile.failure_witness = witness(Law::Join, &pair);
            return profile;
        }

        let modular = t.first_triple(|x, y, z| !self.leq(x, z) || t.j(x, t.m(y, z)) == t.m(t.j(x, y), z));
        if let Some(tr) = modular {
            profile.failure_witness = witness(Law::Modularity, &tr);
            return profile;
        }
        profile.is_modular = true;
        let distributive = t.first_triple(|x, y, z| t.m(x, t.j(y, z)) == t.j(t.m(x, y), t.m(x, z)));
        if let Some(tr) = distributive {
            profile.failure_witness = witness(Law::Distributivity, &tr);
            return profile;
        }
        profile.is_distributive = true;

        let bottom = self.bottom().expect("finite lattice is bounded");
        let top = self.top().expect("finite lattice is bounded");
        let uncomplemented = (0..n).find(|&x| !(0..n).any(|y| t.m(x, y) == bottom && t.j(x, y) == top));
        match uncomplemented {
            Some(x) => profile.failure_witness = witness(Law::Complement, &[x]),
            None => profile.is_boolean = n >= 2,
        }
        profile
    }

    /// Has a least element, and every other element lies above an atom.
    fn is_atomic(&self) -> bool {
        let Some(b) = self.bottom() else {
            return false;
        };
        let atoms: Vec<usize> = (0..self.size())
            .filter(|&a| a != b && self.down[a].count() == 2)
            .collect();
        (0..self.size()).all(|x| x == b || atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// Searches for a sublattice isomorphic to N5 or M3; the first one in
    /// lexicographic order of `(bottom, a, b, c)` is returned. `None` for
    /// non-lattices.
    pub fn forbidden_sublattice(&self) -> Option<ForbiddenSublattice> {
        let n = self.size();
        let t = Tables::build(self);
        if t.meet.iter().chain(&t.join).any(Option::is_none) {
            return None;
        }
        let incomparable = |x: usize, y: usize| !self.leq(x, y) && !self.leq(y, x);
        for a in 0..n {
            for b in 0..n {
                if !incomparable(a, b) {
                    continue;
                }
                let bot = t.m(a, b);
                let top = t.j(a, b);
                for c in 0..n {
                    if c == a || c == b || !incomparable(c, b) {
                        continue;
                    }
                    // pentagon: a < c, a∧b = c∧b, a∨b = c∨b
                    if self.leq(a, c) && t.m(c, b) == bot && t.j(c, b) == top {
                        return Some(ForbiddenSublattice::N5([bot, a, c, b, top]));
                    }
                    // diamond: the third atom shares meet and join with both
                    if incomparable(a, c)
                        && t.m(a, c) == bot
                        && t.m(b, c) == bot
                        && t.j(a, c) == top
                        && t.j(b, c) == top
                    {
                        return Some(ForbiddenSublattice::M3([bot, a, b, c, top]));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powerset(k: usize) -> FinPoset {
        let sets: Vec<Vec<String>> = (0..1usize << k)
            .map(|m| (0..k).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect())
            .collect();
        FinPoset::from_family(&sets).unwrap()
    }

    fn m3() -> FinPoset {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let pairs = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")];
        FinPoset::from_relation(labels, &pairs).unwrap()
    }

    #[test]
    fn pentagon_profile() {
        let p = FinPoset::pentagon().classify();
        assert_eq!(p.size, 5);
        assert!(p.is_lattice && !p.is_modular && !p.is_distributive && !p.is_boolean);
        let w = p.failure_witness.unwrap();
        assert_eq!(w.law, Law::Modularity);
        assert_eq!(w.elements, ["a", "b", "c"]);
        assert!(matches!(
            FinPoset::pentagon().forbidden_sublattice(),
            Some(ForbiddenSublattice::N5(_))
        ));
    }

    #[test]
    fn diamond_m3_is_modular_not_distributive() {
        let p = m3().classify();
        assert!(p.is_modular && !p.is_distributive);
        assert_eq!(p.failure_witness.unwrap().law, Law::Distributivity);
        assert!(matches!(m3().forbidden_sublattice(), Some(ForbiddenSublattice::M3(_))));
        assert!(p.is_atomic);
    }

    #[test]
    fn powersets_are_boolean() {
        for k in 1..=4 {
            let p = powerset(k).classify();
            assert!(p.is_boolean && p.is_atomic && p.is_distributive, "k={k}");
            assert_eq!(p.is_linear, k == 1);
            assert_eq!(p.failure_witness, None);
        }
        let trivial = powerset(0).classify();
        assert!(trivial.is_lattice && !trivial.is_boolean && trivial.is_atomic);
    }

    #[test]
    fn three_chain() {
        let p = FinPoset::chain(3).unwrap().classify();
        assert!(p.is_lattice && p.is_linear && p.is_distributive && !p.is_boolean);
        let w = p.failure_witness.unwrap();
        assert_eq!((w.law, w.elements), (Law::Complement, vec!["1".to_string()]));
        // finite with a bottom, so atomic
        assert!(p.is_atomic);
    }

    #[test]
    fn antichain_witness() {
        let p = FinPoset::antichain(2).unwrap().classify();
        assert!(!p.is_lattice && !p.is_meet_semilattice && !p.is_distributive);
        let w = p.failure_witness.unwrap();
        assert_eq!((w.law, w.elements), (Law::Meet, vec!["0".to_string(), "1".to_string()]));
        assert_eq!(FinPoset::antichain(2).unwrap().forbidden_sublattice(), None);
    }

    #[test]
    fn meet_semilattice_only() {
        // a bottom with two maximal elements
        let labels = ["0", "a", "b"].map(String::from).to_vec();
        let p = FinPoset::from_relation(labels, &[("0", "a"), ("0", "b")])
            .unwrap()
            .classify();
        assert!(p.is_meet_semilattice && !p.is_join_semilattice && !p.is_lattice);
        assert_eq!(p.failure_witness.unwrap().law, Law::Join);
        assert!(p.is_atomic);
    }
}
