use rayon::prelude::*;
use serde::Serialize;

use crate::fo::FinStructure;
use crate::lattice::{FinPoset, PosetProfile};

use super::check::{generated_indices, tv_check_indices};
use super::{FormulaFamily, TvError};

pub const DEFAULT_MAX_UNIVERSE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest universe the exhaustive search accepts.
    pub max_universe: usize,
    /// Worker threads; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_universe: DEFAULT_MAX_UNIVERSE,
            threads: 1,
        }
    }
}

/// Every constant-closed nonempty subset passing the TV test, as sorted
/// index vectors in lexicographic order.
pub(crate) fn enumerate_indices(
    m: &FinStructure,
    fam: &FormulaFamily,
    opts: EnumerateOptions,
) -> Result<Vec<Vec<usize>>, TvError> {
    fam.check_against(m)?;
    if m.size() > opts.max_universe {
        return Err(TvError::UniverseTooLarge {
            size: m.size(),
            bound: opts.max_universe,
        });
    }
    let consts = m.constant_elements();
    let free: Vec<usize> = (0..m.size()).filter(|i| consts.binary_search(i).is_err()).collect();
    let subset = |mask: u64| -> Option<Vec<usize>> {
        let mut n: Vec<usize> = free
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .chain(consts.iter().copied())
            .collect();
        n.sort_unstable();
        (!n.is_empty() && tv_check_indices(m, &n, fam)).then_some(n)
    };
    let masks = 0..1u64 << free.len();
    let mut out: Vec<Vec<usize>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        pool.install(|| masks.into_par_iter().filter_map(subset).collect())
    } else {
        masks.filter_map(subset).collect()
    };
    out.sort();
    Ok(out)
}

/// All subsets of the universe that contain every constant and pass
/// [`super::tv_check`] for `fam`, ordered lexicographically by their
/// element positions.
pub fn enumerate_substructural(
    m: &FinStructure,
    fam: &FormulaFamily,
    opts: EnumerateOptions,
) -> Result<Vec<Vec<String>>, TvError> {
    Ok(enumerate_indices(m, fam, opts)?.iter().map(|n| m.labels(n)).collect())
}

/// The enumerated family ordered by inclusion, with closure reports for
/// intersection and generated join.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstructuralLattice {
    pub family: Vec<Vec<String>>,
    #[serde(skip)]
    pub poset: FinPoset,
    /// Every pairwise intersection is again in the family.
    pub meet_closed: bool,
    /// First pair (in family order) whose intersection is missing.
    pub meet_witness: Option<(Vec<String>, Vec<String>)>,
    /// Every generated join of two members is again in the family.
    pub join_closed: bool,
    pub join_witness: Option<(Vec<String>, Vec<String>)>,
    pub profile: PosetProfile,
}

fn first_missing_pair(
    family: &[Vec<usize>],
    combine: impl Fn(&[usize], &[usize]) -> Vec<usize>,
) -> Option<(usize, usize)> {
    (0..family.len()).find_map(|i| {
        (i + 1..family.len())
            .find(|&j| family.binary_search(&combine(&family[i], &family[j])).is_err())
            .map(|j| (i, j))
    })
}

pub fn substructural_lattice(
    m: &FinStructure,
    fam: &FormulaFamily,
    opts: EnumerateOptions,
) -> Result<SubstructuralLattice, TvError> {
    let family = enumerate_indices(m, fam, opts)?;
    let labelled: Vec<Vec<String>> = family.iter().map(|n| m.labels(n)).collect();
    // the full universe always passes, so the family is never empty
    let poset = FinPoset::from_family(&labelled).expect("nonempty family of distinct sets");
    let intersection =
        |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect() };
    let join = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
        u.sort_unstable();
        u.dedup();
        generated_indices(m, &u)
    };
    let pair = |(i, j): (usize, usize)| (labelled[i].clone(), labelled[j].clone());
    let meet_witness = first_missing_pair(&family, intersection).map(pair);
    let join_witness = first_missing_pair(&family, join).map(pair);
    let profile = poset.classify();
    Ok(SubstructuralLattice {
        meet_closed: meet_witness.is_none(),
        meet_witness,
        join_closed: join_witness.is_none(),
        join_witness,
        profile,
        poset,
        family: labelled,
    })
}
