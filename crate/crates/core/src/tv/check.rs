use std::collections::BTreeSet;

use crate::fo::{FinStructure, FoError, Formula};

use super::verdict::{TvFailure, TvVerdict};
use super::{FormulaFamily, TvError};

/// Where join-check parameters are drawn from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum JoinParams {
    /// From `N1 ∩ N2`, or from `N1 ∪ N2` when the intersection is empty.
    #[default]
    AsWritten,
    /// From the generated universe `G`.
    Generated,
}

/// One existential condition extracted from a family member.
struct Instance<'f> {
    member: usize,
    variable: &'f str,
    matrix: Formula,
    param_vars: Vec<String>,
}

fn instances(fam: &FormulaFamily) -> Vec<Instance<'_>> {
    fam.formulas()
        .iter()
        .enumerate()
        .filter_map(|(member, f)| {
            let (variable, matrix) = match f {
                Formula::Exists(v, body) => (v.as_str(), (**body).clone()),
                Formula::Forall(v, body) => (v.as_str(), Formula::not((**body).clone())),
                _ => return None,
            };
            Some(Instance {
                member,
                variable,
                matrix,
                param_vars: f.free_vars().into_iter().collect(),
            })
        })
        .collect()
}

/// Shared search: the first (member, parameter tuple) such that `M ⊨ ∃x ψ`
/// but no candidate satisfies `ψ` inside every scope.
pub(crate) fn first_counterexample(
    m: &FinStructure,
    fam: &FormulaFamily,
    pool: &[usize],
    candidate: &[usize],
    scopes: &[&[usize]],
) -> Option<TvFailure> {
    let n = m.size();
    for inst in instances(fam) {
        let k = inst.param_vars.len();
        if k > 0 && pool.is_empty() {
            continue;
        }
        let mut odo = vec![0usize; k];
        loop {
            let mut env: Vec<(&str, usize)> = inst
                .param_vars
                .iter()
                .zip(&odo)
                .map(|(v, &i)| (v.as_str(), pool[i]))
                .collect();
            env.push((inst.variable, 0));
            let last = env.len() - 1;

            let mut witnesses = Vec::new();
            for a in 0..n {
                env[last].1 = a;
                if m.eval_unchecked(&inst.matrix, &env) {
                    witnesses.push(a);
                }
            }
            if !witnesses.is_empty() {
                let found = candidate.iter().any(|&c| {
                    env[last].1 = c;
                    scopes.iter().all(|s| m.eval_in(s, &inst.matrix, &env))
                });
                if !found {
                    let params: Vec<usize> = odo.iter().map(|&i| pool[i]).collect();
                    return Some(TvFailure {
                        formula: fam.formulas()[inst.member].to_string(),
                        params: m.labels(&params),
                        witnesses: m.labels(&witnesses),
                        member: inst.member,
                        variable: inst.variable.to_string(),
                        matrix: inst.matrix.clone(),
                        param_vars: inst.param_vars.clone(),
                        candidate: m.labels(candidate),
                        scopes: scopes.iter().map(|s| m.labels(s)).collect(),
                    });
                }
            }

            // lexicographic successor over pool^k, last position fastest
            let mut advanced = false;
            let mut i = k;
            while i > 0 {
                i -= 1;
                odo[i] += 1;
                if odo[i] < pool.len() {
                    advanced = true;
                    break;
                }
                odo[i] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    None
}

fn verdict(f: Option<TvFailure>) -> TvVerdict {
    f.map_or(TvVerdict::Pass, TvVerdict::Fail)
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .chain(b)
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Tests whether `subset` passes the Tarski–Vaught condition in `m` for
/// every member of `fam`. The reported counterexample is the first in family
/// order, then lexicographic parameter order.
pub fn tv_check<S: AsRef<str>>(m: &FinStructure, subset: &[S], fam: &FormulaFamily) -> Result<TvVerdict, TvError> {
    fam.check_against(m)?;
    let n = m.subset(subset)?;
    m.check_closed_subset(&n)?;
    let all: Vec<usize> = (0..m.size()).collect();
    Ok(verdict(first_counterexample(m, fam, &n, &n, &[&all])))
}

pub(crate) fn tv_check_indices(m: &FinStructure, n: &[usize], fam: &FormulaFamily) -> bool {
    let all: Vec<usize> = (0..m.size()).collect();
    first_counterexample(m, fam, n, n, &[&all]).is_none()
}

/// Intersection test: parameters and witnesses come from `N1 ∩ N2`, and a
/// witness must satisfy the matrix in both induced substructures.
pub fn tv_pair_check<S: AsRef<str>>(
    m: &FinStructure,
    n1: &[S],
    n2: &[S],
    fam: &FormulaFamily,
) -> Result<TvVerdict, TvError> {
    fam.check_against(m)?;
    let a = m.subset(n1)?;
    let b = m.subset(n2)?;
    let meet = sorted_intersection(&a, &b);
    if meet.is_empty() {
        return Err(TvError::EmptyIntersection);
    }
    m.check_closed_subset(&a)?;
    m.check_closed_subset(&b)?;
    Ok(verdict(first_counterexample(m, fam, &meet, &meet, &[&a, &b])))
}

/// Join test with the default parameter pool ([`JoinParams::AsWritten`]).
pub fn tv_join_check<S: AsRef<str>>(
    m: &FinStructure,
    n1: &[S],
    n2: &[S],
    fam: &FormulaFamily,
) -> Result<TvVerdict, TvError> {
    tv_join_check_with(m, n1, n2, fam, JoinParams::AsWritten)
}

/// Join test: witnesses come from `G`, the substructure generated by
/// `N1 ∪ N2`, and must satisfy the matrix in the substructure on `G`.
pub fn tv_join_check_with<S: AsRef<str>>(
    m: &FinStructure,
    n1: &[S],
    n2: &[S],
    fam: &FormulaFamily,
    params: JoinParams,
) -> Result<TvVerdict, TvError> {
    fam.check_against(m)?;
    let a = m.subset(n1)?;
    let b = m.subset(n2)?;
    if a.is_empty() || b.is_empty() {
        return Err(FoError::InvalidSubset("join operands must be nonempty".into()).into());
    }
    let g = sorted_union(&sorted_union(&a, &b), &m.constant_elements());
    let pool = match params {
        JoinParams::Generated => g.clone(),
        JoinParams::AsWritten => {
            let meet = sorted_intersection(&a, &b);
            if meet.is_empty() {
                sorted_union(&a, &b)
            } else {
                meet
            }
        }
    };
    Ok(verdict(first_counterexample(m, fam, &pool, &g, &[&g])))
}

/// Universe of the substructure generated by `subset`: the subset together
/// with the constant interpretations (the signature has no functions).
pub fn generated_substructure<S: AsRef<str>>(m: &FinStructure, subset: &[S]) -> Result<Vec<String>, TvError> {
    let s = m.subset(subset)?;
    if s.is_empty() {
        return Err(FoError::InvalidSubset("subset is empty".into()).into());
    }
    Ok(m.labels(&sorted_union(&s, &m.constant_elements())))
}

pub(crate) fn generated_indices(m: &FinStructure, s: &[usize]) -> Vec<usize> {
    sorted_union(s, &m.constant_elements())
}
