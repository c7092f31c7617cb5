use super::formula::{Formula, Term};
use super::structure::{Assignment, FinStructure};
use super::FoError;

/// Tarskian satisfaction with quantifiers ranging over `domain`.
///
/// With `domain` equal to a constant-closed subset this is satisfaction in
/// the induced substructure, without materializing it.
pub(crate) struct Evaluator<'a> {
    m: &'a FinStructure,
    domain: &'a [usize],
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(m: &'a FinStructure, domain: &'a [usize]) -> Self {
        Evaluator { m, domain }
    }

    fn term<'f>(&self, t: &'f Term, env: &[(&'f str, usize)]) -> usize {
        match t {
            Term::Var(v) => {
                env.iter()
                    .rev()
                    .find(|(name, _)| *name == v)
                    .expect("formula validated before evaluation")
                    .1
            }
            Term::Const(c) => self.m.constants[c],
        }
    }

    pub(crate) fn sat<'f>(&self, phi: &'f Formula, env: &mut Vec<(&'f str, usize)>) -> bool {
        match phi {
            Formula::Equality(a, b) => self.term(a, env) == self.term(b, env),
            Formula::Atom(r, args) => {
                let table = &self.m.relations[r];
                let mut buf = [0usize; 8];
                if args.len() <= buf.len() {
                    for (slot, t) in buf.iter_mut().zip(args) {
                        *slot = self.term(t, env);
                    }
                    self.m.rel_contains(table, &buf[..args.len()])
                } else {
                    let t: Vec<usize> = args.iter().map(|t| self.term(t, env)).collect();
                    self.m.rel_contains(table, &t)
                }
            }
            Formula::Not(f) => !self.sat(f, env),
            Formula::And(l, r) => self.sat(l, env) && self.sat(r, env),
            Formula::Or(l, r) => self.sat(l, env) || self.sat(r, env),
            Formula::Implies(l, r) => !self.sat(l, env) || self.sat(r, env),
            Formula::Exists(v, f) => self.quantify(v, f, env, true),
            Formula::Forall(v, f) => !self.quantify(v, f, env, false),
        }
    }

    // Searches the domain for an element making `f` equal to `want`.
    fn quantify<'f>(&self, v: &'f str, f: &'f Formula, env: &mut Vec<(&'f str, usize)>, want: bool) -> bool {
        for &e in self.domain {
            env.push((v, e));
            let hit = self.sat(f, env) == want;
            env.pop();
            if hit {
                return true;
            }
        }
        false
    }
}

impl FinStructure {
    /// Checks that every symbol of `phi` belongs to this structure's
    /// signature with the right arity.
    pub fn check_formula(&self, phi: &Formula) -> Result<(), FoError> {
        for sub in phi.subformulas() {
            let terms: &[Term] = match sub {
                Formula::Atom(r, args) => {
                    let expected = self.sig.arity(r).ok_or_else(|| FoError::UnknownSymbol(r.clone()))?;
                    if expected != args.len() {
                        return Err(FoError::ArityMismatch {
                            name: r.clone(),
                            expected,
                            found: args.len(),
                        });
                    }
                    args
                }
                Formula::Equality(a, b) => {
                    for t in [a, b] {
                        self.check_term(t)?;
                    }
                    continue;
                }
                _ => continue,
            };
            for t in terms {
                self.check_term(t)?;
            }
        }
        Ok(())
    }

    fn check_term(&self, t: &Term) -> Result<(), FoError> {
        match t {
            Term::Const(c) if !self.sig.has_constant(c) => Err(FoError::UnknownSymbol(c.clone())),
            _ => Ok(()),
        }
    }

    /// Decides `M ⊨ phi[a]`, quantifiers ranging over the whole universe.
    pub fn evaluate(&self, phi: &Formula, a: &Assignment) -> Result<bool, FoError> {
        self.check_formula(phi)?;
        let mut env = Vec::new();
        for v in phi.free_vars() {
            let label = a.get(&v).ok_or_else(|| FoError::UnboundVariable(v.clone()))?;
            let e = self
                .element_index(label)
                .ok_or_else(|| FoError::UnknownElement(label.to_string()))?;
            env.push((v, e));
        }
        let env_refs: Vec<(&str, usize)> = env.iter().map(|(v, e)| (v.as_str(), *e)).collect();
        Ok(self.eval_unchecked(phi, &env_refs))
    }

    pub(crate) fn eval_unchecked(&self, phi: &Formula, env: &[(&str, usize)]) -> bool {
        let all: Vec<usize> = (0..self.size()).collect();
        self.eval_in(&all, phi, env)
    }

    /// Satisfaction in the substructure induced on `domain` (which must be
    /// sorted and contain the constants).
    pub(crate) fn eval_in<'x>(&self, domain: &[usize], phi: &'x Formula, env: &[(&'x str, usize)]) -> bool {
        let mut env = env.to_vec();
        Evaluator::new(self, domain).sat(phi, &mut env)
    }
}
