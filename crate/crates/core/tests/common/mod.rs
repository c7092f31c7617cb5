#![allow(dead_code)]

use mll_core::fo::{FinStructure, Formula, Term};
use rand::seq::SliceRandom;
use rand::Rng;

/// Elements `e0..e{n-1}`, a random binary `E` and unary `P`, and when
/// `constant` is set a constant `c` naming a random element.
pub fn random_structure<R: Rng>(rng: &mut R, n: usize, constant: bool) -> FinStructure {
    let universe: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut edges = Vec::new();
    for a in &universe {
        for b in &universe {
            if rng.gen_bool(0.4) {
                edges.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    let unary = universe
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|a| vec![a.clone()])
        .collect();
    let constants: Vec<(String, String)> = if constant {
        vec![("c".into(), universe.choose(rng).unwrap().clone())]
    } else {
        Vec::new()
    };
    FinStructure::new(
        universe,
        [("E".to_string(), 2, edges), ("P".to_string(), 1, unary)],
        constants,
    )
    .unwrap()
}

fn term<R: Rng>(rng: &mut R, vars: &[String], constants: &[&str]) -> Term {
    let total = vars.len() + constants.len();
    let i = rng.gen_range(0..total);
    if i < vars.len() {
        Term::var(vars[i].clone())
    } else {
        Term::constant(constants[i - vars.len()])
    }
}

/// A random formula over `E`/2 and `P`/1 with free variables among `vars`
/// and quantifier rank at most `rank`. Bound variables come from `x`, `y`,
/// `z`, so shadowing happens.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, rank: usize, vars: &[String], constants: &[&str]) -> Formula {
    let atomic = vars.is_empty() && constants.is_empty() || depth == 0 || rng.gen_bool(0.25);
    if atomic {
        if vars.is_empty() && constants.is_empty() {
            // no terms available: quantify one in
            let inner = random_formula(rng, 0, 0, &["x".to_string()], constants);
            return Formula::exists("x", inner);
        }
        return match rng.gen_range(0..3) {
            0 => Formula::atom("E", vec![term(rng, vars, constants), term(rng, vars, constants)]),
            1 => Formula::atom("P", vec![term(rng, vars, constants)]),
            _ => Formula::eq(term(rng, vars, constants), term(rng, vars, constants)),
        };
    }
    let choices = if rank > 0 { 6 } else { 4 };
    match rng.gen_range(0..choices) {
        0 => Formula::not(random_formula(rng, depth - 1, rank, vars, constants)),
        1 => Formula::and(
            random_formula(rng, depth - 1, rank, vars, constants),
            random_formula(rng, depth - 1, rank, vars, constants),
        ),
        2 => Formula::or(
            random_formula(rng, depth - 1, rank, vars, constants),
            random_formula(rng, depth - 1, rank, vars, constants),
        ),
        3 => Formula::implies(
            random_formula(rng, depth - 1, rank, vars, constants),
            random_formula(rng, depth - 1, rank, vars, constants),
        ),
        q => {
            let v = ["x", "y", "z"].choose(rng).unwrap().to_string();
            let mut inner_vars = vars.to_vec();
            if !inner_vars.contains(&v) {
                inner_vars.push(v.clone());
            }
            let body = random_formula(rng, depth - 1, rank - 1, &inner_vars, constants);
            if q == 4 {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            }
        }
    }
}

/// Every assignment of `vars` into `domain`, as label tuples.
pub fn tuples(domain: &[String], len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                domain.iter().map(move |d| {
                    let mut t = t.clone();
                    t.push(d.clone());
                    t
                })
            })
            .collect();
    }
    out
}
