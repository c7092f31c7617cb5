//! Named example structures, formulas and posets.

use crate::fo::FinStructure;
use crate::lattice::FinPoset;
use crate::lrk::{lrk_lattice, TypeSpectrum};

/// "Some common `R`-neighbour of `c1` and `c2`".
pub const PHI: &str = "exists x. R(c1,x) & R(c2,x)";

/// `(k, s)` for the figures `fig1` … `fig9`.
pub const FIGURES: [(usize, usize); 9] = [(1, 0), (0, 1), (2, 0), (3, 0), (0, 2), (0, 3), (1, 1), (2, 1), (1, 2)];

/// Names accepted by [`by_name`], in emission order.
pub const NAMES: [&str; 14] = [
    "example3",
    "example4",
    "example1-surrogate",
    "pentagon",
    "phi",
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
];

fn symmetric_graph(universe: &[&str], edges: &[(&str, &str)]) -> FinStructure {
    let tuples = edges
        .iter()
        .flat_map(|&(a, b)| [vec![a.to_string(), b.to_string()], vec![b.to_string(), a.to_string()]])
        .collect();
    FinStructure::new(
        universe.iter().copied(),
        [("R".to_string(), 2, tuples)],
        [
            ("c1".to_string(), "a1".to_string()),
            ("c2".to_string(), "a2".to_string()),
        ],
    )
    .expect("fixture is well formed")
}

/// Four vertices; `a1` and `a2` (named `c1`, `c2`) are both adjacent to
/// `a3` and `a4`.
pub fn example3() -> FinStructure {
    symmetric_graph(
        &["a1", "a2", "a3", "a4"],
        &[("a1", "a3"), ("a1", "a4"), ("a2", "a3"), ("a2", "a4")],
    )
}

/// Three vertices; `a1` and `a2` (named `c1`, `c2`) share the neighbour `a3`.
pub fn example4() -> FinStructure {
    symmetric_graph(&["a1", "a2", "a3"], &[("a1", "a3"), ("a2", "a3")])
}

/// A unary `P` holding everywhere, three named elements `e1..e3` (constants
/// `c1..c3`) and `n` unnamed elements `a1..an`.
pub fn example1_surrogate(n: usize) -> FinStructure {
    let named = ["e1", "e2", "e3"];
    let mut universe: Vec<String> = named.iter().map(|s| s.to_string()).collect();
    universe.extend((1..=n).map(|i| format!("a{i}")));
    let tuples = universe.iter().map(|e| vec![e.clone()]).collect();
    let constants = named
        .iter()
        .enumerate()
        .map(|(i, e)| (format!("c{}", i + 1), e.to_string()));
    FinStructure::new(universe.clone(), [("P".to_string(), 1, tuples)], constants).expect("fixture is well formed")
}

pub fn pentagon() -> FinPoset {
    FinPoset::pentagon()
}

/// The LRK lattice drawn in figure `n` (1 to 9).
pub fn figure(n: usize) -> Option<FinPoset> {
    let &(k, s) = FIGURES.get(n.checked_sub(1)?)?;
    Some(lrk_lattice(&TypeSpectrum::new(k, s)).expect("figures are within bound"))
}

/// A fixture by name, rendered as file name and contents.
pub fn by_name(name: &str) -> Option<(String, String)> {
    let json = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    let structure = |m: FinStructure| json(crate::io::structure_to_json(&m));
    let poset = |p: FinPoset| json(serde_json::to_value(p.to_file()).expect("serializable"));
    let body = match name {
        "example3" => structure(example3()),
        "example4" => structure(example4()),
        "example1-surrogate" => structure(example1_surrogate(2)),
        "pentagon" => poset(pentagon()),
        "phi" => return Some(("phi.fml".into(), format!("{PHI}\n"))),
        _ => {
            let n: usize = name.strip_prefix("fig")?.parse().ok()?;
            poset(figure(n)?)
        }
    };
    Some((format!("{name}.json"), body))
}
