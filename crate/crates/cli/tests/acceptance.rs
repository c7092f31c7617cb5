//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p mll-cli --test acceptance`.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mll_cli::{run, EXIT_FAIL, EXIT_OK};
use mll_core::fixtures;
use mll_core::fo::{Assignment, FinStructure, Formula, Term};
use mll_core::hypergraph::{Hypergraph, Threshold};
use mll_core::io::structure_to_json;
use mll_core::lattice::{FinPoset, PosetFile};
use mll_core::lrk::{
    count_countable_models, disjoint_union, lrk_elements, lrk_join, lrk_lattice, lrk_meet, TypeSpectrum,
};
use mll_core::tv::{tv_check, FormulaFamily};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

const ATLAS_BUDGET: Duration = Duration::from_secs(5);
const SUITE_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

impl Run {
    fn json(&self) -> Result<Value, String> {
        serde_json::from_str(&self.out).map_err(|e| format!("stdout is not JSON ({e}): {}", self.out))
    }
}

fn mll(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mll").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path(dir: &Path, file: &str) -> String {
    dir.join(file).display().to_string()
}

fn write_fixtures(dir: &Path) -> Result<(), String> {
    let r = mll(&["fixtures", "all", "--out-dir", &dir.display().to_string()]);
    ensure(r.code == EXIT_OK, || format!("fixtures exited {}: {}", r.code, r.err))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn poset_from_stdout(r: &Run) -> Result<FinPoset, String> {
    let file: PosetFile = serde_json::from_str(&r.out).map_err(|e| e.to_string())?;
    FinPoset::from_file(&file).map_err(|e| e.to_string())
}

fn chain_product(k: usize, s: usize) -> FinPoset {
    let mut p = FinPoset::chain(1).unwrap();
    for _ in 0..k {
        p = p.product(&FinPoset::chain(2).unwrap());
    }
    for _ in 0..s {
        p = p.product(&FinPoset::chain(3).unwrap());
    }
    p
}

fn atlas() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for (k, s) in fixtures::FIGURES {
        let r = mll(&["lrk", "gen", "--k", &k.to_string(), "--s", &s.to_string()]);
        ensure(r.code == EXIT_OK, || format!("lrk gen ({k},{s}) exited {}", r.code))?;
        let p = poset_from_stdout(&r)?;
        let prof = p.classify();
        ensure(prof.is_lattice, || format!("({k},{s}) is not a lattice"))?;
        sizes.push(prof.size);
    }
    let elapsed = start.elapsed();
    ensure(sizes == [2, 3, 4, 8, 9, 27, 6, 12, 18], || format!("sizes {sizes:?}"))?;
    ensure(elapsed < ATLAS_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("sizes {sizes:?}, all lattices, {elapsed:.2?}"))
}

fn classification_law() -> Outcome {
    let mut boolean = Vec::new();
    let mut linear = Vec::new();
    for (k, s) in fixtures::FIGURES {
        let r = mll(&["lrk", "classify", "--k", &k.to_string(), "--s", &s.to_string()]);
        let v = r.json()?;
        let b = v["boolean"].as_bool().ok_or("missing boolean")?;
        let l = v["linear"].as_bool().ok_or("missing linear")?;
        let prof = lrk_lattice(&TypeSpectrum::new(k, s)).unwrap().classify();
        ensure(prof.is_boolean == b && prof.is_linear == l, || {
            format!(
                "({k},{s}): closed form ({b},{l}) vs computed ({},{})",
                prof.is_boolean, prof.is_linear
            )
        })?;
        if b {
            boolean.push((k, s));
        }
        if l {
            linear.push((k, s));
        }
    }
    ensure(boolean == [(1, 0), (2, 0), (3, 0)], || {
        format!("boolean at {boolean:?}")
    })?;
    ensure(linear == [(1, 0), (0, 1)], || format!("linear at {linear:?}"))?;
    Ok(format!("boolean {boolean:?}, linear {linear:?}"))
}

fn product_structure() -> Outcome {
    let start = Instant::now();
    for k in 0..=3 {
        for s in 0..=3 {
            let l = lrk_lattice(&TypeSpectrum::new(k, s)).unwrap();
            ensure(l.isomorphic(&chain_product(k, s)).unwrap(), || {
                format!("LRK({k},{s}) is not a product of chains")
            })?;
        }
    }
    let mut unions = 0;
    for k1 in 0..=2 {
        for s1 in 0..=2 {
            for k2 in 0..=2 {
                for s2 in 0..=2 {
                    let u = disjoint_union(&TypeSpectrum::new(k1, s1), &TypeSpectrum::new(k2, s2)).unwrap();
                    ensure(u.product_isomorphic, || format!("({k1},{s1}) + ({k2},{s2})"))?;
                    unions += 1;
                }
            }
        }
    }
    let r = mll(&["lrk", "union", "--k1", "1", "--s1", "2", "--k2", "2", "--s2", "0"]);
    ensure(r.code == EXIT_OK, || format!("lrk union exited {}", r.code))?;
    Ok(format!("16 chain products, {unions} unions, {:.2?}", start.elapsed()))
}

fn counting() -> Outcome {
    for k in 0..=8u32 {
        for s in 0..=8u32 {
            let mut expected = BigUint::from(1u32);
            for _ in 0..k {
                expected *= 3u32;
            }
            for _ in 0..s {
                expected *= 6u32;
            }
            let got = count_countable_models(&TypeSpectrum::new(k as usize, s as usize)).unwrap();
            ensure(got == expected, || format!("({k},{s}): {got} vs {expected}"))?;
        }
    }
    let v = mll(&["lrk", "count", "--k", "8", "--s", "8"]).json()?;
    ensure(v["count"] == "11019960576", || format!("cli count {}", v["count"]))?;
    Ok("81 spectra exact, cli (8,8) = 11019960576".into())
}

fn counterexamples() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    write_fixtures(dir.path())?;
    let phi = path(dir.path(), "phi.fml");

    let ex3 = path(dir.path(), "example3.json");
    let r = mll(&[
        "tv",
        "pair",
        "--structure",
        &ex3,
        "--formulas",
        &phi,
        "--n1",
        "a1,a2,a3",
        "--n2",
        "a1,a2,a4",
    ]);
    ensure(r.code == EXIT_FAIL, || format!("pair check exited {}", r.code))?;
    let v = r.json()?;
    ensure(v["outcome"] == "fail" && v["formula"] == fixtures::PHI, || {
        format!("pair verdict {v}")
    })?;
    let inside: Vec<String> = strings(&v["witnesses"])
        .into_iter()
        .filter(|w| w == "a1" || w == "a2")
        .collect();
    ensure(inside.is_empty(), || {
        format!("witnesses in the intersection: {inside:?}")
    })?;

    let ex4 = path(dir.path(), "example4.json");
    let r = mll(&[
        "tv",
        "join",
        "--structure",
        &ex4,
        "--formulas",
        &phi,
        "--n1",
        "a1",
        "--n2",
        "a2",
    ]);
    ensure(r.code == EXIT_FAIL, || format!("join check exited {}", r.code))?;
    let v = r.json()?;
    ensure(v["outcome"] == "fail" && v["formula"] == fixtures::PHI, || {
        format!("join verdict {v}")
    })?;
    ensure(strings(&v["witnesses"]) == ["a3"], || {
        format!("join witnesses {}", v["witnesses"])
    })?;
    Ok("pair: fail, no witness in {a1,a2}; join: fail, witnesses {a3}; exit 1 both".into())
}

fn pentagon() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    write_fixtures(dir.path())?;
    let v = mll(&["lattice", "classify", &path(dir.path(), "pentagon.json")]).json()?;
    let want = (Some(5), Some(true), Some(false), Some(false));
    let got = (
        v["size"].as_u64(),
        v["is_lattice"].as_bool(),
        v["is_modular"].as_bool(),
        v["is_distributive"].as_bool(),
    );
    ensure(got == want, || format!("profile {v}"))?;
    Ok("size 5, lattice, not modular, not distributive".into())
}

fn dichotomy() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for n in 0..=3usize {
        let m = fixtures::example1_surrogate(n);
        let sfile = path(dir.path(), &format!("surrogate{n}.json"));
        std::fs::write(&sfile, serde_json::to_string(&structure_to_json(&m)).unwrap()).unwrap();
        let fam = mll(&["tv", "enumerate", "--structure", &sfile, "--rank-one"]).json()?;
        let h = serde_json::json!({"vertices": m.universe(), "edges": fam["family"]});
        let hfile = path(dir.path(), &format!("h{n}.json"));
        std::fs::write(&hfile, h.to_string()).unwrap();
        let set = m.universe().join(",");
        let v = mll(&["hyper", "profile", &hfile, "--set", &set, "--acl0", "e1,e2,e3"]).json()?;
        let expected = 1u64 << n;
        ensure(v["count"] == expected && v["predicted"] == expected, || {
            format!("|A0| = {n}: {v}")
        })?;
        seen.push(expected);
    }
    Ok(format!("counts {seen:?} match 2^|A0|"))
}

fn timed(f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < SUITE_BUDGET, || format!("{detail}, but took {elapsed:?}"))?;
    Ok(format!("{detail}, {elapsed:.2?}"))
}

fn lrk_laws() -> Outcome {
    let sp = TypeSpectrum::new(2, 2);
    let elems = lrk_elements(&sp).unwrap();
    let n = elems.len();
    let index = |x: &mll_core::lrk::SignedTypeSet| elems.iter().position(|e| e == x).unwrap();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index(&lrk_meet(&elems[a], &elems[b], &sp).unwrap());
            join[a * n + b] = index(&lrk_join(&elems[a], &elems[b], &sp).unwrap());
        }
    }
    let m = |a: usize, b: usize| meet[a * n + b];
    let j = |a: usize, b: usize| join[a * n + b];
    for x in 0..n {
        for y in 0..n {
            ensure(m(x, y) == m(y, x) && j(x, y) == j(y, x), || {
                format!("commutativity at {x},{y}")
            })?;
            ensure(m(x, j(x, y)) == x && j(x, m(x, y)) == x, || {
                format!("absorption at {x},{y}")
            })?;
            for z in 0..n {
                ensure(m(x, m(y, z)) == m(m(x, y), z) && j(x, j(y, z)) == j(j(x, y), z), || {
                    format!("associativity at {x},{y},{z}")
                })?;
            }
        }
    }
    Ok(format!("{n} elements, {} triples", n * n * n))
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn subset<R: Rng>(rng: &mut R, of: &[String]) -> Vec<String> {
    of.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn independence_implies_disjointness() -> Outcome {
    let t = Threshold::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut independent = 0;
    for i in 0..200 {
        let n = rng.gen_range(2..=8);
        let vertices = labels("v", n);
        let h = if i % 2 == 0 {
            let edges: Vec<Vec<String>> = (0..rng.gen_range(1..=40))
                .map(|_| subset(&mut rng, &vertices))
                .collect();
            Hypergraph::new(vertices.clone(), edges).unwrap()
        } else {
            Hypergraph::powerset(vertices.clone()).unwrap()
        };
        for _ in 0..20 {
            let a = subset(&mut rng, &vertices);
            let b = subset(&mut rng, &vertices);
            if a.len() >= 2 && b.len() >= 3 && h.are_h_independent(&a, &b, t).unwrap() {
                independent += 1;
                ensure(a.iter().all(|v| !b.contains(v)), || {
                    format!("{a:?} and {b:?} independent, not disjoint")
                })?;
            }
        }
    }
    Ok(format!("200 hypergraphs, {independent} independent pairs all disjoint"))
}

fn decompositions() -> Outcome {
    let t = Threshold::new(2).unwrap();
    let mut checked = 0;
    let sizes = [1usize, 2, 3, 4];
    let mut shapes: Vec<Vec<usize>> = sizes.iter().map(|&a| vec![a]).collect();
    for &a in &sizes {
        for &b in &sizes {
            shapes.push(vec![a, b]);
            shapes.extend(sizes.iter().map(|&c| vec![a, b, c]));
        }
    }
    for shape in shapes {
        let parts: Vec<Vec<String>> = shape
            .iter()
            .enumerate()
            .map(|(i, &n)| labels(&format!("c{i}_"), n))
            .collect();
        let hs: Vec<Hypergraph> = parts.iter().map(|p| Hypergraph::powerset(p.clone()).unwrap()).collect();
        let h = Hypergraph::complete_union(&hs).unwrap();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                ensure(h.check_decomposition(&parts[i], &parts[j], t).unwrap(), || {
                    format!("{shape:?}: components {i},{j}")
                })?;
                checked += 1;
            }
        }
        let fam = h.check_family_decomposition(&parts, t).unwrap();
        ensure(fam.pairwise && fam.joint, || format!("{shape:?}: family"))?;
    }
    Ok(format!("84 unions, {checked} component pairs"))
}

fn random_formula<R: Rng>(rng: &mut R, depth: usize, rank: usize, vars: &[String]) -> Formula {
    let term = |rng: &mut R, vars: &[String]| {
        if rng.gen_bool(0.2) {
            Term::constant("c")
        } else {
            Term::var(vars[rng.gen_range(0..vars.len())].clone())
        }
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => Formula::atom("P", vec![term(rng, vars)]),
            1 => Formula::atom("E", vec![term(rng, vars), term(rng, vars)]),
            _ => Formula::eq(term(rng, vars), term(rng, vars)),
        };
    }
    match rng.gen_range(0..if rank > 0 { 5 } else { 3 }) {
        0 => Formula::not(random_formula(rng, depth - 1, rank, vars)),
        1 => Formula::and(
            random_formula(rng, depth - 1, rank, vars),
            random_formula(rng, depth - 1, rank, vars),
        ),
        2 => Formula::or(
            random_formula(rng, depth - 1, rank, vars),
            random_formula(rng, depth - 1, rank, vars),
        ),
        q => {
            let x = format!("x{}", vars.len());
            let mut inner = vars.to_vec();
            inner.push(x.clone());
            let body = random_formula(rng, depth - 1, rank - 1, &inner);
            if q == 3 {
                Formula::exists(x, body)
            } else {
                Formula::forall(x, body)
            }
        }
    }
}

fn random_structure<R: Rng>(rng: &mut R, n: usize) -> FinStructure {
    let u = labels("m", n);
    let mut e = Vec::new();
    for a in &u {
        for b in &u {
            if rng.gen_bool(0.35) {
                e.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    let p = u
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|a| vec![a.clone()])
        .collect();
    let c = u[rng.gen_range(0..n)].clone();
    FinStructure::new(
        u,
        [("E".to_string(), 2, e), ("P".to_string(), 1, p)],
        [("c".to_string(), c)],
    )
    .unwrap()
}

fn transfer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut passing = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let m = random_structure(&mut rng, n);
        let c = m.constant_value("c").unwrap().to_string();
        let sub: Vec<String> = m
            .universe()
            .iter()
            .filter(|e| **e == c || rng.gen_bool(0.7))
            .cloned()
            .collect();
        let vars = vec!["u".to_string()];
        let fam =
            FormulaFamily::new((0..3).map(|_| random_formula(&mut rng, 4, 2, &vars)).collect()).subformula_closure();
        if !tv_check(&m, &sub, &fam).unwrap().is_pass() {
            continue;
        }
        passing += 1;
        let s = m.induced_substructure(&sub).unwrap();
        for phi in fam.formulas() {
            let fv: Vec<String> = phi.free_vars().into_iter().collect();
            let mut tuples: Vec<Vec<String>> = vec![vec![]];
            for _ in &fv {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        sub.iter().map(move |e| {
                            let mut t = t.clone();
                            t.push(e.clone());
                            t
                        })
                    })
                    .collect();
            }
            for t in tuples {
                let a: Assignment = fv.iter().cloned().zip(t).collect();
                ensure(m.evaluate(phi, &a).unwrap() == s.evaluate(phi, &a).unwrap(), || {
                    format!("{phi} differs on {sub:?}")
                })?;
            }
        }
    }
    Ok(format!("100 triples, {passing} passing subsets transfer"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(0, &mut (0..n).collect(), &mut out);
    out
}

/// Adjacency masks (bit `i*n+j` for the edge `i → j`) that are least among
/// their images under vertex permutations: one per isomorphism class.
fn digraph_classes(n: usize) -> Vec<u32> {
    let row = 1usize << n;
    let tables: Vec<Vec<u32>> = permutations(n)
        .iter()
        .map(|p| {
            let mut t = vec![0u32; n * row];
            for i in 0..n {
                for bits in 0..row {
                    t[i * row + bits] = (0..n)
                        .filter(|j| bits >> j & 1 == 1)
                        .fold(0, |v, j| v | 1 << (p[i] * n + p[j]));
                }
            }
            t
        })
        .collect();
    (0u32..1 << (n * n))
        .filter(|&mask| {
            tables.iter().all(|t| {
                let image = (0..n).fold(0, |v, i| v | t[i * row + (mask >> (i * n)) as usize % row]);
                image >= mask
            })
        })
        .collect()
}

const EF_MAX_RANK: usize = 2;

fn ef_relations() -> Outcome {
    let mut structures = 0;
    for n in 1..=5 {
        let u = labels("v", n);
        for mask in digraph_classes(n) {
            let edges: Vec<Vec<String>> = (0..n * n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| vec![u[b / n].clone(), u[b % n].clone()])
                .collect();
            let m =
                FinStructure::new(u.clone(), [("E".to_string(), 2, edges)], Vec::<(String, String)>::new()).unwrap();
            let mut prev: Option<Vec<bool>> = None;
            for r in 0..=EF_MAX_RANK {
                let eq: Vec<bool> = (0..n * n)
                    .map(|p| m.ef_equivalent(&[&u[p / n]], &[&u[p % n]], r).unwrap())
                    .collect();
                let at = |a: usize, b: usize| eq[a * n + b];
                for a in 0..n {
                    ensure(at(a, a), || format!("n={n} mask={mask:#x} r={r}: not reflexive at {a}"))?;
                    if r == 0 {
                        let looped = |x: usize| mask >> (x * n + x) & 1 == 1;
                        for b in 0..n {
                            ensure(at(a, b) == (looped(a) == looped(b)), || {
                                format!("n={n} mask={mask:#x}: rank 0 differs from the atomic type at {a},{b}")
                            })?;
                        }
                    }
                    for b in 0..n {
                        ensure(at(a, b) == at(b, a), || {
                            format!("n={n} mask={mask:#x} r={r}: not symmetric")
                        })?;
                        for c in 0..n {
                            ensure(!(at(a, b) && at(b, c)) || at(a, c), || {
                                format!("n={n} mask={mask:#x} r={r}: not transitive")
                            })?;
                        }
                    }
                }
                if let Some(coarser) = &prev {
                    ensure(eq.iter().zip(coarser).all(|(&fine, &c)| !fine || c), || {
                        format!("n={n} mask={mask:#x}: rank {r} not finer than rank {}", r - 1)
                    })?;
                }
                prev = Some(eq);
            }
            structures += 1;
        }
    }
    Ok(format!(
        "{structures} digraphs on 1..5 vertices (one per isomorphism class), ranks 0..{EF_MAX_RANK}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 figure atlas", atlas),
        ("2 classification law", classification_law),
        ("3 product structure", product_structure),
        ("4 counting", counting),
        ("5 counterexamples", counterexamples),
        ("6 pentagon", pentagon),
        ("7 dichotomy", dichotomy),
        ("8a lattice laws on LRK(2,2)", || timed(lrk_laws)),
        ("8b independence implies disjointness", || {
            timed(independence_implies_disjointness)
        }),
        ("8c decomposition of complete unions", || timed(decompositions)),
        ("8d transfer", || timed(transfer)),
        ("8e EF equivalence and monotonicity", || timed(ef_relations)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
