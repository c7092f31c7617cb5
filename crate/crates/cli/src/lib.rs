//! The `mll` command line.
//!
//! Machine output is JSON on stdout, summaries go to stderr. Exit codes:
//! 0 success or property holds, 1 checked property fails, 2 usage error,
//! 3 input or validation error.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mll_core::fo::{parse_formula_file, FinStructure};
use mll_core::hypergraph::{Hypergraph, Threshold};
use mll_core::io::StructureFile;
use mll_core::lattice::{FinPoset, PosetFile};
use mll_core::lrk::{classify_lrk, count_countable_models, disjoint_union, lrk_lattice, TypeSpectrum};
use mll_core::tv::{
    substructural_lattice, tv_check, tv_join_check_with, tv_pair_check, EnumerateOptions, FormulaFamily, JoinParams,
    TvVerdict, DEFAULT_MAX_UNIVERSE,
};
use mll_core::{fixtures, tv};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable overriding the enumeration bound.
pub const MAX_UNIVERSE_VAR: &str = "MLL_MAX_UNIVERSE";

#[derive(Parser, Debug)]
#[command(name = "mll", version, about = "Finite model theory workbench")]
struct Cli {
    /// Worker threads for the enumeration commands.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rudin–Keisler lattices LRK(k, s).
    #[command(subcommand)]
    Lrk(LrkCmd),
    /// Finite posets and lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Tarski–Vaught tests.
    #[command(subcommand)]
    Tv(TvCmd),
    /// Hypergraph operations.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Ehrenfeucht–Fraïssé equivalence of two tuples in one structure.
    Ef(EfArgs),
    /// Writes fixture files.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
struct Spec {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
}

impl Spec {
    fn spectrum(&self) -> TypeSpectrum {
        TypeSpectrum::new(self.k, self.s)
    }
}

#[derive(Subcommand, Debug)]
enum LrkCmd {
    /// Prints the lattice as a poset file.
    Gen {
        #[command(flatten)]
        spec: Spec,
        /// Also write the Hasse diagram in DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Closed-form size, Boolean and linearity flags.
    Classify(Spec),
    /// Number of countable models.
    Count(Spec),
    /// Spectrum of a disjoint union, with the product check.
    Union {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        s1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        s2: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Lattice profile of a poset file.
    Classify { file: PathBuf },
    /// Product of two posets.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Order isomorphism between two posets; exit 1 if none.
    Iso { first: PathBuf, second: PathBuf },
    /// Hasse diagram in DOT.
    Dot {
        file: PathBuf,
        /// Write to this path instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Structure file (JSON).
    #[arg(long)]
    structure: PathBuf,
    /// Formula family, one formula per line.
    #[arg(long, required_unless_present = "rank_one", conflicts_with = "rank_one")]
    formulas: Option<PathBuf>,
    /// Use the generated quantifier-rank-one family instead of a file.
    #[arg(long)]
    rank_one: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParamMode {
    /// Parameters from N1 ∩ N2, or N1 ∪ N2 when that is empty.
    AsWritten,
    /// Parameters from the generated universe.
    Generated,
}

#[derive(Subcommand, Debug)]
enum TvCmd {
    /// Tests one subset.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated elements.
        #[arg(long)]
        subset: String,
    },
    /// Intersection test for two subsets.
    Pair {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n1: String,
        #[arg(long)]
        n2: String,
    },
    /// Generated-join test for two subsets.
    Join {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n1: String,
        #[arg(long)]
        n2: String,
        #[arg(long, value_enum, default_value = "as-written")]
        params: ParamMode,
    },
    /// Every subset passing the test.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The passing subsets ordered by inclusion, with closure reports.
    Lattice {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct TauArg {
    /// Size from which subsets count as large.
    #[arg(long, default_value_t = 2)]
    tau: usize,
}

#[derive(Subcommand, Debug)]
enum HyperCmd {
    /// Complete union of hypergraph files.
    Union {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Restriction to a vertex set.
    Restrict {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Freeness of a vertex set; exit 1 if not free.
    Free {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Independence of two vertex sets; exit 1 if dependent.
    Indep {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Decomposition of the restriction to A ∪ B; exit 1 if it fails.
    Decomp {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Size of a restriction against 2^|A ∖ acl0|.
    Profile {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "")]
        acl0: String,
    },
}

#[derive(Args, Debug)]
struct EfArgs {
    #[arg(long)]
    structure: PathBuf,
    /// Comma-separated first tuple.
    #[arg(long)]
    left: String,
    /// Comma-separated second tuple.
    #[arg(long)]
    right: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args, Debug)]
struct FixturesArgs {
    /// Fixture name, or `all`.
    name: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

/// Stops a command with an exit code and a message for stderr.
struct Stop(i32, String);

fn input<E: Display>(context: impl Display) -> impl FnOnce(E) -> Stop {
    move |e| Stop(EXIT_INPUT, format!("{context}: {e}"))
}

type Res = Result<i32, Stop>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    threads: usize,
}

impl Io<'_> {
    fn json(&mut self, v: &impl Serialize) -> Result<(), Stop> {
        let text = serde_json::to_string_pretty(v).map_err(input("serializing output"))?;
        writeln!(self.out, "{text}").map_err(input("writing output"))
    }

    fn note(&mut self, msg: impl Display) {
        let _ = writeln!(self.err, "{msg}");
    }
}

fn read(path: &Path) -> Result<String, Stop> {
    fs::read_to_string(path).map_err(input(path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Stop> {
    serde_json::from_str(&read(path)?).map_err(input(path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Stop> {
    fs::write(path, text).map_err(input(path.display()))
}

fn load_structure(path: &Path) -> Result<FinStructure, Stop> {
    read_json::<StructureFile>(path)?
        .to_structure()
        .map_err(input(path.display()))
}

fn load_poset(path: &Path) -> Result<FinPoset, Stop> {
    FinPoset::from_file(&read_json::<PosetFile>(path)?).map_err(input(path.display()))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Stop> {
    read_json(path)
}

fn list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn tau(t: &TauArg) -> Result<Threshold, Stop> {
    Threshold::new(t.tau).map_err(input("--tau"))
}

fn code(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn max_universe() -> Result<usize, Stop> {
    match std::env::var(MAX_UNIVERSE_VAR) {
        Ok(v) => v.trim().parse().map_err(input(MAX_UNIVERSE_VAR)),
        Err(_) => Ok(DEFAULT_MAX_UNIVERSE),
    }
}

fn load_family(args: &FamilyArgs) -> Result<(FinStructure, FormulaFamily), Stop> {
    let m = load_structure(&args.structure)?;
    let fam = match &args.formulas {
        Some(path) => {
            let fs = parse_formula_file(&read(path)?, m.signature()).map_err(input(path.display()))?;
            FormulaFamily::new(fs)
        }
        None => FormulaFamily::rank_one(m.signature()),
    };
    Ok((m, fam))
}

fn verdict(io: &mut Io, v: Result<TvVerdict, tv::TvError>) -> Res {
    let v = v.map_err(input("tv"))?;
    io.json(&v)?;
    match v.failure() {
        None => io.note("pass"),
        Some(f) => io.note(format!(
            "fail: {} with parameters [{}] has no witness in the candidate set; witnesses in M: [{}]",
            f.formula,
            f.params.join(","),
            f.witnesses.join(",")
        )),
    }
    Ok(code(v.is_pass()))
}

fn lrk(io: &mut Io, cmd: LrkCmd) -> Res {
    match cmd {
        LrkCmd::Gen { spec, dot } => {
            let sp = spec.spectrum();
            let p = lrk_lattice(&sp).map_err(input("lrk gen"))?;
            io.json(&p.to_file())?;
            if let Some(path) = dot {
                write_file(&path, &p.to_dot())?;
            }
            io.note(format!("LRK({},{}): {} elements", sp.k, sp.s, p.size()));
            Ok(EXIT_OK)
        }
        LrkCmd::Classify(spec) => {
            let c = classify_lrk(&spec.spectrum()).map_err(input("lrk classify"))?;
            io.json(&c)?;
            Ok(EXIT_OK)
        }
        LrkCmd::Count(spec) => {
            let sp = spec.spectrum();
            let n = count_countable_models(&sp).map_err(input("lrk count"))?;
            io.json(&json!({"k": sp.k, "s": sp.s, "count": n.to_string()}))?;
            Ok(EXIT_OK)
        }
        LrkCmd::Union { k1, s1, k2, s2 } => {
            let u =
                disjoint_union(&TypeSpectrum::new(k1, s1), &TypeSpectrum::new(k2, s2)).map_err(input("lrk union"))?;
            io.json(&u)?;
            Ok(code(u.product_isomorphic))
        }
    }
}

fn lattice(io: &mut Io, cmd: LatticeCmd) -> Res {
    match cmd {
        LatticeCmd::Classify { file } => {
            let p = load_poset(&file)?;
            let prof = p.classify();
            io.json(&prof)?;
            io.note(format!("{} elements, lattice: {}", prof.size, prof.is_lattice));
            Ok(EXIT_OK)
        }
        LatticeCmd::Product { first, second, dot } => {
            let p = load_poset(&first)?.product(&load_poset(&second)?);
            io.json(&p.to_file())?;
            if let Some(path) = dot {
                write_file(&path, &p.to_dot())?;
            }
            Ok(EXIT_OK)
        }
        LatticeCmd::Iso { first, second } => {
            let a = load_poset(&first)?;
            let b = load_poset(&second)?;
            let map = a.isomorphism(&b).map_err(input("lattice iso"))?;
            io.json(&json!({"isomorphic": map.is_some(), "map": map}))?;
            Ok(code(map.is_some()))
        }
        LatticeCmd::Dot { file, dot } => {
            let text = load_poset(&file)?.to_dot();
            match dot {
                Some(path) => write_file(&path, &text)?,
                None => write!(io.out, "{text}").map_err(input("writing output"))?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn tv_cmd(io: &mut Io, cmd: TvCmd) -> Res {
    let opts = |threads| -> Result<EnumerateOptions, Stop> {
        Ok(EnumerateOptions {
            max_universe: max_universe()?,
            threads,
        })
    };
    match cmd {
        TvCmd::Check { family, subset } => {
            let (m, fam) = load_family(&family)?;
            verdict(io, tv_check(&m, &list(&subset), &fam))
        }
        TvCmd::Pair { family, n1, n2 } => {
            let (m, fam) = load_family(&family)?;
            verdict(io, tv_pair_check(&m, &list(&n1), &list(&n2), &fam))
        }
        TvCmd::Join { family, n1, n2, params } => {
            let (m, fam) = load_family(&family)?;
            let mode = match params {
                ParamMode::AsWritten => JoinParams::AsWritten,
                ParamMode::Generated => JoinParams::Generated,
            };
            verdict(io, tv_join_check_with(&m, &list(&n1), &list(&n2), &fam, mode))
        }
        TvCmd::Enumerate { family } => {
            let (m, fam) = load_family(&family)?;
            let sets = tv::enumerate_substructural(&m, &fam, opts(io.threads)?).map_err(input("tv enumerate"))?;
            io.note(format!("{} substructural sets", sets.len()));
            io.json(&json!({ "family": sets }))?;
            Ok(EXIT_OK)
        }
        TvCmd::Lattice { family, dot } => {
            let (m, fam) = load_family(&family)?;
            let lat = substructural_lattice(&m, &fam, opts(io.threads)?).map_err(input("tv lattice"))?;
            io.json(&lat)?;
            if let Some(path) = dot {
                write_file(&path, &lat.poset.to_dot())?;
            }
            io.note(format!(
                "{} sets; intersection-closed: {}, join-closed: {}, lattice: {}",
                lat.family.len(),
                lat.meet_closed,
                lat.join_closed,
                lat.profile.is_lattice
            ));
            Ok(EXIT_OK)
        }
    }
}

fn hyper(io: &mut Io, cmd: HyperCmd) -> Res {
    let fail = input("hypergraph");
    match cmd {
        HyperCmd::Union { files } => {
            let hs = files
                .iter()
                .map(|f| load_hypergraph(f))
                .collect::<Result<Vec<_>, _>>()?;
            let kind = Hypergraph::union_kind(&hs).map_err(fail)?;
            let u = Hypergraph::complete_union(&hs).map_err(input("hyper union"))?;
            io.json(&json!({"kind": kind, "hypergraph": u}))?;
            Ok(EXIT_OK)
        }
        HyperCmd::Restrict { file, set } => {
            let h = load_hypergraph(&file)?.restrict(&list(&set)).map_err(fail)?;
            io.json(&h)?;
            Ok(EXIT_OK)
        }
        HyperCmd::Free { file, set, tau: t } => {
            let free = load_hypergraph(&file)?.is_h_free(&list(&set), tau(&t)?).map_err(fail)?;
            io.json(&json!({ "free": free }))?;
            Ok(code(free))
        }
        HyperCmd::Indep { file, a, b, tau: t } => {
            let ind = load_hypergraph(&file)?
                .are_h_independent(&list(&a), &list(&b), tau(&t)?)
                .map_err(fail)?;
            io.json(&json!({ "independent": ind }))?;
            Ok(code(ind))
        }
        HyperCmd::Decomp { file, a, b, tau: t } => {
            let ok = load_hypergraph(&file)?
                .check_decomposition(&list(&a), &list(&b), tau(&t)?)
                .map_err(input("precondition"))?;
            io.json(&json!({ "decomposes": ok }))?;
            Ok(code(ok))
        }
        HyperCmd::Profile { file, set, acl0 } => {
            let p = load_hypergraph(&file)?
                .restriction_profile(&list(&set), &list(&acl0))
                .map_err(fail)?;
            io.json(&p)?;
            Ok(EXIT_OK)
        }
    }
}

fn ef(io: &mut Io, args: EfArgs) -> Res {
    let m = load_structure(&args.structure)?;
    let eq = m
        .ef_equivalent(&list(&args.left), &list(&args.right), args.rank)
        .map_err(input("ef"))?;
    io.json(&json!({ "equivalent": eq, "rank": args.rank }))?;
    Ok(code(eq))
}

fn fixtures_cmd(io: &mut Io, args: FixturesArgs) -> Res {
    let names: Vec<&str> = if args.name == "all" {
        fixtures::NAMES.to_vec()
    } else {
        vec![args.name.as_str()]
    };
    fs::create_dir_all(&args.out_dir).map_err(input(args.out_dir.display()))?;
    let mut written = Vec::new();
    for name in names {
        let (file, body) = fixtures::by_name(name).ok_or_else(|| {
            Stop(
                EXIT_USAGE,
                format!(
                    "unknown fixture `{name}`; expected one of {} or all",
                    fixtures::NAMES.join(", ")
                ),
            )
        })?;
        let path = args.out_dir.join(file);
        write_file(&path, &body)?;
        written.push(path.display().to_string());
    }
    io.json(&json!({ "written": written }))?;
    Ok(EXIT_OK)
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut io = Io {
        out,
        err,
        threads: cli.threads as usize,
    };
    let result = match cli.command {
        Command::Lrk(c) => lrk(&mut io, c),
        Command::Lattice(c) => lattice(&mut io, c),
        Command::Tv(c) => tv_cmd(&mut io, c),
        Command::Hyper(c) => hyper(&mut io, c),
        Command::Ef(a) => ef(&mut io, a),
        Command::Fixtures(a) => fixtures_cmd(&mut io, a),
    };
    match result {
        Ok(code) => code,
        Err(Stop(code, msg)) => {
            io.note(format!("error: {msg}"));
            code
        }
    }
}
