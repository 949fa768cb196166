//! Command-line front end for the saturation toolkit. Every verb reads and
//! writes the documented JSON artifacts on stdout; human-readable notes go
//! to stderr so machine output stays clean.
//!
//! Exit codes: 0 success or asserted property holds, 1 a checked property
//! fails, 2 usage or malformed input, 3 instance exceeds a hard size cap.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use posat_core::{
    antichain_construction, bc_exact, butterfly_construction, chains_construction,
    diamond_interior_construction, find_induced_copy, find_weak_copy, is_saturated,
    minimum_saturated, n_construction, named_poset, q_example_construction, separability_graph,
    unsaturated_witnesses, weak_sat_construction, CatalogPoset, Embedding, Error, Family,
    MaskRestriction, Mode, Poset, SearchOptions,
};
use serde_json::json;

mod render;
mod table;

#[derive(Parser)]
#[command(
    name = "posat",
    version,
    about = "Exact weak and induced poset saturation in the Boolean lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a target poset as JSON (or DOT with --dot).
    Poset(PosetArgs),
    /// Check a family for freeness or saturation against a target.
    Check(CheckArgs),
    /// Exact minimum saturated family size by exhaustive search.
    Search(SearchArgs),
    /// Build a named family and verify its saturation.
    Construct(ConstructArgs),
    /// Separability graph of a family.
    Sepgraph(SepgraphArgs),
    /// Exact biclique cover number of a graph.
    Bc(BcArgs),
    /// Per-n bound table for a catalog target.
    Table(TableArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["name", "file"]))]
struct PosetArgs {
    /// Catalog name, e.g. `diamond-2`, `N`, `butterfly`, `antichain-3`.
    #[arg(long)]
    name: Option<String>,
    /// Poset JSON file: {"elements": [...], "covers": [[a,b], ...]}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Arity for catalog names given without a `-k` suffix.
    #[arg(long)]
    k: Option<u32>,
    /// Emit a DOT rendering instead of JSON.
    #[arg(long)]
    dot: bool,
}

/// Containment mode; exactly one must be chosen.
#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
struct ModeArg {
    /// Copies must reproduce the target order exactly.
    #[arg(long)]
    induced: bool,
    /// Copies need only preserve comparabilities.
    #[arg(long)]
    weak: bool,
}

impl ModeArg {
    fn mode(self) -> Mode {
        if self.weak {
            Mode::Weak
        } else {
            Mode::Induced
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AssertProp {
    Free,
    Saturated,
}

#[derive(Args)]
#[command(group = ArgGroup::new("target").required(true).args(["poset", "poset_file"]))]
struct CheckArgs {
    /// Family JSON file: {"n": int, "sets": [[elements], ...]}.
    #[arg(long)]
    family: PathBuf,
    /// Catalog target, e.g. `V-2`.
    #[arg(long)]
    poset: Option<String>,
    /// Target poset JSON file (alternative to --poset).
    #[arg(long)]
    poset_file: Option<PathBuf>,
    #[command(flatten)]
    mode: ModeArg,
    /// Property to assert; exit 1 when it fails. Without it the report is
    /// informational and the exit code is 0.
    #[arg(long, value_enum)]
    assert: Option<AssertProp>,
}

#[derive(Args)]
#[command(group = ArgGroup::new("target").required(true).args(["poset", "poset_file"]))]
struct SearchArgs {
    /// Ground set size.
    #[arg(long)]
    n: u32,
    /// Catalog target, e.g. `diamond-2`.
    #[arg(long)]
    poset: Option<String>,
    /// Target poset JSON file (alternative to --poset).
    #[arg(long)]
    poset_file: Option<PathBuf>,
    #[command(flatten)]
    mode: ModeArg,
    /// Stop after this family size; the value may then be null.
    #[arg(long)]
    max_size: Option<usize>,
    /// Disable canonical-order symmetry pruning.
    #[arg(long)]
    no_symmetry: bool,
    /// Start at size 1 instead of the separation lower bound.
    #[arg(long)]
    no_theorem_pruning: bool,
    /// Worker thread count (default: all available).
    #[arg(long)]
    threads: Option<usize>,
    /// Largest n the search accepts before refusing as too large.
    #[arg(long, default_value_t = 5)]
    max_n: u32,
    /// Collect every minimum certificate (up to symmetry while pruning is on).
    #[arg(long)]
    all_minima: bool,
    /// Restrict to families containing neither the empty nor the full set.
    #[arg(long)]
    avoid_extremes: bool,
    /// Restrict to families containing the empty or the full set.
    #[arg(long, conflicts_with = "avoid_extremes")]
    require_extreme: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// One of: chains, antichain, n, butterfly, diamond-interior, weaksat,
    /// q-example.
    #[arg(long)]
    name: String,
    /// Ground set size.
    #[arg(long)]
    n: u32,
    /// Chain count for `chains`; arity override for `weaksat`.
    #[arg(long)]
    k: Option<u32>,
    /// Layer parameter for `antichain` (odd, at least 3).
    #[arg(long)]
    ell: Option<u32>,
    /// Catalog target for `weaksat`, e.g. `diamond-2`.
    #[arg(long)]
    target: Option<String>,
    /// Skip the saturation check; only size and shape checks run.
    #[arg(long)]
    no_verify: bool,
    /// Write the family JSON here; the sidecar still prints to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SepgraphArgs {
    /// Family JSON file.
    #[arg(long)]
    family: PathBuf,
    /// Emit a DOT rendering instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct BcArgs {
    /// Graph JSON file: {"n": int, "edges": [[x,y], ...]} with 1-based
    /// vertices.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct TableArgs {
    /// Catalog target, e.g. `antichain-4`.
    #[arg(long)]
    poset: String,
    /// Inclusive range `a..b` of ground set sizes.
    #[arg(long, value_parser = parse_range)]
    n_range: (u32, u32),
    #[command(flatten)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = table::Format::Text)]
    format: table::Format,
    /// Fill the value column by exhaustive search instead of construction
    /// sizes.
    #[arg(long)]
    exact: bool,
    /// Largest n allowed for --exact searches.
    #[arg(long, default_value_t = 5)]
    max_n: u32,
    /// Worker thread count for --exact searches.
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// A failed run: exit code plus the message printed to stderr.
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub(crate) fn property(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::InstanceTooLarge { .. } => 3,
            Error::NotFree(_) | Error::VerificationFailed(_) | Error::PairSeparated { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Poset(a) => run_poset(a),
        Command::Check(a) => run_check(a),
        Command::Search(a) => run_search(a),
        Command::Construct(a) => run_construct(a),
        Command::Sepgraph(a) => run_sepgraph(a),
        Command::Bc(a) => run_bc(a),
        Command::Table(a) => run_table(a),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {what} file `{}`: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("invalid {what} JSON in `{}`: {e}", path.display())))
}

fn emit<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("artifacts serialize")
    );
}

fn load_target(spec: Option<&str>, file: Option<&Path>) -> Result<Poset, Failure> {
    match (spec, file) {
        (Some(s), None) => Ok(named_poset(s, None)?),
        (None, Some(f)) => read_json(f, "poset"),
        _ => unreachable!("clap enforces exactly one target source"),
    }
}

/// Splits a catalog spec like `diamond-2` into its name and arity suffix.
fn parse_catalog_spec(spec: &str) -> Result<(CatalogPoset, Option<u32>), Failure> {
    let (name, suffix) = match spec.rsplit_once('-') {
        Some((head, tail)) => match tail.parse::<u32>() {
            Ok(v) if CatalogPoset::parse(head).is_some() => (head, Some(v)),
            _ => (spec, None),
        },
        None => (spec, None),
    };
    let cat = CatalogPoset::parse(name)
        .ok_or_else(|| Failure::usage(format!("unknown catalog poset `{spec}`")))?;
    Ok((cat, suffix))
}

fn embedding_json(e: &Embedding, family: &Family, target: &Poset) -> serde_json::Value {
    let items: Vec<serde_json::Value> = e
        .map
        .iter()
        .enumerate()
        .map(|(t, &i)| {
            json!({
                "element": target.label(t),
                "set": family.sets()[i].elements().collect::<Vec<u32>>(),
            })
        })
        .collect();
    json!(items)
}

fn run_poset(a: PosetArgs) -> Result<u8, Failure> {
    let target = match (&a.name, &a.file) {
        (Some(spec), None) => named_poset(spec, a.k)?,
        (None, Some(path)) => {
            if a.k.is_some() {
                return Err(Failure::usage("--k only applies to catalog names"));
            }
            read_json(path, "poset")?
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    if a.dot {
        print!("{}", render::poset_dot(&target));
    } else {
        emit(&target);
    }
    eprintln!(
        "poset with {} elements and {} cover relations",
        target.size(),
        target.covers().len()
    );
    Ok(0)
}

fn run_check(a: CheckArgs) -> Result<u8, Failure> {
    let family: Family = read_json(&a.family, "family")?;
    let target = load_target(a.poset.as_deref(), a.poset_file.as_deref())?;
    let mode = a.mode.mode();
    let copy = match mode {
        Mode::Weak => find_weak_copy(&family, &target),
        Mode::Induced => find_induced_copy(&family, &target),
    };
    let free = copy.is_none();
    let witnesses = if free {
        Some(unsaturated_witnesses(&family, &target, mode)?)
    } else {
        None
    };
    let saturated = witnesses.as_ref().map(|w| w.is_empty());
    let report = json!({
        "n": family.n(),
        "mode": mode,
        "free": free,
        "copy": copy.as_ref().map(|e| embedding_json(e, &family, &target)),
        "saturated": saturated,
        "witness_count": witnesses.as_ref().map(|w| w.len()),
        "first_witness": witnesses
            .as_ref()
            .and_then(|w| w.first())
            .map(|s| s.elements().collect::<Vec<u32>>()),
    });
    emit(&report);
    let status = match saturated {
        None => "contains a copy of the target".to_string(),
        Some(true) => "free and saturated".to_string(),
        Some(false) => format!(
            "free but not saturated ({} witnesses)",
            witnesses.as_ref().map_or(0, Vec::len)
        ),
    };
    eprintln!("family of {} sets: {status}", family.len());
    let ok = match a.assert {
        None => true,
        Some(AssertProp::Free) => free,
        Some(AssertProp::Saturated) => saturated == Some(true),
    };
    if ok {
        Ok(0)
    } else {
        eprintln!("assertion failed");
        Ok(1)
    }
}

fn run_search(a: SearchArgs) -> Result<u8, Failure> {
    let target = load_target(a.poset.as_deref(), a.poset_file.as_deref())?;
    let restriction = if a.avoid_extremes {
        MaskRestriction::AvoidExtremes
    } else if a.require_extreme {
        MaskRestriction::RequireExtreme
    } else {
        MaskRestriction::Unrestricted
    };
    let opts = SearchOptions {
        max_n: a.max_n,
        max_size: a.max_size,
        symmetry: !a.no_symmetry,
        theorem_pruning: !a.no_theorem_pruning,
        restriction,
        threads: a.threads,
        collect_all_minima: a.all_minima,
    };
    let result = minimum_saturated(a.n, &target, a.mode.mode(), &opts)?;
    emit(&result);
    match result.value {
        Some(v) => eprintln!(
            "minimum saturated size at n = {}: {v} ({} families examined)",
            a.n, result.families_examined
        ),
        None => eprintln!(
            "no saturated family within the size cap at n = {} ({} families examined)",
            a.n, result.families_examined
        ),
    }
    Ok(0)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut out = 1u64;
    for i in 0..k.min(n - k) {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn run_construct(a: ConstructArgs) -> Result<u8, Failure> {
    let n = a.n;
    let key = a.name.to_ascii_lowercase();
    let reject = |flag: &str, given: bool| -> Result<(), Failure> {
        if given {
            Err(Failure::usage(format!("--{flag} does not apply to `{key}`",)))
        } else {
            Ok(())
        }
    };

    // Each arm builds the family, its closed-form size, the parameter record,
    // and the targets the saturation check runs against.
    let (family, expected, params, targets, mode): (
        Family,
        u64,
        serde_json::Value,
        Vec<(String, Poset)>,
        Mode,
    ) = match key.as_str() {
        "chains" => {
            reject("ell", a.ell.is_some())?;
            reject("target", a.target.is_some())?;
            let k = a
                .k
                .ok_or_else(|| Failure::usage("`chains` requires --k"))?;
            let family = chains_construction(n, k)?;
            let targets = [
                CatalogPoset::Antichain,
                CatalogPoset::V,
                CatalogPoset::Lambda,
                CatalogPoset::Diamond,
            ]
            .into_iter()
            .map(|cat| {
                let name = format!("{}-{}", cat.name(), k + 1);
                Ok((name, cat.build(Some(k + 1))?))
            })
            .collect::<Result<Vec<_>, Error>>()?;
            (
                family,
                u64::from(k) * u64::from(n - 1) + 2,
                json!({"n": n, "k": k}),
                targets,
                Mode::Induced,
            )
        }
        "antichain" => {
            reject("k", a.k.is_some())?;
            reject("target", a.target.is_some())?;
            let ell = a
                .ell
                .ok_or_else(|| Failure::usage("`antichain` requires --ell"))?;
            let family = antichain_construction(n, ell)?;
            let k = binomial(u64::from(ell), u64::from(ell - 1) / 2);
            let name = format!("antichain-{}", k + 1);
            let target = CatalogPoset::Antichain.build(Some(k as u32 + 1))?;
            (
                family,
                (1u64 << ell) + u64::from(n - ell) * k,
                json!({"n": n, "ell": ell}),
                vec![(name, target)],
                Mode::Induced,
            )
        }
        "n" => {
            reject("k", a.k.is_some())?;
            reject("ell", a.ell.is_some())?;
            reject("target", a.target.is_some())?;
            let family = n_construction(n)?;
            (
                family,
                2 * u64::from(n),
                json!({"n": n}),
                vec![("N".to_string(), CatalogPoset::N.build(None)?)],
                Mode::Induced,
            )
        }
        "butterfly" => {
            reject("k", a.k.is_some())?;
            reject("ell", a.ell.is_some())?;
            reject("target", a.target.is_some())?;
            let family = butterfly_construction(n)?;
            (
                family,
                binomial(u64::from(n), 2) + 2 * u64::from(n) - 1,
                json!({"n": n}),
                vec![(
                    "butterfly".to_string(),
                    CatalogPoset::Butterfly.build(None)?,
                )],
                Mode::Induced,
            )
        }
        "diamond-interior" => {
            reject("k", a.k.is_some())?;
            reject("ell", a.ell.is_some())?;
            reject("target", a.target.is_some())?;
            let family = diamond_interior_construction(n)?;
            (
                family,
                2 * u64::from(n),
                json!({"n": n}),
                vec![("diamond-2".to_string(), CatalogPoset::Diamond.build(Some(2))?)],
                Mode::Induced,
            )
        }
        "q-example" => {
            reject("k", a.k.is_some())?;
            reject("ell", a.ell.is_some())?;
            reject("target", a.target.is_some())?;
            let family = q_example_construction(n)?;
            (
                family,
                4,
                json!({"n": n}),
                vec![("Q".to_string(), CatalogPoset::Q.build(None)?)],
                Mode::Induced,
            )
        }
        "weaksat" => {
            reject("ell", a.ell.is_some())?;
            let spec = a
                .target
                .as_deref()
                .ok_or_else(|| Failure::usage("`weaksat` requires --target"))?;
            let (cat, suffix) = parse_catalog_spec(spec)?;
            let arity = match (suffix, a.k) {
                (Some(s), Some(k)) if s != k => {
                    return Err(Failure::usage(format!(
                        "--target suffix {s} conflicts with --k {k}"
                    )))
                }
                (Some(s), _) => Some(s),
                (None, k) => k,
            };
            let family = weak_sat_construction(cat, arity, n)?;
            let expected = match cat {
                CatalogPoset::V | CatalogPoset::Lambda => 2,
                CatalogPoset::Diamond | CatalogPoset::N => 3,
                CatalogPoset::Butterfly => 4,
                CatalogPoset::Antichain => u64::from(arity.unwrap_or(0)) - 1,
                CatalogPoset::Chain | CatalogPoset::Q => unreachable!("rejected above"),
            };
            let name = match arity {
                Some(m) => format!("{}-{m}", cat.name()),
                None => cat.name().to_string(),
            };
            let target = cat.build(arity)?;
            (
                family,
                expected,
                json!({"n": n, "target": name}),
                vec![(name, target)],
                Mode::Weak,
            )
        }
        _ => {
            return Err(Failure::usage(format!(
                "unknown construction `{}`; expected one of chains, antichain, n, \
                 butterfly, diamond-interior, weaksat, q-example",
                a.name
            )))
        }
    };

    if family.len() as u64 != expected {
        return Err(Failure::property(format!(
            "construction `{key}` produced {} sets, expected {expected}",
            family.len()
        )));
    }
    let verified = if a.no_verify {
        false
    } else {
        for (name, target) in &targets {
            if !is_saturated(&family, target, mode) {
                return Err(Error::VerificationFailed(format!("{key} against {name}")).into());
            }
        }
        true
    };

    let sidecar = json!({
        "construction": key,
        "params": params,
        "expected_size": expected,
        "mode": mode,
        "targets": targets.iter().map(|(name, _)| name.clone()).collect::<Vec<_>>(),
        "verified": verified,
    });
    match &a.out {
        Some(path) => {
            let text =
                serde_json::to_string_pretty(&family).expect("families serialize");
            fs::write(path, text + "\n").map_err(|e| {
                Failure::usage(format!("cannot write `{}`: {e}", path.display()))
            })?;
            emit(&sidecar);
        }
        None => emit(&json!({"family": family, "sidecar": sidecar})),
    }
    eprintln!(
        "{key}: {} sets in the lattice over [{n}]{}",
        family.len(),
        if verified {
            ", saturation verified"
        } else {
            ", saturation not checked"
        }
    );
    Ok(0)
}

fn run_sepgraph(a: SepgraphArgs) -> Result<u8, Failure> {
    let family: Family = read_json(&a.family, "family")?;
    let graph = separability_graph(&family);
    if a.dot {
        print!("{}", render::sepgraph_dot(&graph));
    } else {
        emit(&graph);
    }
    eprintln!(
        "separability graph on {} vertices with {} edges",
        graph.n(),
        graph.edge_count()
    );
    Ok(0)
}

fn run_bc(a: BcArgs) -> Result<u8, Failure> {
    let graph: posat_core::SeparabilityGraph = read_json(&a.graph, "graph")?;
    let (value, cover) = bc_exact(&graph)?;
    emit(&cover);
    eprintln!("biclique cover number {value}");
    Ok(0)
}

fn run_table(a: TableArgs) -> Result<u8, Failure> {
    let (cat, arity) = parse_catalog_spec(&a.poset)?;
    let target = cat.build(arity)?;
    let mode = a.mode.mode();
    let rows = table::compute_rows(
        cat,
        arity,
        &target,
        mode,
        a.n_range,
        a.exact,
        a.max_n,
        a.threads,
    )?;
    match a.format {
        table::Format::Json => emit(&json!({
            "poset": a.poset,
            "mode": mode,
            "rows": rows,
        })),
        table::Format::Csv => print!("{}", table::to_csv(&rows)),
        table::Format::Text => print!("{}", table::to_text(&rows)),
    }
    eprintln!(
        "{} rows for {} ({})",
        rows.len(),
        a.poset,
        if a.exact {
            "exhaustive values"
        } else {
            "construction sizes"
        }
    );
    Ok(0)
}
