//! The `raag` command line: argument model, subcommands and exit codes.
//!
//! Every command returns an [`Outcome`] instead of printing, so that tests
//! can drive it in-process. Exit codes: 0 success, 1 a check failed,
//! 2 unreadable or malformed input, 3 empty graph, 4 JSJ precondition unmet,
//! 5 census size out of range.

pub mod graph6;
pub mod render;

use std::fmt::Write as _;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_core::census::{census_of, census_row, CensusRow};
use raag_core::jsj::{build_j0, jsj, is_reduced, GraphOfGroups};
use raag_core::splitting::{cover_defects, free_split_witness, splits_over_z, Witness};
use raag_core::verify::{abelianization, check_coverage, check_euler, emit_presentation};
use raag_core::{parse_graph, Error, Execution, SimplicialGraph};
use serde::Serialize;

use render::{gog_dot, graph_dot, to_json, GogJson, GraphJson};

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_RANGE: i32 = 5;

/// Sizes accepted by the built-in census enumeration.
pub const CENSUS_RANGE: RangeInclusive<usize> = 3..=6;

#[derive(Debug, Parser)]
#[command(name = "raag", version, about = "Splittings and cyclic JSJ decompositions of right-angled Artin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide free and cyclic splittings, with a witness.
    Split(InputArgs),
    /// Build the JSJ decomposition (or the block-tree stage before collapsing).
    Jsj(JsjArgs),
    /// Emit the splitting witness together with its re-verification.
    Witness(InputArgs),
    /// Run the consistency checks on the JSJ decomposition.
    Check(InputArgs),
    /// Tally splitting verdicts over all labeled graphs, or over a graph6 stream.
    Census(CensusArgs),
    /// Write the input graph, or a decomposition stage, as DOT.
    ExportDot(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Read graph6 instead of an edge list.
    #[arg(long)]
    pub g6: bool,
    /// Input file; `-` or nothing reads standard input.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    J0,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GogFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusFormat {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct JsjArgs {
    #[arg(long, value_enum, default_value = "j")]
    pub stage: Stage,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GogFormat,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// A single vertex count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest vertex count when `--n` is absent.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: CensusFormat,
    /// Tally a graph6 stream instead of enumerating.
    #[arg(long)]
    pub g6: bool,
    /// Run without threads.
    #[arg(long)]
    pub sequential: bool,
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Export this decomposition stage instead of the graph itself.
    #[arg(long, value_enum)]
    pub stage: Option<Stage>,
    #[command(flatten)]
    pub input: InputArgs,
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ..Default::default() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { stderr: format!("raag: {message}\n"), code, ..Default::default() }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptyGraph => EXIT_EMPTY,
        Error::Precondition(_) | Error::Capacity { .. } => EXIT_PRECONDITION,
        Error::Parse { .. } | Error::UnknownVertex(_) | Error::InvalidName(_) | Error::SelfLoop(_) => EXIT_PARSE,
    }
}

fn from_core(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), e)
}

fn read_text(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, Outcome> {
    let mut text = String::new();
    let result = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::File::open(p).and_then(|mut f| f.read_to_string(&mut text)),
        _ => stdin.read_to_string(&mut text),
    };
    result.map_err(|e| {
        let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
        Outcome::fail(EXIT_PARSE, format!("cannot read {name}: {e}"))
    })?;
    Ok(text)
}

/// Reads exactly one graph.
fn read_graph(args: &InputArgs, stdin: &mut dyn Read) -> Result<SimplicialGraph, Outcome> {
    let text = read_text(args.input.as_ref(), stdin)?;
    let g = if args.g6 {
        let mut graphs = graph6::parse_stream(&text).map_err(|e| Outcome::fail(EXIT_PARSE, e))?;
        match graphs.len() {
            0 => SimplicialGraph::empty(),
            1 => graphs.remove(0),
            k => return Err(Outcome::fail(EXIT_PARSE, format!("expected one graph6 record, found {k}"))),
        }
    } else {
        parse_graph(&text).map_err(from_core)?
    };
    if g.is_empty() {
        return Err(from_core(Error::EmptyGraph));
    }
    Ok(g)
}

fn stage_of(g: &SimplicialGraph, stage: Stage) -> Result<GraphOfGroups, Outcome> {
    match stage {
        Stage::J0 => build_j0(g),
        Stage::J => jsj(g),
    }
    .map_err(from_core)
}

pub fn cmd_split(args: &InputArgs, stdin: &mut dyn Read) -> Outcome {
    let g = match read_graph(args, stdin) {
        Ok(g) => g,
        Err(o) => return o,
    };
    match splits_over_z(&g) {
        Ok(report) => Outcome::ok(to_json(&report)),
        Err(e) => from_core(e),
    }
}

pub fn cmd_jsj(args: &JsjArgs, stdin: &mut dyn Read) -> Outcome {
    let gog = match read_graph(&args.input, stdin).and_then(|g| stage_of(&g, args.stage)) {
        Ok(gog) => gog,
        Err(o) => return o,
    };
    Outcome::ok(match args.format {
        GogFormat::Json => to_json(&GogJson::from(&gog)),
        GogFormat::Dot => gog_dot(&gog),
    })
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    graph: GraphJson,
    free_split: Option<Witness>,
    witness: &'a Witness,
    verified: bool,
    defects: Vec<String>,
}

pub fn cmd_witness(args: &InputArgs, stdin: &mut dyn Read) -> Outcome {
    let g = match read_graph(args, stdin) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let report = match splits_over_z(&g) {
        Ok(r) => r,
        Err(e) => return from_core(e),
    };
    let free_split = if g.vertex_count() >= 2 { free_split_witness(&g).ok().flatten() } else { None };
    let defects: Vec<String> = match &report.witness {
        Witness::ZSplit(w) => w.validate(&g).err().into_iter().collect(),
        Witness::NoSplit { cover } => cover_defects(&g, cover).iter().map(ToString::to_string).collect(),
        Witness::FreeSplit { .. } | Witness::SmallCase { .. } => Vec::new(),
    };
    let out = WitnessReport {
        graph: (&g).into(),
        free_split,
        witness: &report.witness,
        verified: defects.is_empty(),
        defects,
    };
    let mut outcome = Outcome::ok(to_json(&out));
    if !out.verified {
        outcome.code = EXIT_CHECK_FAILED;
        outcome.stderr = format!("raag: witness failed verification: {}\n", out.defects.join("; "));
    }
    outcome
}

pub fn cmd_check(args: &InputArgs, stdin: &mut dyn Read) -> Outcome {
    let (g, j) = match read_graph(args, stdin).and_then(|g| stage_of(&g, Stage::J).map(|j| (g, j))) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    let mut all = true;
    let mut out = String::new();

    let reduced = is_reduced(&j);
    all &= reduced;
    let _ = writeln!(out, "reduced: {}", verdict(reduced));

    match check_euler(&g, &j) {
        Ok(ok) => {
            all &= ok;
            let chi = g.euler_characteristic().map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(out, "euler: {} (chi={chi})", verdict(ok));
        }
        Err(e) => {
            all = false;
            let _ = writeln!(out, "euler: fail ({e})");
        }
    }

    let covered = check_coverage(&g, &j);
    all &= covered;
    let _ = writeln!(out, "coverage: {}", verdict(covered));

    match emit_presentation(&j) {
        Ok(p) => {
            let ab = abelianization(&p);
            let ok = ab.is_free_of_rank(g.vertex_count());
            all &= ok;
            let _ = writeln!(out, "abelianization: {} {ab}", verdict(ok));
        }
        Err(e) => {
            all = false;
            let _ = writeln!(out, "abelianization: fail ({e})");
        }
    }

    let mut outcome = Outcome::ok(out);
    if !all {
        outcome.code = EXIT_CHECK_FAILED;
        outcome.stderr = "raag: some checks failed\n".into();
    }
    outcome
}

fn census_table(rows: &[CensusRow]) -> String {
    let mut out = format!(
        "{:>3} {:>9} {:>9} {:>11} {:>13} {:>13} {:>8}  {}\n",
        "n", "graphs", "connected", "biconnected", "splits_over_Z", "disagreements", "oracle", "jsj_edges"
    );
    for r in rows {
        let hist: Vec<String> = r.jsj_edge_histogram.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        let oracle = if r.consistent() { "agree" } else { "DIFFER" };
        let _ = writeln!(
            out,
            "{:>3} {:>9} {:>9} {:>11} {:>13} {:>13} {:>8}  {}",
            r.n,
            r.graphs,
            r.connected,
            r.biconnected,
            r.splits_over_z,
            r.disagreements,
            oracle,
            hist.join(" ")
        );
    }
    out
}

pub fn cmd_census(args: &CensusArgs, stdin: &mut dyn Read) -> Outcome {
    let mode = if args.sequential { Execution::Sequential } else { Execution::default() };
    let rows: Vec<CensusRow> = if args.g6 {
        let text = match read_text(args.input.as_ref(), stdin) {
            Ok(t) => t,
            Err(o) => return o,
        };
        let graphs = match graph6::parse_stream(&text) {
            Ok(g) => g,
            Err(e) => return Outcome::fail(EXIT_PARSE, e),
        };
        let mut rows = census_of(graphs.into_iter().filter(|g| args.n.is_none_or(|n| g.vertex_count() == n)));
        if let Some(n) = args.n {
            rows.entry(n).or_insert_with(|| CensusRow::empty(n));
        }
        rows.into_values().collect()
    } else {
        let sizes = match args.n {
            Some(n) => n..=n,
            None => *CENSUS_RANGE.start()..=args.max_n,
        };
        for k in [*sizes.start(), *sizes.end()] {
            if !CENSUS_RANGE.contains(&k) {
                return Outcome::fail(
                    EXIT_RANGE,
                    format!("census size {k} is outside {}..={}", CENSUS_RANGE.start(), CENSUS_RANGE.end()),
                );
            }
        }
        let mut rows = Vec::new();
        for n in sizes {
            match census_row(n, mode) {
                Ok(r) => rows.push(r),
                Err(e) => return from_core(e),
            }
        }
        rows
    };
    let mut outcome = Outcome::ok(match args.format {
        CensusFormat::Json => to_json(&rows),
        CensusFormat::Table => census_table(&rows),
    });
    let bad: Vec<String> = rows.iter().filter(|r| !r.consistent()).map(|r| r.n.to_string()).collect();
    if !bad.is_empty() {
        outcome.code = EXIT_CHECK_FAILED;
        outcome.stderr = format!("raag: oracle recount disagrees for n = {}\n", bad.join(", "));
    }
    outcome
}

pub fn cmd_export_dot(args: &ExportArgs, stdin: &mut dyn Read) -> Outcome {
    let g = match read_graph(&args.input, stdin) {
        Ok(g) => g,
        Err(o) => return o,
    };
    match args.stage {
        None => Outcome::ok(graph_dot(&g)),
        Some(stage) => match stage_of(&g, stage) {
            Ok(gog) => Outcome::ok(gog_dot(&gog)),
            Err(o) => o,
        },
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    match &cli.command {
        Command::Split(a) => cmd_split(a, stdin),
        Command::Jsj(a) => cmd_jsj(a, stdin),
        Command::Witness(a) => cmd_witness(a, stdin),
        Command::Check(a) => cmd_check(a, stdin),
        Command::Census(a) => cmd_census(a, stdin),
        Command::ExportDot(a) => cmd_export_dot(a, stdin),
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors exit with 2, like malformed input.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { stderr: text, code, ..Default::default() }
            } else {
                Outcome::ok(text)
            }
        }
    }
}
