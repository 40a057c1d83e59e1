use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convopoly::format::{
    graph_document, parse_lambdas, DecomposeDocument, DecompositionEntry, LambdaFile, PolytopeDocument,
    ReconstructDocument, VerifyDocument, VerifyRow,
};
use convopoly::oracle::{direct_counts, enclosure_report, enumerate_spectrum, fast_counts, ambient_size};
use convopoly::{
    candidate_corners, close_walk, edge_weights, encode_walk, encode_walk_double, minimize, peel_cycles, project,
    realize, Caps, DeBruijnGraph, DoubleDeBruijnGraph, Error, IntegerSet, Kind, Polytope, ShiftGraph,
    DEFAULT_CYCLE_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

mod exit;

use exit::Failure;

#[derive(Parser)]
#[command(name = "convopoly", version, about = "Corner polytopes of normalized convolution vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corner vectors of the approximating polytope.
    Corners(CornersArgs),
    /// Brute-force the convolution cloud and measure its distance to the polytope.
    Verify(VerifyArgs),
    /// Build a set whose vector approximates a convex combination of corners.
    Reconstruct(ReconstructArgs),
    /// Split the walk of a set into weighted simple cycles.
    Decompose(DecomposeArgs),
    /// Keep a subset of coordinates of a stored polytope.
    Project(ProjectArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Diff,
    Sum,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Diff => Kind::Diff,
            KindArg::Sum => Kind::Sum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Ceiling on the number of enumerated cycles.
    #[arg(long, env = "CONVOPOLY_CAP_CYCLES", default_value_t = DEFAULT_CYCLE_CAP)]
    cap_cycles: usize,
    /// Raise the largest accepted window length (8 for diff, 4 for sum).
    #[arg(long)]
    max_d: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn caps(&self) -> Caps {
        let mut caps = Caps {
            max_cycles: self.cap_cycles,
            ..Caps::default()
        };
        if let Some(d) = self.max_d {
            eprintln!("warning: window length cap raised to {d}; enumeration may not finish");
            caps.max_d = d;
            caps.max_double_d = d;
        }
        caps
    }
}

#[derive(Args)]
struct CornersArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Emit every cycle's candidate instead of the extreme points.
    #[arg(long)]
    raw: bool,
    /// Include the underlying graph in the output.
    #[arg(long)]
    emit_graph: bool,
    /// Project onto these shifts (comma separated, within 1..=d).
    #[arg(long, value_delimiter = ',')]
    points: Option<Vec<usize>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Inclusive range of N, as A:B.
    #[arg(long, value_parser = parse_range)]
    n_range: (usize, usize),
    /// Shifts x_1 < … < x_k (default 1..=d); d must be at least x_k.
    #[arg(long, value_delimiter = ',')]
    points: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Seed for the spot check of the bitmask counting path.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    /// JSON object mapping cycle indices to weights "p/q".
    #[arg(long)]
    lambdas: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    /// Comma separated elements; may be empty.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ProjectArgs {
    /// Shifts to keep, taken from the input document's shift list.
    #[arg(long, value_delimiter = ',', required = true)]
    points: Vec<usize>,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {text:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound in {text:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound in {text:?}"))?;
    if a == 0 || a > b {
        return Err(format!("range {text:?} must satisfy 1 <= A <= B"));
    }
    Ok((a, b))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, doc: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| Failure::Invariant(e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_shifts(points: &[usize], d: usize) -> Result<(), Failure> {
    if points.is_empty() || points[0] == 0 || points.windows(2).any(|w| w[0] >= w[1]) || points[points.len() - 1] > d
    {
        return Err(Failure::Usage(format!(
            "--points {points:?} must be strictly increasing within 1..={d}"
        )));
    }
    Ok(())
}

/// The polytope for shifts `1..=d`, projected onto `points` when they differ.
fn polytope_for(kind: Kind, d: usize, points: &[usize], caps: Caps) -> Result<Polytope, Failure> {
    let full = minimize(candidate_corners(kind, d, caps)?.corners)?;
    if points.iter().copied().eq(1..=d) {
        Ok(full)
    } else {
        Ok(project(&full, points)?)
    }
}

fn cmd_corners(args: CornersArgs) -> Result<(), Failure> {
    let kind: Kind = args.kind.into();
    let caps = args.common.caps();
    let points = args.points.unwrap_or_else(|| (1..=args.d).collect());
    check_shifts(&points, args.d)?;
    let candidates = candidate_corners(kind, args.d, caps)?;
    let full = (1..=args.d).eq(points.iter().copied());
    let corners = match (args.raw, full) {
        (true, true) => candidates.corners,
        (true, false) => {
            let zero_based: Vec<usize> = points.iter().map(|x| x - 1).collect();
            candidates.corners.iter().map(|c| c.select(&zero_based)).collect()
        }
        (false, true) => minimize(candidates.corners)?.corners,
        (false, false) => project(&minimize(candidates.corners)?, &points)?.corners,
    };
    let mut doc = PolytopeDocument::new(kind, points, args.raw, corners);
    if args.emit_graph {
        doc.graph = Some(match kind {
            Kind::Diff => graph_document(kind, &DeBruijnGraph::build_with_cap(args.d, caps.max_d)?),
            Kind::Sum => graph_document(kind, &DoubleDeBruijnGraph::build_with_cap(args.d, caps.max_double_d)?),
        });
    }
    emit_json(args.common.out.as_deref(), &doc)
}

fn spot_check(kind: Kind, n: usize, xs: &[usize], rng: &mut ChaCha8Rng) -> Result<(), Failure> {
    let width = ambient_size(kind, n);
    let full = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
    for _ in 0..1000 {
        let mask = rng.gen::<u64>() & full;
        let fast = fast_counts(kind, n, mask, xs);
        let direct = direct_counts(kind, n, mask, xs);
        if fast != direct {
            return Err(Failure::Invariant(format!(
                "internal invariant violated: bitmask counts {fast:?} disagree with recount {direct:?} for mask {mask:#x}, N = {n}"
            )));
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let kind: Kind = args.kind.into();
    let caps = args.common.caps();
    let points = args.points.unwrap_or_else(|| (1..=args.d).collect());
    check_shifts(&points, args.d)?;
    let polytope = polytope_for(kind, args.d, &points, caps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::new();
    for n in args.n_range.0..=args.n_range.1 {
        let cloud = enumerate_spectrum(kind, n, &points)?;
        spot_check(kind, n, &points, &mut rng)?;
        rows.push(VerifyRow::from(&enclosure_report(&cloud, &polytope)?));
    }
    let constant = rows.iter().map(|r| r.forward_scaled.clone()).max().expect("range is nonempty");
    let doc = VerifyDocument {
        schema_version: convopoly::format::SCHEMA_VERSION,
        d: points.len(),
        kind,
        points,
        corners: polytope.len(),
        constant,
        rows,
    };
    match args.format {
        OutputFormat::Json => emit_json(args.common.out.as_deref(), &doc),
        OutputFormat::Csv => emit(args.common.out.as_deref(), &doc.to_csv()),
    }
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<(), Failure> {
    let kind: Kind = args.kind.into();
    let caps = args.common.caps();
    let file: LambdaFile = read_json(&args.lambdas)?;
    let candidates = candidate_corners(kind, args.d, caps)?;
    let hp = parse_lambdas(&file, candidates.cycles.len(), args.n)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.lambdas.display())))?;
    let r = realize(&hp, kind, args.d, &candidates.cycles)?;
    emit_json(args.common.out.as_deref(), &ReconstructDocument::new(kind, args.d, args.n, r))
}

fn parse_set(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("--set: {t:?} is not an integer"))))
        .collect()
}

fn cmd_decompose(args: DecomposeArgs) -> Result<(), Failure> {
    let kind: Kind = args.kind.into();
    let caps = args.common.caps();
    let n = args.n as i64;
    let (lo, hi) = match kind {
        Kind::Diff => (1, n),
        Kind::Sum => (-n, n),
    };
    let set = IntegerSet::new(parse_set(&args.set)?, lo, hi)?;
    let (closed, dec, total_weight) = match kind {
        Kind::Diff => {
            let g = DeBruijnGraph::build_with_cap(args.d, caps.max_d)?;
            let closed = close_walk(&g, &encode_walk(&set, args.d)?)?;
            let w = edge_weights(g.digraph(), &closed)?;
            (closed, peel_cycles(&w)?, w.total_weight())
        }
        Kind::Sum => {
            let g = DoubleDeBruijnGraph::build_with_cap(args.d, caps.max_double_d)?;
            let closed = close_walk(&g, &encode_walk_double(&set, args.d)?)?;
            let w = edge_weights(g.digraph(), &closed)?;
            (closed, peel_cycles(&w)?, w.total_weight())
        }
    };
    let doc = DecomposeDocument {
        schema_version: convopoly::format::SCHEMA_VERSION,
        d: args.d,
        kind,
        n: args.n,
        set: set.elements().to_vec(),
        walk_length: closed.len(),
        total_weight,
        decomposition: dec
            .entries()
            .iter()
            .map(|(c, k)| DecompositionEntry::new(kind, args.d, c, *k))
            .collect(),
    };
    emit_json(args.common.out.as_deref(), &doc)
}

fn cmd_project(args: ProjectArgs) -> Result<(), Failure> {
    let doc: PolytopeDocument = read_json(&args.from)?;
    let polytope = doc
        .polytope()
        .map_err(|e| Failure::Input(format!("{}: {e}", args.from.display())))?;
    let coordinates = args
        .points
        .iter()
        .map(|x| {
            doc.points
                .iter()
                .position(|p| p == x)
                .map(|i| i + 1)
                .ok_or_else(|| Failure::Usage(format!("shift {x} is not among {:?}", doc.points)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let projected = project(&polytope, &coordinates)?;
    let out = PolytopeDocument::new(doc.kind, args.points, false, projected.corners);
    emit_json(args.out.as_deref(), &out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Corners(a) => cmd_corners(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Project(a) => cmd_project(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_core(e)
    }
}
