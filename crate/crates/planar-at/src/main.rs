//! Batch command-line front end. Every run is deterministic: identical
//! invocations produce identical bytes on stdout and in written files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use planar_at::error::{ExtractError, FormatError, OracleError};
use planar_at::extractor::extract;
use planar_at::format::{
    emit_certificate, emit_exponents, emit_graph, export_dot, parse_certificate, parse_exponents,
    parse_graph, parse_lists,
};
use planar_at::generators::{catalog, catalog_entries, random_apollonian, random_signature};
use planar_at::oracles::{
    list_color, paint_solve, verify_certificate, PaintPly, VerifyReport, COLOR_BUDGET, PAINT_GUARD,
};
use planar_at::plane_graph::{edge, Edge, PlaneGraph, VId};
use planar_at::polynomial::{
    at_number, coeff_dp, coeff_select, CoefficientQuery, ExponentVector, SearchLimits, Signature,
};

#[derive(Parser)]
#[command(name = "planar-at", version, about = "Matching-plus-monomial certificates for plane graphs", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a certificate for a boundary edge
    Extract(ExtractArgs),
    /// Check a certificate document against its graph
    Verify(VerifyArgs),
    /// Exhaustively determine the least uniform exponent bound
    At(AtArgs),
    /// Evaluate one graph-polynomial coefficient
    Coeff(CoeffArgs),
    /// Solve the defective painting game exactly
    Paint(PaintArgs),
    /// Search for a defective coloring from given lists
    Color(ColorArgs),
    /// Write a graph in the text format
    Gen(GenArgs),
    /// Write a DOT drawing, optionally overlaying a certificate
    Dot(DotArgs),
}

/// Where the graph comes from; exactly one must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph file in the documented text format
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Built-in graph name
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Generator spec, currently `apollonian:N:SEED`
    #[arg(long = "gen", value_name = "SPEC")]
    generate: Option<String>,
}

#[derive(Args)]
struct Guards {
    /// Refuse graphs with more vertices than this
    #[arg(long, value_name = "N", default_value_t = 64)]
    max_vertices: usize,
    /// Refuse graphs with more edges than this
    #[arg(long, value_name = "N", default_value_t = 192)]
    max_edges: usize,
}

#[derive(Args)]
struct SigFlags {
    /// Replace the signature with a seeded random one
    #[arg(long)]
    signed: bool,
    /// Seed for --signed
    #[arg(long, value_name = "S", default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Designated boundary edge `u,v`; defaults to the smallest boundary edge
    #[arg(long, value_name = "u,v")]
    edge: Option<String>,
    /// Orient matching edges instead of deleting them
    #[arg(long)]
    oriented: bool,
    /// Re-check the certificate with the independent oracle
    #[arg(long)]
    verify: bool,
    /// Write the certificate here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Certificate document to check
    #[arg(long, value_name = "FILE")]
    cert: PathBuf,
}

#[derive(Args)]
struct AtArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Give up beyond this exponent bound
    #[arg(long, value_name = "K", default_value_t = 16)]
    max_k: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Dp,
    Select,
    Both,
}

#[derive(Args)]
struct CoeffArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Exponent vector `v1=1,v2=2,...`
    #[arg(long, value_name = "SPEC")]
    eta: String,
    /// Which evaluator to run; `both` cross-checks them
    #[arg(long, value_enum, default_value_t = Engine::Both)]
    engine: Engine,
}

#[derive(Args)]
struct PaintArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    /// Token counts: one number for every vertex, or `v1=2,v2=1,...`
    #[arg(long, value_name = "SPEC")]
    tokens: String,
    /// Allowed same-color neighbors per vertex
    #[arg(long, value_name = "D", default_value_t = 0)]
    defect: u32,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Color lists file, one `vertex: c1 c2 ...` line per vertex
    #[arg(long, value_name = "FILE")]
    lists: PathBuf,
    /// Allowed conflicts per vertex
    #[arg(long, value_name = "D", default_value_t = 0)]
    defect: u32,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Write the graph here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DotArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    guards: Guards,
    #[command(flatten)]
    sig: SigFlags,
    /// Certificate to overlay
    #[arg(long, value_name = "FILE")]
    cert: Option<PathBuf>,
    /// Write the drawing here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// A failed run: usage problems exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::DigestMismatch { .. } => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ExtractError> for Failure {
    fn from(e: ExtractError) -> Self {
        match e {
            ExtractError::InternalProofViolation(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InternalProofViolation(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn known_catalog() -> String {
    catalog_entries()
        .iter()
        .map(|e| e.name)
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_gen_spec(spec: &str) -> Result<PlaneGraph, Failure> {
    let mut it = spec.split(':');
    match (it.next(), it.next(), it.next(), it.next()) {
        (Some("apollonian"), Some(n), Some(seed), None) => {
            let n: usize = n
                .parse()
                .map_err(|_| usage(format!("bad vertex count `{n}` in --gen spec")))?;
            let seed: u64 = seed
                .parse()
                .map_err(|_| usage(format!("bad seed `{seed}` in --gen spec")))?;
            random_apollonian(n, seed).map_err(|e| usage(e.to_string()))
        }
        _ => Err(usage(format!(
            "bad --gen spec `{spec}`; expected `apollonian:N:SEED`"
        ))),
    }
}

fn load(source: &Source, guards: &Guards, sig: Option<&SigFlags>) -> Result<(PlaneGraph, Signature), Failure> {
    let (g, mut signature) = if let Some(path) = &source.graph {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        parse_graph(&text)?
    } else if let Some(name) = &source.catalog {
        let g = catalog(name).ok_or_else(|| {
            usage(format!(
                "unknown catalog graph `{name}`; known names: {}",
                known_catalog()
            ))
        })?;
        (g, Signature::all_plus())
    } else if let Some(spec) = &source.generate {
        (parse_gen_spec(spec)?, Signature::all_plus())
    } else {
        unreachable!("clap requires one source");
    };
    if g.vertex_count() > guards.max_vertices {
        return Err(usage(format!(
            "graph has {} vertices, over the limit of {}; raise --max-vertices to proceed",
            g.vertex_count(),
            guards.max_vertices
        )));
    }
    if g.edge_count() > guards.max_edges {
        return Err(usage(format!(
            "graph has {} edges, over the limit of {}; raise --max-edges to proceed",
            g.edge_count(),
            guards.max_edges
        )));
    }
    if let Some(flags) = sig {
        if flags.signed {
            signature = random_signature(&g, flags.seed);
        }
    }
    Ok((g, signature))
}

fn parse_edge(g: &PlaneGraph, spec: &str) -> Result<Edge, Failure> {
    let (u, v) = spec
        .split_once(',')
        .ok_or_else(|| usage(format!("bad --edge `{spec}`; expected `u,v`")))?;
    let resolve = |name: &str| {
        g.vertex_by_name(name.trim())
            .ok_or_else(|| usage(format!("unknown vertex `{}`", name.trim())))
    };
    Ok(edge(resolve(u)?, resolve(v)?))
}

/// Write to stdout. A consumer that closes the pipe early (`| head`) is not
/// an error; exit as if the pipe signal had killed us, 128 + SIGPIPE.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    if let Err(e) = result {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(141);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn deliver(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn print_report(report: &VerifyReport) {
    let mut text = String::new();
    for check in &report.checks {
        if check.passed {
            writeln!(text, "check {}: pass", check.name).unwrap();
        } else {
            writeln!(text, "check {}: FAIL ({})", check.name, check.detail).unwrap();
        }
    }
    writeln!(
        text,
        "verification: {}",
        if report.passed() { "pass" } else { "FAIL" }
    )
    .unwrap();
    emit(&text);
}

fn names_csv(g: &PlaneGraph, vs: &[VId]) -> String {
    vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",")
}

fn cmd_extract(a: ExtractArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let e = a.edge.as_deref().map(|s| parse_edge(&g, s)).transpose()?;
    let cert = extract(&g, e, &sig, a.oriented)?;
    deliver(&a.out, &emit_certificate(&g, &sig, &cert))?;
    if a.verify {
        let report = verify_certificate(&g, &sig, &cert);
        print_report(&report);
        if !report.passed() {
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let text = fs::read_to_string(&a.cert)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.cert.display())))?;
    let cert = parse_certificate(&g, &sig, &text)?;
    let report = verify_certificate(&g, &sig, &cert);
    print_report(&report);
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_at(a: AtArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let limits = SearchLimits {
        max_k: a.max_k,
        ..SearchLimits::default()
    };
    let (k, witness) = at_number(&g, &sig, &limits).map_err(|e| usage(e.to_string()))?;
    emit(&format!("at {k}\nwitness {}\n", emit_exponents(&g, &witness)));
    Ok(0)
}

fn cmd_coeff(a: CoeffArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let eta = parse_exponents(&g, &a.eta)?;
    let query = CoefficientQuery::full(&g, &sig, &eta);
    let value = match a.engine {
        Engine::Dp => coeff_dp(&query),
        Engine::Select => coeff_select(&query),
        Engine::Both => {
            let dp = coeff_dp(&query);
            let select = coeff_select(&query);
            if dp != select {
                return Err(Failure::Check(format!(
                    "evaluator disagreement: dp={dp} select={select}"
                )));
            }
            dp
        }
    };
    emit(&format!("{value}\n"));
    Ok(0)
}

/// A bare number is shorthand for that many tokens on every vertex.
fn parse_tokens(g: &PlaneGraph, spec: &str) -> Result<ExponentVector, Failure> {
    if let Ok(uniform) = spec.trim().parse::<u32>() {
        return Ok(ExponentVector::from_pairs(
            g.verts().iter().map(|&v| (v, uniform)),
        ));
    }
    Ok(parse_exponents(g, spec)?)
}

fn cmd_paint(a: PaintArgs) -> Result<u8, Failure> {
    let (g, _) = load(&a.source, &a.guards, None)?;
    if g.vertex_count() > PAINT_GUARD {
        return Err(usage(format!(
            "the game solver handles at most {PAINT_GUARD} vertices, graph has {}",
            g.vertex_count()
        )));
    }
    let tokens = parse_tokens(&g, &a.tokens)?;
    let outcome = paint_solve(&g, &tokens, a.defect)?;
    let mut text = String::new();
    writeln!(
        text,
        "winner {}",
        if outcome.painter_wins { "painter" } else { "lister" }
    )
    .unwrap();
    writeln!(text, "states {}", outcome.states).unwrap();
    for ply in &outcome.variation {
        match ply {
            PaintPly::Mark(vs) => writeln!(text, "mark {}", names_csv(&g, vs)).unwrap(),
            PaintPly::Color(vs) => writeln!(text, "color {}", names_csv(&g, vs)).unwrap(),
        }
    }
    emit(&text);
    Ok(0)
}

fn cmd_color(a: ColorArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let text = fs::read_to_string(&a.lists)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.lists.display())))?;
    let lists = parse_lists(&g, &text)?;
    match list_color(&g, &sig, &lists, a.defect, COLOR_BUDGET)? {
        Some(coloring) => {
            let parts: Vec<String> = coloring
                .iter()
                .map(|(&v, c)| format!("{}={c}", g.name(v)))
                .collect();
            emit(&format!("coloring {}\n", parts.join(",")));
        }
        None => emit("no coloring\n"),
    }
    Ok(0)
}

fn cmd_gen(a: GenArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    deliver(&a.out, &emit_graph(&g, &sig))?;
    Ok(0)
}

fn cmd_dot(a: DotArgs) -> Result<u8, Failure> {
    let (g, sig) = load(&a.source, &a.guards, Some(&a.sig))?;
    let cert = match &a.cert {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_certificate(&g, &sig, &text)?)
        }
        None => None,
    };
    deliver(&a.out, &export_dot(&g, cert.as_ref()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Extract(a) => cmd_extract(a),
        Command::Verify(a) => cmd_verify(a),
        Command::At(a) => cmd_at(a),
        Command::Coeff(a) => cmd_coeff(a),
        Command::Paint(a) => cmd_paint(a),
        Command::Color(a) => cmd_color(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Dot(a) => cmd_dot(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
