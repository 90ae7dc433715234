//! `helm` command-line front end.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when an internal
//! verification fails (assembly routes disagree, a fixture deviates, a
//! kernel vector is not annihilated, a decomposition misses its tolerance).

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::complex::OrientedComplex;
use crate::error::Error;
use crate::generate;
use crate::graph::Graph;
use crate::helmholtzian::{assemble_entrywise, assemble_product, verify_equivalence};
use crate::hodge::{self, DECOMPOSITION_TOL};
use crate::incidence::{build_b, build_c, EdgeFlow};
use crate::linalg::{near_zero_count, symmetric_eigenvalues};
use crate::matrix::IntMatrix;
use crate::mmio::{to_json_rows, to_matrix_market};

/// Relative threshold below which an eigenvalue counts as zero in reports.
pub const NEAR_ZERO_EIGENVALUE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "helm", version, about = "Graph Helmholtzian toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Relative tolerance for floating-point checks.
    #[arg(long, global = true, value_parser = positive_f64)]
    tol: Option<f64>,

    /// Seed for the random generators.
    #[arg(long, global = true, env = "HELM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Matrixmarket,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Product,
    Entrywise,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    B,
    C,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex, edge, triangle and component counts plus triangle degrees.
    Info { input: String },
    /// Edge-vertex (B) and triangle-edge (C) incidence matrices.
    Incidence {
        input: String,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        matrix: Which,
    },
    /// The Helmholtzian matrix H.
    Helmholtzian {
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Entrywise)]
        method: Method,
    },
    /// Exact and predicted nullity.
    Nullity {
        input: String,
        #[arg(long)]
        per_component: bool,
    },
    /// Eigenvalues of H.
    Spectrum { input: String },
    /// Exact basis of the harmonic flows.
    Kernel { input: String },
    /// Helmholtz decomposition of an edge flow (one value per line, edge order).
    Decompose { input: String, flow: PathBuf },
    /// Least-squares vertex scores from an edge flow.
    Rank { input: String, flow: PathBuf },
    /// Enumerated triangles and the nullity-based count.
    Triangles { input: String },
    /// Nullity before and after pendant deletion, contraction and subdivision.
    Structure { input: String },
    /// Reference fixtures; exits 2 on any deviation.
    Selftest,
    /// Random or named graphs as an edge list.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    /// Erdős–Rényi G(n, p).
    Gnp {
        n: usize,
        p: f64,
        /// Orient each edge uniformly at random instead of low id to high id.
        #[arg(long)]
        random_orientation: bool,
    },
    /// Uniform random labelled tree.
    Tree { n: usize },
    Complete { n: u64 },
    Cycle { n: u64 },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, found {s:?}")),
    }
}

enum Failure {
    Input(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "helm: {}", f.message());
            f.code()
        }
    }
}

fn read_source(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))
    }
}

fn load_complex(input: &str) -> Result<OrientedComplex, Failure> {
    let text = read_source(input)?;
    let name = if input == "-" { "<stdin>" } else { input };
    Graph::from_edge_list(&text)
        .map(OrientedComplex::new)
        .map_err(|e| Failure::Input(format!("{name}: {e}")))
}

/// One real per line; blank lines and `#` comments are skipped.
fn load_flow(path: &Path, m: usize) -> Result<EdgeFlow, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| Failure::Input(format!("{}: line {}: expected a real number", path.display(), i + 1)))?;
        values.push(v);
    }
    if values.len() != m {
        return Err(Failure::Input(format!(
            "{}: {}",
            path.display(),
            Error::DimensionMismatch { expected: m, found: values.len() }
        )));
    }
    EdgeFlow::new(values).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let text = serde_json::to_string(value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn no_matrix_market(what: &str) -> Failure {
    Failure::Input(format!("`{what}` output is not a matrix; use --format json or table"))
}

fn emit_matrix(out: &mut dyn Write, format: Format, name: &str, m: &IntMatrix) -> Outcome {
    match format {
        Format::Json => writeln!(out, "{}", to_json_rows(m))?,
        Format::Matrixmarket => write!(out, "{}", to_matrix_market(m, Some(name)))?,
        Format::Table => write!(out, "{name}:\n{m}")?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let tol = cli.tol.unwrap_or(DECOMPOSITION_TOL);
    match &cli.command {
        Command::Info { input } => {
            let c = load_complex(input)?;
            let g = c.graph();
            match cli.format {
                Format::Matrixmarket => return Err(no_matrix_market("info")),
                Format::Json => emit_json(
                    out,
                    &json!({
                        "n": g.vertex_count(),
                        "m": g.edge_count(),
                        "t": c.triangle_count(),
                        "omega": g.component_count(),
                        "triangle_degrees": c.triangle_degrees(),
                    }),
                )?,
                Format::Table => {
                    writeln!(out, "n      {}", g.vertex_count())?;
                    writeln!(out, "m      {}", g.edge_count())?;
                    writeln!(out, "t      {}", c.triangle_count())?;
                    writeln!(out, "omega  {}", g.component_count())?;
                    for (e, d) in c.triangle_degrees().iter().enumerate() {
                        let (u, v) = g.edge_ids(e).expect("in range");
                        writeln!(out, "e{} {u}->{v} triangle degree {d}", e + 1)?;
                    }
                }
            }
        }
        Command::Incidence { input, matrix } => {
            let c = load_complex(input)?;
            let b = build_b(&c).into_matrix();
            let cm = build_c(&c).into_matrix();
            let show_b = matches!(matrix, Which::B | Which::Both);
            let show_c = matches!(matrix, Which::C | Which::Both);
            if cli.format == Format::Json {
                let mut doc = serde_json::Map::new();
                if show_b {
                    doc.insert("b".into(), json!(b.to_rows()));
                }
                if show_c {
                    doc.insert("c".into(), json!(cm.to_rows()));
                }
                emit_json(out, &doc)?;
            } else {
                if show_b {
                    emit_matrix(out, cli.format, "B", &b)?;
                }
                if show_c {
                    emit_matrix(out, cli.format, "C", &cm)?;
                }
            }
        }
        Command::Helmholtzian { input, method } => {
            let c = load_complex(input)?;
            let (h, status) = match method {
                Method::Product => (assemble_product(&build_b(&c), &build_c(&c)).expect("shapes"), None),
                Method::Entrywise => (assemble_entrywise(&c), None),
                Method::Verify => {
                    let eq = verify_equivalence(&c);
                    match (eq.verified, eq.first_discrepancy) {
                        (Some(h), _) => (h, Some("equivalence: ok")),
                        (None, Some(d)) => {
                            return Err(Failure::Verification(format!(
                                "equivalence: FAILED at ({}, {}): product {}, entrywise {}",
                                d.row, d.col, d.expected, d.got
                            )))
                        }
                        (None, None) => unreachable!("no discrepancy implies a verified matrix"),
                    }
                }
            };
            match cli.format {
                Format::Json => {
                    let mut doc = serde_json::Map::new();
                    doc.insert("provenance".into(), json!(h.provenance()));
                    doc.insert("matrix".into(), json!(h.matrix().to_rows()));
                    if status.is_some() {
                        doc.insert("equivalence".into(), json!("ok"));
                    }
                    emit_json(out, &doc)?;
                    if let Some(s) = status {
                        writeln!(err, "{s}")?;
                    }
                }
                Format::Matrixmarket => {
                    emit_matrix(out, cli.format, "H", h.matrix())?;
                    if let Some(s) = status {
                        writeln!(err, "{s}")?;
                    }
                }
                Format::Table => {
                    emit_matrix(out, cli.format, "H", h.matrix())?;
                    if let Some(s) = status {
                        writeln!(out, "{s}")?;
                    }
                }
            }
        }
        Command::Nullity { input, per_component } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("nullity"));
            }
            if *per_component {
                let split = hodge::nullity_by_component(&c);
                match cli.format {
                    Format::Table => {
                        for (i, r) in split.components.iter().enumerate() {
                            writeln!(out, "component {i}")?;
                            write_report_table(out, r)?;
                        }
                        writeln!(out, "total")?;
                        write_report_table(out, &split.total)?;
                    }
                    _ => emit_json(out, &split)?,
                }
            } else {
                let r = hodge::nullity_exact(&c);
                match cli.format {
                    Format::Table => write_report_table(out, &r)?,
                    _ => emit_json(out, &r)?,
                }
            }
        }
        Command::Spectrum { input } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("spectrum"));
            }
            let h = assemble_entrywise(&c);
            let values = symmetric_eigenvalues(h.matrix(), cli.tol.unwrap_or(1e-12))
                .map_err(|e| Failure::Verification(e.to_string()))?;
            let near_zero = near_zero_count(&values, NEAR_ZERO_EIGENVALUE);
            let eta = hodge::nullity_exact(&c).eta_exact;
            match cli.format {
                Format::Table => {
                    for v in &values {
                        writeln!(out, "{v:.12}")?;
                    }
                    writeln!(out, "near-zero {near_zero}, exact nullity {eta}")?;
                }
                _ => emit_json(out, &json!({ "eigenvalues": values, "near_zero": near_zero, "eta_exact": eta }))?,
            }
            if near_zero != eta {
                return Err(Failure::Verification(format!(
                    "{near_zero} near-zero eigenvalues but exact nullity {eta}"
                )));
            }
        }
        Command::Kernel { input } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("kernel"));
            }
            let basis = hodge::harmonic_basis(&c);
            let h = assemble_entrywise(&c);
            match cli.format {
                Format::Table => {
                    writeln!(out, "dimension {}", basis.dimension())?;
                    for v in basis.to_strings() {
                        writeln!(out, "{}", v.join(" "))?;
                    }
                }
                _ => emit_json(out, &json!({ "dimension": basis.dimension(), "basis": basis.to_strings() }))?,
            }
            if !basis.annihilated_by(h.matrix()) {
                return Err(Failure::Verification("kernel vector not annihilated by H".into()));
            }
        }
        Command::Decompose { input, flow } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("decompose"));
            }
            let f = load_flow(flow, c.edge_count())?;
            let d = hodge::helmholtz_decompose(&c, &f).map_err(|e| Failure::Input(e.to_string()))?;
            match cli.format {
                Format::Table => {
                    writeln!(out, "{:>4} {:>14} {:>14} {:>14} {:>14}", "edge", "flow", "gradient", "harmonic", "curl")?;
                    for e in 0..c.edge_count() {
                        writeln!(
                            out,
                            "{:>4} {:>14.9} {:>14.9} {:>14.9} {:>14.9}",
                            e + 1,
                            f.values()[e],
                            d.gradient_part.values()[e],
                            d.harmonic_part.values()[e],
                            d.curl_part.values()[e]
                        )?;
                    }
                    writeln!(out, "reconstruction error {:e}", d.reconstruction_error)?;
                    writeln!(out, "max pairwise inner product {:e}", d.max_pairwise_inner_product)?;
                }
                _ => emit_json(out, &d)?,
            }
            if !d.within(tol) {
                return Err(Failure::Verification(format!("decomposition exceeds tolerance {tol:e}")));
            }
        }
        Command::Rank { input, flow } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("rank"));
            }
            let f = load_flow(flow, c.edge_count())?;
            let r = hodge::rank_flows(&c, &f).map_err(|e| Failure::Input(e.to_string()))?;
            match cli.format {
                Format::Table => {
                    for (v, s) in c.graph().vertex_ids().iter().zip(r.potential.values()) {
                        writeln!(out, "{v} {s:.9}")?;
                    }
                    writeln!(
                        out,
                        "consistency {:.9} harmonic {:.9} curl {:.9}",
                        r.consistency_ratio, r.harmonic_ratio, r.curl_ratio
                    )?;
                }
                _ => emit_json(out, &r)?,
            }
        }
        Command::Triangles { input } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("triangles"));
            }
            let r = hodge::nullity_exact(&c);
            let predicted = hodge::triangle_count_predicted(&c);
            match cli.format {
                Format::Table => {
                    for [a, b, t] in c.triangle_ids() {
                        writeln!(out, "{a} {b} {t}")?;
                    }
                    writeln!(out, "enumerated {} predicted {} rank_c {}", c.triangle_count(), predicted, r.rank_c)?;
                    if !r.triangles_independent {
                        writeln!(out, "triangle boundaries are linearly dependent")?;
                    }
                }
                _ => emit_json(
                    out,
                    &json!({
                        "triangles": c.triangle_ids(),
                        "enumerated": c.triangle_count(),
                        "predicted": predicted,
                        "rank_c": r.rank_c,
                        "triangles_independent": r.triangles_independent,
                    }),
                )?,
            }
        }
        Command::Structure { input } => {
            let c = load_complex(input)?;
            if cli.format == Format::Matrixmarket {
                return Err(no_matrix_market("structure"));
            }
            let report = hodge::structural_nullity_checks(&c);
            match cli.format {
                Format::Table => {
                    for chk in &report.checks {
                        let verdict = match (chk.holds, chk.hypothesis_failure()) {
                            (None, _) => "observed",
                            (Some(true), _) => "holds",
                            (Some(false), true) => "hypothesis failure",
                            (Some(false), false) => "VIOLATED",
                        };
                        writeln!(
                            out,
                            "{:?}: eta {} -> {} (expected {}) {verdict}",
                            chk.transformation,
                            chk.eta_before,
                            chk.eta_after,
                            chk.expected_after.map_or("-".to_string(), |x| x.to_string())
                        )?;
                    }
                }
                _ => emit_json(out, &report)?,
            }
            let violated = report.violations().next().map(|v| v.transformation);
            if let Some(t) = violated {
                return Err(Failure::Verification(format!("{t:?} violated on a triangle-independent graph")));
            }
        }
        Command::Selftest => {
            let cases = crate::fixtures::selftest();
            for case in &cases {
                writeln!(out, "{} {}", if case.passed { "PASS" } else { "FAIL" }, case.name)?;
            }
            if cases.iter().any(|c| !c.passed) {
                return Err(Failure::Verification("selftest failed".into()));
            }
        }
        Command::Generate { kind } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let g = match kind {
                GenerateKind::Gnp { n, p, random_orientation } => {
                    if !(0.0..=1.0).contains(p) {
                        return Err(Failure::Input(format!("p must lie in [0, 1], found {p}")));
                    }
                    let g = generate::gnp(*n, *p, &mut rng);
                    if *random_orientation {
                        generate::random_orientation(&g, &mut rng)
                    } else {
                        g
                    }
                }
                GenerateKind::Tree { n } => {
                    if *n == 0 {
                        return Err(Failure::Input("a tree needs at least one vertex".into()));
                    }
                    generate::random_tree(*n, &mut rng)
                }
                GenerateKind::Complete { n } => crate::fixtures::complete(*n).into_graph(),
                GenerateKind::Cycle { n } => {
                    if *n < 3 {
                        return Err(Failure::Input("a cycle needs at least three vertices".into()));
                    }
                    crate::fixtures::cycle(*n).into_graph()
                }
            };
            write!(out, "{}", g.to_edge_list())?;
        }
    }
    Ok(())
}

fn write_report_table(out: &mut dyn Write, r: &hodge::NullityReport) -> io::Result<()> {
    writeln!(out, "n                      {}", r.n)?;
    writeln!(out, "m                      {}", r.m)?;
    writeln!(out, "t                      {}", r.t)?;
    writeln!(out, "omega                  {}", r.omega)?;
    writeln!(out, "rank_b                 {}", r.rank_b)?;
    writeln!(out, "rank_c                 {}", r.rank_c)?;
    writeln!(out, "eta_exact              {}", r.eta_exact)?;
    writeln!(out, "eta_predicted          {}", r.eta_predicted)?;
    writeln!(out, "triangles_independent  {}", r.triangles_independent)
}
