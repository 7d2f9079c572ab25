use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use zdgraph::{
    alpha_height_dim, betti_table, build_graph, build_system, chain_params, classify, cm_status, cross_check,
    factorize, hilbert_series, independence_polynomial_chain, oracle_cochordal, type_sequence,
    validate_system, vertex_count, BettiTable, Classification, CmStatus, ConstructibleSystem, HilbertSeries,
    IndependencePolynomial, OracleReport, PrimeFactorization, RingSpec, TypeSequence, Violation,
    DEFAULT_ORACLE_BOUND,
};

#[derive(Parser)]
#[command(name = "zdgraph", version, about = "Zero-divisor graphs, Betti numbers and Hilbert series")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the zero-divisor graph of Z/nZ.
    Classify { n: String },
    /// Graded Betti numbers of the edge ideal.
    Betti {
        spec: String,
        /// Cross-check every closed formula against brute force.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Hilbert series of the edge ring.
    Hilbert { spec: String },
    /// Depth, dimension and the Cohen-Macaulay property.
    Cm { spec: String },
    /// Type sequence of the constructible system.
    TypeSeq { spec: String },
    /// The zero-divisor graph itself.
    Graph { spec: String },
    /// Sweep Z/nZ for n = 2..=N against the brute-force oracles.
    Verify {
        #[arg(long)]
        max_n: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<zdgraph::Error> for Failure {
    fn from(e: zdgraph::Error) -> Self {
        use zdgraph::Error::*;
        let code = match e {
            Parse(_) | InvalidParameter(_) => 2,
            NotCochordal { .. } => 3,
            ScaleExceeded { .. } => 4,
        };
        let message = match e {
            NotCochordal { n, witness } => {
                format!("zn:{n}: {}", Classification::NotCochordal { n, witness })
            }
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: format!("output error: {e}") }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: 2, message: format!("output error: {e}") }
    }
}

type Run = Result<bool, Failure>;

#[derive(Serialize, Deserialize)]
struct ClassifyOutput {
    n: u64,
    factorization: PrimeFactorization,
    classification: Classification,
}

#[derive(Serialize, Deserialize)]
struct BettiOutput {
    spec: RingSpec,
    betti: BettiTable,
    oracle: Option<OracleReport>,
}

#[derive(Serialize, Deserialize)]
struct HilbertOutput {
    spec: RingSpec,
    series: HilbertSeries,
    independence_polynomial: Option<IndependencePolynomial>,
}

#[derive(Serialize, Deserialize)]
struct CmOutput {
    spec: RingSpec,
    alpha: u64,
    cm: CmStatus,
}

#[derive(Serialize, Deserialize)]
struct TypeSeqOutput {
    spec: RingSpec,
    type_sequence: TypeSequence,
    normalized: TypeSequence,
    system: ConstructibleSystem,
    violations: Vec<Violation>,
}

#[derive(Serialize, Deserialize)]
struct VerifyRow {
    n: u64,
    classification: String,
    vertices: u64,
    /// `None` when the graph is too large to build.
    oracle_cochordal: Option<bool>,
    classification_agrees: Option<bool>,
    /// Verdict of the full cross-check, run only within the oracle bound.
    cross_check: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct VerifyOutput {
    max_n: u64,
    oracle_bound: usize,
    rows: Vec<VerifyRow>,
    classification_agreements: usize,
    classification_checked: usize,
    cross_checks: usize,
    cross_check_disagreements: usize,
}

fn parse_spec(s: &str) -> Result<RingSpec, Failure> {
    Ok(s.parse::<RingSpec>()?)
}

fn allow(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Failure::usage(format!("{command} does not support --format {name}")))
    }
}

fn json(value: &impl Serialize) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_classify(n: &str, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json], "classify")?;
    let n: u64 = n.trim().parse().map_err(|_| Failure::usage(format!("not a modulus: {n:?}")))?;
    let classification = classify(n)?;
    match format {
        Format::Json => json(&ClassifyOutput { n, factorization: factorize(n)?, classification })?,
        _ => println!("{classification}"),
    }
    Ok(true)
}

fn cmd_betti(spec: &str, oracle: bool, bound: usize, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json, Format::Csv], "betti")?;
    let spec = parse_spec(spec)?;
    let betti = betti_table(&spec)?;
    let report = if oracle {
        let n = vertex_count(&spec);
        if n > bound.into() {
            return Err(zdgraph::Error::ScaleExceeded {
                what: "vertices",
                size: u64::try_from(&n).unwrap_or(u64::MAX),
                bound: bound as u64,
            }
            .into());
        }
        Some(cross_check(&spec, bound))
    } else {
        None
    };
    let agree = report.as_ref().is_none_or(OracleReport::all_agree);
    match format {
        Format::Json => json(&BettiOutput { spec, betti, oracle: report })?,
        Format::Csv => csv_rows(&["i", "beta"], (0..=betti.pd()).map(|i| (i, betti.beta(i).to_string())))?,
        _ => {
            println!("{}", betti.diagram());
            if let Some(r) = report {
                println!("{r}");
            }
        }
    }
    Ok(agree)
}

fn cmd_hilbert(spec: &str, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json, Format::Csv], "hilbert")?;
    let spec = parse_spec(spec)?;
    let series = hilbert_series(&spec)?;
    let independence_polynomial = chain_params(&spec).map(independence_polynomial_chain).transpose()?;
    match format {
        Format::Json => json(&HilbertOutput { spec, series, independence_polynomial })?,
        Format::Csv => csv_rows(
            &["k", "coefficient"],
            series.numerator.iter().enumerate().map(|(k, c)| (k, c.to_string())),
        )?,
        _ => {
            let reduced = series.reduce();
            let multiplicity: num_bigint::BigInt = reduced.numerator.iter().sum();
            println!("H(t) = {series}");
            println!("reduced: {reduced}");
            println!("dim {}, multiplicity {multiplicity}", reduced.pole_order);
            if let Some(f) = independence_polynomial {
                println!("independence polynomial: {}", f.render());
            }
        }
    }
    Ok(true)
}

fn cmd_cm(spec: &str, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json], "cm")?;
    let spec = parse_spec(spec)?;
    let cm = cm_status(&spec)?;
    let alpha = alpha_height_dim(&spec)?.alpha;
    match format {
        Format::Json => json(&CmOutput { spec, alpha, cm })?,
        _ => {
            let unmixed = match cm.unmixed {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown (graph too large)",
            };
            println!("{cm}");
            println!("alpha {alpha}, height {}, pd {}, vertices {}", cm.height, cm.pd, cm.vertices);
            println!("unmixed: {unmixed}");
        }
    }
    Ok(true)
}

fn cmd_type_seq(spec: &str, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json], "type-seq")?;
    let spec = parse_spec(spec)?;
    let ts = type_sequence(&spec)?;
    let system = build_system(&spec)?;
    let graph = build_graph(&spec)?;
    let violations = validate_system(&graph, &system).violations;
    let ok = violations.is_empty();
    match format {
        Format::Json => {
            json(&TypeSeqOutput { spec, normalized: ts.normalized(), type_sequence: ts, system, violations })?
        }
        _ => {
            println!("type: {ts}");
            println!("normalized: {}", ts.normalized());
            println!("k = {}", ts.k());
            if ok {
                println!("constructible system: {} steps, valid", system.steps.len());
            } else {
                println!("constructible system: {} steps, INVALID", system.steps.len());
                for v in &violations {
                    println!("  {v}");
                }
            }
        }
    }
    Ok(ok)
}

fn cmd_graph(spec: &str, format: Format) -> Run {
    let spec = parse_spec(spec)?;
    let g = build_graph(&spec)?;
    match format {
        Format::Json => json(&g)?,
        Format::Dot => print!("{}", g.export_dot()),
        Format::Csv => {
            csv_rows(&["u", "v"], g.edges().map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())))?
        }
        Format::Table => {
            println!("{spec}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
            let mut out = io::stdout().lock();
            for v in 0..g.vertex_count() {
                let nbrs: Vec<String> = g.neighbors(v).ones().map(|u| g.label(u).to_string()).collect();
                writeln!(out, "{}: {}", g.label(v), nbrs.join(" "))?;
            }
        }
    }
    Ok(true)
}

fn cmd_verify(max_n: u64, bound: usize, format: Format) -> Run {
    allow(format, &[Format::Table, Format::Json, Format::Csv], "verify")?;
    if max_n < 2 {
        return Err(Failure::usage("--max-n must be at least 2"));
    }
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let spec = RingSpec::residue(n)?;
        let c = classify(n)?;
        let vertices = u64::try_from(&vertex_count(&spec)).unwrap_or(u64::MAX);
        let oracle = build_graph(&spec).ok().map(|g| oracle_cochordal(&g));
        let cross = (vertices <= bound as u64).then(|| cross_check(&spec, bound).verdict().to_string());
        rows.push(VerifyRow {
            n,
            classification: c.to_string(),
            vertices,
            oracle_cochordal: oracle,
            classification_agrees: oracle.map(|o| o == c.is_cochordal()),
            cross_check: cross,
        });
    }
    let checked: Vec<bool> = rows.iter().filter_map(|r| r.classification_agrees).collect();
    let summary = VerifyOutput {
        max_n,
        oracle_bound: bound,
        classification_agreements: checked.iter().filter(|&&a| a).count(),
        classification_checked: checked.len(),
        cross_checks: rows.iter().filter(|r| r.cross_check.is_some()).count(),
        cross_check_disagreements: rows
            .iter()
            .filter(|r| r.cross_check.as_deref() == Some("disagree"))
            .count(),
        rows,
    };
    let ok = summary.classification_agreements == summary.classification_checked
        && summary.cross_check_disagreements == 0;
    match format {
        Format::Json => json(&summary)?,
        Format::Csv => csv_rows(
            &["n", "classification", "vertices", "oracle_cochordal", "classification_agrees", "cross_check"],
            summary.rows.iter().map(|r| {
                let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
                (
                    r.n,
                    &r.classification,
                    r.vertices,
                    opt(r.oracle_cochordal),
                    opt(r.classification_agrees),
                    r.cross_check.clone().unwrap_or_default(),
                )
            }),
        )?,
        _ => {
            let mut out = io::stdout().lock();
            for r in &summary.rows {
                let cross = r.cross_check.as_deref().unwrap_or("-");
                writeln!(
                    out,
                    "{:>6}  {:>6} vertices  oracle: {:<8}  {}",
                    r.n, r.vertices, cross, r.classification
                )?;
            }
            writeln!(
                out,
                "classification agreements: {}/{}",
                summary.classification_agreements, summary.classification_checked
            )?;
            writeln!(
                out,
                "cross-checks within bound {}: {} run, {} disagree",
                bound, summary.cross_checks, summary.cross_check_disagreements
            )?;
            writeln!(out, "oracle: {}", if ok { "agree" } else { "disagree" })?;
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.format;
    let result = match &cli.command {
        Command::Classify { n } => cmd_classify(n, f),
        Command::Betti { spec, oracle, oracle_bound } => cmd_betti(spec, *oracle, *oracle_bound, f),
        Command::Hilbert { spec } => cmd_hilbert(spec, f),
        Command::Cm { spec } => cmd_cm(spec, f),
        Command::TypeSeq { spec } => cmd_type_seq(spec, f),
        Command::Graph { spec } => cmd_graph(spec, f),
        Command::Verify { max_n, oracle_bound } => cmd_verify(*max_n, *oracle_bound, f),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
