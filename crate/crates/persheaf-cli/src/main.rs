//! Batch front end over the library's JSON formats.
//!
//! Every run with identical inputs and flags produces byte-identical output:
//! faces are kept in canonical order, all JSON maps are sorted, and nothing
//! here consults the clock or a random source.
//!
//! Exit codes: 0 success, 1 relation failure, 2 malformed input or domain
//! error, 3 oracle disagreement, 4 theorem violation.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use persheaf::arrangement::SignVector;
use persheaf::embed::iota_braid;
use persheaf::functor::{
    corollary_analysis, open_cell_profile, phi_functor, verify_duality_commutes,
    verify_fully_faithful, verify_functor_preserves_j, verify_simple_to_simple,
};
use persheaf::hom::hom_space;
use persheaf::json as fmt;
use persheaf::poset::FacePoset;
use persheaf::relations::{
    check_invertibility, check_monotonicity, check_transitivity, is_in_j, validate_structure,
    ViolationReport,
};
use persheaf::rep::DoubleRep;
use persheaf::report::Report;
use persheaf::simple::is_absolutely_simple;
use persheaf::{Error, Result};

/// Default ceiling on the braid index; above it, enumeration sizes grow
/// steeply enough that a run should be a deliberate decision.
const LARGE_N: usize = 4;

#[derive(Parser)]
#[command(name = "persheaf", version, about = "Face posets, double representations, and extension by zero for reflection arrangements", disable_help_subcommand = true)]
struct Cli {
    /// Output style for the summary printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the command's main artifact (poset, representation, ...) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress informational notes; keep only the essential verdict.
    #[arg(long, global = true)]
    quiet: bool,

    /// Permit braid indices above the default ceiling of 4.
    #[arg(long, global = true)]
    allow_large: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    All,
    Relations,
    Hom,
    Dual,
    Simple,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the face poset of an arrangement.
    Faces {
        /// Braid index: hyperplanes x_i = x_j inside the zero-sum subspace.
        #[arg(long, conflicts_with = "arrangement")]
        n: Option<usize>,
        /// Arrangement JSON file to use instead of a braid family member.
        #[arg(long)]
        arrangement: Option<PathBuf>,
        /// Re-derive the poset from ordered set partitions and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Check a representation against the four relation families.
    Check {
        /// Representation JSON file.
        #[arg(long)]
        rep: PathBuf,
    },
    /// Extend a representation by zero along a coordinate-duplication embedding.
    Functor {
        /// Representation JSON file; must live on a braid poset.
        #[arg(long)]
        rep: PathBuf,
        /// First coordinate of the duplicated pair, 1-based.
        #[arg(long)]
        i: usize,
        /// Slot the duplicate occupies in the larger arrangement, 1-based.
        #[arg(long)]
        j: usize,
        /// Which verification suites to run on the result.
        #[arg(long, value_enum)]
        verify: Option<VerifyKind>,
        /// Write the embedding table as JSON here.
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Decide absolute simplicity and, when applicable, recover the source.
    Simple {
        /// Representation JSON file.
        #[arg(long)]
        rep: PathBuf,
    },
    /// Write the dual representation.
    Dual {
        /// Representation JSON file.
        #[arg(long)]
        rep: PathBuf,
    },
    /// Dimension of the space of intertwiners between two representations.
    Hom {
        /// Source representation JSON file.
        #[arg(long)]
        source: PathBuf,
        /// Target representation JSON file, on the same poset.
        #[arg(long)]
        target: PathBuf,
    },
    /// Test face triples for collinearity, or count all collinear triples.
    Collinear {
        /// Braid index for the ambient poset.
        #[arg(long, conflicts_with = "arrangement")]
        n: Option<usize>,
        /// Arrangement JSON file to use instead.
        #[arg(long)]
        arrangement: Option<PathBuf>,
        /// A single triple of sign vectors, comma-separated: "0--,000,0++".
        /// Sign vectors may begin with '-'; the value is never read as flags.
        #[arg(long, allow_hyphen_values = true)]
        triple: Option<String>,
        /// Cross-check against the brute-force elimination oracle.
        #[arg(long)]
        oracle: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Malformed(_) | Error::Domain(_) | Error::Json(_) | Error::Io(_) => 2,
                Error::OracleDisagreement(_) => 3,
                Error::TheoremViolation(_) => 4,
                Error::Internal(_) => 70,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Faces { n, arrangement, oracle } => cmd_faces(cli, *n, arrangement.as_deref(), *oracle),
        Command::Check { rep } => cmd_check(cli, rep),
        Command::Functor { rep, i, j, verify, emb_out } => {
            cmd_functor(cli, rep, *i, *j, *verify, emb_out.as_deref())
        }
        Command::Simple { rep } => cmd_simple(cli, rep),
        Command::Dual { rep } => cmd_dual(cli, rep),
        Command::Hom { source, target } => cmd_hom(cli, source, target),
        Command::Collinear { n, arrangement, triple, oracle } => {
            cmd_collinear(cli, *n, arrangement.as_deref(), triple.as_deref(), *oracle)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing.

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn load_rep(path: &Path) -> Result<DoubleRep> {
    fmt::rep_from_json(&read_json(path)?)
}

fn write_artifact(path: &Path, value: &Value) -> Result<()> {
    fs::write(path, fmt::to_pretty(value))?;
    Ok(())
}

fn check_cap(cli: &Cli, n: usize) -> Result<()> {
    if n > LARGE_N && !cli.allow_large {
        return Err(Error::Domain(format!(
            "n = {n} exceeds the default ceiling of {LARGE_N}; pass --allow-large to proceed"
        )));
    }
    Ok(())
}

fn load_poset(cli: &Cli, n: Option<usize>, arrangement: Option<&Path>) -> Result<Arc<FacePoset>> {
    let p = match (n, arrangement) {
        (Some(n), None) => {
            check_cap(cli, n)?;
            FacePoset::braid(n)?
        }
        (None, Some(path)) => FacePoset::build(fmt::arrangement_from_json(&read_json(path)?)?)?,
        _ => {
            return Err(Error::Domain(
                "exactly one of --n and --arrangement is required".into(),
            ))
        }
    };
    Ok(Arc::new(p))
}

fn emit(cli: &Cli, text: &str, value: Value) {
    match cli.format {
        Format::Text => {
            if !text.is_empty() {
                println!("{text}");
            }
        }
        Format::Json => print!("{}", fmt::to_pretty(&value)),
    }
}

fn note(cli: &Cli, text: &str) {
    if !cli.quiet && cli.format == Format::Text {
        println!("{text}");
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

fn cmd_faces(cli: &Cli, n: Option<usize>, arrangement: Option<&Path>, oracle: bool) -> Result<u8> {
    let poset = load_poset(cli, n, arrangement)?;

    let mut by_dim: Vec<usize> = Vec::new();
    for f in poset.faces() {
        if f.dim >= by_dim.len() {
            by_dim.resize(f.dim + 1, 0);
        }
        by_dim[f.dim] += 1;
    }
    let breakdown = by_dim
        .iter()
        .enumerate()
        .map(|(d, c)| format!("dim {d}: {c}"))
        .collect::<Vec<_>>()
        .join(", ");
    let mut text = format!("faces: {} ({breakdown})", poset.len());

    let mut oracle_verdict = None;
    if oracle {
        let n = poset.arrangement().braid_rank().ok_or_else(|| {
            Error::Domain("the partition oracle applies only to braid arrangements".into())
        })?;
        check_cap(cli, n)?;
        let combinatorial = FacePoset::braid(n)?;
        if combinatorial != *poset {
            return Err(Error::OracleDisagreement(
                "partition enumeration disagrees with the geometric poset".into(),
            ));
        }
        oracle_verdict = Some("agree");
        write!(text, "\noracle: agree").unwrap();
    }

    if let Some(path) = &cli.out {
        write_artifact(path, &fmt::poset_to_json(&poset))?;
        if !cli.quiet {
            write!(text, "\nposet written to {}", path.display()).unwrap();
        }
    }

    let mut value = json!({
        "faces": poset.len(),
        "by_dim": by_dim,
        "chambers": poset.chambers().len(),
    });
    if let Some(v) = oracle_verdict {
        value["oracle"] = json!(v);
    }
    emit(cli, &text, value);
    Ok(0)
}

/// Per-family relation lines with the first witness of each failure.
fn relation_lines(rep: &DoubleRep) -> (String, ViolationReport, bool) {
    let structure = validate_structure(rep);
    let mut text = String::new();
    let mut line = |name: &str, report: &ViolationReport| {
        match report.violations.first() {
            None => writeln!(text, "{name}: pass").unwrap(),
            Some(v) => writeln!(
                text,
                "{name}: FAIL at [{}] ({})",
                v.faces.join(", "),
                v.identity
            )
            .unwrap(),
        }
    };
    if !structure.ok() {
        line("structure", &structure);
        text.push_str("monotonicity: skipped (structure failed)\n");
        text.push_str("transitivity: skipped (structure failed)\n");
        text.push_str("invertibility: skipped (structure failed)\n");
        text.push_str("in relations: no");
        return (text, structure, false);
    }
    line("structure", &structure);
    let mono = check_monotonicity(rep);
    line("monotonicity", &mono);
    let trans = check_transitivity(rep);
    line("transitivity", &trans);
    let inv = check_invertibility(rep);
    line("invertibility", &inv);
    let mut all = ViolationReport::default();
    all.violations.extend(mono.violations);
    all.violations.extend(trans.violations);
    all.violations.extend(inv.violations);
    let ok = all.ok();
    write!(text, "in relations: {}", if ok { "yes" } else { "no" }).unwrap();
    (text, all, ok)
}

fn cmd_check(cli: &Cli, rep_path: &Path) -> Result<u8> {
    let rep = load_rep(rep_path)?;
    let (text, report, ok) = relation_lines(&rep);
    emit(cli, &text, fmt::violations_to_json(&report));
    Ok(if ok { 0 } else { 1 })
}

fn cmd_functor(
    cli: &Cli,
    rep_path: &Path,
    i: usize,
    j: usize,
    verify: Option<VerifyKind>,
    emb_out: Option<&Path>,
) -> Result<u8> {
    let rep = load_rep(rep_path)?;
    let n = rep.poset().arrangement().braid_rank().ok_or_else(|| {
        Error::Domain("extension by zero is defined on braid posets only".into())
    })?;
    let gate = is_in_j(&rep);
    if !gate.ok() {
        emit(
            cli,
            &format!(
                "input violates the relations ({} violations); run `check` for details",
                gate.violations.len()
            ),
            fmt::violations_to_json(&gate),
        );
        return Ok(1);
    }

    let emb = iota_braid(n, i, j)?;
    let result = phi_functor(&rep, &emb)?;

    let mut report = Report::default();
    let run_kind = |kind: VerifyKind, report: &mut Report| -> Result<()> {
        let part = match kind {
            VerifyKind::Relations => verify_functor_preserves_j(&rep, &emb)?,
            VerifyKind::Hom => verify_fully_faithful(&rep, &rep, &emb)?,
            VerifyKind::Dual => verify_duality_commutes(&rep, &emb)?,
            VerifyKind::Simple => verify_simple_to_simple(&rep, &emb)?,
            VerifyKind::All => unreachable!("expanded by the caller"),
        };
        report.checks.extend(part.checks);
        Ok(())
    };
    if let Some(kind) = verify {
        match kind {
            VerifyKind::All => {
                for k in [VerifyKind::Relations, VerifyKind::Hom, VerifyKind::Dual, VerifyKind::Simple] {
                    run_kind(k, &mut report)?;
                }
            }
            k => run_kind(k, &mut report)?,
        }
    }

    if let Some(path) = &cli.out {
        write_artifact(path, &fmt::rep_to_json(&result.output))?;
    }
    if let Some(path) = emb_out {
        write_artifact(path, &fmt::embedding_to_json(&emb))?;
    }

    let mut text = format!(
        "extended along L({i},{j}): total dim {} over {} faces",
        result.output.total_dim(),
        result.output.poset().len()
    );
    if !report.checks.is_empty() {
        write!(text, "\n{report}").unwrap();
    }
    if let Some(path) = &cli.out {
        if !cli.quiet {
            write!(text, "\noutput written to {}", path.display()).unwrap();
        }
    }
    let value = json!({
        "i": i,
        "j": j,
        "total_dim": result.output.total_dim(),
        "report": fmt::report_to_json(&report),
    });
    emit(cli, &text, value);
    Ok(if report.ok() { 0 } else { 4 })
}

fn cmd_simple(cli: &Cli, rep_path: &Path) -> Result<u8> {
    let rep = load_rep(rep_path)?;
    if !is_in_j(&rep).ok() {
        emit(
            cli,
            "input violates the relations; run `check` for details",
            json!({"error": "input violates the relations"}),
        );
        return Ok(1);
    }
    let cert = is_absolutely_simple(&rep)?;
    let mut text = if cert.simple {
        format!(
            "simple (dim A = {} = {}^2)",
            cert.algebra_dim, cert.total_dim
        )
    } else {
        format!(
            "not simple (dim A = {}, bound {}^2 = {})",
            cert.algebra_dim,
            cert.total_dim,
            cert.total_dim * cert.total_dim
        )
    };

    // The support analysis recovers a source on the next-smaller braid
    // poset, so it only applies from rank two upward.
    let analyzable = rep.poset().arrangement().braid_rank().is_some_and(|n| n >= 2);
    let mut verdict_json = Value::Null;
    if cert.simple && analyzable && open_cell_profile(&rep).values().all(|&d| d == 0) {
        let verdict = corollary_analysis(&rep)?;
        if let Some((i, j)) = verdict.recovered_via {
            write!(text, "\nopen cells zero; recovered via L({i},{j}); round-trip OK").unwrap();
        }
        verdict_json = fmt::verdict_to_json(&verdict);
    }

    let mut value = fmt::certificate_to_json(&cert);
    value["corollary"] = verdict_json;
    emit(cli, &text, value);
    Ok(0)
}

fn cmd_dual(cli: &Cli, rep_path: &Path) -> Result<u8> {
    let rep = load_rep(rep_path)?;
    let dual = fmt::rep_to_json(&rep.dual());
    match &cli.out {
        Some(path) => {
            write_artifact(path, &dual)?;
            note(cli, &format!("dual written to {}", path.display()));
            if cli.format == Format::Json {
                print!("{}", fmt::to_pretty(&json!({"total_dim": rep.total_dim()})));
            }
        }
        // With no destination the dual itself is the output, in every format.
        None => print!("{}", fmt::to_pretty(&dual)),
    }
    Ok(0)
}

fn cmd_hom(cli: &Cli, source: &Path, target: &Path) -> Result<u8> {
    let src = load_rep(source)?;
    let dst = load_rep(target)?;
    let (dim, _) = hom_space(&src, &dst)?;
    emit(cli, &format!("dim Hom = {dim}"), json!({ "dim_hom": dim }));
    Ok(0)
}

fn cmd_collinear(
    cli: &Cli,
    n: Option<usize>,
    arrangement: Option<&Path>,
    triple: Option<&str>,
    oracle: bool,
) -> Result<u8> {
    let poset = load_poset(cli, n, arrangement)?;

    if let Some(arg) = triple {
        let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Malformed(format!(
                "--triple wants three comma-separated sign vectors, got {}",
                parts.len()
            )));
        }
        let idx: Vec<usize> = parts
            .iter()
            .map(|s| {
                s.parse::<SignVector>()
                    .and_then(|sv| poset.lookup_signs(&sv.to_string()))
            })
            .collect::<Result<_>>()?;
        let direct = poset.collinear(idx[0], idx[1], idx[2]);
        let mut text = format!("collinear: {}", if direct { "yes" } else { "no" });
        let mut value = json!({ "collinear": direct });
        if oracle {
            let check = poset.collinear_oracle(idx[0], idx[1], idx[2])?;
            if check != direct {
                return Err(Error::OracleDisagreement(format!(
                    "solver says {direct}, elimination oracle says {check}"
                )));
            }
            text.push_str("\noracle: agree");
            value["oracle"] = json!("agree");
        }
        emit(cli, &text, value);
        return Ok(0);
    }

    let total = poset.len().pow(3);
    let triples = poset.collinear_triples();
    let mut text = format!("collinear triples: {} of {total}", triples.len());
    let mut value = json!({ "count": triples.len(), "total": total });
    if oracle {
        for a in 0..poset.len() {
            for b in 0..poset.len() {
                for c in 0..poset.len() {
                    let direct = poset.collinear(a, b, c);
                    if direct != poset.collinear_oracle(a, b, c)? {
                        return Err(Error::OracleDisagreement(format!(
                            "triple ({}, {}, {})",
                            poset.face(a).signs,
                            poset.face(b).signs,
                            poset.face(c).signs
                        )));
                    }
                }
            }
        }
        text.push_str("\noracle: agree");
        value["oracle"] = json!("agree");
    }
    emit(cli, &text, value);
    Ok(0)
}
