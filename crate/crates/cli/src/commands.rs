use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use gcg_core::catalog::compute_tables;
use gcg_core::chaos::DEFAULT_DISCARD;
use gcg_core::export::{self, ExportError};
use gcg_core::ifs::hutchinson_iterate_capped;
use gcg_core::overlap::{OverlapTester, DEFAULT_R_MAX, DEFAULT_R_MIN};
use gcg_core::tol::DEFAULT_COPY_CAP;
use gcg_core::{cross_checked_report, gcg_run, CatalogId, GcgConfig, Polytope};

use crate::manifest::{manifest_path, Artifact, Parameters, RunManifest, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
}

impl From<gcg_core::Error> for CliError {
    fn from(e: gcg_core::Error) -> Self {
        use gcg_core::Error as E;
        match e {
            E::Bracket { .. } | E::Degenerate(_) | E::MethodDisagreement { .. } | E::DeltaBelowEdge { .. } => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExportError> for CliError {
    fn from(e: ExportError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Generalized chaos game on regular polytopes.
#[derive(Debug, Parser)]
#[command(name = "gcg", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum CloudFormat {
    Csv,
    Ply,
    Svg,
}

impl CloudFormat {
    fn extension(self) -> &'static str {
        match self {
            CloudFormat::Csv => "csv",
            CloudFormat::Ply => "ply",
            CloudFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum OutlineFormat {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal ratio of one polytope from its longest edge-parallel chord.
    Ropt {
        id: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Optimal ratios for every polytope of the 2D-5D tables.
    Tables {
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Play the chaos game and write the point cloud.
    Generate {
        id: String,
        /// Contraction ratio; defaults to the polytope's optimal ratio.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        iterations: usize,
        #[arg(long, default_value_t = DEFAULT_DISCARD)]
        discard: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One or more of csv, ply, svg (comma separated).
        #[arg(long, value_enum, value_delimiter = ',', default_value = "csv")]
        format: Vec<CloudFormat>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Bisection search for the smallest ratio without copy overlap.
    Search {
        id: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_R_MIN)]
        r_min: f64,
        #[arg(long, default_value_t = DEFAULT_R_MAX)]
        r_max: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Overlap verdict for the level-1 copies at a ratio (default: the
    /// optimal ratio, which is then checked to be the touching point).
    Verify {
        id: String,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Level-k copies of the deterministic Hutchinson iteration.
    Hutchinson {
        id: String,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
        /// svg (2D only) or csv; defaults to svg in 2D and csv otherwise.
        #[arg(long, value_enum)]
        format: Option<OutlineFormat>,
        #[arg(long, default_value_t = DEFAULT_COPY_CAP)]
        cap: u64,
        #[arg(long)]
        force: bool,
    },
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Ropt { id, format } => ropt(&id, format),
        Command::Tables { format } => tables(format),
        Command::Generate {
            id,
            r,
            iterations,
            discard,
            seed,
            format,
            out,
            force,
        } => generate(&id, r, iterations, discard, seed, &format, &out, force),
        Command::Search {
            id,
            tol,
            r_min,
            r_max,
            format,
        } => search(&id, tol, r_min, r_max, format),
        Command::Verify { id, r, format } => verify(&id, r, format),
        Command::Hutchinson {
            id,
            r,
            level,
            out,
            format,
            cap,
            force,
        } => hutchinson(&id, r, level, &out, format, cap, force),
    }
}

fn load(id: &str) -> CliResult<(CatalogId, Polytope)> {
    let cid: CatalogId = id.parse()?;
    let p = cid.generate(1.0)?;
    Ok((cid, p))
}

/// Fixed notation with `digits` significant digits.
fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn print_json<T: Serialize>(record: &T) -> CliResult<()> {
    let line = serde_json::to_string(record).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{line}");
    Ok(())
}

fn one_based(pair: (usize, usize)) -> [usize; 2] {
    [pair.0 + 1, pair.1 + 1]
}

#[derive(Serialize)]
struct RoptRecord {
    schema: u32,
    command: &'static str,
    polytope: String,
    delta_parallel: f64,
    edge_length: f64,
    delta_over_edge: f64,
    r_opt: f64,
    witness_pair: [usize; 2],
    witness_edge: [usize; 2],
}

fn ropt(id: &str, format: ReportFormat) -> CliResult<()> {
    let (cid, p) = load(id)?;
    let report = cross_checked_report(&p)?;
    if format == ReportFormat::Text {
        println!(
            "{:<16} delta/edge = {:<16} r_opt = {}",
            cid.to_string(),
            sig(report.delta_over_edge(), 12),
            sig(report.r_opt, 12)
        );
    }
    print_json(&RoptRecord {
        schema: SCHEMA_VERSION,
        command: "ropt",
        polytope: cid.to_string(),
        delta_parallel: report.delta_parallel,
        edge_length: report.edge_length,
        delta_over_edge: report.delta_over_edge(),
        r_opt: report.r_opt,
        witness_pair: one_based(report.witness_pair),
        witness_edge: one_based(report.witness_edge),
    })
}

#[derive(Serialize)]
struct TableRecord<'a> {
    schema: u32,
    command: &'static str,
    table: u8,
    label: &'a str,
    polytope: &'a str,
    delta_over_edge: f64,
    r_opt: f64,
}

fn tables(format: ReportFormat) -> CliResult<()> {
    let rows = compute_tables()?;
    let dims = ["2D", "3D", "4D", "5D"];
    let mut current = 0;
    for row in &rows {
        match format {
            ReportFormat::Text => {
                if row.table != current {
                    current = row.table;
                    println!("Table {} ({})", row.table, dims[row.table as usize - 1]);
                    println!("  {:<20} {:<16} r_opt", "polytope", "delta/edge");
                }
                println!(
                    "  {:<20} {:<16} {}",
                    row.label,
                    sig(row.delta_over_edge, 12),
                    sig(row.r_opt, 12)
                );
            }
            ReportFormat::Json => print_json(&TableRecord {
                schema: SCHEMA_VERSION,
                command: "tables",
                table: row.table,
                label: &row.label,
                polytope: &row.id,
                delta_over_edge: row.delta_over_edge,
                r_opt: row.r_opt,
            })?,
        }
    }
    Ok(())
}

fn create_output(path: &Path, force: bool) -> CliResult<BufWriter<File>> {
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let file = opts.open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            CliError::Usage(format!("{} exists; pass --force to overwrite", path.display()))
        } else {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        }
    })?;
    Ok(BufWriter::new(file))
}

fn write_manifest(out: &Path, manifest: &RunManifest, force: bool) -> CliResult<()> {
    let path = manifest_path(out);
    let mut w = create_output(&path, force)?;
    serde_json::to_writer_pretty(&mut w, manifest).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    print_json(manifest)
}

#[allow(clippy::too_many_arguments)]
fn generate(
    id: &str,
    r: Option<f64>,
    iterations: usize,
    discard: usize,
    seed: u64,
    formats: &[CloudFormat],
    out: &Path,
    force: bool,
) -> CliResult<()> {
    let start = Instant::now();
    let (cid, p) = load(id)?;
    let mut formats = formats.to_vec();
    formats.dedup();
    if formats.is_empty() {
        return Err(CliError::Usage("at least one --format is required".into()));
    }
    for f in &formats {
        match f {
            CloudFormat::Svg if p.dimension() != 2 => {
                return Err(CliError::Usage(format!("SVG output needs a 2D polytope, {cid} is {}D", p.dimension())))
            }
            CloudFormat::Ply if p.dimension() != 3 => {
                return Err(CliError::Usage(format!("PLY output needs a 3D polytope, {cid} is {}D", p.dimension())))
            }
            _ => {}
        }
    }
    let r = match r {
        Some(r) => r,
        None => cross_checked_report(&p)?.r_opt,
    };
    let cfg = GcgConfig::new(r, iterations, seed).with_discard(discard);
    let cloud = gcg_run(&p, &cfg)?;

    let mut outputs = Vec::with_capacity(formats.len());
    for f in &formats {
        let path = if formats.len() == 1 {
            out.to_path_buf()
        } else {
            out.with_extension(f.extension())
        };
        let mut w = create_output(&path, force)?;
        match f {
            CloudFormat::Csv => export::write_cloud_csv(&cloud, &mut w)?,
            CloudFormat::Ply => export::write_cloud_ply(&cloud, &mut w)?,
            CloudFormat::Svg => export::write_cloud_svg(&cloud, &p, &mut w)?,
        }
        drop(w);
        outputs.push(Artifact::from_file(&path, f.extension())?);
    }

    let manifest = RunManifest {
        schema: SCHEMA_VERSION,
        command: "generate".into(),
        polytope: cid.to_string(),
        parameters: Parameters {
            r: Some(r),
            iterations: Some(iterations),
            discard: Some(discard),
            seed: Some(seed),
            ..Parameters::default()
        },
        outputs,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    write_manifest(out, &manifest, force)
}

#[derive(Serialize)]
struct ProbeRecord {
    r: f64,
    overlaps: bool,
    overlapping_pairs: usize,
    max_penetration: f64,
}

#[derive(Serialize)]
struct SearchRecord {
    schema: u32,
    command: &'static str,
    polytope: String,
    r_low: f64,
    r_high: f64,
    r_estimate: f64,
    tolerance: f64,
    formula_r_opt: f64,
    probes: Vec<ProbeRecord>,
}

fn search(id: &str, tol: f64, r_min: f64, r_max: f64, format: ReportFormat) -> CliResult<()> {
    let (cid, p) = load(id)?;
    let tester = OverlapTester::new(&p)?;
    let result = tester.search(tol, r_min, r_max)?;
    let formula = cross_checked_report(&p)?.r_opt;
    if format == ReportFormat::Text {
        for (r, v) in &result.probes {
            println!(
                "  r = {:<16} {:<8} pairs = {:<5} max penetration = {:.3e}",
                sig(*r, 12),
                if v.overlaps() { "overlap" } else { "clear" },
                v.overlapping_pairs.len(),
                v.max_penetration
            );
        }
        println!(
            "{cid}: r_opt ~ {} (bracket [{}, {}], width {:.1e}); formula {}",
            sig(result.r_estimate, 8),
            sig(result.r_low, 12),
            sig(result.r_high, 12),
            result.tolerance,
            sig(formula, 12)
        );
    }
    print_json(&SearchRecord {
        schema: SCHEMA_VERSION,
        command: "search",
        polytope: cid.to_string(),
        r_low: result.r_low,
        r_high: result.r_high,
        r_estimate: result.r_estimate,
        tolerance: result.tolerance,
        formula_r_opt: formula,
        probes: result
            .probes
            .iter()
            .map(|(r, v)| ProbeRecord {
                r: *r,
                overlaps: v.overlaps(),
                overlapping_pairs: v.overlapping_pairs.len(),
                max_penetration: v.max_penetration,
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct VerifyRecord {
    schema: u32,
    command: &'static str,
    polytope: String,
    r: f64,
    overlaps: bool,
    overlapping_pairs: Vec<[usize; 2]>,
    max_penetration: f64,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    touching_at_formula: Option<bool>,
}

/// Relative step below the optimal ratio at which overlap must appear.
const VERIFY_STEP: f64 = 1e-6;

fn verify(id: &str, r: Option<f64>, format: ReportFormat) -> CliResult<()> {
    let (cid, p) = load(id)?;
    let tester = OverlapTester::new(&p)?;
    let (ratio, check_formula) = match r {
        Some(r) => (r, false),
        None => (cross_checked_report(&p)?.r_opt, true),
    };
    let verdict = tester.verdict(ratio)?;
    let touching = if check_formula {
        let below = tester.verdict(ratio * (1.0 - VERIFY_STEP))?;
        Some(!verdict.overlaps() && below.overlaps())
    } else {
        None
    };
    if format == ReportFormat::Text {
        println!(
            "{cid} at r = {}: {} ({} overlapping pairs, max penetration {:.3e}, tolerance {:.1e})",
            sig(ratio, 12),
            if verdict.overlaps() { "overlap" } else { "no overlap" },
            verdict.overlapping_pairs.len(),
            verdict.max_penetration,
            verdict.tolerance
        );
        if let Some(t) = touching {
            println!(
                "copies {} at the optimal ratio",
                if t { "touch without overlapping" } else { "do NOT touch" }
            );
        }
    }
    print_json(&VerifyRecord {
        schema: SCHEMA_VERSION,
        command: "verify",
        polytope: cid.to_string(),
        r: ratio,
        overlaps: verdict.overlaps(),
        overlapping_pairs: verdict.overlapping_pairs.iter().map(|&p| one_based(p)).collect(),
        max_penetration: verdict.max_penetration,
        tolerance: verdict.tolerance,
        touching_at_formula: touching,
    })?;
    match touching {
        Some(false) => Err(CliError::Numerical(format!(
            "{cid}: copies are not touching at the optimal ratio {ratio}"
        ))),
        _ => Ok(()),
    }
}

fn hutchinson(
    id: &str,
    r: Option<f64>,
    level: u32,
    out: &Path,
    format: Option<OutlineFormat>,
    cap: u64,
    force: bool,
) -> CliResult<()> {
    let start = Instant::now();
    let (cid, p) = load(id)?;
    let format = format.unwrap_or(if p.dimension() == 2 {
        OutlineFormat::Svg
    } else {
        OutlineFormat::Csv
    });
    if format == OutlineFormat::Svg && p.dimension() != 2 {
        return Err(CliError::Usage(format!(
            "SVG outlines need a 2D polytope, {cid} is {}D",
            p.dimension()
        )));
    }
    let r = match r {
        Some(r) => r,
        None => cross_checked_report(&p)?.r_opt,
    };
    let copies = hutchinson_iterate_capped(&p, r, level, cap)?;
    let mut w = create_output(out, force)?;
    let name = match format {
        OutlineFormat::Svg => {
            export::write_copies_svg(&copies, &p, &mut w)?;
            "svg"
        }
        OutlineFormat::Csv => {
            export::write_copies_csv(&copies, p.dimension(), &mut w)?;
            "csv"
        }
    };
    drop(w);
    let manifest = RunManifest {
        schema: SCHEMA_VERSION,
        command: "hutchinson".into(),
        polytope: cid.to_string(),
        parameters: Parameters {
            r: Some(r),
            level: Some(level),
            ..Parameters::default()
        },
        outputs: vec![Artifact::from_file(out, name)?],
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    write_manifest(out, &manifest, force)
}
