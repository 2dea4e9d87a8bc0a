//! `hsc`: code a tab-separated specimen file into a character matrix, or
//! look up interpolated critical values.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;

use hsc_core::error::Distribution;
use hsc_core::io::{parse_tsv, write_matrix_nexus, write_report, ReportFormat, ReportOptions};
use hsc_core::tables::builtin;
use hsc_core::{analyze, Analysis, AnalysisConfig, Confidence};

#[derive(Parser)]
#[command(
    name = "hsc",
    version,
    about = "Homogeneous subset coding of continuous traits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code every trait of a specimen file into discrete states.
    Code(CodeArgs),
    /// Print an interpolated SMM or SR critical value.
    Lookup(LookupArgs),
}

#[derive(clap::Args)]
struct CodeArgs {
    /// Tab-separated specimen file (`-` for standard input).
    #[arg(short, long)]
    input: PathBuf,

    /// Output format; repeat for several outputs.
    #[arg(short, long = "format", value_enum)]
    formats: Vec<Format>,

    /// Output file, paired in order with `--format`. Without any, the single
    /// output goes to standard output.
    #[arg(short, long = "out")]
    outs: Vec<PathBuf>,

    /// Confidence level used for all three tests.
    #[arg(short, long, default_value = "0.95", value_parser = parse_confidence)]
    confidence: Confidence,

    /// Include distance, critical and separation matrices in reports.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(clap::Args)]
struct LookupArgs {
    /// Table: smm or sr.
    #[arg(value_parser = parse_distribution)]
    table: Distribution,

    /// Number of comparisons (smm) or of means (sr).
    k: f64,

    /// Degrees of freedom; `inf` for the limiting value.
    #[arg(value_parser = parse_dof)]
    d: f64,

    #[arg(short, long, default_value = "0.95", value_parser = parse_confidence)]
    confidence: Confidence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Plain-text report with the coded matrix.
    Text,
    /// Self-contained HTML report.
    Html,
    /// Nexus DATA block.
    Nexus,
}

fn parse_confidence(s: &str) -> Result<Confidence, String> {
    s.parse().map_err(|e: hsc_core::Error| e.to_string())
}

fn parse_distribution(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: hsc_core::Error| e.to_string())
}

fn parse_dof(s: &str) -> Result<f64, String> {
    if s.eq_ignore_ascii_case("inf") || s == "∞" {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>()
        .ok()
        .filter(|d| d.is_finite())
        .ok_or_else(|| format!("`{s}` is not a number or `inf`"))
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn render(analysis: &Analysis, format: Format, verbose: bool) -> Result<String> {
    let options = ReportOptions {
        config: analysis.config,
        verbose,
    };
    Ok(match format {
        Format::Text => write_report(
            &analysis.traits,
            &analysis.matrix,
            ReportFormat::Text,
            &options,
        ),
        Format::Html => write_report(
            &analysis.traits,
            &analysis.matrix,
            ReportFormat::Html,
            &options,
        ),
        Format::Nexus => write_matrix_nexus(&analysis.matrix)?,
    })
}

/// Replaces `path` only once the whole document is on disk.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn run_code(args: CodeArgs) -> Result<()> {
    let mut formats = args.formats;
    if formats.is_empty() {
        formats.push(Format::Text);
    }
    if args.outs.is_empty() && formats.len() > 1 {
        bail!("several formats need one --out each");
    }
    if !args.outs.is_empty() && args.outs.len() != formats.len() {
        bail!(
            "{} --format values but {} --out paths",
            formats.len(),
            args.outs.len()
        );
    }

    let bytes = read_input(&args.input)?;
    let table = parse_tsv(&bytes).with_context(|| format!("parsing {}", args.input.display()))?;
    let analysis = analyze(&table, &AnalysisConfig::uniform(args.confidence))?;
    for warning in &analysis.matrix.warnings {
        eprintln!("warning: {warning}");
    }

    // render everything first so a failure leaves no partial set of files
    let documents = formats
        .iter()
        .map(|&f| render(&analysis, f, args.verbose))
        .collect::<Result<Vec<_>>>()?;
    if args.outs.is_empty() {
        print!("{}", documents[0]);
        return Ok(());
    }
    for (path, doc) in args.outs.iter().zip(&documents) {
        write_atomic(path, doc)?;
    }
    Ok(())
}

fn run_lookup(args: LookupArgs) -> Result<()> {
    let lookup = builtin(args.table, args.confidence).lookup(args.k, args.d)?;
    if lookup.clamped() {
        eprintln!(
            "warning: {} k = {} is beyond the table; locked at k = {}",
            args.table, lookup.k_requested, lookup.k_used
        );
    }
    println!("{}", lookup.value);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Code(args) => run_code(args),
        Command::Lookup(args) => run_lookup(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
