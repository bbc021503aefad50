//! Command-line driver.
//!
//! Exit codes: 0 success, 1 data or validation error, 2 usage error,
//! 3 non-convergence (partial scores are still written).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use citegraph_core::ranking::{
    citation_rate, invariant_scores_with, pagerank, per_article_scores,
    strongly_connected_components, Method, RankError, DEFAULT_DAMPING, DEFAULT_MAX_ITER,
    DEFAULT_TOLERANCE,
};
use citegraph_core::synth::{self, ArticlesPerJournal, SynthConfig, SynthError};
use citegraph_core::{CitationGraph, ConvergenceDiagnostics, RankReport, SelfLoopPolicy};

use crate::export::{
    export_dot, export_journal_graph_csv, export_scores_csv, write_citations_csv,
    write_membership_csv,
};
use crate::ingest::{
    build_graph, parse_citations, parse_membership, IngestPolicy, IngestReport, OnBadCitation,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DATA: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "citegraph",
    version,
    about = "Aggregate citation graphs and rank journals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Collapse an article citation graph into a weighted journal graph.
    Aggregate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Csv)]
        format: GraphFormat,
        /// Output file (standard output when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score and rank journals.
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Divide journal scores by article counts.
        #[arg(long)]
        per_article: bool,
        #[arg(long, default_value_t = DEFAULT_DAMPING, value_parser = parse_damping)]
        damping: f64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_positive_f64)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER, value_parser = parse_positive_usize)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic citation dataset.
    Synth {
        #[arg(long, value_parser = parse_positive_usize)]
        journals: usize,
        /// Articles per journal: `N` or an inclusive range `MIN..MAX`.
        #[arg(long, value_parser = parse_articles)]
        articles: ArticlesPerJournal,
        #[arg(long, default_value_t = 0)]
        citations: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start from a journal-level cycle so the journal graph is strongly connected.
        #[arg(long)]
        strongly_connected: bool,
        #[arg(long)]
        out_citations: PathBuf,
        #[arg(long)]
        out_membership: PathBuf,
    },
    /// Print `key=value` summary statistics.
    Stats {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Citation file (`citing,cited`).
    pub citations: PathBuf,
    /// Membership file (`article,journal`).
    pub membership: PathBuf,
    #[arg(long, value_enum, default_value_t = SelfLoops::Drop)]
    pub self_loops: SelfLoops,
    #[arg(long, value_enum, default_value_t = OnBad::Error)]
    pub on_unknown: OnBad,
    #[arg(long, value_enum, default_value_t = OnBad::Error)]
    pub on_self_cite: OnBad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelfLoops {
    Keep,
    Drop,
}

impl From<SelfLoops> for SelfLoopPolicy {
    fn from(s: SelfLoops) -> Self {
        match s {
            SelfLoops::Keep => SelfLoopPolicy::Keep,
            SelfLoops::Drop => SelfLoopPolicy::Drop,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnBad {
    Error,
    Skip,
}

impl From<OnBad> for OnBadCitation {
    fn from(o: OnBad) -> Self {
        match o {
            OnBad::Error => OnBadCitation::Error,
            OnBad::Skip => OnBadCitation::Skip,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Invariant,
    Pagerank,
    CitationRate,
}

fn parse_damping(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if d > 0.0 && d < 1.0 {
        Ok(d)
    } else {
        Err("damping must lie strictly between 0 and 1".into())
    }
}

fn parse_positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("must be a positive number".into())
    }
}

fn parse_positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(format!("{e}")),
    }
}

fn parse_articles(s: &str) -> Result<ArticlesPerJournal, String> {
    match s.split_once("..") {
        Some((lo, hi)) => {
            let min = parse_positive_usize(lo)?;
            let max = parse_positive_usize(hi)?;
            if min > max {
                return Err("range minimum exceeds maximum".into());
            }
            Ok(ArticlesPerJournal::Range { min, max })
        }
        None => parse_positive_usize(s).map(ArticlesPerJournal::Fixed),
    }
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotConverged(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Data(_) => EXIT_DATA,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::NotConverged(_) => EXIT_NOT_CONVERGED,
        }
    }
}

fn data<E: std::fmt::Display>(context: &Path) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Data(format!("{}: {e}", context.display()))
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command. Data goes to
/// files or `stdout`; reports and diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{rendered}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {failure}");
            failure.exit_code()
        }
    }
}

fn execute(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    match command {
        Command::Aggregate { input, format, out } => {
            let graph = load(&input, stderr)?;
            let journal_graph = graph.aggregate(input.self_loops.into());
            write_output(out.as_deref(), stdout, |w| match format {
                GraphFormat::Csv => export_journal_graph_csv(&journal_graph, w),
                GraphFormat::Dot => export_dot(&journal_graph, w),
            })
        }
        Command::Rank {
            input,
            method,
            per_article,
            damping,
            tol,
            max_iter,
            out,
        } => {
            let graph = load(&input, stderr)?;
            rank(
                &graph,
                &input,
                method,
                per_article,
                damping,
                tol,
                max_iter,
                out.as_deref(),
                stdout,
                stderr,
            )
        }
        Command::Synth {
            journals,
            articles,
            citations,
            seed,
            strongly_connected,
            out_citations,
            out_membership,
        } => {
            let cfg = SynthConfig {
                n_journals: journals,
                articles_per_journal: articles,
                citation_count: citations,
                seed,
                ensure_strongly_connected: strongly_connected,
            };
            let graph = synth::generate(&cfg).map_err(|e| match e {
                SynthError::InfeasibleConfig(_) => Failure::Usage(e.to_string()),
                other => Failure::Data(other.to_string()),
            })?;
            write_output(Some(&out_citations), stdout, |w| {
                write_citations_csv(&graph, w)
            })?;
            write_output(Some(&out_membership), stdout, |w| {
                write_membership_csv(&graph, w)
            })
        }
        Command::Stats { input } => {
            let graph = load(&input, stderr)?;
            write_stats(&graph, stdout)?;
            Ok(())
        }
    }
}

fn load(input: &InputArgs, stderr: &mut dyn Write) -> Result<CitationGraph, Failure> {
    let open = |path: &Path| File::open(path).map(BufReader::new).map_err(data(path));
    let memberships =
        parse_membership(open(&input.membership)?).map_err(data(&input.membership))?;
    let citations = parse_citations(open(&input.citations)?).map_err(data(&input.citations))?;
    let policy = IngestPolicy {
        unknown_article: input.on_unknown.into(),
        self_citation: input.on_self_cite.into(),
    };
    let (graph, report) =
        build_graph(&memberships, &citations, policy).map_err(|e| Failure::Data(e.to_string()))?;
    report_ingest(&report, stderr)?;
    Ok(graph)
}

fn report_ingest(report: &IngestReport, stderr: &mut dyn Write) -> io::Result<()> {
    for w in &report.warnings {
        writeln!(stderr, "warning: citations line {}: {}", w.line, w.message)?;
    }
    writeln!(stderr, "{report}")
}

fn write_output<F>(path: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(path) => {
            let file = File::create(path).map_err(data(path))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(data(path))?;
            w.flush().map_err(data(path))
        }
        None => {
            write(stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn diagnostics_line(method: Method, diag: &ConvergenceDiagnostics) -> String {
    format!(
        "method={method} iterations={} residual_l1={:e} converged={}",
        diag.iterations, diag.residual_l1, diag.converged
    )
}

#[allow(clippy::too_many_arguments)]
fn rank(
    graph: &CitationGraph,
    input: &InputArgs,
    method: MethodArg,
    per_article: bool,
    damping: f64,
    tol: f64,
    max_iter: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let policy: SelfLoopPolicy = input.self_loops.into();
    let journal_graph = graph.aggregate(policy);

    let (method, outcome) = match method {
        MethodArg::CitationRate => {
            if per_article {
                return Err(Failure::Usage(
                    "--per-article does not apply to citation-rate, which is already per article"
                        .into(),
                ));
            }
            let rates = citation_rate(graph, policy == SelfLoopPolicy::Keep)
                .map_err(|e| Failure::Data(e.to_string()))?;
            let report = RankReport::new(
                Method::CitationRate,
                true,
                rates.iter().map(|(j, &s)| (j, s)),
                None,
            );
            return write_output(out, stdout, |w| export_scores_csv(&report, w));
        }
        MethodArg::Invariant => (
            Method::Invariant,
            invariant_scores_with(&journal_graph, tol, max_iter),
        ),
        MethodArg::Pagerank => (
            Method::PageRank,
            pagerank(&journal_graph, damping, tol, max_iter),
        ),
    };

    let (scores, diagnostics) = match outcome {
        Ok(pair) => pair,
        Err(RankError::NotConverged(partial)) => (partial.scores, partial.diagnostics),
        Err(e) => return Err(Failure::Data(e.to_string())),
    };
    writeln!(stderr, "{}", diagnostics_line(method, &diagnostics))?;

    let report = if per_article {
        let adjusted = per_article_scores(&scores, &journal_graph)
            .map_err(|e| Failure::Data(e.to_string()))?;
        RankReport::new(
            method,
            true,
            adjusted.iter().map(|(j, &s)| (j, s)),
            Some(diagnostics),
        )
    } else {
        RankReport::new(method, false, scores.iter(), Some(diagnostics))
    };
    write_output(out, stdout, |w| export_scores_csv(&report, w))?;

    if !diagnostics.converged {
        return Err(Failure::NotConverged(format!(
            "{method} did not converge within {max_iter} iterations; partial scores written"
        )));
    }
    Ok(())
}

fn write_stats(graph: &CitationGraph, out: &mut dyn Write) -> io::Result<()> {
    let keep = graph.aggregate(SelfLoopPolicy::Keep);
    let intra = keep.self_loop_weight();
    let cross = keep.total_weight() - intra;
    let loopless = keep.without_self_loops();
    let components = strongly_connected_components(&loopless);

    writeln!(out, "journals={}", graph.journal_count())?;
    writeln!(out, "articles={}", graph.article_count())?;
    writeln!(out, "citations={}", graph.total_citations())?;
    writeln!(out, "cross={cross}")?;
    writeln!(out, "intra={intra}")?;
    writeln!(out, "scc={}", components.len())?;
    let (ins, outs) = (loopless.in_weights(), loopless.out_weights());
    for (i, journal) in loopless.journals().iter().enumerate() {
        writeln!(
            out,
            "journal.{journal}.articles={}",
            loopless.article_counts()[i]
        )?;
        writeln!(out, "journal.{journal}.in={}", ins[i])?;
        writeln!(out, "journal.{journal}.out={}", outs[i])?;
    }
    Ok(())
}
