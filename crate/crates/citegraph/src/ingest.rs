//! Delimited-text input: citation, membership and journal-graph files.
//!
//! Every file starts with an exact header line. Data lines hold
//! comma-separated fields with surrounding whitespace trimmed; there is no
//! quoting, so identifiers cannot contain commas. Blank lines are skipped.
//! Line numbers are 1-based physical lines, header included.

use std::fmt;
use std::io::{self, BufRead};

use citegraph_core::{ArticleId, CitationGraph, GraphError, JournalId};

pub const CITATIONS_HEADER: &str = "citing,cited";
pub const MEMBERSHIP_HEADER: &str = "article,journal";
pub const JOURNAL_GRAPH_HEADER: &str = "source,target,weight";

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("bad header: expected `{expected}`, found `{found}`")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: {reason}: `{content}`")]
    MalformedLine {
        line: usize,
        content: String,
        reason: &'static str,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationRecord {
    pub line: usize,
    pub citing: ArticleId,
    pub cited: ArticleId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipRecord {
    pub line: usize,
    pub article: ArticleId,
    pub journal: JournalId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JournalEdgeRecord {
    pub line: usize,
    pub source: JournalId,
    pub target: JournalId,
    pub weight: u64,
}

/// Calls `row` with the line number and trimmed fields of every data line.
fn for_each_row<R, F>(
    reader: R,
    header: &'static str,
    width: usize,
    mut row: F,
) -> Result<(), ParseError>
where
    R: BufRead,
    F: FnMut(usize, &str, &[&str]) -> Result<(), ParseError>,
{
    let mut lines = reader.lines();
    let first = lines.next().transpose()?.unwrap_or_default();
    if first != header {
        return Err(ParseError::BadHeader {
            expected: header,
            found: first,
        });
    }
    for (i, line) in lines.enumerate() {
        let line = line?;
        let number = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != width {
            return Err(malformed(number, &line, "wrong number of fields"));
        }
        if fields.iter().any(|f| f.is_empty()) {
            return Err(malformed(number, &line, "empty field"));
        }
        row(number, &line, &fields)?;
    }
    Ok(())
}

fn malformed(line: usize, content: &str, reason: &'static str) -> ParseError {
    ParseError::MalformedLine {
        line,
        content: content.to_owned(),
        reason,
    }
}

fn article(field: &str) -> ArticleId {
    ArticleId::new(field).expect("field checked non-empty")
}

fn journal(field: &str) -> JournalId {
    JournalId::new(field).expect("field checked non-empty")
}

/// Parses a `citing,cited` file. Repeated lines are kept as separate records.
pub fn parse_citations<R: BufRead>(reader: R) -> Result<Vec<CitationRecord>, ParseError> {
    let mut out = Vec::new();
    for_each_row(reader, CITATIONS_HEADER, 2, |line, _, f| {
        out.push(CitationRecord {
            line,
            citing: article(f[0]),
            cited: article(f[1]),
        });
        Ok(())
    })?;
    Ok(out)
}

/// Parses an `article,journal` file. Duplicates are not merged here.
pub fn parse_membership<R: BufRead>(reader: R) -> Result<Vec<MembershipRecord>, ParseError> {
    let mut out = Vec::new();
    for_each_row(reader, MEMBERSHIP_HEADER, 2, |line, _, f| {
        out.push(MembershipRecord {
            line,
            article: article(f[0]),
            journal: journal(f[1]),
        });
        Ok(())
    })?;
    Ok(out)
}

/// Parses a `source,target,weight` file; weights must be positive integers.
pub fn parse_journal_graph<R: BufRead>(reader: R) -> Result<Vec<JournalEdgeRecord>, ParseError> {
    let mut out = Vec::new();
    for_each_row(reader, JOURNAL_GRAPH_HEADER, 3, |line, content, f| {
        let weight = match f[2].parse::<u64>() {
            Ok(w) if w > 0 => w,
            _ => return Err(malformed(line, content, "weight is not a positive integer")),
        };
        out.push(JournalEdgeRecord {
            line,
            source: journal(f[0]),
            target: journal(f[1]),
            weight,
        });
        Ok(())
    })?;
    Ok(out)
}

/// Error handling for citation rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OnBadCitation {
    #[default]
    Error,
    Skip,
}

/// How [`build_graph`] treats questionable rows. Conflicting memberships
/// are always fatal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IngestPolicy {
    pub unknown_article: OnBadCitation,
    pub self_citation: OnBadCitation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

/// Counts from one [`build_graph`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    /// Citation rows read.
    pub records_read: usize,
    pub membership_rows: usize,
    pub citations_kept: usize,
    pub citations_skipped: usize,
    pub articles: usize,
    pub journals: usize,
    /// Citation-file line numbers and reasons for skipped rows.
    pub warnings: Vec<Warning>,
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "records_read={} citations_kept={} citations_skipped={} articles={} journals={}",
            self.records_read,
            self.citations_kept,
            self.citations_skipped,
            self.articles,
            self.journals
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("membership line {line}: {source}")]
    ConflictingMembership { line: usize, source: GraphError },
    #[error("citations line {line}: {source}")]
    Citation { line: usize, source: GraphError },
}

/// Builds a citation graph from parsed records.
///
/// Memberships are applied first. Identical repeated memberships merge
/// silently; a conflicting one is always an error. Citation rows with an
/// unmapped endpoint or citing themselves fail or are skipped with a
/// warning, per `policy`.
pub fn build_graph(
    memberships: &[MembershipRecord],
    citations: &[CitationRecord],
    policy: IngestPolicy,
) -> Result<(CitationGraph, IngestReport), IngestError> {
    let mut graph = CitationGraph::new();
    for m in memberships {
        graph
            .add_article(m.article.clone(), m.journal.clone())
            .map_err(|source| IngestError::ConflictingMembership {
                line: m.line,
                source,
            })?;
    }

    let mut report = IngestReport {
        records_read: citations.len(),
        membership_rows: memberships.len(),
        ..IngestReport::default()
    };
    for c in citations {
        match graph.add_citation(&c.citing, &c.cited) {
            Ok(()) => report.citations_kept += 1,
            Err(err) => {
                let action = match err {
                    GraphError::UnknownArticle(_) => policy.unknown_article,
                    GraphError::SelfCitation(_) => policy.self_citation,
                    _ => OnBadCitation::Error,
                };
                if action == OnBadCitation::Error {
                    return Err(IngestError::Citation {
                        line: c.line,
                        source: err,
                    });
                }
                report.citations_skipped += 1;
                report.warnings.push(Warning {
                    line: c.line,
                    message: format!("skipped: {err}"),
                });
            }
        }
    }
    report.articles = graph.article_count();
    report.journals = graph.journal_count();
    Ok((graph, report))
}
