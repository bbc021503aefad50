//! Deterministic text output for journal graphs, rankings and synthetic
//! datasets. All writers emit UTF-8 with `\n` line endings.

use std::io::{self, Write};

use citegraph_core::{CitationGraph, JournalGraph, RankReport};

use crate::ingest::{CITATIONS_HEADER, JOURNAL_GRAPH_HEADER, MEMBERSHIP_HEADER};

pub const SCORES_HEADER: &str = "rank,journal,score";

/// One `source,target,weight` row per stored edge, sorted by source then
/// target.
pub fn export_journal_graph_csv<W: Write + ?Sized>(
    graph: &JournalGraph,
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "{JOURNAL_GRAPH_HEADER}")?;
    for (source, target, weight) in graph.edges() {
        writeln!(out, "{source},{target},{weight}")?;
    }
    Ok(())
}

fn dot_quote(id: &str) -> String {
    let mut s = String::with_capacity(id.len() + 2);
    s.push('"');
    for c in id.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

/// Graphviz digraph: journals labelled `<id> (<article count>)`, edges
/// labelled with their weight, both in canonical order.
pub fn export_dot<W: Write + ?Sized>(graph: &JournalGraph, out: &mut W) -> io::Result<()> {
    writeln!(out, "digraph journals {{")?;
    for (journal, count) in graph.journals().iter().zip(graph.article_counts()) {
        let label = format!("{journal} ({count})");
        writeln!(
            out,
            "  {} [label={}];",
            dot_quote(journal.as_str()),
            dot_quote(&label)
        )?;
    }
    for (source, target, weight) in graph.edges() {
        writeln!(
            out,
            "  {} -> {} [label=\"{weight}\"];",
            dot_quote(source.as_str()),
            dot_quote(target.as_str())
        )?;
    }
    writeln!(out, "}}")
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back as the rounded value.
pub fn format_score(score: f64) -> String {
    if score == 0.0 {
        return "0".to_owned();
    }
    let rounded: f64 = format!("{score:.11e}")
        .parse()
        .expect("valid float literal");
    format!("{rounded}")
}

/// `rank,journal,score` rows in rank order.
pub fn export_scores_csv<W: Write + ?Sized>(report: &RankReport, out: &mut W) -> io::Result<()> {
    writeln!(out, "{SCORES_HEADER}")?;
    for entry in &report.entries {
        writeln!(
            out,
            "{},{},{}",
            entry.rank,
            entry.journal,
            format_score(entry.score)
        )?;
    }
    Ok(())
}

/// Citation file with one line per citation (multiplicities expanded).
pub fn write_citations_csv<W: Write + ?Sized>(
    graph: &CitationGraph,
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "{CITATIONS_HEADER}")?;
    for (citing, cited, count) in graph.citations() {
        for _ in 0..count {
            writeln!(out, "{citing},{cited}")?;
        }
    }
    Ok(())
}

/// Membership file in article insertion order.
pub fn write_membership_csv<W: Write + ?Sized>(
    graph: &CitationGraph,
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "{MEMBERSHIP_HEADER}")?;
    for (article, journal) in graph.memberships() {
        writeln!(out, "{article},{journal}")?;
    }
    Ok(())
}
