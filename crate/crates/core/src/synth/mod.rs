//! Reproducible synthetic citation graphs and structure-preserving
//! transformations used by the property tests.
//!
//! Journals are named `j1 .. jN` and articles `j<k>_a<i>` (both 1-based).
//! See [`rng`] for the exact random source.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::CitationGraph;
use crate::ids::{ArticleId, JournalId};

pub mod rng;

use rng::SynthRng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(&'static str),
    #[error("unknown journal {0}")]
    UnknownJournal(JournalId),
    #[error("journal {journal} has {articles} articles, cannot split into {parts} parts")]
    TooFewArticles {
        journal: JournalId,
        articles: usize,
        parts: usize,
    },
    #[error("split would reuse existing journal name {0}")]
    JournalExists(JournalId),
}

/// Articles per journal: a fixed count or an inclusive range drawn per
/// journal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArticlesPerJournal {
    Fixed(usize),
    Range { min: usize, max: usize },
}

impl ArticlesPerJournal {
    fn validate(self) -> Result<(), SynthError> {
        match self {
            ArticlesPerJournal::Fixed(0) => Err(SynthError::InfeasibleConfig(
                "articles per journal must be positive",
            )),
            ArticlesPerJournal::Range { min, max } if min == 0 || min > max => Err(
                SynthError::InfeasibleConfig("article range must be non-empty and positive"),
            ),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SynthConfig {
    pub n_journals: usize,
    pub articles_per_journal: ArticlesPerJournal,
    pub citation_count: u64,
    pub seed: u64,
    pub ensure_strongly_connected: bool,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n_journals == 0 {
            return Err(SynthError::InfeasibleConfig(
                "at least one journal is required",
            ));
        }
        self.articles_per_journal.validate()
    }
}

fn journal_name(k: usize) -> JournalId {
    JournalId::new(&format!("j{k}")).expect("non-empty name")
}

fn article_name(k: usize, i: usize) -> ArticleId {
    ArticleId::new(&format!("j{k}_a{i}")).expect("non-empty name")
}

/// Builds a random citation graph.
///
/// Article counts are drawn first, journal by journal. With
/// `ensure_strongly_connected` and more than one journal, the first article
/// of each journal then cites the first article of the next (`jN` wraps to
/// `j1`); these scaffold citations count towards `citation_count` but are
/// added even when it is smaller. The remaining citations join uniformly
/// drawn ordered pairs of distinct articles.
pub fn generate(cfg: &SynthConfig) -> Result<CitationGraph, SynthError> {
    cfg.validate()?;
    let mut rng = SynthRng::new(cfg.seed);
    let mut graph = CitationGraph::new();
    let mut articles: Vec<ArticleId> = Vec::new();
    let mut first_article: Vec<ArticleId> = Vec::with_capacity(cfg.n_journals);

    for k in 1..=cfg.n_journals {
        let count = match cfg.articles_per_journal {
            ArticlesPerJournal::Fixed(n) => n,
            ArticlesPerJournal::Range { min, max } => {
                min + rng.below((max - min) as u64 + 1) as usize
            }
        };
        let journal = journal_name(k);
        for i in 1..=count {
            let article = article_name(k, i);
            graph
                .add_article(article.clone(), journal.clone())
                .expect("generated names are unique");
            if i == 1 {
                first_article.push(article.clone());
            }
            articles.push(article);
        }
    }

    let mut remaining = cfg.citation_count;
    if cfg.ensure_strongly_connected && cfg.n_journals > 1 {
        for k in 0..cfg.n_journals {
            let next = (k + 1) % cfg.n_journals;
            graph
                .add_citation(&first_article[k], &first_article[next])
                .expect("scaffold endpoints are distinct members");
        }
        remaining = remaining.saturating_sub(cfg.n_journals as u64);
    }

    if remaining > 0 && articles.len() < 2 {
        return Err(SynthError::InfeasibleConfig(
            "citations need at least two distinct articles",
        ));
    }
    let total = articles.len() as u64;
    for _ in 0..remaining {
        let citing = rng.below(total);
        let mut cited = rng.below(total - 1);
        if cited >= citing {
            cited += 1;
        }
        graph
            .add_citation(&articles[citing as usize], &articles[cited as usize])
            .expect("distinct members");
    }
    Ok(graph)
}

/// Multiplies every citation multiplicity by `factor`.
///
/// # Panics
///
/// If `factor` is zero.
pub fn scale_citations(graph: &CitationGraph, factor: u64) -> CitationGraph {
    assert!(factor >= 1, "scale factor must be at least 1");
    graph.scaled(factor)
}

/// Names of the parts produced by [`split_journal`]: `j#1 .. j#parts`.
pub fn part_names(journal: &JournalId, parts: usize) -> Vec<JournalId> {
    (1..=parts)
        .map(|p| JournalId::new(&format!("{journal}#{p}")).expect("non-empty name"))
        .collect()
}

/// Splits `journal` into `parts` new journals of near-equal size.
///
/// Articles are sorted by identifier, shuffled with the seeded generator,
/// and cut into consecutive runs; the first `count % parts` runs get one
/// extra article. Citations keep their endpoints.
pub fn split_journal(
    graph: &CitationGraph,
    journal: &JournalId,
    parts: usize,
    seed: u64,
) -> Result<CitationGraph, SynthError> {
    if !graph.contains_journal(journal) {
        return Err(SynthError::UnknownJournal(journal.clone()));
    }
    if parts < 2 {
        return Err(SynthError::InfeasibleConfig(
            "a split needs at least two parts",
        ));
    }
    let mut members = graph.articles_of(journal);
    if members.len() < parts {
        return Err(SynthError::TooFewArticles {
            journal: journal.clone(),
            articles: members.len(),
            parts,
        });
    }
    let names = part_names(journal, parts);
    if let Some(taken) = names.iter().find(|n| graph.contains_journal(n)) {
        return Err(SynthError::JournalExists(taken.clone()));
    }

    SynthRng::new(seed).shuffle(&mut members);
    let base = members.len() / parts;
    let extra = members.len() % parts;
    let mut out = graph.clone();
    let mut rest = members.as_slice();
    for (p, name) in names.into_iter().enumerate() {
        let size = base + usize::from(p < extra);
        let (chunk, tail) = rest.split_at(size);
        for article in chunk {
            out.reassign(article, name.clone());
        }
        rest = tail;
    }
    out.remove_journal_if_empty(journal);
    Ok(out)
}

/// Relabels every journal in `parts` as `into`.
pub fn merge_journals(
    graph: &CitationGraph,
    parts: &[JournalId],
    into: &JournalId,
) -> CitationGraph {
    graph.map_journals(|j| {
        if parts.contains(j) {
            into.clone()
        } else {
            j.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SelfLoopPolicy;

    fn j(s: &str) -> JournalId {
        JournalId::new(s).unwrap()
    }

    fn a(s: &str) -> ArticleId {
        ArticleId::new(s).unwrap()
    }

    fn cfg(n: usize, articles: usize, citations: u64, scc: bool) -> SynthConfig {
        SynthConfig {
            n_journals: n,
            articles_per_journal: ArticlesPerJournal::Fixed(articles),
            citation_count: citations,
            seed: 1,
            ensure_strongly_connected: scc,
        }
    }

    fn figure() -> CitationGraph {
        let mut g = CitationGraph::new();
        for (journal, n) in [("v1", 5), ("v2", 5), ("v3", 4)] {
            for i in 1..=n {
                g.add_article(a(&format!("{journal}_a{i}")), j(journal))
                    .unwrap();
            }
        }
        for (from, to) in [
            ("v1_a1", "v3_a1"),
            ("v1_a2", "v3_a2"),
            ("v1_a3", "v3_a2"),
            ("v3_a3", "v2_a1"),
            ("v2_a2", "v1_a4"),
        ] {
            g.add_citation(&a(from), &a(to)).unwrap();
        }
        g
    }

    #[test]
    fn scaffold_only_is_a_unit_cycle() {
        let g = generate(&cfg(3, 1, 0, true)).unwrap();
        let jg = g.aggregate(SelfLoopPolicy::Drop);
        let edges: Vec<_> = jg
            .edges()
            .map(|(s, t, w)| (s.as_str(), t.as_str(), w))
            .collect();
        assert_eq!(edges, [("j1", "j2", 1), ("j2", "j3", 1), ("j3", "j1", 1)]);
    }

    #[test]
    fn generate_is_deterministic() {
        let c = SynthConfig {
            seed: 99,
            ..cfg(5, 4, 200, true)
        };
        let g1 = generate(&c).unwrap();
        let g2 = generate(&c).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(
            g1.citations().collect::<Vec<_>>(),
            g2.citations().collect::<Vec<_>>()
        );
        assert_eq!(g1.total_citations(), 200);
        let other = generate(&SynthConfig { seed: 100, ..c }).unwrap();
        assert_ne!(g1, other);
    }

    #[test]
    fn infeasible_configs() {
        assert!(matches!(
            generate(&cfg(1, 1, 1, false)),
            Err(SynthError::InfeasibleConfig(_))
        ));
        assert!(matches!(
            generate(&cfg(0, 1, 0, false)),
            Err(SynthError::InfeasibleConfig(_))
        ));
        assert!(matches!(
            generate(&cfg(2, 0, 0, false)),
            Err(SynthError::InfeasibleConfig(_))
        ));
        let bad_range = SynthConfig {
            articles_per_journal: ArticlesPerJournal::Range { min: 4, max: 2 },
            ..cfg(2, 1, 0, false)
        };
        assert!(generate(&bad_range).is_err());
        // A single journal needs no scaffold; one article and no citations is fine.
        assert!(generate(&cfg(1, 1, 0, true)).is_ok());
    }

    #[test]
    fn article_ranges_are_respected() {
        let c = SynthConfig {
            articles_per_journal: ArticlesPerJournal::Range { min: 2, max: 5 },
            ..cfg(20, 1, 0, false)
        };
        let jg = generate(&c).unwrap().aggregate(SelfLoopPolicy::Keep);
        assert!(jg.article_counts().iter().all(|&n| (2..=5).contains(&n)));
    }

    #[test]
    fn scale_cases() {
        let g = figure();
        assert_eq!(scale_citations(&g, 1), g);
        let jg = scale_citations(&g, 3).aggregate(SelfLoopPolicy::Drop);
        assert_eq!(jg.weight(&j("v1"), &j("v3")), 9);
        assert_eq!(jg.weight(&j("v3"), &j("v2")), 3);
        assert_eq!(jg.weight(&j("v2"), &j("v1")), 3);
        assert_eq!(
            scale_citations(&CitationGraph::new(), 4),
            CitationGraph::new()
        );
    }

    #[test]
    fn split_figure_v1() {
        let split = split_journal(&figure(), &j("v1"), 2, 5).unwrap();
        let jg = split.aggregate(SelfLoopPolicy::Drop);
        assert_eq!(jg.article_count(&j("v1#1")), Ok(3));
        assert_eq!(jg.article_count(&j("v1#2")), Ok(2));
        assert!(jg.index_of(&j("v1")).is_none());
        let into_v3 = jg.weight(&j("v1#1"), &j("v3")) + jg.weight(&j("v1#2"), &j("v3"));
        assert_eq!(into_v3, 3);
        assert_eq!(split.total_citations(), 5);
    }

    #[test]
    fn split_boundaries_and_errors() {
        let g = figure();
        let split = split_journal(&g, &j("v3"), 4, 0).unwrap();
        let jg = split.aggregate(SelfLoopPolicy::Drop);
        for name in part_names(&j("v3"), 4) {
            assert_eq!(jg.article_count(&name), Ok(1));
        }
        assert_eq!(
            split_journal(&g, &j("v3"), 5, 0),
            Err(SynthError::TooFewArticles {
                journal: j("v3"),
                articles: 4,
                parts: 5
            })
        );
        assert_eq!(
            split_journal(&g, &j("nope"), 2, 0),
            Err(SynthError::UnknownJournal(j("nope")))
        );
        let mut lonely = CitationGraph::new();
        lonely.add_article(a("x"), j("solo")).unwrap();
        assert!(matches!(
            split_journal(&lonely, &j("solo"), 2, 0),
            Err(SynthError::TooFewArticles { .. })
        ));
    }

    #[test]
    fn split_then_merge_restores_graph() {
        let g = figure();
        let split = split_journal(&g, &j("v2"), 3, 17).unwrap();
        let merged = merge_journals(&split, &part_names(&j("v2"), 3), &j("v2"));
        assert_eq!(merged, g);
        assert_eq!(
            merged.aggregate(SelfLoopPolicy::Keep),
            g.aggregate(SelfLoopPolicy::Keep)
        );
    }
}
