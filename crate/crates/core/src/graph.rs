use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::ids::{ArticleId, JournalId};

/// Errors raised while building or querying citation and journal graphs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("article {article} is already assigned to journal {existing}, cannot assign it to {requested}")]
    ConflictingMembership {
        article: ArticleId,
        existing: JournalId,
        requested: JournalId,
    },
    #[error("article {0} cites itself")]
    SelfCitation(ArticleId),
    #[error("article {0} has no journal membership")]
    UnknownArticle(ArticleId),
    #[error("unknown journal {0}")]
    UnknownJournal(JournalId),
    #[error("journal {0} declared more than once")]
    DuplicateJournal(JournalId),
}

/// What to do with citations between two articles of the same journal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SelfLoopPolicy {
    /// Count them as a `(j, j)` self-loop.
    Keep,
    /// Discard them.
    #[default]
    Drop,
}

#[derive(Clone)]
struct Article {
    id: ArticleId,
    journal: JournalId,
}

/// Article-level citation multigraph together with the article to journal
/// partition.
///
/// Articles are interned in insertion order; citations are stored as a
/// multiset keyed by interned endpoint pairs. Equality is semantic: two
/// graphs are equal when they declare the same journals, the same
/// memberships and the same citation multiplicities, regardless of the
/// order in which they were built.
#[derive(Clone, Default)]
pub struct CitationGraph {
    journals: BTreeSet<JournalId>,
    articles: Vec<Article>,
    index: BTreeMap<ArticleId, u32>,
    citations: BTreeMap<(u32, u32), u64>,
}

impl CitationGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a journal, which may stay without articles.
    pub fn add_journal(&mut self, journal: JournalId) {
        self.journals.insert(journal);
    }

    /// Assigns `article` to `journal`, declaring the journal if needed.
    ///
    /// Re-adding an existing assignment is a no-op.
    pub fn add_article(
        &mut self,
        article: ArticleId,
        journal: JournalId,
    ) -> Result<(), GraphError> {
        if let Some(&slot) = self.index.get(&article) {
            let existing = &self.articles[slot as usize].journal;
            if *existing == journal {
                return Ok(());
            }
            return Err(GraphError::ConflictingMembership {
                article,
                existing: existing.clone(),
                requested: journal,
            });
        }
        let slot = u32::try_from(self.articles.len()).expect("more than u32::MAX articles");
        self.journals.insert(journal.clone());
        self.index.insert(article.clone(), slot);
        self.articles.push(Article {
            id: article,
            journal,
        });
        Ok(())
    }

    /// Records one citation from `citing` to `cited`.
    pub fn add_citation(
        &mut self,
        citing: &ArticleId,
        cited: &ArticleId,
    ) -> Result<(), GraphError> {
        self.add_citations(citing, cited, 1)
    }

    /// Records `multiplicity` citations from `citing` to `cited` at once.
    pub fn add_citations(
        &mut self,
        citing: &ArticleId,
        cited: &ArticleId,
        multiplicity: u64,
    ) -> Result<(), GraphError> {
        if citing == cited {
            return Err(GraphError::SelfCitation(citing.clone()));
        }
        let from = self.slot(citing)?;
        let to = self.slot(cited)?;
        if multiplicity > 0 {
            *self.citations.entry((from, to)).or_insert(0) += multiplicity;
        }
        Ok(())
    }

    fn slot(&self, article: &ArticleId) -> Result<u32, GraphError> {
        self.index
            .get(article)
            .copied()
            .ok_or_else(|| GraphError::UnknownArticle(article.clone()))
    }

    /// Declared journals in canonical (lexicographic) order.
    pub fn journals(&self) -> impl ExactSizeIterator<Item = &JournalId> + '_ {
        self.journals.iter()
    }

    pub fn journal_count(&self) -> usize {
        self.journals.len()
    }

    pub fn contains_journal(&self, journal: &JournalId) -> bool {
        self.journals.contains(journal)
    }

    pub fn article_count(&self) -> usize {
        self.articles.len()
    }

    pub fn journal_of(&self, article: &ArticleId) -> Option<&JournalId> {
        self.index
            .get(article)
            .map(|&slot| &self.articles[slot as usize].journal)
    }

    /// Memberships in insertion order.
    pub fn memberships(&self) -> impl ExactSizeIterator<Item = (&ArticleId, &JournalId)> + '_ {
        self.articles.iter().map(|a| (&a.id, &a.journal))
    }

    /// Articles of `journal`, sorted by identifier.
    pub fn articles_of(&self, journal: &JournalId) -> Vec<ArticleId> {
        let mut out: Vec<ArticleId> = self
            .articles
            .iter()
            .filter(|a| a.journal == *journal)
            .map(|a| a.id.clone())
            .collect();
        out.sort_unstable();
        out
    }

    /// Distinct citation pairs with their multiplicities, in a deterministic
    /// order that follows article insertion order.
    pub fn citations(&self) -> impl Iterator<Item = (&ArticleId, &ArticleId, u64)> + '_ {
        self.citations.iter().map(|(&(from, to), &count)| {
            (
                &self.articles[from as usize].id,
                &self.articles[to as usize].id,
                count,
            )
        })
    }

    pub fn multiplicity(&self, citing: &ArticleId, cited: &ArticleId) -> u64 {
        match (self.index.get(citing), self.index.get(cited)) {
            (Some(&from), Some(&to)) => self.citations.get(&(from, to)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Total citation count, with multiplicity.
    pub fn total_citations(&self) -> u64 {
        self.citations.values().sum()
    }

    /// Collapses the article graph along the journal partition.
    ///
    /// The weight of `(s, t)` is the number of citations, with multiplicity,
    /// from an article of `s` to an article of `t`. Intra-journal citations
    /// are kept as self-loops or discarded according to `policy`.
    pub fn aggregate(&self, policy: SelfLoopPolicy) -> JournalGraph {
        let journals: Vec<JournalId> = self.journals.iter().cloned().collect();
        let block: Vec<u32> = self
            .articles
            .iter()
            .map(|a| {
                journals
                    .binary_search(&a.journal)
                    .expect("membership journal is declared") as u32
            })
            .collect();

        let mut article_counts = alloc::vec![0u64; journals.len()];
        for &b in &block {
            article_counts[b as usize] += 1;
        }

        let mut pairs: Vec<(u32, u32, u64)> = self
            .citations
            .iter()
            .map(|(&(from, to), &count)| (block[from as usize], block[to as usize], count))
            .filter(|&(s, t, _)| s != t || policy == SelfLoopPolicy::Keep)
            .collect();
        pairs.sort_unstable_by_key(|&(s, t, _)| (s, t));

        let mut weights: Vec<((usize, usize), u64)> = Vec::new();
        for (s, t, count) in pairs {
            let key = (s as usize, t as usize);
            match weights.last_mut() {
                Some((last, w)) if *last == key => *w += count,
                _ => weights.push((key, count)),
            }
        }

        JournalGraph {
            journals,
            article_counts,
            weights: weights.into_iter().collect(),
        }
    }

    /// Rebuilds the graph with every journal renamed through `rename`.
    ///
    /// Several journals may map to the same name, which merges them.
    pub fn map_journals<F>(&self, mut rename: F) -> CitationGraph
    where
        F: FnMut(&JournalId) -> JournalId,
    {
        let mut renamed: BTreeMap<&JournalId, JournalId> = BTreeMap::new();
        for j in &self.journals {
            renamed.insert(j, rename(j));
        }
        CitationGraph {
            journals: renamed.values().cloned().collect(),
            articles: self
                .articles
                .iter()
                .map(|a| Article {
                    id: a.id.clone(),
                    journal: renamed[&a.journal].clone(),
                })
                .collect(),
            index: self.index.clone(),
            citations: self.citations.clone(),
        }
    }

    /// Multiplies every citation multiplicity by `factor`.
    pub(crate) fn scaled(&self, factor: u64) -> CitationGraph {
        let mut out = self.clone();
        for count in out.citations.values_mut() {
            *count *= factor;
        }
        out
    }

    /// Replaces the journal of an already present article, keeping its slot.
    pub(crate) fn reassign(&mut self, article: &ArticleId, journal: JournalId) {
        let slot = self.index[article] as usize;
        self.journals.insert(journal.clone());
        self.articles[slot].journal = journal;
    }

    pub(crate) fn remove_journal_if_empty(&mut self, journal: &JournalId) {
        if !self.articles.iter().any(|a| a.journal == *journal) {
            self.journals.remove(journal);
        }
    }

    fn sorted_memberships(&self) -> Vec<(&ArticleId, &JournalId)> {
        let mut out: Vec<_> = self.memberships().collect();
        out.sort_unstable();
        out
    }

    fn sorted_citations(&self) -> Vec<(&ArticleId, &ArticleId, u64)> {
        let mut out: Vec<_> = self.citations().collect();
        out.sort_unstable();
        out
    }
}

impl PartialEq for CitationGraph {
    fn eq(&self, other: &Self) -> bool {
        self.journals == other.journals
            && self.articles.len() == other.articles.len()
            && self.citations.len() == other.citations.len()
            && self.sorted_memberships() == other.sorted_memberships()
            && self.sorted_citations() == other.sorted_citations()
    }
}

impl Eq for CitationGraph {}

impl fmt::Debug for CitationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CitationGraph")
            .field("journals", &self.journals)
            .field("articles", &self.articles.len())
            .field("citations", &self.total_citations())
            .finish()
    }
}

/// Weighted directed graph over journals, as produced by
/// [`CitationGraph::aggregate`].
///
/// Journals are indexed in lexicographic order of their identifiers. Only
/// positive weights are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JournalGraph {
    journals: Vec<JournalId>,
    article_counts: Vec<u64>,
    weights: BTreeMap<(usize, usize), u64>,
}

impl JournalGraph {
    /// Builds a journal graph directly from journals (with article counts)
    /// and weighted edges. Repeated edges are summed; zero weights are not
    /// stored.
    pub fn from_parts<J, E>(journals: J, edges: E) -> Result<Self, GraphError>
    where
        J: IntoIterator<Item = (JournalId, u64)>,
        E: IntoIterator<Item = (JournalId, JournalId, u64)>,
    {
        let mut declared: BTreeMap<JournalId, u64> = BTreeMap::new();
        for (j, count) in journals {
            if declared.contains_key(&j) {
                return Err(GraphError::DuplicateJournal(j));
            }
            declared.insert(j, count);
        }
        let (journals, article_counts): (Vec<_>, Vec<_>) = declared.into_iter().unzip();
        let mut graph = JournalGraph {
            journals,
            article_counts,
            weights: BTreeMap::new(),
        };
        for (s, t, w) in edges {
            let si = graph.require(&s)?;
            let ti = graph.require(&t)?;
            if w > 0 {
                *graph.weights.entry((si, ti)).or_insert(0) += w;
            }
        }
        Ok(graph)
    }

    pub fn journals(&self) -> &[JournalId] {
        &self.journals
    }

    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }

    pub fn index_of(&self, journal: &JournalId) -> Option<usize> {
        self.journals.binary_search(journal).ok()
    }

    fn require(&self, journal: &JournalId) -> Result<usize, GraphError> {
        self.index_of(journal)
            .ok_or_else(|| GraphError::UnknownJournal(journal.clone()))
    }

    pub fn article_count(&self, journal: &JournalId) -> Result<u64, GraphError> {
        Ok(self.article_counts[self.require(journal)?])
    }

    /// Article counts aligned with [`journals`](Self::journals).
    pub fn article_counts(&self) -> &[u64] {
        &self.article_counts
    }

    /// Weight of `source -> target`, zero when absent or unknown.
    pub fn weight(&self, source: &JournalId, target: &JournalId) -> u64 {
        match (self.index_of(source), self.index_of(target)) {
            (Some(s), Some(t)) => self.weights.get(&(s, t)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Stored edges sorted by `(source, target)`.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&JournalId, &JournalId, u64)> + '_ {
        self.weights
            .iter()
            .map(|(&(s, t), &w)| (&self.journals[s], &self.journals[t], w))
    }

    /// Stored edges as canonical indices.
    pub fn indexed_edges(&self) -> impl ExactSizeIterator<Item = (usize, usize, u64)> + '_ {
        self.weights.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn out_weight(&self, journal: &JournalId) -> Result<u64, GraphError> {
        let s = self.require(journal)?;
        Ok(self
            .weights
            .range((s, 0)..=(s, usize::MAX))
            .map(|(_, &w)| w)
            .sum())
    }

    pub fn in_weight(&self, journal: &JournalId) -> Result<u64, GraphError> {
        let t = self.require(journal)?;
        Ok(self
            .weights
            .iter()
            .filter(|(&(_, target), _)| target == t)
            .map(|(_, &w)| w)
            .sum())
    }

    /// Out-weights of all journals, aligned with [`journals`](Self::journals).
    pub fn out_weights(&self) -> Vec<u64> {
        let mut out = alloc::vec![0u64; self.len()];
        for (&(s, _), &w) in &self.weights {
            out[s] += w;
        }
        out
    }

    /// In-weights of all journals, aligned with [`journals`](Self::journals).
    pub fn in_weights(&self) -> Vec<u64> {
        let mut out = alloc::vec![0u64; self.len()];
        for (&(_, t), &w) in &self.weights {
            out[t] += w;
        }
        out
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Sum of self-loop weights.
    pub fn self_loop_weight(&self) -> u64 {
        self.weights
            .iter()
            .filter(|(&(s, t), _)| s == t)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Copy of the graph with all `(j, j)` entries removed.
    pub fn without_self_loops(&self) -> JournalGraph {
        JournalGraph {
            journals: self.journals.clone(),
            article_counts: self.article_counts.clone(),
            weights: self
                .weights
                .iter()
                .filter(|(&(s, t), _)| s != t)
                .map(|(&k, &w)| (k, w))
                .collect(),
        }
    }
}
