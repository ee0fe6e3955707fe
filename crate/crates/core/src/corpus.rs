//! Corpus ingestion: paragraph segmentation, tokenization, vocabulary and
//! document-frequency construction.
//!
//! A document is an ordered list of paragraphs, each a list of normalized
//! tokens. Paragraph order is what the positional features in
//! [`crate::features`] are computed from, so ingestion never reorders or
//! drops paragraphs: a paragraph whose tokens are all filtered away stays in
//! the list as an empty slot.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::Result;

/// Tokenizer settings shared by every ingestion path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    /// Tokens to drop, matched after lowercasing.
    pub stopwords: BTreeSet<String>,
    /// Candidates with fewer characters than this are dropped.
    pub min_token_length: usize,
    /// When set, digits terminate a token run instead of extending it.
    pub strip_digits: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            stopwords: BTreeSet::new(),
            min_token_length: 1,
            strip_digits: false,
        }
    }
}

impl TokenizerConfig {
    /// Load stopwords from a file, one word per line. Words are trimmed and
    /// lowercased; blank lines are ignored.
    pub fn load_stopwords(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for line in text.lines() {
            let word = line.trim().to_lowercase();
            if !word.is_empty() {
                self.stopwords.insert(word);
            }
        }
        Ok(())
    }
}

/// One ingested document: ordered paragraphs of tokens plus an optional
/// category label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    /// Raw text of the first paragraph; the first paragraph doubles as the
    /// title and participates in positional features as paragraph 0.
    pub title: Option<String>,
    pub paragraphs: Vec<Vec<String>>,
    pub label: Option<String>,
}

impl Document {
    /// Segment and tokenize raw text. Fails with [`Error::EmptyDocument`]
    /// when no paragraph yields a single token.
    pub fn from_text(id: impl Into<String>, raw_text: &str, config: &TokenizerConfig) -> Result<Document> {
        let id = id.into();
        let raw_paragraphs = segment(raw_text);
        let paragraphs: Vec<Vec<String>> = raw_paragraphs.iter().map(|p| tokenize(p, config)).collect();
        if paragraphs.iter().all(|p| p.is_empty()) {
            return Err(Error::EmptyDocument { id });
        }
        Ok(Document {
            id,
            title: raw_paragraphs.first().cloned(),
            paragraphs,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Document {
        self.label = Some(label.into());
        self
    }

    /// All tokens in document order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.paragraphs.iter().flat_map(|p| p.iter().map(String::as_str))
    }

    /// Distinct terms, sorted.
    pub fn distinct_terms(&self) -> BTreeSet<&str> {
        self.tokens().collect()
    }

    pub fn token_count(&self) -> usize {
        self.paragraphs.iter().map(Vec::len).sum()
    }
}

/// Split raw text into paragraphs: maximal runs of non-blank lines separated
/// by one or more blank lines. Paragraphs are trimmed; empty ones are
/// dropped; order is preserved. Handles `\n`, `\r\n`, and `\r` endings.
pub fn segment(raw_text: &str) -> Vec<String> {
    let normalized = raw_text.replace("\r\n", "\n").replace('\r', "\n");
    let mut paragraphs = Vec::new();
    let mut run: Vec<&str> = Vec::new();
    for line in normalized.lines() {
        if line.trim().is_empty() {
            flush_run(&mut run, &mut paragraphs);
        } else {
            run.push(line);
        }
    }
    flush_run(&mut run, &mut paragraphs);
    paragraphs
}

fn flush_run(run: &mut Vec<&str>, out: &mut Vec<String>) {
    if run.is_empty() {
        return;
    }
    let paragraph = run.join("\n").trim().to_string();
    run.clear();
    if !paragraph.is_empty() {
        out.push(paragraph);
    }
}

/// Tokenize one paragraph. The text is lowercased, then every maximal run of
/// Unicode letters (and digits, unless `strip_digits`) becomes a candidate;
/// candidates shorter than `min_token_length` or listed in `stopwords` are
/// dropped. Order is preserved and duplicates are kept.
pub fn tokenize(paragraph: &str, config: &TokenizerConfig) -> Vec<String> {
    let lowered = paragraph.to_lowercase();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in lowered.chars() {
        let keep = ch.is_alphabetic() || (!config.strip_digits && ch.is_numeric());
        if keep {
            current.push(ch);
        } else {
            push_candidate(&mut current, config, &mut tokens);
        }
    }
    push_candidate(&mut current, config, &mut tokens);
    tokens
}

fn push_candidate(current: &mut String, config: &TokenizerConfig, out: &mut Vec<String>) {
    if current.is_empty() {
        return;
    }
    let candidate = std::mem::take(current);
    if candidate.chars().count() >= config.min_token_length && !config.stopwords.contains(&candidate) {
        out.push(candidate);
    }
}

/// Vocabulary plus the statistics idf needs: document frequencies and the
/// total document count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabStats {
    /// term -> dense index; indices are exactly `0..vocabulary.len()` in
    /// lexicographic term order.
    pub vocabulary: BTreeMap<String, usize>,
    /// term -> number of distinct documents containing it.
    pub doc_frequency: BTreeMap<String, usize>,
    pub num_documents: usize,
}

impl VocabStats {
    pub fn len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocabulary.is_empty()
    }

    /// Terms in index order.
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.vocabulary.keys().map(String::as_str)
    }
}

/// Build the dense vocabulary and document frequencies for a document set.
/// Terms are sorted lexicographically and indexed from 0.
pub fn build_vocabulary(documents: &[Document]) -> Result<(BTreeMap<String, usize>, BTreeMap<String, usize>)> {
    if documents.is_empty() {
        return Err(Error::EmptyDocumentList);
    }
    let mut doc_frequency: BTreeMap<String, usize> = BTreeMap::new();
    for doc in documents {
        for term in doc.distinct_terms() {
            *doc_frequency.entry(term.to_string()).or_insert(0) += 1;
        }
    }
    let vocabulary = doc_frequency
        .keys()
        .enumerate()
        .map(|(index, term)| (term.clone(), index))
        .collect();
    Ok((vocabulary, doc_frequency))
}

/// A set of documents with its vocabulary and document frequencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub stats: VocabStats,
}

impl Corpus {
    pub fn from_documents(documents: Vec<Document>) -> Result<Corpus> {
        let (vocabulary, doc_frequency) = build_vocabulary(&documents)?;
        let stats = VocabStats {
            vocabulary,
            doc_frequency,
            num_documents: documents.len(),
        };
        Ok(Corpus { documents, stats })
    }

    pub fn num_documents(&self) -> usize {
        self.documents.len()
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    /// Distinct labels, sorted.
    pub fn labels(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.documents.iter().filter_map(|d| d.label.as_deref()).collect();
        set.into_iter().collect()
    }
}

/// A file skipped during ingestion, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFile {
    pub path: String,
    pub reason: String,
}

/// Result of [`load_corpus`]: the corpus plus any files that were skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLoad {
    pub corpus: Corpus,
    pub skipped: Vec<SkippedFile>,
}

/// Load a corpus from a directory tree laid out as
/// `<root>/<category>/<file>`, one UTF-8 plain-text file per document.
///
/// The subdirectory name becomes the label, the relative path the id, and
/// the first paragraph the title. Documents are ordered lexicographically by
/// relative path, so two loads of the same tree produce identical corpora.
/// Files that tokenize to zero tokens are skipped, not fatal.
pub fn load_corpus(root: &Path, config: &TokenizerConfig) -> Result<CorpusLoad> {
    let mut categories: Vec<(String, std::path::PathBuf)> = Vec::new();
    let entries = fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        let path = entry.path();
        if path.is_dir() {
            categories.push((entry.file_name().to_string_lossy().into_owned(), path));
        }
    }
    categories.sort();

    let mut files: Vec<(String, String, std::path::PathBuf)> = Vec::new();
    for (label, dir) in &categories {
        let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(dir, e))?;
            let path = entry.path();
            if path.is_file() {
                let id = format!("{label}/{}", entry.file_name().to_string_lossy());
                files.push((id, label.clone(), path));
            }
        }
    }
    files.sort();

    let mut documents = Vec::new();
    let mut skipped = Vec::new();
    for (id, label, path) in files {
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        match Document::from_text(id, &text, config) {
            Ok(doc) => documents.push(doc.with_label(label)),
            Err(Error::EmptyDocument { id }) => skipped.push(SkippedFile {
                path: id,
                reason: "no tokens after filtering".to_string(),
            }),
            Err(other) => return Err(other),
        }
    }
    if documents.is_empty() {
        return Err(Error::NoDocuments {
            root: root.display().to_string(),
        });
    }
    let corpus = Corpus::from_documents(documents)?;
    Ok(CorpusLoad { corpus, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;
    use tempfile::TempDir;

    fn config() -> TokenizerConfig {
        TokenizerConfig::default()
    }

    /// Independent document-frequency oracle: one pass over raw token lists.
    fn df_oracle(documents: &[Document]) -> BTreeMap<String, usize> {
        let mut df = BTreeMap::new();
        for doc in documents {
            let mut seen = BTreeSet::new();
            for para in &doc.paragraphs {
                for tok in para {
                    if seen.insert(tok.clone()) {
                        *df.entry(tok.clone()).or_insert(0usize) += 1;
                    }
                }
            }
        }
        df
    }

    pub(crate) fn gates_text() -> String {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus/business/gates.txt");
        fs::read_to_string(path).expect("gates fixture")
    }

    #[test]
    fn segment_blank_line_rule() {
        assert_eq!(segment("a\n\nb\nc\n\n\nd"), vec!["a", "b\nc", "d"]);
    }

    #[test]
    fn segment_empty_input() {
        assert_eq!(segment(""), Vec::<String>::new());
        assert_eq!(segment("\n\n  \n"), Vec::<String>::new());
    }

    #[test]
    fn segment_handles_crlf_and_cr() {
        assert_eq!(segment("a\r\n\r\nb"), vec!["a", "b"]);
        assert_eq!(segment("a\r\rb"), vec!["a", "b"]);
    }

    #[test]
    fn segment_trims_paragraphs() {
        assert_eq!(segment("  a  \n\n\tb\t"), vec!["a", "b"]);
    }

    #[test]
    fn segment_gates_fixture_has_seven_paragraphs() {
        assert_eq!(segment(&gates_text()).len(), 7);
    }

    #[test]
    fn tokenize_lowercases_and_splits() {
        assert_eq!(
            tokenize("Bill Gates attends a session", &config()),
            vec!["bill", "gates", "attends", "a", "session"]
        );
    }

    #[test]
    fn tokenize_digit_handling() {
        let mut cfg = config();
        cfg.strip_digits = true;
        assert_eq!(
            tokenize("Gates' fortune at $53 billion", &cfg),
            vec!["gates", "fortune", "at", "billion"]
        );
        assert_eq!(
            tokenize("Gates' fortune at $53 billion", &config()),
            vec!["gates", "fortune", "at", "53", "billion"]
        );
    }

    #[test]
    fn tokenize_stopwords_filter_everything() {
        let mut cfg = config();
        cfg.stopwords.insert("the".to_string());
        assert_eq!(tokenize("the the the", &cfg), Vec::<String>::new());
    }

    #[test]
    fn tokenize_min_length() {
        let mut cfg = config();
        cfg.min_token_length = 3;
        assert_eq!(tokenize("we are not amused", &cfg), vec!["are", "not", "amused"]);
        cfg.min_token_length = 4;
        assert_eq!(tokenize("we are not amused", &cfg), vec!["amused"]);
    }

    #[test]
    fn tokenize_apostrophes_and_hyphens_split() {
        assert_eq!(tokenize("world's best-known", &config()), vec!["world", "s", "best", "known"]);
    }

    #[test]
    fn document_keeps_empty_paragraph_slots() {
        let mut cfg = config();
        cfg.stopwords.insert("skip".to_string());
        let doc = Document::from_text("d", "keep\n\nskip\n\nkeep", &cfg).unwrap();
        assert_eq!(doc.paragraphs.len(), 3);
        assert!(doc.paragraphs[1].is_empty());
    }

    #[test]
    fn document_with_no_tokens_rejected() {
        let mut cfg = config();
        cfg.stopwords.insert("skip".to_string());
        let err = Document::from_text("d", "skip\n\nskip", &cfg).unwrap_err();
        assert!(matches!(err, Error::EmptyDocument { .. }));
    }

    #[test]
    fn build_vocabulary_sorts_and_counts() {
        let a = Document {
            id: "1".into(),
            title: None,
            paragraphs: vec![vec!["b".into(), "a".into()]],
            label: None,
        };
        let b = Document {
            id: "2".into(),
            title: None,
            paragraphs: vec![vec!["a".into()]],
            label: None,
        };
        let (vocab, df) = build_vocabulary(&[a, b]).unwrap();
        assert_eq!(vocab.get("a"), Some(&0));
        assert_eq!(vocab.get("b"), Some(&1));
        assert_eq!(df.get("a"), Some(&2));
        assert_eq!(df.get("b"), Some(&1));
    }

    #[test]
    fn df_counts_documents_not_occurrences() {
        let doc = Document {
            id: "1".into(),
            title: None,
            paragraphs: vec![vec!["x".into(), "x".into(), "x".into()]],
            label: None,
        };
        let (_, df) = build_vocabulary(&[doc]).unwrap();
        assert_eq!(df.get("x"), Some(&1));
    }

    #[test]
    fn build_vocabulary_rejects_empty_list() {
        assert!(matches!(build_vocabulary(&[]), Err(Error::EmptyDocumentList)));
    }

    fn write_tree(root: &Path, files: &[(&str, &str)]) {
        for (rel, content) in files {
            let path = root.join(rel);
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(path, content).unwrap();
        }
    }

    #[test]
    fn load_corpus_counts_and_labels() {
        let dir = TempDir::new().unwrap();
        write_tree(
            dir.path(),
            &[
                ("a/one.txt", "alpha text"),
                ("a/two.txt", "more alpha"),
                ("b/one.txt", "beta text"),
                ("b/two.txt", "beta again"),
                ("b/three.txt", "third beta"),
            ],
        );
        let load = load_corpus(dir.path(), &config()).unwrap();
        assert_eq!(load.corpus.num_documents(), 5);
        let labels: Vec<_> = load.corpus.documents.iter().map(|d| d.label.clone().unwrap()).collect();
        assert_eq!(labels, vec!["a", "a", "b", "b", "b"]);
        assert!(load.skipped.is_empty());
    }

    #[test]
    fn load_corpus_document_frequency() {
        let dir = TempDir::new().unwrap();
        write_tree(dir.path(), &[("a/x.txt", "gates opened"), ("b/y.txt", "gates closed")]);
        let load = load_corpus(dir.path(), &config()).unwrap();
        assert_eq!(load.corpus.stats.doc_frequency.get("gates"), Some(&2));
    }

    #[test]
    fn load_corpus_is_deterministic() {
        let dir = TempDir::new().unwrap();
        write_tree(
            dir.path(),
            &[("b/z.txt", "zed words"), ("a/m.txt", "mid words"), ("a/a.txt", "first words")],
        );
        let first = load_corpus(dir.path(), &config()).unwrap();
        let second = load_corpus(dir.path(), &config()).unwrap();
        assert_eq!(first.corpus, second.corpus);
        let ids: Vec<_> = first.corpus.documents.iter().map(|d| d.id.clone()).collect();
        assert_eq!(ids, vec!["a/a.txt", "a/m.txt", "b/z.txt"]);
    }

    #[test]
    fn load_corpus_skips_empty_files() {
        let dir = TempDir::new().unwrap();
        write_tree(dir.path(), &[("a/ok.txt", "real content"), ("a/empty.txt", "\n\n")]);
        let load = load_corpus(dir.path(), &config()).unwrap();
        assert_eq!(load.corpus.num_documents(), 1);
        assert_eq!(load.skipped.len(), 1);
        assert_eq!(load.skipped[0].path, "a/empty.txt");
    }

    #[test]
    fn load_corpus_unreadable_root_names_path() {
        let err = load_corpus(Path::new("/definitely/not/here"), &config()).unwrap_err();
        match err {
            Error::Io { path, .. } => assert!(path.contains("definitely")),
            other => panic!("expected Io error, got {other:?}"),
        }
    }

    #[test]
    fn gates_fixture_vocabulary() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus");
        let load = load_corpus(Path::new(path), &config()).unwrap();
        assert_eq!(load.corpus.num_documents(), 2);
        assert_eq!(load.corpus.stats.doc_frequency.get("gates"), Some(&1));
    }

    #[test]
    fn gates_fixture_df_matches_counting_oracle() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus");
        let load = load_corpus(Path::new(path), &config()).unwrap();
        assert_eq!(load.corpus.stats.doc_frequency, df_oracle(&load.corpus.documents));
    }

    #[test]
    fn vocabulary_indices_are_dense_and_sorted() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus");
        let load = load_corpus(Path::new(path), &config()).unwrap();
        let vocab = &load.corpus.stats.vocabulary;
        let mut indices: Vec<usize> = vocab.values().copied().collect();
        indices.sort_unstable();
        assert_eq!(indices, (0..vocab.len()).collect::<Vec<_>>());
        for (term, index) in vocab {
            assert_eq!(load.corpus.stats.vocabulary.keys().nth(*index).unwrap(), term);
        }
    }
}
