//! Subcommand implementations.

pub mod classify;
pub mod cluster;
pub mod evaluate;
pub mod gen_fixture;
pub mod histogram;
pub mod stats;
pub mod train;

use std::path::Path;

use anyhow::{Context, Result};
use textcat_core::corpus::{load_corpus, Corpus, Document, TokenizerConfig};

/// Load a corpus tree, reporting skipped files on the diagnostic stream.
pub fn load_corpus_reporting(root: &Path, tokenizer: &TokenizerConfig) -> Result<Corpus> {
    let load = load_corpus(root, tokenizer).with_context(|| format!("loading corpus from {}", root.display()))?;
    for skipped in &load.skipped {
        eprintln!("warning: skipped {}: {}", skipped.path, skipped.reason);
    }
    Ok(load.corpus)
}

/// Read and tokenize a single document file. The id is the path as given.
pub fn read_document(path: &Path, tokenizer: &TokenizerConfig) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Document::from_text(path.display().to_string(), &text, tokenizer)?)
}
