//! Versioned, line-oriented model persistence.
//!
//! A saved model is self-contained: it carries the weighting scheme and
//! parameters, the tokenizer settings, the vocabulary with document
//! frequencies (so queries can be vectorized exactly as at training time),
//! and one record per stored sample or prototype. Numbers are written in
//! Rust's shortest round-trip form, so `parse(render(m))` reproduces `m`
//! bit for bit and `render(parse(s))` reproduces `s` byte for byte.
//!
//! Layout (`v1`):
//!
//! ```text
//! textcat-model v1
//! kind plain                    # or: compressed
//! scheme distributional
//! alpha 1
//! beta 1
//! k 3
//! vote majority                 # or: weighted
//! min-token-length 1
//! strip-digits false
//! stopwords <count>             # then one stopword per line
//! documents <N>                 # corpus size backing idf
//! vocabulary <V>                # then V lines: "<term> <df>", line i = index i
//! records <S>                   # then S tab-separated records:
//! <label>\t<id>\t<weight>\t<index>:<weight> <index>:<weight> ...
//! ```

use std::collections::BTreeMap;

use crate::corpus::{Document, TokenizerConfig, VocabStats};
use crate::error::Error;
use crate::features::{vectorize, FeatureVector};
use crate::knn::{Classifier, CompressedKnnModel, KnnModel, Prototype, VoteMode};
use crate::weighting::WeightingParams;
use crate::Result;

const MAGIC: &str = "textcat-model v1";

/// The two persistable model kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum StoredModel {
    Plain(KnnModel),
    Compressed(CompressedKnnModel),
}

/// A trained model together with everything needed to vectorize queries.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: StoredModel,
    pub params: WeightingParams,
    pub tokenizer: TokenizerConfig,
    pub vocab: VocabStats,
}

impl ModelFile {
    pub fn classifier(&self) -> &dyn Classifier {
        match &self.model {
            StoredModel::Plain(m) => m,
            StoredModel::Compressed(m) => m,
        }
    }

    /// Tokenize and vectorize raw text exactly as training did.
    pub fn vectorize_text(&self, id: &str, raw_text: &str) -> Result<FeatureVector> {
        let document = Document::from_text(id, raw_text, &self.tokenizer)?;
        vectorize(&document, &self.vocab, &self.params)
    }

    /// Serialize to the documented line format.
    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        let (kind, k_default, vote) = match &self.model {
            StoredModel::Plain(m) => ("plain", m.k_default, m.vote),
            StoredModel::Compressed(m) => ("compressed", m.k_default, VoteMode::Majority),
        };
        out.push_str(&format!("kind {kind}\n"));
        out.push_str(&format!("scheme {}\n", self.params.scheme));
        out.push_str(&format!("alpha {}\n", self.params.alpha));
        out.push_str(&format!("beta {}\n", self.params.beta));
        out.push_str(&format!("k {k_default}\n"));
        out.push_str(&format!(
            "vote {}\n",
            match vote {
                VoteMode::Majority => "majority",
                VoteMode::SimilarityWeighted => "weighted",
            }
        ));
        out.push_str(&format!("min-token-length {}\n", self.tokenizer.min_token_length));
        out.push_str(&format!("strip-digits {}\n", self.tokenizer.strip_digits));
        out.push_str(&format!("stopwords {}\n", self.tokenizer.stopwords.len()));
        for word in &self.tokenizer.stopwords {
            out.push_str(word);
            out.push('\n');
        }
        out.push_str(&format!("documents {}\n", self.vocab.num_documents));
        out.push_str(&format!("vocabulary {}\n", self.vocab.vocabulary.len()));
        // Line order encodes the index, so write terms by index.
        let mut terms: Vec<(&str, usize)> = self.vocab.vocabulary.iter().map(|(t, &i)| (t.as_str(), i)).collect();
        terms.sort_by_key(|&(_, index)| index);
        for (term, _) in terms {
            let df = self.vocab.doc_frequency.get(term).copied().unwrap_or(0);
            out.push_str(&format!("{term} {df}\n"));
        }
        match &self.model {
            StoredModel::Plain(m) => {
                out.push_str(&format!("records {}\n", m.samples.len()));
                for (vector, label) in &m.samples {
                    push_record(&mut out, label, &vector.source_document_id, 1.0, &vector.entries)?;
                }
            }
            StoredModel::Compressed(m) => {
                out.push_str(&format!("records {}\n", m.prototypes.len()));
                for p in &m.prototypes {
                    push_record(&mut out, &p.label, &p.vector.source_document_id, p.weight, &p.vector.entries)?;
                }
            }
        }
        Ok(out)
    }

    /// Parse the documented line format. Errors carry the offending line
    /// number and, for header mismatches, the expected version.
    pub fn parse(text: &str) -> Result<ModelFile> {
        let mut lines = Lines::new(text);
        let magic = lines.next_line()?;
        if magic != MAGIC {
            return Err(lines.error(format!("expected header {MAGIC:?}, found {magic:?}")));
        }
        let kind = lines.keyed("kind")?;
        if kind != "plain" && kind != "compressed" {
            return Err(lines.error(format!("unknown model kind {kind:?}")));
        }
        let scheme = lines.keyed("scheme")?;
        let alpha: f64 = lines.parse_keyed("alpha")?;
        let beta: f64 = lines.parse_keyed("beta")?;
        let k_default: usize = lines.parse_keyed("k")?;
        let vote = match lines.keyed("vote")?.as_str() {
            "majority" => VoteMode::Majority,
            "weighted" => VoteMode::SimilarityWeighted,
            other => return Err(lines.error(format!("unknown vote mode {other:?}"))),
        };
        let min_token_length: usize = lines.parse_keyed("min-token-length")?;
        let strip_digits: bool = lines.parse_keyed("strip-digits")?;
        let stopword_count: usize = lines.parse_keyed("stopwords")?;
        let mut stopwords = std::collections::BTreeSet::new();
        for _ in 0..stopword_count {
            stopwords.insert(lines.next_line()?.to_string());
        }
        let num_documents: usize = lines.parse_keyed("documents")?;
        let vocab_size: usize = lines.parse_keyed("vocabulary")?;
        let mut vocabulary = BTreeMap::new();
        let mut doc_frequency = BTreeMap::new();
        for index in 0..vocab_size {
            let line = lines.next_line()?;
            let (term, df) = line
                .rsplit_once(' ')
                .ok_or_else(|| lines.error("expected \"<term> <df>\""))?;
            let df: usize = df
                .parse()
                .map_err(|_| lines.error(format!("bad document frequency {df:?}")))?;
            vocabulary.insert(term.to_string(), index);
            doc_frequency.insert(term.to_string(), df);
        }
        let record_count: usize = lines.parse_keyed("records")?;
        let mut records = Vec::with_capacity(record_count);
        for _ in 0..record_count {
            let line = lines.next_line()?;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(lines.error(format!("expected 4 tab-separated fields, found {}", fields.len())));
            }
            let weight: f64 = fields[2]
                .parse()
                .map_err(|_| lines.error(format!("bad record weight {:?}", fields[2])))?;
            let mut vector = FeatureVector::new(fields[1]);
            if !fields[3].is_empty() {
                for pair in fields[3].split(' ') {
                    let (index, value) = pair
                        .split_once(':')
                        .ok_or_else(|| lines.error(format!("bad entry {pair:?}")))?;
                    let index: usize = index.parse().map_err(|_| lines.error(format!("bad index {index:?}")))?;
                    if index >= vocab_size {
                        return Err(lines.error(format!("index {index} outside vocabulary of {vocab_size}")));
                    }
                    let value: f64 = value.parse().map_err(|_| lines.error(format!("bad weight {value:?}")))?;
                    vector.entries.insert(index, value);
                }
            }
            records.push((fields[0].to_string(), weight, vector));
        }

        let model = if kind == "plain" {
            StoredModel::Plain(KnnModel {
                samples: records.into_iter().map(|(label, _, vector)| (vector, label)).collect(),
                k_default,
                vote,
            })
        } else {
            StoredModel::Compressed(CompressedKnnModel {
                prototypes: records
                    .into_iter()
                    .map(|(label, weight, vector)| Prototype {
                        vector,
                        label,
                        weight,
                        cluster_size: weight as usize,
                    })
                    .collect(),
                k_default,
            })
        };
        Ok(ModelFile {
            model,
            params: WeightingParams { scheme, alpha, beta },
            tokenizer: TokenizerConfig {
                stopwords,
                min_token_length,
                strip_digits,
            },
            vocab: VocabStats {
                vocabulary,
                doc_frequency,
                num_documents,
            },
        })
    }
}

fn push_record(out: &mut String, label: &str, id: &str, weight: f64, entries: &BTreeMap<usize, f64>) -> Result<()> {
    for (what, value) in [("label", label), ("id", id)] {
        if value.contains('\t') || value.contains('\n') {
            return Err(Error::InvalidConfig(format!(
                "{what} {value:?} contains a tab or newline and cannot be persisted"
            )));
        }
    }
    out.push_str(label);
    out.push('\t');
    out.push_str(id);
    out.push('\t');
    out.push_str(&format!("{weight}"));
    out.push('\t');
    let mut first = true;
    for (index, value) in entries {
        if !first {
            out.push(' ');
        }
        first = false;
        out.push_str(&format!("{index}:{value}"));
    }
    out.push('\n');
    Ok(())
}

struct Lines<'a> {
    iter: std::str::Lines<'a>,
    number: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines {
            iter: text.lines(),
            number: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::ModelFormat {
            line: self.number,
            message: message.into(),
        }
    }

    fn next_line(&mut self) -> Result<&'a str> {
        self.number += 1;
        self.iter.next().ok_or(Error::ModelFormat {
            line: self.number,
            message: "unexpected end of file".into(),
        })
    }

    fn keyed(&mut self, key: &str) -> Result<String> {
        let line = self.next_line()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.to_string()),
            _ => Err(self.error(format!("expected \"{key} <value>\", found {line:?}"))),
        }
    }

    fn parse_keyed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let value = self.keyed(key)?;
        value
            .parse()
            .map_err(|_| self.error(format!("bad value {value:?} for {key}")))
    }
}
