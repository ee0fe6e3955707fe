//! Seeded synthetic benchmark corpus.
//!
//! Two categories, twenty documents each. Most documents are "normal": their
//! category's core terms appear once in paragraphs 0, 2, 4, and 6 of seven
//! (early first appearance, wide spread) and its extra theme terms in
//! paragraphs 0 and 6. Four documents per category are decoys: they keep a
//! weak copy of their own category's core terms but carry a pair of the
//! *other* category's theme terms repeated eight times in the middle
//! paragraph only.
//!
//! That construction plants exactly the failure mode raw term frequency is
//! vulnerable to: under plain tf·idf the mid-document burst dominates the
//! decoy's vector and pulls it toward the wrong category, while the
//! distributional scheme discounts the burst (late first appearance, zero
//! spread) and boosts the genuine theme terms, classifying the decoy
//! correctly. Filler words appear in every document, so their idf is zero
//! and they never disturb the vectors; every document also carries one
//! unique tag word so no two vectors are equal.
//!
//! The layout is deterministic given the seed; the seed only jitters the
//! cosmetic filler text.

use std::fs;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::Result;

pub const CATEGORIES: [&str; 2] = ["finance", "sport"];
pub const DOCS_PER_CATEGORY: usize = 20;
pub const PARAGRAPHS_PER_DOC: usize = 7;
/// Positions of the decoy documents within each category.
pub const DECOY_INDICES: [usize; 4] = [4, 9, 14, 19];
/// Occurrences of each planted term in a decoy's middle paragraph.
pub const PLANT_REPEATS: usize = 8;
pub const DEFAULT_SEED: u64 = 42;

const CORE: [[&str; 4]; 2] = [
    ["market", "shares", "profit", "broker"],
    ["match", "coach", "stadium", "referee"],
];
const THEME: [[&str; 8]; 2] = [
    ["dividend", "audit", "ledger", "equity", "invoice", "merger", "bond", "tariff"],
    ["league", "goal", "fixture", "squad", "tournament", "striker", "defender", "keeper"],
];
const FILLERS: [&str; 12] = [
    "the", "and", "of", "to", "report", "today", "week", "office", "public", "city", "group", "people",
];

/// One generated file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthDoc {
    pub relative_path: String,
    pub content: String,
}

/// Ids of the decoy documents, the ones a tf·idf classifier is expected to
/// get wrong.
pub fn decoy_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for category in CATEGORIES {
        for index in DECOY_INDICES {
            ids.push(format!("{category}/doc{index:02}.txt"));
        }
    }
    ids.sort();
    ids
}

fn unique_tag(global_index: usize) -> String {
    let hi = (b'a' + (global_index / 26) as u8) as char;
    let lo = (b'a' + (global_index % 26) as u8) as char;
    format!("tag{hi}{lo}")
}

fn sentence(words: &[&str]) -> String {
    let mut text = words.join(" ");
    if let Some(first) = text.get(..1) {
        let upper = first.to_uppercase();
        text.replace_range(..1, &upper);
    }
    text.push('.');
    text
}

fn shuffled<'a>(rng: &mut ChaCha8Rng, mut words: Vec<&'a str>) -> Vec<&'a str> {
    for i in (1..words.len()).rev() {
        let j = rng.random_range(0..=i);
        words.swap(i, j);
    }
    words
}

fn filler_run(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<&'static str> {
    let n = rng.random_range(min..=max);
    (0..n).map(|_| FILLERS[rng.random_range(0..FILLERS.len())]).collect()
}

fn normal_doc(rng: &mut ChaCha8Rng, category: usize, tag: &str) -> String {
    let core = CORE[category];
    let theme = THEME[category];
    let mut paragraphs = Vec::with_capacity(PARAGRAPHS_PER_DOC);

    // Title: tag + every content word once.
    let mut words: Vec<&str> = vec![tag];
    words.extend(core);
    words.extend(theme);
    words.extend(filler_run(rng, 2, 4));
    paragraphs.push(sentence(&shuffled(rng, words)));

    // Every filler at least once, so filler idf stays at zero corpus-wide.
    paragraphs.push(sentence(&shuffled(rng, FILLERS.to_vec())));

    for middle in 0..3 {
        if middle == 1 {
            paragraphs.push(sentence(&filler_run(rng, 4, 7)));
        } else {
            let mut words: Vec<&str> = core.to_vec();
            words.extend(filler_run(rng, 3, 5));
            paragraphs.push(sentence(&shuffled(rng, words)));
        }
    }
    paragraphs.push(sentence(&filler_run(rng, 4, 7)));

    let mut words: Vec<&str> = core.to_vec();
    words.extend(theme);
    words.extend(filler_run(rng, 2, 4));
    paragraphs.push(sentence(&shuffled(rng, words)));

    paragraphs.join("\n\n") + "\n"
}

fn decoy_doc(rng: &mut ChaCha8Rng, category: usize, decoy_number: usize, tag: &str) -> String {
    let core = CORE[category];
    let foreign = THEME[1 - category];
    let planted = [foreign[2 * decoy_number], foreign[2 * decoy_number + 1]];
    let mut paragraphs = Vec::with_capacity(PARAGRAPHS_PER_DOC);

    let mut words: Vec<&str> = vec![tag];
    words.extend(core);
    words.extend(filler_run(rng, 2, 4));
    paragraphs.push(sentence(&shuffled(rng, words)));

    paragraphs.push(sentence(&shuffled(rng, FILLERS.to_vec())));
    paragraphs.push(sentence(&filler_run(rng, 4, 7)));

    // The burst: both planted terms, eight times each, nowhere else.
    let mut words: Vec<&str> = Vec::new();
    for term in planted {
        words.extend(std::iter::repeat_n(term, PLANT_REPEATS));
    }
    words.extend(filler_run(rng, 2, 4));
    paragraphs.push(sentence(&shuffled(rng, words)));

    paragraphs.push(sentence(&filler_run(rng, 4, 7)));
    paragraphs.push(sentence(&filler_run(rng, 4, 7)));

    let mut words: Vec<&str> = core.to_vec();
    words.extend(filler_run(rng, 2, 4));
    paragraphs.push(sentence(&shuffled(rng, words)));

    paragraphs.join("\n\n") + "\n"
}

/// Generate the forty documents, sorted by relative path.
pub fn generate(seed: u64) -> Vec<SynthDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::with_capacity(CATEGORIES.len() * DOCS_PER_CATEGORY);
    for (category_index, category) in CATEGORIES.iter().enumerate() {
        for doc_index in 0..DOCS_PER_CATEGORY {
            let tag = unique_tag(category_index * DOCS_PER_CATEGORY + doc_index);
            let content = match DECOY_INDICES.iter().position(|&d| d == doc_index) {
                Some(decoy_number) => decoy_doc(&mut rng, category_index, decoy_number, &tag),
                None => normal_doc(&mut rng, category_index, &tag),
            };
            docs.push(SynthDoc {
                relative_path: format!("{category}/doc{doc_index:02}.txt"),
                content,
            });
        }
    }
    docs.sort_by(|a, b| a.relative_path.cmp(&b.relative_path));
    docs
}

/// Write the generated corpus under `root`, returning the file count.
pub fn write_corpus(root: &Path, seed: u64) -> Result<usize> {
    let docs = generate(seed);
    for doc in &docs {
        let path = root.join(&doc.relative_path);
        let parent = path.parent().expect("relative paths have a category directory");
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        fs::write(&path, &doc.content).map_err(|e| Error::io(&path, e))?;
    }
    Ok(docs.len())
}
