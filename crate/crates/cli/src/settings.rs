//! Configuration resolution: defaults, then the optional key-value config
//! file, then command-line flags, later layers winning.
//!
//! The config file is plain `key = value` lines; blank lines and `#`
//! comments are ignored. Recognized keys:
//!
//! ```text
//! stopwords_file        path, one stopword per line
//! min_token_length      integer
//! strip_digits          true | false
//! scheme                tfidf | distributional
//! alpha                 number
//! beta                  number
//! k                     integer (neighbors, or clusters for `cluster`)
//! vote                  majority | weighted
//! compress              true | false
//! clusters_per_category integer
//! border_deletion       true | false
//! max_iterations        integer
//! tolerance             number
//! kmeans_init           random | farthest-first
//! format                table | csv | json
//! seed                  integer
//! ratio                 number in (0, 1)
//! bins                  integer
//! corpus_root           path
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use textcat_core::corpus::TokenizerConfig;
use textcat_core::kmeans::InitMethod;
use textcat_core::knn::VoteMode;
use textcat_core::weighting::{default_registry, WeightingParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VoteArg {
    Majority,
    Weighted,
}

impl From<VoteArg> for VoteMode {
    fn from(arg: VoteArg) -> VoteMode {
        match arg {
            VoteArg::Majority => VoteMode::Majority,
            VoteArg::Weighted => VoteMode::SimilarityWeighted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Random,
    FarthestFirst,
}

impl From<InitArg> for InitMethod {
    fn from(arg: InitArg) -> InitMethod {
        match arg {
            InitArg::Random => InitMethod::RandomIndices,
            InitArg::FarthestFirst => InitMethod::FarthestFirst,
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct Settings {
    pub tokenizer: TokenizerConfig,
    pub params: WeightingParams,
    pub k: usize,
    pub vote: VoteMode,
    pub compress: bool,
    pub clusters_per_category: usize,
    pub border_deletion: bool,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub kmeans_init: InitMethod,
    pub format: OutputFormat,
    pub seed: u64,
    pub ratio: f64,
    pub bins: usize,
    pub corpus_root: Option<PathBuf>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tokenizer: TokenizerConfig::default(),
            params: WeightingParams::default(),
            k: 3,
            vote: VoteMode::Majority,
            compress: false,
            clusters_per_category: 3,
            border_deletion: true,
            max_iterations: 100,
            tolerance: 1e-9,
            kmeans_init: InitMethod::RandomIndices,
            format: OutputFormat::Table,
            seed: 42,
            ratio: 0.5,
            bins: 10,
            corpus_root: None,
        }
    }
}

/// Global flags that override config-file values.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub scheme: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub stopwords: Option<PathBuf>,
    pub min_token_length: Option<usize>,
    pub strip_digits: Option<bool>,
}

const KNOWN_KEYS: [&str; 19] = [
    "stopwords_file",
    "min_token_length",
    "strip_digits",
    "scheme",
    "alpha",
    "beta",
    "k",
    "vote",
    "compress",
    "clusters_per_category",
    "border_deletion",
    "max_iterations",
    "tolerance",
    "kmeans_init",
    "format",
    "seed",
    "ratio",
    "bins",
    "corpus_root",
];

/// Parse `key = value` lines.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected \"key = value\", found {raw:?}", number + 1);
        };
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            bail!("config line {}: unknown key {key:?} (known: {})", number + 1, KNOWN_KEYS.join(", "));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parsed<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(value) => value
            .parse()
            .map(Some)
            .map_err(|_| anyhow::anyhow!("config key {key}: bad value {value:?}")),
    }
}

/// Build settings from the optional config file plus global flag overrides.
pub fn resolve(config_path: Option<&Path>, overrides: &Overrides) -> Result<Settings> {
    let mut settings = Settings::default();
    let file = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };

    if let Some(v) = parsed::<usize>(&file, "min_token_length")? {
        settings.tokenizer.min_token_length = v;
    }
    if let Some(v) = parsed::<bool>(&file, "strip_digits")? {
        settings.tokenizer.strip_digits = v;
    }
    if let Some(v) = file.get("scheme") {
        settings.params.scheme = v.clone();
    }
    if let Some(v) = parsed::<f64>(&file, "alpha")? {
        settings.params.alpha = v;
    }
    if let Some(v) = parsed::<f64>(&file, "beta")? {
        settings.params.beta = v;
    }
    if let Some(v) = parsed::<usize>(&file, "k")? {
        settings.k = v;
    }
    if let Some(v) = file.get("vote") {
        settings.vote = match v.as_str() {
            "majority" => VoteMode::Majority,
            "weighted" => VoteMode::SimilarityWeighted,
            other => bail!("config key vote: expected majority or weighted, found {other:?}"),
        };
    }
    if let Some(v) = parsed::<bool>(&file, "compress")? {
        settings.compress = v;
    }
    if let Some(v) = parsed::<usize>(&file, "clusters_per_category")? {
        settings.clusters_per_category = v;
    }
    if let Some(v) = parsed::<bool>(&file, "border_deletion")? {
        settings.border_deletion = v;
    }
    if let Some(v) = parsed::<usize>(&file, "max_iterations")? {
        settings.max_iterations = v;
    }
    if let Some(v) = parsed::<f64>(&file, "tolerance")? {
        settings.tolerance = v;
    }
    if let Some(v) = file.get("kmeans_init") {
        settings.kmeans_init = match v.as_str() {
            "random" => InitMethod::RandomIndices,
            "farthest-first" => InitMethod::FarthestFirst,
            other => bail!("config key kmeans_init: expected random or farthest-first, found {other:?}"),
        };
    }
    if let Some(v) = file.get("format") {
        settings.format = match v.as_str() {
            "table" => OutputFormat::Table,
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => bail!("config key format: expected table, csv, or json, found {other:?}"),
        };
    }
    if let Some(v) = parsed::<u64>(&file, "seed")? {
        settings.seed = v;
    }
    if let Some(v) = parsed::<f64>(&file, "ratio")? {
        settings.ratio = v;
    }
    if let Some(v) = parsed::<usize>(&file, "bins")? {
        settings.bins = v;
    }
    if let Some(v) = file.get("corpus_root") {
        settings.corpus_root = Some(PathBuf::from(v));
    }

    // Stopwords: file key first, then the flag (which adds to the set).
    if let Some(path) = file.get("stopwords_file") {
        settings
            .tokenizer
            .load_stopwords(Path::new(path))
            .with_context(|| format!("loading stopwords from {path}"))?;
    }
    if let Some(path) = &overrides.stopwords {
        settings
            .tokenizer
            .load_stopwords(path)
            .with_context(|| format!("loading stopwords from {}", path.display()))?;
    }

    if let Some(v) = &overrides.scheme {
        settings.params.scheme = v.clone();
    }
    if let Some(v) = overrides.alpha {
        settings.params.alpha = v;
    }
    if let Some(v) = overrides.beta {
        settings.params.beta = v;
    }
    if let Some(v) = overrides.format {
        settings.format = v;
    }
    if let Some(v) = overrides.seed {
        settings.seed = v;
    }
    if let Some(v) = overrides.min_token_length {
        settings.tokenizer.min_token_length = v;
    }
    if let Some(v) = overrides.strip_digits {
        settings.tokenizer.strip_digits = v;
    }

    // Fail early on unknown scheme names.
    default_registry().resolve(&settings.params.scheme)?;
    Ok(settings)
}
