//! `textcat train` — vectorize a corpus and persist a kNN model.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use textcat_core::features::vectorize;
use textcat_core::knn::{self, CompressionConfig};
use textcat_core::model_io::{ModelFile, StoredModel};

use crate::commands::load_corpus_reporting;
use crate::output::{csv_row, render_table};
use crate::settings::{OutputFormat, Settings, VoteArg};

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Corpus root: one subdirectory per category.
    pub corpus: PathBuf,
    /// Where to write the model file.
    #[arg(long, value_name = "PATH")]
    pub model: PathBuf,
    /// Neighbors consulted at classification time.
    #[arg(long)]
    pub k: Option<usize>,
    /// Vote mode for plain kNN.
    #[arg(long, value_enum)]
    pub vote: Option<VoteArg>,
    /// Compress the training set to per-category cluster centers.
    #[arg(long)]
    pub compress: bool,
    #[arg(long)]
    pub clusters_per_category: Option<usize>,
    /// Skip the border-sample deletion pass before clustering.
    #[arg(long)]
    pub no_border_deletion: bool,
}

#[derive(Debug, Serialize)]
struct TrainReport {
    model: String,
    kind: String,
    records: usize,
    categories: usize,
    vocabulary: usize,
    scheme: String,
    k: usize,
}

pub fn run(settings: &Settings, args: &TrainArgs) -> Result<()> {
    let corpus = load_corpus_reporting(&args.corpus, &settings.tokenizer)?;
    let k = args.k.unwrap_or(settings.k);

    let mut samples = Vec::new();
    for document in &corpus.documents {
        let label = document
            .label
            .clone()
            .unwrap_or_else(|| "unlabeled".to_string());
        samples.push((vectorize(document, &corpus.stats, &settings.params)?, label));
    }
    let mut model = knn::train(samples, k)?;
    model.vote = args.vote.map(Into::into).unwrap_or(settings.vote);

    let compress = args.compress || settings.compress;
    let stored = if compress {
        let mut config = CompressionConfig::new(
            args.clusters_per_category.unwrap_or(settings.clusters_per_category),
            settings.seed,
        );
        config.border_deletion = settings.border_deletion && !args.no_border_deletion;
        StoredModel::Compressed(knn::compress(&model, &config)?)
    } else {
        StoredModel::Plain(model)
    };

    let file = ModelFile {
        model: stored,
        params: settings.params.clone(),
        tokenizer: settings.tokenizer.clone(),
        vocab: corpus.stats.clone(),
    };
    let rendered = file.render()?;
    std::fs::write(&args.model, rendered).with_context(|| format!("writing {}", args.model.display()))?;

    let report = TrainReport {
        model: args.model.display().to_string(),
        kind: file.classifier().kind().to_string(),
        records: file.classifier().len(),
        categories: corpus.labels().len(),
        vocabulary: corpus.stats.len(),
        scheme: settings.params.describe(),
        k: file.classifier().k_default(),
    };
    match settings.format {
        OutputFormat::Table => {
            let table = vec![
                vec!["model".to_string(), report.model.clone()],
                vec!["kind".to_string(), report.kind.clone()],
                vec!["records".to_string(), report.records.to_string()],
                vec!["categories".to_string(), report.categories.to_string()],
                vec!["vocabulary".to_string(), report.vocabulary.to_string()],
                vec!["scheme".to_string(), report.scheme.clone()],
                vec!["k".to_string(), report.k.to_string()],
            ];
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("model,kind,records,categories,vocabulary,scheme,k");
            println!(
                "{}",
                csv_row(&[
                    report.model.clone(),
                    report.kind.clone(),
                    report.records.to_string(),
                    report.categories.to_string(),
                    report.vocabulary.to_string(),
                    report.scheme.clone(),
                    report.k.to_string(),
                ])
            );
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}
