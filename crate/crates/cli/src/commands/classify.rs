//! `textcat classify` — classify a document with a saved model.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use std::collections::BTreeMap;
use textcat_core::model_io::ModelFile;

use crate::output::{csv_row, fmt6, full, render_table};
use crate::settings::{OutputFormat, Settings};

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Saved model file.
    pub model: PathBuf,
    /// Document to classify.
    pub document: PathBuf,
    /// Neighbors to consult; defaults to the model's stored k.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    document: String,
    model_kind: String,
    records: usize,
    k: usize,
    predicted: String,
    scores: BTreeMap<String, f64>,
    neighbors: Vec<String>,
}

pub fn run(settings: &Settings, args: &ClassifyArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.model).with_context(|| format!("reading {}", args.model.display()))?;
    let model = ModelFile::parse(&text).with_context(|| format!("loading model {}", args.model.display()))?;

    let raw = std::fs::read_to_string(&args.document).with_context(|| format!("reading {}", args.document.display()))?;
    let query = model.vectorize_text(&args.document.display().to_string(), &raw)?;

    let classifier = model.classifier();
    let k = args.k.unwrap_or_else(|| classifier.k_default());
    let prediction = classifier.classify(&query, k)?;

    let report = ClassifyReport {
        document: args.document.display().to_string(),
        model_kind: classifier.kind().to_string(),
        records: classifier.len(),
        k,
        predicted: prediction.label,
        scores: prediction.score_by_label,
        neighbors: prediction.neighbor_ids,
    };
    match settings.format {
        OutputFormat::Table => {
            println!("document: {}", report.document);
            println!("model: {} ({} records)", report.model_kind, report.records);
            println!("k: {}", report.k);
            println!("predicted: {}", report.predicted);
            println!();
            let mut table = vec![vec!["label".to_string(), "score".to_string()]];
            for (label, score) in &report.scores {
                table.push(vec![label.clone(), fmt6(*score)]);
            }
            print!("{}", render_table(&table));
            println!();
            let mut table = vec![vec!["rank".to_string(), "neighbor".to_string()]];
            for (i, id) in report.neighbors.iter().enumerate() {
                table.push(vec![(i + 1).to_string(), id.clone()]);
            }
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("document,predicted,label,score");
            for (label, score) in &report.scores {
                println!(
                    "{}",
                    csv_row(&[report.document.clone(), report.predicted.clone(), label.clone(), full(*score)])
                );
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}
