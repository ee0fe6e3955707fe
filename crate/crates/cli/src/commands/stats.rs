//! `textcat stats` — per-term distributional statistics for one document.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;
use textcat_core::corpus::VocabStats;
use textcat_core::features::{document_profiles, idf, weight_from_profile};

use crate::commands::{load_corpus_reporting, read_document};
use crate::output::{csv_row, fmt6, full, render_table};
use crate::settings::{OutputFormat, Settings};

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Document to analyze.
    pub document: PathBuf,
    /// Corpus root supplying idf; without it idf is taken as 1 and the
    /// weight is a within-document score.
    #[arg(long, value_name = "ROOT")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct TermRow {
    pub term: String,
    pub count: usize,
    pub first: f64,
    pub last: f64,
    pub centroid: f64,
    pub compactness: f64,
    pub weight: f64,
}

#[derive(Debug, Serialize)]
struct StatsReport {
    document: String,
    paragraphs: usize,
    distinct_terms: usize,
    scheme: String,
    alpha: f64,
    beta: f64,
    terms: Vec<TermRow>,
}

pub fn term_rows(
    document: &textcat_core::corpus::Document,
    stats: Option<&VocabStats>,
    params: &textcat_core::weighting::WeightingParams,
) -> Result<Vec<TermRow>> {
    let mut rows = Vec::new();
    for profile in document_profiles(document) {
        let idf_value = match stats {
            // Out-of-vocabulary terms score zero: they carry no corpus
            // signal.
            Some(stats) => idf(&profile.term, stats).unwrap_or(0.0),
            None => 1.0,
        };
        let weight = weight_from_profile(&profile, idf_value, params)?;
        rows.push(TermRow {
            term: profile.term.clone(),
            count: profile.count,
            first: profile.first,
            last: profile.last,
            centroid: profile.centroid,
            compactness: profile.normalized_compactness(),
            weight,
        });
    }
    rows.sort_by(|a, b| b.weight.total_cmp(&a.weight).then_with(|| a.term.cmp(&b.term)));
    Ok(rows)
}

pub fn run(settings: &Settings, args: &StatsArgs) -> Result<()> {
    let document = read_document(&args.document, &settings.tokenizer)?;
    let corpus_root = args.corpus.clone().or_else(|| settings.corpus_root.clone());
    let corpus = match corpus_root {
        Some(root) => Some(load_corpus_reporting(&root, &settings.tokenizer)?),
        None => None,
    };
    let rows = term_rows(&document, corpus.as_ref().map(|c| &c.stats), &settings.params)?;
    let report = StatsReport {
        document: args.document.display().to_string(),
        paragraphs: document.paragraphs.len(),
        distinct_terms: rows.len(),
        scheme: settings.params.scheme.clone(),
        alpha: settings.params.alpha,
        beta: settings.params.beta,
        terms: rows,
    };

    match settings.format {
        OutputFormat::Table => {
            println!("document: {}", report.document);
            println!("paragraphs: {}", report.paragraphs);
            println!("distinct terms: {}", report.distinct_terms);
            println!("scheme: {}", settings.params.describe());
            println!();
            let mut table = vec![vec![
                "term".to_string(),
                "count".to_string(),
                "first".to_string(),
                "last".to_string(),
                "centroid".to_string(),
                "compactness".to_string(),
                "weight".to_string(),
            ]];
            for row in &report.terms {
                table.push(vec![
                    row.term.clone(),
                    row.count.to_string(),
                    fmt6(row.first),
                    fmt6(row.last),
                    fmt6(row.centroid),
                    fmt6(row.compactness),
                    fmt6(row.weight),
                ]);
            }
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("term,count,first,last,centroid,compactness,weight");
            for row in &report.terms {
                println!(
                    "{}",
                    csv_row(&[
                        row.term.clone(),
                        row.count.to_string(),
                        full(row.first),
                        full(row.last),
                        full(row.centroid),
                        full(row.compactness),
                        full(row.weight),
                    ])
                );
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}
