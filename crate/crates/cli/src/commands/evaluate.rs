//! `textcat evaluate` — split a corpus, train one model per weighting
//! scheme, and compare precision/recall side by side.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use textcat_core::eval::{compare_schemes, split, ClassifierConfig, EvalReport, SchemeEval};
use textcat_core::knn::CompressionConfig;
use textcat_core::weighting::{default_registry, WeightingParams};

use crate::commands::load_corpus_reporting;
use crate::output::{csv_row, fmt6, full, render_table};
use crate::settings::{OutputFormat, Settings, VoteArg};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Corpus root to evaluate on.
    pub corpus: PathBuf,
    /// Train fraction per category.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Neighbors consulted per classification.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated scheme names to compare.
    #[arg(long, default_value = "tfidf,distributional")]
    pub schemes: String,
    /// Vote mode for plain kNN.
    #[arg(long, value_enum)]
    pub vote: Option<VoteArg>,
    /// Evaluate the cluster-compressed classifier instead of plain kNN.
    #[arg(long)]
    pub compress: bool,
    #[arg(long)]
    pub clusters_per_category: Option<usize>,
    /// Skip border-sample deletion when compressing.
    #[arg(long)]
    pub no_border_deletion: bool,
    /// Write per-document prediction logs to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub predictions: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct SchemeReport<'a> {
    scheme: String,
    alpha: f64,
    beta: f64,
    report: &'a EvalReport,
}

pub fn run(settings: &Settings, args: &EvaluateArgs) -> Result<()> {
    let corpus = load_corpus_reporting(&args.corpus, &settings.tokenizer)?;
    let ratio = args.ratio.unwrap_or(settings.ratio);
    let partition = split(&corpus, ratio, settings.seed)?;

    let mut schemes = Vec::new();
    for name in args.schemes.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        default_registry().resolve(name)?;
        schemes.push(WeightingParams {
            scheme: name.to_string(),
            alpha: settings.params.alpha,
            beta: settings.params.beta,
        });
    }

    let mut config = ClassifierConfig::new(args.k.unwrap_or(settings.k));
    config.vote = args.vote.map(Into::into).unwrap_or(settings.vote);
    if args.compress || settings.compress {
        let mut compression = CompressionConfig::new(
            args.clusters_per_category.unwrap_or(settings.clusters_per_category),
            settings.seed,
        );
        compression.border_deletion = settings.border_deletion && !args.no_border_deletion;
        config.compression = Some(compression);
    }

    let results = compare_schemes(&corpus, &partition, &schemes, &config)?;

    if let Some(path) = &args.predictions {
        let mut out = String::from("scheme,doc_id,true_label,predicted,neighbors\n");
        for result in &results {
            for log in &result.predictions {
                out.push_str(&csv_row(&[
                    result.params.describe(),
                    log.doc_id.clone(),
                    log.true_label.clone(),
                    log.predicted.clone(),
                    log.neighbor_ids.join("|"),
                ]));
                out.push('\n');
            }
        }
        std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }

    match settings.format {
        OutputFormat::Table => print_tables(&partition.train_ids.len(), &partition.test_ids.len(), &results),
        OutputFormat::Csv => {
            println!("scheme,label,precision,recall,f1");
            for result in &results {
                let name = result.params.describe();
                for (label, metrics) in &result.report.per_class {
                    println!(
                        "{}",
                        csv_row(&[
                            name.clone(),
                            label.clone(),
                            full(metrics.precision),
                            full(metrics.recall),
                            full(metrics.f1),
                        ])
                    );
                }
                println!(
                    "{}",
                    csv_row(&[
                        name.clone(),
                        "macro".to_string(),
                        full(result.report.macro_avg.precision),
                        full(result.report.macro_avg.recall),
                        full(result.report.macro_avg.f1),
                    ])
                );
            }
        }
        OutputFormat::Json => {
            let reports: Vec<SchemeReport> = results
                .iter()
                .map(|r| SchemeReport {
                    scheme: r.params.scheme.clone(),
                    alpha: r.params.alpha,
                    beta: r.params.beta,
                    report: &r.report,
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&reports)?);
        }
    }
    Ok(())
}

fn print_tables(train: &usize, test: &usize, results: &[SchemeEval]) {
    println!("split: {train} train, {test} test");
    for result in results {
        println!();
        println!("scheme: {}", result.params.describe());
        println!();
        let labels = &result.report.labels;
        let mut table = vec![{
            let mut header = vec!["true \\ predicted".to_string()];
            header.extend(labels.iter().cloned());
            header
        }];
        for (i, label) in labels.iter().enumerate() {
            let mut row = vec![label.clone()];
            row.extend(result.report.confusion[i].iter().map(|c| c.to_string()));
            table.push(row);
        }
        print!("{}", render_table(&table));
        println!();
        let mut table = vec![vec![
            "class".to_string(),
            "precision".to_string(),
            "recall".to_string(),
            "f1".to_string(),
        ]];
        for (label, metrics) in &result.report.per_class {
            table.push(vec![
                label.clone(),
                fmt6(metrics.precision),
                fmt6(metrics.recall),
                fmt6(metrics.f1),
            ]);
        }
        table.push(vec![
            "macro".to_string(),
            fmt6(result.report.macro_avg.precision),
            fmt6(result.report.macro_avg.recall),
            fmt6(result.report.macro_avg.f1),
        ]);
        print!("{}", render_table(&table));
        println!("micro accuracy: {}", fmt6(result.report.micro_accuracy));
    }
    if results.len() > 1 {
        println!();
        let summary: Vec<String> = results
            .iter()
            .map(|r| format!("{}={}", r.params.describe(), fmt6(r.report.macro_avg.recall)))
            .collect();
        println!("macro recall: {}", summary.join(" "));
    }
}
