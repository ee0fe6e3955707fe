//! `textcat cluster` — k-means over the document vectors of a corpus.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use textcat_core::features::vectorize;
use textcat_core::kmeans::{self, ClusterSummary, KMeansConfig, SparsePoint};

use crate::commands::load_corpus_reporting;
use crate::output::{csv_row, fmt6, render_table};
use crate::settings::{InitArg, OutputFormat, Settings};

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Corpus root to cluster.
    pub corpus: PathBuf,
    /// Number of clusters; defaults to the number of categories.
    #[arg(long)]
    pub k: Option<usize>,
    /// Write `point_id,cluster_id` rows to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub assignments: Option<PathBuf>,
    /// Write the JSON run summary to this file.
    #[arg(long, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Centroid initialization strategy.
    #[arg(long, value_enum)]
    pub kmeans_init: Option<InitArg>,
}

#[derive(Debug, Serialize)]
struct ClusterReport {
    documents: usize,
    #[serde(flatten)]
    summary: ClusterSummary,
    assignments: Vec<Assignment>,
}

#[derive(Debug, Serialize)]
struct Assignment {
    document: String,
    cluster: usize,
}

pub fn run(settings: &Settings, args: &ClusterArgs) -> Result<()> {
    let corpus = load_corpus_reporting(&args.corpus, &settings.tokenizer)?;
    let ids: Vec<String> = corpus.documents.iter().map(|d| d.id.clone()).collect();
    let points: Vec<SparsePoint> = corpus
        .documents
        .iter()
        .map(|d| {
            vectorize(d, &corpus.stats, &settings.params)
                .map(|v| v.entries.into_iter().collect::<SparsePoint>())
        })
        .collect::<Result<_, _>>()?;

    let mut config = KMeansConfig::new(args.k.unwrap_or_else(|| corpus.labels().len().max(1)), settings.seed);
    config.max_iterations = args.max_iterations.unwrap_or(settings.max_iterations);
    config.tolerance = args.tolerance.unwrap_or(settings.tolerance);
    config.init = args.kmeans_init.map(Into::into).unwrap_or(settings.kmeans_init);

    let model = kmeans::cluster(&points, corpus.stats.len(), &config)?;

    if let Some(path) = &args.assignments {
        let mut out = Vec::new();
        kmeans::write_assignments_csv(&mut out, &ids, &model)?;
        std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.summary {
        let json = serde_json::to_string_pretty(&model.summary())?;
        std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }

    let report = ClusterReport {
        documents: ids.len(),
        summary: model.summary(),
        assignments: ids
            .iter()
            .zip(&model.assignments)
            .map(|(id, &cluster)| Assignment {
                document: id.clone(),
                cluster,
            })
            .collect(),
    };
    match settings.format {
        OutputFormat::Table => {
            println!("documents: {}", report.documents);
            println!("k: {}", report.summary.k);
            println!("iterations: {}", report.summary.iterations_run);
            println!("converged: {}", report.summary.converged);
            println!("objective: {}", fmt6(report.summary.objective));
            println!();
            let mut table = vec![vec!["cluster".to_string(), "size".to_string(), "centroid_norm".to_string()]];
            for (i, (&size, &norm)) in report
                .summary
                .cluster_sizes
                .iter()
                .zip(&report.summary.centroid_norms)
                .enumerate()
            {
                table.push(vec![i.to_string(), size.to_string(), fmt6(norm)]);
            }
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("point_id,cluster_id");
            for assignment in &report.assignments {
                println!("{}", csv_row(&[assignment.document.clone(), assignment.cluster.to_string()]));
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}
