//! `textcat histogram` — compactness histogram for one document, or
//! term-relevance ranking across a corpus with `--term`.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;
use textcat_core::features::{compactness_histogram, document_profiles, rank_documents, HistogramBin};

use crate::commands::{load_corpus_reporting, read_document};
use crate::output::{csv_row, fmt6, full, render_table, svg_bar_chart, text_bar};
use crate::settings::{OutputFormat, Settings};

#[derive(Debug, Args)]
pub struct HistogramArgs {
    /// A document file, or a corpus root when ranking with --term.
    pub path: PathBuf,
    /// Number of histogram bins over normalized compactness.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Rank the corpus documents most relevant to this term.
    #[arg(long)]
    pub term: Option<String>,
    /// Corpus root supplying idf for the top-term weights.
    #[arg(long, value_name = "ROOT")]
    pub corpus: Option<PathBuf>,
    /// Also write the chart as an SVG file.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct TopTerm {
    term: String,
    weight: f64,
    compactness: f64,
}

#[derive(Debug, Serialize)]
struct HistogramReport {
    document: String,
    paragraphs: usize,
    distinct_terms: usize,
    bins: Vec<HistogramBin>,
    top_terms: Vec<TopTerm>,
}

#[derive(Debug, Serialize)]
struct RankEntry {
    rank: usize,
    document: String,
    weight: f64,
}

#[derive(Debug, Serialize)]
struct RankReport {
    term: String,
    documents: usize,
    ranking: Vec<RankEntry>,
}

pub fn run(settings: &Settings, args: &HistogramArgs) -> Result<()> {
    match &args.term {
        Some(term) => rank_mode(settings, args, term),
        None => document_mode(settings, args),
    }
}

fn rank_mode(settings: &Settings, args: &HistogramArgs, term: &str) -> Result<()> {
    if !args.path.is_dir() {
        bail!("--term ranks documents of a corpus; {} is not a directory", args.path.display());
    }
    let corpus = load_corpus_reporting(&args.path, &settings.tokenizer)?;
    let ranked = rank_documents(term, &corpus, &settings.params)?;
    let report = RankReport {
        term: term.to_string(),
        documents: ranked.len(),
        ranking: ranked
            .into_iter()
            .enumerate()
            .map(|(i, (document, weight))| RankEntry {
                rank: i + 1,
                document,
                weight,
            })
            .collect(),
    };

    if let Some(svg_path) = &args.svg {
        let shown: Vec<&RankEntry> = report.ranking.iter().take(20).collect();
        let labels: Vec<String> = shown.iter().map(|e| e.document.clone()).collect();
        let values: Vec<f64> = shown.iter().map(|e| e.weight).collect();
        let svg = svg_bar_chart(&format!("documents ranked for {term}"), &labels, &values);
        std::fs::write(svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;
    }

    match settings.format {
        OutputFormat::Table => {
            println!("term: {}", report.term);
            println!("documents: {}", report.documents);
            println!();
            let mut table = vec![vec!["rank".to_string(), "document".to_string(), "weight".to_string()]];
            for entry in &report.ranking {
                table.push(vec![entry.rank.to_string(), entry.document.clone(), fmt6(entry.weight)]);
            }
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("rank,document,weight");
            for entry in &report.ranking {
                println!(
                    "{}",
                    csv_row(&[entry.rank.to_string(), entry.document.clone(), full(entry.weight)])
                );
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}

fn document_mode(settings: &Settings, args: &HistogramArgs) -> Result<()> {
    if args.path.is_dir() {
        bail!("{} is a directory; pass a document file or add --term", args.path.display());
    }
    let document = read_document(&args.path, &settings.tokenizer)?;
    let bins = args.bins.unwrap_or(settings.bins);
    let profiles = document_profiles(&document);
    let histogram = compactness_histogram(&profiles, bins)?;

    let corpus_root = args.corpus.clone().or_else(|| settings.corpus_root.clone());
    let corpus = match corpus_root {
        Some(root) => Some(load_corpus_reporting(&root, &settings.tokenizer)?),
        None => None,
    };
    let rows = super::stats::term_rows(&document, corpus.as_ref().map(|c| &c.stats), &settings.params)?;
    let top_terms: Vec<TopTerm> = rows
        .iter()
        .take(10)
        .map(|row| TopTerm {
            term: row.term.clone(),
            weight: row.weight,
            compactness: row.compactness,
        })
        .collect();

    let report = HistogramReport {
        document: args.path.display().to_string(),
        paragraphs: document.paragraphs.len(),
        distinct_terms: profiles.len(),
        bins: histogram,
        top_terms,
    };

    if let Some(svg_path) = &args.svg {
        let labels: Vec<String> = report
            .bins
            .iter()
            .map(|b| format!("{:.2}-{:.2}", b.lower, b.upper))
            .collect();
        let values: Vec<f64> = report.bins.iter().map(|b| b.count as f64).collect();
        let svg = svg_bar_chart(&format!("compactness of {}", report.document), &labels, &values);
        std::fs::write(svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;
    }

    match settings.format {
        OutputFormat::Table => {
            println!("document: {}", report.document);
            println!("paragraphs: {}", report.paragraphs);
            println!("distinct terms: {}", report.distinct_terms);
            println!();
            let max = report.bins.iter().map(|b| b.count).max().unwrap_or(0);
            let mut table = vec![vec!["compactness".to_string(), "count".to_string(), "bar".to_string()]];
            for (i, bin) in report.bins.iter().enumerate() {
                let close = if i + 1 == report.bins.len() { ']' } else { ')' };
                table.push(vec![
                    format!("[{},{}{close}", fmt6(bin.lower), fmt6(bin.upper)),
                    bin.count.to_string(),
                    text_bar(bin.count, max, 30),
                ]);
            }
            print!("{}", render_table(&table));
            println!();
            println!("top terms by weight");
            let mut table = vec![vec!["term".to_string(), "weight".to_string(), "compactness".to_string()]];
            for term in &report.top_terms {
                table.push(vec![term.term.clone(), fmt6(term.weight), fmt6(term.compactness)]);
            }
            print!("{}", render_table(&table));
        }
        OutputFormat::Csv => {
            println!("bin_lower,bin_upper,count");
            for bin in &report.bins {
                println!("{}", csv_row(&[full(bin.lower), full(bin.upper), bin.count.to_string()]));
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}
