//! textcat: distributional-feature text categorization from the command
//! line. Ingest a corpus, inspect per-term statistics, train and run kNN
//! classifiers, cluster documents, and compare weighting schemes.

mod commands;
mod output;
mod settings;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use settings::{Overrides, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "textcat", version, about = "Text categorization with distributional term features")]
struct Cli {
    /// Key-value configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Weighting scheme name (tfidf or distributional).
    #[arg(long, global = true)]
    scheme: Option<String>,
    /// First-appearance boost strength.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Compactness boost strength.
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Stopword file, one word per line.
    #[arg(long, global = true, value_name = "PATH")]
    stopwords: Option<PathBuf>,
    /// Drop tokens shorter than this.
    #[arg(long, global = true, value_name = "N")]
    min_token_length: Option<usize>,
    /// Treat digits as token separators.
    #[arg(long, global = true, value_name = "BOOL")]
    strip_digits: Option<bool>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-term positional statistics and weights for one document.
    Stats(commands::stats::StatsArgs),
    /// Compactness histogram, or document ranking for a term.
    Histogram(commands::histogram::HistogramArgs),
    /// Train a kNN model on a corpus and save it.
    Train(commands::train::TrainArgs),
    /// Classify a document with a saved model.
    Classify(commands::classify::ClassifyArgs),
    /// Cluster corpus documents with k-means.
    Cluster(commands::cluster::ClusterArgs),
    /// Compare weighting schemes with precision/recall on a split.
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Write the seeded synthetic benchmark corpus.
    GenFixture(commands::gen_fixture::GenFixtureArgs),
}

fn run(cli: Cli) -> Result<()> {
    let overrides = Overrides {
        scheme: cli.scheme,
        alpha: cli.alpha,
        beta: cli.beta,
        format: cli.format,
        seed: cli.seed,
        stopwords: cli.stopwords,
        min_token_length: cli.min_token_length,
        strip_digits: cli.strip_digits,
    };
    let settings = settings::resolve(cli.config.as_deref(), &overrides)?;
    match &cli.command {
        Command::Stats(args) => commands::stats::run(&settings, args),
        Command::Histogram(args) => commands::histogram::run(&settings, args),
        Command::Train(args) => commands::train::run(&settings, args),
        Command::Classify(args) => commands::classify::run(&settings, args),
        Command::Cluster(args) => commands::cluster::run(&settings, args),
        Command::Evaluate(args) => commands::evaluate::run(&settings, args),
        Command::GenFixture(args) => commands::gen_fixture::run(&settings, args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}
