//! `textcat gen-fixture` — emit the seeded synthetic benchmark corpus.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use textcat_core::synth;

use crate::settings::Settings;

#[derive(Debug, Args)]
pub struct GenFixtureArgs {
    /// Directory to write the corpus into.
    pub out: PathBuf,
}

pub fn run(settings: &Settings, args: &GenFixtureArgs) -> Result<()> {
    let count = synth::write_corpus(&args.out, settings.seed)?;
    println!("wrote {count} documents to {}", args.out.display());
    Ok(())
}
