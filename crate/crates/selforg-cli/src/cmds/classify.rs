use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use selforg::taxonomy::classify;
use selforg::RequestSequence;
use serde::Serialize;

use crate::config::FileConfig;
use crate::io;
use crate::report::{self, OutputFormat};

#[derive(Args)]
pub struct ClassifyArgs {
    /// Use the list 1,2,...,l.
    #[arg(long, value_name = "L")]
    list_size: Option<usize>,
    /// Read the list from a file holding one line of distinct ids.
    #[arg(long, value_name = "FILE")]
    list_file: Option<PathBuf>,
    /// Inline request sequence, e.g. "3 1 1 4 2".
    #[arg(long, value_name = "IDS")]
    seq: Option<String>,
    /// Sequence file; every non-comment line is classified.
    #[arg(long, value_name = "FILE")]
    seq_file: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ClassifyRow {
    l: u64,
    n: u64,
    class: String,
}

pub fn run(args: ClassifyArgs, file: &FileConfig) -> anyhow::Result<ExitCode> {
    let list = io::load_list(
        args.list_size.or(file.list_size),
        args.list_file.as_deref().or(file.list_file.as_deref()),
    )?;
    let sequences = io::read_sequences_input(
        args.seq.as_deref().or(file.seq.as_deref()),
        args.seq_file.as_deref().or(file.seq_file.as_deref()),
    )?;

    let mut rows = Vec::with_capacity(sequences.len());
    for ids in &sequences {
        let sequence = RequestSequence::from_ids(ids)?;
        let observed = classify(&list, &sequence)?;
        rows.push(ClassifyRow {
            l: list.len() as u64,
            n: ids.len() as u64,
            class: observed.to_string(),
        });
    }

    let format = match args.format.as_deref().or(file.format.as_deref()) {
        Some(text) => report::parse_format(text)?,
        None => OutputFormat::Csv,
    };
    let bytes = report::render(&rows, format)?;
    io::write_output(args.out.as_deref().or(file.out.as_deref()), &bytes)?;
    Ok(ExitCode::SUCCESS)
}
