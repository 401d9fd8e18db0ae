use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::Args;
use selforg::{serve, RequestSequence};
use serde::Serialize;

use crate::config::FileConfig;
use crate::io;
use crate::report::{self, OutputFormat};

#[derive(Args)]
pub struct SimulateArgs {
    /// Use the list 1,2,...,l.
    #[arg(long, value_name = "L")]
    list_size: Option<usize>,
    /// Read the list from a file holding one line of distinct ids.
    #[arg(long, value_name = "FILE")]
    list_file: Option<PathBuf>,
    /// Inline request sequence, e.g. "3 1 1 4 2".
    #[arg(long, value_name = "IDS")]
    seq: Option<String>,
    /// Sequence file to read the request sequence from.
    #[arg(long, value_name = "FILE")]
    seq_file: Option<PathBuf>,
    /// 1-based sequence number inside a multi-sequence file.
    #[arg(long, value_name = "K")]
    line: Option<usize>,
    /// Algorithm: mtf, transpose, or fc.
    #[arg(long, value_name = "ALGO")]
    algo: Option<String>,
    /// Cost model: full or partial.
    #[arg(long, value_name = "MODEL")]
    cost_model: Option<String>,
    /// Output format: csv or json.
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimulateRow {
    step: String,
    element: String,
    position: String,
    access_cost: u64,
    list_after: String,
}

pub fn run(args: SimulateArgs, file: &FileConfig) -> anyhow::Result<ExitCode> {
    let list = io::load_list(
        args.list_size.or(file.list_size),
        args.list_file.as_deref().or(file.list_file.as_deref()),
    )?;
    let sequences = io::read_sequences_input(
        args.seq.as_deref().or(file.seq.as_deref()),
        args.seq_file.as_deref().or(file.seq_file.as_deref()),
    )?;
    let line = args.line.or(file.line).unwrap_or(1);
    if line == 0 || line > sequences.len() {
        bail!(
            "--line {line} is out of range; the input holds {} sequence(s)",
            sequences.len()
        );
    }
    if sequences.len() > 1 && args.line.or(file.line).is_none() {
        bail!(
            "the input holds {} sequences; pick one with --line",
            sequences.len()
        );
    }
    let sequence = RequestSequence::from_ids(&sequences[line - 1])?;

    let algorithm = super::parse_algorithm(
        args.algo
            .as_deref()
            .or(file.algo.as_deref())
            .unwrap_or("mtf"),
    )?;
    let cost_model = super::parse_cost_model(
        args.cost_model
            .as_deref()
            .or(file.cost_model.as_deref())
            .unwrap_or("full"),
    )?;

    let trace = serve(&list, &sequence, algorithm, cost_model)?;
    let mut rows = Vec::with_capacity(trace.steps.len() + 1);
    for (index, step) in trace.steps.iter().enumerate() {
        rows.push(SimulateRow {
            step: (index + 1).to_string(),
            element: step.request.to_string(),
            position: step.position_found.to_string(),
            access_cost: step.access_cost,
            list_after: step.list_after.to_string(),
        });
    }
    rows.push(SimulateRow {
        step: "total".to_owned(),
        element: String::new(),
        position: String::new(),
        access_cost: trace.total_cost,
        list_after: trace.final_list.to_string(),
    });

    let format = match args.format.as_deref().or(file.format.as_deref()) {
        Some(text) => report::parse_format(text)?,
        None => OutputFormat::Csv,
    };
    let bytes = report::render(&rows, format)?;
    io::write_output(args.out.as_deref().or(file.out.as_deref()), &bytes)?;
    Ok(ExitCode::SUCCESS)
}
