use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selforg::taxonomy::{generate, SequenceClass};
use selforg::{serve, Algorithm};
use serde::Serialize;

use crate::config::FileConfig;
use crate::io;
use crate::report::{self, OutputFormat};

#[derive(Args)]
pub struct BenchArgs {
    /// Class to sample; repeat the flag to compare several classes.
    #[arg(long = "class", value_name = "CLASS")]
    class: Vec<String>,
    /// Algorithm to run; repeat the flag to compare several. Defaults to
    /// mtf, transpose, and fc.
    #[arg(long = "algo", value_name = "ALGO")]
    algo: Vec<String>,
    /// Cost model: full or partial.
    #[arg(long, value_name = "MODEL")]
    cost_model: Option<String>,
    /// Use the list 1,2,...,l.
    #[arg(long, value_name = "L")]
    list_size: Option<usize>,
    /// Read the list from a file holding one line of distinct ids.
    #[arg(long, value_name = "FILE")]
    list_file: Option<PathBuf>,
    /// Sequence length; defaults to l, or to m*l when the class fixes m.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Sample size per class.
    #[arg(long, value_name = "T")]
    trials: Option<u64>,
    /// Seed for the per-class sample streams; required when any chosen
    /// class has more than one member.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Output format: csv or json.
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct BenchRow {
    class: String,
    algorithm: String,
    cost_model: String,
    trials: u64,
    mean: f64,
    min: u64,
    max: u64,
    seed: u64,
}

pub fn run(args: BenchArgs, file: &FileConfig) -> anyhow::Result<ExitCode> {
    let list = io::load_list(
        args.list_size.or(file.list_size),
        args.list_file.as_deref().or(file.list_file.as_deref()),
    )?;

    let class_texts: Vec<String> = if !args.class.is_empty() {
        args.class.clone()
    } else if let Some(classes) = &file.classes {
        classes.clone()
    } else if let Some(class) = &file.class {
        vec![class.clone()]
    } else {
        bail!("at least one --class is required");
    };
    let patterns = class_texts
        .iter()
        .map(|text| text.parse::<SequenceClass>().map_err(anyhow::Error::new))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let algo_texts: Vec<String> = if !args.algo.is_empty() {
        args.algo.clone()
    } else if let Some(algos) = &file.algos {
        algos.clone()
    } else if let Some(algo) = &file.algo {
        vec![algo.clone()]
    } else {
        vec!["mtf".into(), "transpose".into(), "fc".into()]
    };
    let algorithms = algo_texts
        .iter()
        .map(|text| super::parse_algorithm(text))
        .collect::<anyhow::Result<Vec<Algorithm>>>()?;

    let cost_model = super::parse_cost_model(
        args.cost_model
            .as_deref()
            .or(file.cost_model.as_deref())
            .unwrap_or("full"),
    )?;

    let trials = args.trials.or(file.trials).unwrap_or(100);
    if trials == 0 {
        bail!("--trials must be at least 1");
    }

    let seed = args.seed.or(file.seed);
    if seed.is_none() && patterns.iter().any(super::pattern_is_stochastic) {
        bail!("a chosen class has more than one member; --seed is required");
    }
    let seed = seed.unwrap_or(0);

    let mut rows = Vec::new();
    for (pattern, text) in patterns.iter().zip(&class_texts) {
        let n = super::resolve_length(args.n.or(file.n), pattern, list.len())
            .with_context(|| format!("class {text}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sequences = Vec::with_capacity(trials as usize);
        for _ in 0..trials {
            sequences.push(generate(&list, pattern, n, &mut rng)?);
        }
        for &algorithm in &algorithms {
            let mut totals = Vec::with_capacity(sequences.len());
            for sequence in &sequences {
                totals.push(serve(&list, sequence, algorithm, cost_model)?.total_cost);
            }
            let sum: u128 = totals.iter().map(|&t| t as u128).sum();
            rows.push(BenchRow {
                class: pattern.to_string(),
                algorithm: algorithm.to_string(),
                cost_model: cost_model.to_string(),
                trials,
                mean: sum as f64 / trials as f64,
                min: *totals.iter().min().expect("at least one trial"),
                max: *totals.iter().max().expect("at least one trial"),
                seed,
            });
        }
    }

    let format = match args.format.as_deref().or(file.format.as_deref()) {
        Some(text) => report::parse_format(text)?,
        None => OutputFormat::Csv,
    };
    let bytes = report::render(&rows, format)?;
    io::write_output(args.out.as_deref().or(file.out.as_deref()), &bytes)?;
    Ok(ExitCode::SUCCESS)
}
