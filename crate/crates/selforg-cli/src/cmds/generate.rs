use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selforg::taxonomy::{generate, SequenceClass};

use crate::config::FileConfig;
use crate::io;

#[derive(Args)]
pub struct GenerateArgs {
    /// Use the list 1,2,...,l.
    #[arg(long, value_name = "L")]
    list_size: Option<usize>,
    /// Read the list from a file holding one line of distinct ids.
    #[arg(long, value_name = "FILE")]
    list_file: Option<PathBuf>,
    /// Class label, e.g. GROUP1/A/TYPE_III or GROUP2/C_a_i/TYPE_VI[m=2].
    #[arg(long, value_name = "CLASS")]
    class: Option<String>,
    /// Sequence length; defaults to l, or to m*l when the class fixes m.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Seed for the random stream; required for classes with more than
    /// one member.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Number of sequences to write.
    #[arg(long, value_name = "K")]
    count: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn run(args: GenerateArgs, file: &FileConfig) -> anyhow::Result<ExitCode> {
    let list = io::load_list(
        args.list_size.or(file.list_size),
        args.list_file.as_deref().or(file.list_file.as_deref()),
    )?;
    let class_text = args
        .class
        .or_else(|| file.class.clone())
        .context("--class is required")?;
    let pattern: SequenceClass = class_text.parse()?;
    let n = super::resolve_length(args.n.or(file.n), &pattern, list.len())?;

    let seed = args.seed.or(file.seed);
    if super::pattern_is_stochastic(&pattern) && seed.is_none() {
        bail!("class {pattern} has more than one member; --seed is required");
    }
    let seed = seed.unwrap_or(0);

    let count = args.count.or(file.count).unwrap_or(1);
    if count == 0 {
        bail!("--count must be at least 1");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = format!("# class={pattern} seed={seed} l={} n={n}\n", list.len());
    for _ in 0..count {
        let sequence = generate(&list, &pattern, n, &mut rng)?;
        text.push_str(&sequence.to_string());
        text.push('\n');
    }

    io::write_output(args.out.as_deref().or(file.out.as_deref()), text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}
