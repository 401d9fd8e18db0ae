use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use selforg::ListState;

/// Parses the sequence file format: lines starting with `#` are comments,
/// every other non-empty line is one sequence of whitespace-separated
/// element ids.
pub fn parse_sequences(text: &str) -> anyhow::Result<Vec<Vec<u64>>> {
    let mut sequences = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|token| {
                token
                    .parse::<u64>()
                    .with_context(|| format!("line {}: bad element id {token:?}", index + 1))
            })
            .collect::<anyhow::Result<Vec<u64>>>()?;
        sequences.push(ids);
    }
    Ok(sequences)
}

/// Parses an inline `--seq` value; ids may be separated by spaces or commas.
pub fn parse_inline_sequence(text: &str) -> anyhow::Result<Vec<u64>> {
    let ids = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|token| !token.is_empty())
        .map(|token| {
            token
                .parse::<u64>()
                .with_context(|| format!("bad element id {token:?}"))
        })
        .collect::<anyhow::Result<Vec<u64>>>()?;
    if ids.is_empty() {
        bail!("the sequence is empty");
    }
    Ok(ids)
}

/// Builds the initial list from `--list-size` (ids 1..=l) or from a file
/// holding a single line of distinct ids.
pub fn load_list(list_size: Option<usize>, list_file: Option<&Path>) -> anyhow::Result<ListState> {
    match (list_size, list_file) {
        (Some(_), Some(_)) => bail!("--list-size and --list-file are mutually exclusive"),
        (Some(l), None) => Ok(ListState::numbered(l)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading list file {}", path.display()))?;
            let mut lines = parse_sequences(&text)?;
            if lines.len() != 1 {
                bail!(
                    "list file {} must hold exactly one line of ids, found {}",
                    path.display(),
                    lines.len()
                );
            }
            Ok(ListState::from_ids(&lines.remove(0))?)
        }
        (None, None) => bail!("specify --list-size or --list-file"),
    }
}

/// Collects the request sequences named by `--seq` / `--seq-file`
/// (exactly one of the two must be present).
pub fn read_sequences_input(
    seq: Option<&str>,
    seq_file: Option<&Path>,
) -> anyhow::Result<Vec<Vec<u64>>> {
    match (seq, seq_file) {
        (Some(_), Some(_)) => bail!("--seq and --seq-file are mutually exclusive"),
        (Some(text), None) => Ok(vec![parse_inline_sequence(text)?]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading sequence file {}", path.display()))?;
            let sequences = parse_sequences(&text)?;
            if sequences.is_empty() {
                bail!("no sequences in {}", path.display());
            }
            Ok(sequences)
        }
        (None, None) => bail!("specify --seq or --seq-file"),
    }
}

/// Writes the rendered output to the given path, or to stdout when no
/// path was requested.
pub fn write_output(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .with_context(|| format!("writing output file {}", path.display())),
        None => {
            std::io::stdout()
                .write_all(bytes)
                .context("writing to stdout")
        }
    }
}
