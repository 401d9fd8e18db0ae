pub mod bench;
pub mod classify;
pub mod generate;
pub mod simulate;
pub mod verify;

use anyhow::bail;
use selforg::taxonomy::SequenceClass;
use selforg::{Algorithm, CostModel, Group, TypeTag};

pub fn parse_algorithm(text: &str) -> anyhow::Result<Algorithm> {
    match text.to_ascii_lowercase().as_str() {
        "mtf" => Ok(Algorithm::MoveToFront),
        "transpose" => Ok(Algorithm::Transpose),
        "fc" => Ok(Algorithm::FrequencyCount),
        other => bail!("unknown algorithm {other:?} (expected mtf, transpose, or fc)"),
    }
}

pub fn parse_cost_model(text: &str) -> anyhow::Result<CostModel> {
    match text.to_ascii_lowercase().as_str() {
        "full" => Ok(CostModel::Full),
        "partial" => Ok(CostModel::Partial),
        other => bail!("unknown cost model {other:?} (expected full or partial)"),
    }
}

/// Default sequence length for a class: an explicit `--n` wins, a fixed
/// block multiplier forces `m * l`, and the one-request-per-element group
/// defaults to `l`. Everything else genuinely needs `--n`.
pub fn resolve_length(
    n: Option<usize>,
    pattern: &SequenceClass,
    list_len: usize,
) -> anyhow::Result<usize> {
    if let Some(n) = n {
        return Ok(n);
    }
    if let Some(m) = pattern.multiplier() {
        return Ok((m as usize).saturating_mul(list_len));
    }
    match pattern.group() {
        Group::Group1 => Ok(list_len),
        Group::Group2 => bail!("class {pattern} needs an explicit --n"),
    }
}

/// True when drawing from the class involves random choices, i.e. the
/// class has more than one member shape and a seed pins the outcome.
pub fn pattern_is_stochastic(pattern: &SequenceClass) -> bool {
    match pattern.type_tag() {
        Some(TypeTag::I) | Some(TypeTag::II) | Some(TypeTag::VI) | Some(TypeTag::VII) => false,
        Some(TypeTag::IV) => pattern.repeated_position().is_none(),
        Some(TypeTag::III) | Some(TypeTag::V) => true,
        None => true,
    }
}
