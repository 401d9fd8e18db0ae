use anyhow::Context;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn parse_format(text: &str) -> anyhow::Result<OutputFormat> {
    match text.to_ascii_lowercase().as_str() {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => anyhow::bail!("unknown format {other:?} (expected csv or json)"),
    }
}

/// Renders rows as CSV (header line first) or as a JSON array of the same
/// records. Field order is fixed by the row struct, so the output is
/// byte-stable for a fixed input.
pub fn render<T: Serialize>(rows: &[T], format: OutputFormat) -> anyhow::Result<Vec<u8>> {
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer.serialize(row).context("encoding a CSV row")?;
            }
            writer
                .into_inner()
                .map_err(|e| anyhow::anyhow!("flushing the CSV buffer: {e}"))
        }
        OutputFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(rows).context("encoding JSON rows")?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}
