use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::Args;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selforg::predict::{
    bounds_type_iii, envelope_type_iv, predict_type_i, predict_type_ii, predict_type_iv,
    predict_uniform_blocks, predict_varying_blocks, verify, BlockRepetitionSpec,
};
use selforg::taxonomy::{enumerate_class, SequenceClass};
use selforg::{
    serve, Algorithm, CostModel, ListState, Prediction, RequestSequence, VerificationReport,
};
use serde::Serialize;

use crate::config::FileConfig;
use crate::io;
use crate::report::{self, OutputFormat};

#[derive(Args)]
pub struct VerifyArgs {
    /// Law to check: t1, t2, t3, t4, t5, c1, c2, or all.
    #[arg(long, value_name = "LAW")]
    theorem: Option<String>,
    /// Smallest list size in the sweep.
    #[arg(long, value_name = "L")]
    l_min: Option<usize>,
    /// Largest list size in the sweep.
    #[arg(long, value_name = "L")]
    l_max: Option<usize>,
    /// Largest run length for the single-element sweeps.
    #[arg(long, value_name = "N")]
    n_max: Option<usize>,
    /// Number of random instances for the block-repetition sweeps.
    #[arg(long, value_name = "T")]
    trials: Option<u64>,
    /// Largest per-element repeat count in the block-repetition sweeps.
    #[arg(long, value_name = "K")]
    k_max: Option<u64>,
    /// Seed for the random block-repetition instances.
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
struct VerifyRow {
    theorem: String,
    l: u64,
    n: u64,
    params: String,
    predicted: String,
    lower: String,
    upper: String,
    simulated: u64,
    status: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Law {
    T1,
    T2,
    T3,
    T4,
    T5,
    C1,
    C2,
}

fn parse_laws(text: &str) -> anyhow::Result<Vec<Law>> {
    Ok(match text.to_ascii_lowercase().as_str() {
        "all" => vec![Law::T1, Law::T2, Law::T3, Law::T4, Law::T5, Law::C1, Law::C2],
        "t1" => vec![Law::T1],
        "t2" => vec![Law::T2],
        "t3" => vec![Law::T3],
        "t4" => vec![Law::T4],
        "t5" => vec![Law::T5],
        "c1" => vec![Law::C1],
        "c2" => vec![Law::C2],
        other => bail!("unknown law {other:?} (expected t1..t5, c1, c2, or all)"),
    })
}

struct Sweep {
    l_min: usize,
    l_max: usize,
    n_max: usize,
    trials: u64,
    k_max: u64,
    seed: u64,
}

fn row(l: usize, n: usize, params: String, report: &VerificationReport) -> VerifyRow {
    let (predicted, lower, upper) = match report.prediction {
        Prediction::Exact(value) => (value.to_string(), String::new(), String::new()),
        Prediction::StrictBounds { lower, upper } => {
            (String::new(), lower.to_string(), upper.to_string())
        }
        Prediction::Envelope { min, max } => (String::new(), min.to_string(), max.to_string()),
    };
    VerifyRow {
        theorem: report.source.to_string(),
        l: l as u64,
        n: n as u64,
        params,
        predicted,
        lower,
        upper,
        simulated: report.simulated,
        status: report.status.to_string(),
    }
}

fn ids_text(sequence: &RequestSequence) -> String {
    sequence.to_string()
}

fn sweep_t1(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    for l in sweep.l_min..=sweep.l_max {
        let list = ListState::numbered(l)?;
        let sequence = RequestSequence::new(list.elements())?;
        let prediction = predict_type_i(l as u64)?;
        let report = verify(&prediction, &list, &sequence)?;
        rows.push(row(l, l, String::new(), &report));
    }
    Ok(())
}

fn sweep_t2(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    for l in sweep.l_min..=sweep.l_max {
        let list = ListState::numbered(l)?;
        let sequence = RequestSequence::new(list.reversed().elements())?;
        let prediction = predict_type_ii(l as u64)?;
        let report = verify(&prediction, &list, &sequence)?;
        rows.push(row(l, l, String::new(), &report));
    }
    Ok(())
}

fn sweep_c1(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    for l in sweep.l_min.max(3)..=sweep.l_max {
        let list = ListState::numbered(l)?;
        let pattern = SequenceClass::type_iii();
        let sequences = enumerate_class(&list, &pattern, l)?;
        let prediction = bounds_type_iii(l as u64)?;
        for sequence in &sequences {
            let report = verify(&prediction, &list, sequence)?;
            rows.push(row(l, l, format!("perm={}", ids_text(sequence)), &report));
        }
    }
    Ok(())
}

fn sweep_t3(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    for l in sweep.l_min..=sweep.l_max {
        let list = ListState::numbered(l)?;
        for p in 1..=l {
            let element = list.elements()[p - 1];
            for n in 1..=sweep.n_max {
                let sequence = RequestSequence::new(&vec![element; n])?;
                let prediction = predict_type_iv(n as u64, p as u64, l as u64)?;
                let report = verify(&prediction, &list, &sequence)?;
                rows.push(row(l, n, format!("p={p}"), &report));
            }
        }
    }
    Ok(())
}

fn sweep_c2(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    for l in sweep.l_min..=sweep.l_max {
        let list = ListState::numbered(l)?;
        for p in 1..=l {
            let element = list.elements()[p - 1];
            for n in 1..=sweep.n_max {
                let sequence = RequestSequence::new(&vec![element; n])?;
                let prediction = envelope_type_iv(n as u64, l as u64)?;
                let report = verify(&prediction, &list, &sequence)?;
                rows.push(row(l, n, format!("p={p}"), &report));
            }
        }
    }
    Ok(())
}

fn random_base(list: &ListState, rng: &mut ChaCha8Rng) -> anyhow::Result<RequestSequence> {
    let mut elements = list.elements().to_vec();
    elements.shuffle(rng);
    Ok(RequestSequence::new(&elements)?)
}

fn sweep_t4(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
    for trial in 0..sweep.trials {
        let l = rng.random_range(sweep.l_min..=sweep.l_max);
        let list = ListState::numbered(l)?;
        let base = random_base(&list, &mut rng)?;
        let base_cost = serve(&list, &base, Algorithm::MoveToFront, CostModel::Full)?.total_cost;
        let k = rng.random_range(1..=sweep.k_max);
        let spec = BlockRepetitionSpec::uniform(base.clone(), k)?;
        let expanded = spec.expand();
        let prediction = predict_uniform_blocks(base_cost, l as u64, k)?;
        let report = verify(&prediction, &list, &expanded)?;
        let params = format!("trial={trial};base={};k={k};C={base_cost}", ids_text(&base));
        rows.push(row(l, expanded.len(), params, &report));
    }
    Ok(())
}

fn sweep_t5(sweep: &Sweep, rows: &mut Vec<VerifyRow>) -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
    for trial in 0..sweep.trials {
        let l = rng.random_range(sweep.l_min..=sweep.l_max);
        let list = ListState::numbered(l)?;
        let base = random_base(&list, &mut rng)?;
        let base_cost = serve(&list, &base, Algorithm::MoveToFront, CostModel::Full)?.total_cost;
        let repeats: Vec<u64> = (0..l).map(|_| rng.random_range(1..=sweep.k_max)).collect();
        let spec = BlockRepetitionSpec::new(base.clone(), repeats.clone())?;
        let expanded = spec.expand();
        let prediction = predict_varying_blocks(base_cost, &repeats)?;
        let report = verify(&prediction, &list, &expanded)?;
        let repeats_text = repeats
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let params = format!(
            "trial={trial};base={};repeats={repeats_text};C={base_cost}",
            ids_text(&base)
        );
        rows.push(row(l, expanded.len(), params, &report));
    }
    Ok(())
}

pub fn run(args: VerifyArgs, file: &FileConfig) -> anyhow::Result<ExitCode> {
    let laws = parse_laws(
        args.theorem
            .as_deref()
            .or(file.theorem.as_deref())
            .unwrap_or("all"),
    )?;
    let sweep = Sweep {
        l_min: args.l_min.or(file.l_min).unwrap_or(1),
        l_max: args.l_max.or(file.l_max).unwrap_or(6),
        n_max: args.n_max.or(file.n_max).unwrap_or(8),
        trials: args.trials.or(file.trials).unwrap_or(100),
        k_max: args.k_max.or(file.k_max).unwrap_or(5),
        seed: args.seed.or(file.seed).unwrap_or(0),
    };
    if sweep.l_min == 0 {
        bail!("--l-min must be at least 1");
    }
    if sweep.l_min > sweep.l_max {
        bail!("--l-min must not exceed --l-max");
    }
    if sweep.n_max == 0 {
        bail!("--n-max must be at least 1");
    }
    if sweep.k_max == 0 {
        bail!("--k-max must be at least 1");
    }

    let mut rows = Vec::new();
    for law in laws {
        match law {
            Law::T1 => sweep_t1(&sweep, &mut rows)?,
            Law::T2 => sweep_t2(&sweep, &mut rows)?,
            Law::T3 => sweep_t3(&sweep, &mut rows)?,
            Law::T4 => sweep_t4(&sweep, &mut rows)?,
            Law::T5 => sweep_t5(&sweep, &mut rows)?,
            Law::C1 => sweep_c1(&sweep, &mut rows)?,
            Law::C2 => sweep_c2(&sweep, &mut rows)?,
        }
    }

    let violations = rows.iter().filter(|r| r.status == "VIOLATION").count();

    let format = match args.format.as_deref().or(file.format.as_deref()) {
        Some(text) => report::parse_format(text)?,
        None => OutputFormat::Csv,
    };
    let bytes = report::render(&rows, format)?;
    io::write_output(args.out.as_deref().or(file.out.as_deref()), &bytes)?;

    if violations > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
