//! Closed-form access-cost laws for move-to-front under the full cost
//! model, and a verifier that checks any prediction against the simulator.
//!
//! Each law is tied to a shape from the [taxonomy](crate::taxonomy):
//!
//! * [`predict_type_i`] — the list served in its own order costs
//!   `n(n+1)/2`: each access pushes the next target one position back, so
//!   step `t` costs `t`.
//! * [`predict_type_ii`] — the reversed order costs `n^2`: every access
//!   finds its target at the back of the list.
//! * [`bounds_type_iii`] — every other permutation falls strictly between
//!   those two totals (defined for `n >= 3`; shorter lists have no other
//!   permutations).
//! * [`predict_type_iv`] — one element at list position `p` requested `n`
//!   times costs `n + p - 1`: `p` for the first access, then 1 each.
//! * [`envelope_type_iv`] — ranging `p` over the whole list gives the
//!   inclusive envelope `[n, n + l - 1]`; both ends are attained, and the
//!   envelope collapses to a point when `l = 1`.
//! * [`predict_uniform_blocks`] / [`predict_varying_blocks`] — expanding
//!   the `i`-th request of a distinct-element base sequence into `k_i`
//!   consecutive copies adds `k_i - 1` front accesses, so a base costing
//!   `C` expands to `C + sum(k_i - 1)` (or `C + n(k - 1)` when all `k_i`
//!   equal `k`).
//!
//! Everything here prices moves-to-front under the full model; the partial
//! model differs by exactly 1 per access, so any prediction transfers by
//! subtracting `n` — see [`Prediction::derive_partial`].

use alloc::vec::Vec;
use core::fmt;

use crate::list::{self, serve, Algorithm, CostModel, ElementId, ListState, RequestSequence};

/// Which law produced a prediction. The names match the `--theorem`
/// selectors and report rows of the command-line harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Theorem5,
    Corollary1,
    Corollary2,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Theorem1 => write!(f, "THEOREM_1"),
            Source::Theorem2 => write!(f, "THEOREM_2"),
            Source::Theorem3 => write!(f, "THEOREM_3"),
            Source::Theorem4 => write!(f, "THEOREM_4"),
            Source::Theorem5 => write!(f, "THEOREM_5"),
            Source::Corollary1 => write!(f, "COROLLARY_1"),
            Source::Corollary2 => write!(f, "COROLLARY_2"),
        }
    }
}

/// A predicted total cost: a single exact value, an exclusive pair of
/// strict bounds, or an inclusive envelope whose ends are attainable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Exact(u64),
    StrictBounds { lower: u64, upper: u64 },
    Envelope { min: u64, max: u64 },
}

impl Prediction {
    pub fn strict_bounds(lower: u64, upper: u64) -> Result<Self, Error> {
        if lower < upper {
            Ok(Prediction::StrictBounds { lower, upper })
        } else {
            Err(Error::EmptyBounds { lower, upper })
        }
    }

    pub fn envelope(min: u64, max: u64) -> Result<Self, Error> {
        if min <= max {
            Ok(Prediction::Envelope { min, max })
        } else {
            Err(Error::EmptyBounds {
                lower: min,
                upper: max,
            })
        }
    }

    /// Re-expresses a full-model prediction for a sequence of `n` requests
    /// under the partial model. Each of the `n` accesses costs exactly one
    /// less, so every figure shifts down by `n`.
    pub fn derive_partial(self, n: u64) -> Result<Prediction, Error> {
        let shift = |v: u64| v.checked_sub(n).ok_or(Error::Overflow);
        Ok(match self {
            Prediction::Exact(v) => Prediction::Exact(shift(v)?),
            Prediction::StrictBounds { lower, upper } => Prediction::StrictBounds {
                lower: shift(lower)?,
                upper: shift(upper)?,
            },
            Prediction::Envelope { min, max } => Prediction::Envelope {
                min: shift(min)?,
                max: shift(max)?,
            },
        })
    }

    /// How a simulated total relates to this prediction.
    pub fn status_of(&self, simulated: u64) -> Status {
        match *self {
            Prediction::Exact(value) => {
                if simulated == value {
                    Status::Match
                } else {
                    Status::Violation
                }
            }
            Prediction::StrictBounds { lower, upper } => {
                if lower < simulated && simulated < upper {
                    Status::Inside
                } else {
                    Status::Violation
                }
            }
            Prediction::Envelope { min, max } => {
                if min <= simulated && simulated <= max {
                    Status::Inside
                } else {
                    Status::Violation
                }
            }
        }
    }
}

/// A prediction together with the law that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostPrediction {
    pub source: Source,
    pub prediction: Prediction,
}

/// Outcome of checking a prediction against a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// The simulated total equals an exact prediction.
    Match,
    /// The simulated total lies within predicted bounds.
    Inside,
    /// The simulated total contradicts the prediction.
    Violation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Match => write!(f, "MATCH"),
            Status::Inside => write!(f, "INSIDE"),
            Status::Violation => write!(f, "VIOLATION"),
        }
    }
}

/// A prediction checked against one simulated run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationReport {
    pub source: Source,
    pub prediction: Prediction,
    pub simulated: u64,
    pub status: Status,
}

/// Errors from prediction construction and verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size parameter (sequence length, list length, repeat list) was
    /// zero or empty.
    NonPositiveSize,
    PositionOutOfRange { position: u64, bound: u64 },
    /// No permutation other than the list order and its reversal exists
    /// below three elements.
    NoTypeThreePermutations { n: u64 },
    /// The claimed base cost is outside what any permutation can cost.
    ImpossibleBaseCost { cost: u64, min: u64, max: u64 },
    ZeroRepeat { index: usize },
    RepeatLengthMismatch { base_len: usize, repeats_len: usize },
    DuplicateBaseElement(ElementId),
    EmptyBounds { lower: u64, upper: u64 },
    Overflow,
    List(list::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveSize => write!(f, "size parameter must be at least 1"),
            Error::PositionOutOfRange { position, bound } => {
                write!(f, "position {position} is out of range 1..={bound}")
            }
            Error::NoTypeThreePermutations { n } => write!(
                f,
                "no TYPE_III permutation exists for n={n}; the first ones appear at n=3"
            ),
            Error::ImpossibleBaseCost { cost, min, max } => write!(
                f,
                "base cost {cost} is impossible: permutation costs range over {min}..={max}"
            ),
            Error::ZeroRepeat { index } => {
                write!(f, "repeat count at index {index} is zero; every block needs at least one copy")
            }
            Error::RepeatLengthMismatch {
                base_len,
                repeats_len,
            } => write!(
                f,
                "base sequence has {base_len} requests but {repeats_len} repeat counts were given"
            ),
            Error::DuplicateBaseElement(e) => {
                write!(f, "base sequence repeats element {e}; block bases must be distinct")
            }
            Error::EmptyBounds { lower, upper } => {
                write!(f, "bounds {lower}..{upper} contain no possible cost")
            }
            Error::Overflow => write!(f, "cost arithmetic overflowed"),
            Error::List(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<list::Error> for Error {
    fn from(e: list::Error) -> Self {
        Error::List(e)
    }
}

fn triangular(n: u64) -> Result<u64, Error> {
    n.checked_add(1)
        .and_then(|m| n.checked_mul(m))
        .map(|v| v / 2)
        .ok_or(Error::Overflow)
}

fn square(n: u64) -> Result<u64, Error> {
    n.checked_mul(n).ok_or(Error::Overflow)
}

/// Exact cost of serving a list of `n` elements in list order: `n(n+1)/2`.
pub fn predict_type_i(n: u64) -> Result<CostPrediction, Error> {
    if n == 0 {
        return Err(Error::NonPositiveSize);
    }
    Ok(CostPrediction {
        source: Source::Theorem1,
        prediction: Prediction::Exact(triangular(n)?),
    })
}

/// Exact cost of serving a list of `n` elements in reversed order: `n^2`
/// (every access lands on the current last position).
pub fn predict_type_ii(n: u64) -> Result<CostPrediction, Error> {
    if n == 0 {
        return Err(Error::NonPositiveSize);
    }
    Ok(CostPrediction {
        source: Source::Theorem2,
        prediction: Prediction::Exact(square(n)?),
    })
}

/// Strict bounds for any permutation that is neither the list order nor
/// its reversal: the total lies strictly between `n(n+1)/2` and `n^2`.
pub fn bounds_type_iii(n: u64) -> Result<CostPrediction, Error> {
    if n < 3 {
        return Err(Error::NoTypeThreePermutations { n });
    }
    Ok(CostPrediction {
        source: Source::Corollary1,
        prediction: Prediction::strict_bounds(triangular(n)?, square(n)?)?,
    })
}

/// Exact cost of requesting the element at list position `p` (1-indexed,
/// `p <= l`) `n` times in a row: `n + p - 1`.
pub fn predict_type_iv(n: u64, p: u64, l: u64) -> Result<CostPrediction, Error> {
    if n == 0 || l == 0 {
        return Err(Error::NonPositiveSize);
    }
    if p == 0 || p > l {
        return Err(Error::PositionOutOfRange {
            position: p,
            bound: l,
        });
    }
    let total = n.checked_add(p - 1).ok_or(Error::Overflow)?;
    Ok(CostPrediction {
        source: Source::Theorem3,
        prediction: Prediction::Exact(total),
    })
}

/// Inclusive envelope of [`predict_type_iv`] over every position of a
/// list of length `l`: `[n, n + l - 1]`. Both ends are attained (at `p=1`
/// and `p=l`); with `n = l` the top is `2n - 1`.
pub fn envelope_type_iv(n: u64, l: u64) -> Result<CostPrediction, Error> {
    if n == 0 || l == 0 {
        return Err(Error::NonPositiveSize);
    }
    let max = n.checked_add(l - 1).ok_or(Error::Overflow)?;
    Ok(CostPrediction {
        source: Source::Corollary2,
        prediction: Prediction::envelope(n, max)?,
    })
}

fn check_base_cost(base_cost: u64, n: u64) -> Result<(), Error> {
    let min = triangular(n)?;
    let max = square(n)?;
    if base_cost < min || base_cost > max {
        return Err(Error::ImpossibleBaseCost {
            cost: base_cost,
            min,
            max,
        });
    }
    Ok(())
}

/// Exact cost of a base permutation of `n` distinct elements costing
/// `base_cost`, after every request is expanded into `k` consecutive
/// copies: `base_cost + n(k - 1)`.
pub fn predict_uniform_blocks(base_cost: u64, n: u64, k: u64) -> Result<CostPrediction, Error> {
    if n == 0 {
        return Err(Error::NonPositiveSize);
    }
    if k == 0 {
        return Err(Error::ZeroRepeat { index: 0 });
    }
    check_base_cost(base_cost, n)?;
    let extra = n.checked_mul(k - 1).ok_or(Error::Overflow)?;
    let total = base_cost.checked_add(extra).ok_or(Error::Overflow)?;
    Ok(CostPrediction {
        source: Source::Theorem4,
        prediction: Prediction::Exact(total),
    })
}

/// Exact cost when the `i`-th request expands into `repeats[i]`
/// consecutive copies: `base_cost + sum(repeats[i] - 1)`.
pub fn predict_varying_blocks(base_cost: u64, repeats: &[u64]) -> Result<CostPrediction, Error> {
    if repeats.is_empty() {
        return Err(Error::NonPositiveSize);
    }
    check_base_cost(base_cost, repeats.len() as u64)?;
    let mut total = base_cost;
    for (index, &k) in repeats.iter().enumerate() {
        if k == 0 {
            return Err(Error::ZeroRepeat { index });
        }
        total = total.checked_add(k - 1).ok_or(Error::Overflow)?;
    }
    Ok(CostPrediction {
        source: Source::Theorem5,
        prediction: Prediction::Exact(total),
    })
}

/// A distinct-element base sequence plus one repeat count per request.
/// [`expand`](Self::expand) replaces the `i`-th request with `repeats[i]`
/// consecutive copies, keeping the base order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRepetitionSpec {
    base: RequestSequence,
    repeats: Vec<u64>,
}

impl BlockRepetitionSpec {
    pub fn new(base: RequestSequence, repeats: Vec<u64>) -> Result<Self, Error> {
        if repeats.len() != base.len() {
            return Err(Error::RepeatLengthMismatch {
                base_len: base.len(),
                repeats_len: repeats.len(),
            });
        }
        for (i, a) in base.requests().iter().enumerate() {
            if base.requests()[..i].contains(a) {
                return Err(Error::DuplicateBaseElement(*a));
            }
        }
        if let Some(index) = repeats.iter().position(|&k| k == 0) {
            return Err(Error::ZeroRepeat { index });
        }
        Ok(BlockRepetitionSpec { base, repeats })
    }

    /// Every request expanded the same number of times.
    pub fn uniform(base: RequestSequence, k: u64) -> Result<Self, Error> {
        let repeats = alloc::vec![k; base.len()];
        BlockRepetitionSpec::new(base, repeats)
    }

    pub fn base(&self) -> &RequestSequence {
        &self.base
    }

    pub fn repeats(&self) -> &[u64] {
        &self.repeats
    }

    pub fn expanded_len(&self) -> u64 {
        self.repeats.iter().sum()
    }

    /// Whether the base requests every element of `list` (so the expansion
    /// exercises the whole list).
    pub fn covers(&self, list: &ListState) -> bool {
        list.elements()
            .iter()
            .all(|e| self.base.requests().contains(e))
    }

    pub fn expand(&self) -> RequestSequence {
        let mut requests = Vec::with_capacity(self.expanded_len() as usize);
        for (&element, &k) in self.base.requests().iter().zip(&self.repeats) {
            for _ in 0..k {
                requests.push(element);
            }
        }
        RequestSequence::new(&requests).expect("expansion of a non-empty base is non-empty")
    }
}

/// Runs move-to-front over `sequence` under `model` and grades
/// `prediction` against the simulated total. A violation is a reported
/// status, not an error; errors mean the simulation itself was impossible.
pub fn verify_with_model(
    prediction: &CostPrediction,
    list: &ListState,
    sequence: &RequestSequence,
    model: CostModel,
) -> Result<VerificationReport, Error> {
    let trace = serve(list, sequence, Algorithm::MoveToFront, model)?;
    Ok(VerificationReport {
        source: prediction.source,
        prediction: prediction.prediction,
        simulated: trace.total_cost,
        status: prediction.prediction.status_of(trace.total_cost),
    })
}

/// [`verify_with_model`] under the full cost model, which is what every
/// law in this module predicts.
pub fn verify(
    prediction: &CostPrediction,
    list: &ListState,
    sequence: &RequestSequence,
) -> Result<VerificationReport, Error> {
    verify_with_model(prediction, list, sequence, CostModel::Full)
}
