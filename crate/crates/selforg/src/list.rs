//! List state, access costs, and the step-by-step simulator.
//!
//! Positions are 1-indexed throughout: the front of the list is position 1.
//! All three rearrangement rules act through free exchanges only (the
//! accessed element moves toward the front), so every recorded step has a
//! paid-exchange cost of zero; the field exists because the cost model
//! distinguishes the two kinds of exchange.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Identity of a list element. Elements are opaque: only equality matters
/// to the algorithms. The inner value is used for parsing and display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u64);

impl ElementId {
    pub const fn new(id: u64) -> Self {
        ElementId(id)
    }

    pub const fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for ElementId {
    fn from(id: u64) -> Self {
        ElementId(id)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Errors from list construction and access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyList,
    DuplicateElement(ElementId),
    EmptySequence,
    /// A request (or query) names an element the list does not contain.
    /// `request_index` is the 0-based index into the request sequence when
    /// the element came from one, `None` for direct queries. Messages show
    /// the request 1-based, matching step numbering in traces.
    ElementNotInList {
        element: ElementId,
        request_index: Option<usize>,
    },
    PositionOutOfRange {
        position: usize,
        len: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyList => write!(f, "list must contain at least one element"),
            Error::DuplicateElement(e) => write!(f, "duplicate element {e} in list"),
            Error::EmptySequence => {
                write!(f, "request sequence must contain at least one request")
            }
            Error::ElementNotInList {
                element,
                request_index: Some(i),
            } => write!(
                f,
                "request {} asks for element {element} which is not in the list",
                i + 1
            ),
            Error::ElementNotInList {
                element,
                request_index: None,
            } => write!(f, "element {element} is not in the list"),
            Error::PositionOutOfRange { position, len } => {
                write!(f, "position {position} is out of range for a list of length {len}")
            }
        }
    }
}

impl core::error::Error for Error {}

/// An ordered list of distinct elements. Immutable; rearrangement produces
/// a new state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListState {
    elements: Vec<ElementId>,
}

impl ListState {
    /// Builds a list from front to back. Fails on an empty slice or any
    /// repeated element.
    pub fn new(elements: &[ElementId]) -> Result<Self, Error> {
        if elements.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut seen = BTreeMap::new();
        for &e in elements {
            if seen.insert(e, ()).is_some() {
                return Err(Error::DuplicateElement(e));
            }
        }
        Ok(ListState {
            elements: elements.to_vec(),
        })
    }

    /// Convenience constructor over raw ids.
    pub fn from_ids(ids: &[u64]) -> Result<Self, Error> {
        let elements: Vec<ElementId> = ids.iter().copied().map(ElementId::new).collect();
        ListState::new(&elements)
    }

    /// The list `1, 2, ..., l` — the usual initial configuration.
    pub fn numbered(l: usize) -> Result<Self, Error> {
        if l == 0 {
            return Err(Error::EmptyList);
        }
        let elements: Vec<ElementId> = (1..=l as u64).map(ElementId::new).collect();
        Ok(ListState { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a ListState always holds at least one element
    }

    /// Elements from front (position 1) to back (position `len`).
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn contains(&self, element: ElementId) -> bool {
        self.elements.contains(&element)
    }

    /// 1-indexed position of `element`, front = 1.
    pub fn position_of(&self, element: ElementId) -> Result<usize, Error> {
        self.elements
            .iter()
            .position(|&e| e == element)
            .map(|i| i + 1)
            .ok_or(Error::ElementNotInList {
                element,
                request_index: None,
            })
    }

    /// Element at 1-indexed `position`.
    pub fn element_at(&self, position: usize) -> Result<ElementId, Error> {
        if position == 0 || position > self.elements.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.elements.len(),
            });
        }
        Ok(self.elements[position - 1])
    }

    /// The same elements in back-to-front order.
    pub fn reversed(&self) -> ListState {
        let mut elements = self.elements.clone();
        elements.reverse();
        ListState { elements }
    }
}

impl fmt::Display for ListState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A non-empty sequence of requests. Requests may repeat and may name
/// elements outside any particular list; validity against a list is
/// checked when the sequence is served or classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestSequence {
    requests: Vec<ElementId>,
}

impl RequestSequence {
    pub fn new(requests: &[ElementId]) -> Result<Self, Error> {
        if requests.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(RequestSequence {
            requests: requests.to_vec(),
        })
    }

    pub fn from_ids(ids: &[u64]) -> Result<Self, Error> {
        let requests: Vec<ElementId> = ids.iter().copied().map(ElementId::new).collect();
        RequestSequence::new(&requests)
    }

    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a RequestSequence always holds at least one request
    }

    pub fn requests(&self) -> &[ElementId] {
        &self.requests
    }
}

impl fmt::Display for RequestSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.requests.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// How much an access at 1-indexed position `i` costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Access at position `i` costs `i`.
    Full,
    /// Access at position `i` costs `i - 1`; an access at the front is free.
    Partial,
}

impl CostModel {
    pub fn access_cost(self, position: usize) -> u64 {
        match self {
            CostModel::Full => position as u64,
            CostModel::Partial => position as u64 - 1,
        }
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostModel::Full => write!(f, "FULL"),
            CostModel::Partial => write!(f, "PARTIAL"),
        }
    }
}

/// Access counts per element, as maintained by frequency count. Elements
/// never accessed are absent and count as zero.
pub type CountTable = BTreeMap<ElementId, u64>;

fn count_of(counts: &CountTable, element: ElementId) -> u64 {
    counts.get(&element).copied().unwrap_or(0)
}

/// The three memory-free rearrangement rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// The accessed element moves to the front; everything else keeps its
    /// relative order.
    MoveToFront,
    /// The accessed element swaps with its immediate predecessor; an access
    /// at the front changes nothing.
    Transpose,
    /// The list is kept in non-increasing order of access count. The
    /// accessed element (count already updated) moves forward to just
    /// before the first element with a strictly smaller count; it never
    /// passes an element whose count ties its own.
    FrequencyCount,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::MoveToFront,
        Algorithm::Transpose,
        Algorithm::FrequencyCount,
    ];

    /// Rearranges `list` after an access at 1-indexed `position`. For
    /// frequency count, `counts` must already include the access being
    /// applied.
    pub fn apply(
        self,
        list: &ListState,
        position: usize,
        counts: &CountTable,
    ) -> Result<ListState, Error> {
        let len = list.len();
        if position == 0 || position > len {
            return Err(Error::PositionOutOfRange { position, len });
        }
        let idx = position - 1;
        let mut elements = list.elements.clone();
        match self {
            Algorithm::MoveToFront => {
                let e = elements.remove(idx);
                elements.insert(0, e);
            }
            Algorithm::Transpose => {
                if idx > 0 {
                    elements.swap(idx, idx - 1);
                }
            }
            Algorithm::FrequencyCount => {
                let e = elements[idx];
                let c = count_of(counts, e);
                let target = elements[..idx]
                    .iter()
                    .position(|&other| count_of(counts, other) < c);
                if let Some(j) = target {
                    elements.remove(idx);
                    elements.insert(j, e);
                }
            }
        }
        Ok(ListState { elements })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::MoveToFront => write!(f, "MTF"),
            Algorithm::Transpose => write!(f, "TRANSPOSE"),
            Algorithm::FrequencyCount => write!(f, "FREQUENCY_COUNT"),
        }
    }
}

/// One served request: where the element was found, what the access cost,
/// and the list configuration after rearrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessStep {
    pub request: ElementId,
    /// 1-indexed position at which the request was found.
    pub position_found: usize,
    pub access_cost: u64,
    /// Cost of paid exchanges performed after the access. The rules here
    /// use free exchanges only, so this is always zero.
    pub paid_exchange_cost: u64,
    pub list_after: ListState,
}

impl AccessStep {
    pub fn step_cost(&self) -> u64 {
        self.access_cost + self.paid_exchange_cost
    }
}

/// Complete record of serving a request sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessTrace {
    pub initial_list: ListState,
    pub steps: Vec<AccessStep>,
    pub total_cost: u64,
    pub final_list: ListState,
}

/// Serves `sequence` against `list` under the given rule and cost model,
/// recording every step.
///
/// Every request is validated against the element set before any cost is
/// accrued; the error reports the first offending request. Frequency
/// counts start at zero and are incremented before the rearrangement rule
/// sees them.
pub fn serve(
    list: &ListState,
    sequence: &RequestSequence,
    algorithm: Algorithm,
    model: CostModel,
) -> Result<AccessTrace, Error> {
    for (i, &request) in sequence.requests.iter().enumerate() {
        if !list.contains(request) {
            return Err(Error::ElementNotInList {
                element: request,
                request_index: Some(i),
            });
        }
    }

    let mut current = list.clone();
    let mut counts = CountTable::new();
    let mut steps = Vec::with_capacity(sequence.len());
    let mut total_cost = 0u64;

    for &request in &sequence.requests {
        let position_found = current.position_of(request)?;
        let access_cost = model.access_cost(position_found);
        *counts.entry(request).or_insert(0) += 1;
        let list_after = algorithm.apply(&current, position_found, &counts)?;
        total_cost += access_cost;
        steps.push(AccessStep {
            request,
            position_found,
            access_cost,
            paid_exchange_cost: 0,
            list_after: list_after.clone(),
        });
        current = list_after;
    }

    Ok(AccessTrace {
        initial_list: list.clone(),
        steps,
        total_cost,
        final_list: current,
    })
}
