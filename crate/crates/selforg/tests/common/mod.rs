//! A deliberately naive re-implementation of the three rearrangement
//! rules, used only to cross-check the library's simulator. It works on
//! plain `u64` arrays, rescans from scratch at every step, and realizes
//! frequency count as a stable sort by descending count instead of a
//! move-forward rule — an independent path to the same answers.

use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveAlgorithm {
    MoveToFront,
    Transpose,
    FrequencyCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveStep {
    pub request: u64,
    pub position: usize,
    pub cost: u64,
    pub list_after: Vec<u64>,
}

/// Serves `requests` against `list`, returning every step and the total.
/// Panics on a request outside the list; callers only feed valid input.
pub fn naive_serve(
    list: &[u64],
    requests: &[u64],
    algorithm: NaiveAlgorithm,
    full_cost: bool,
) -> (Vec<NaiveStep>, u64) {
    let mut state: Vec<u64> = list.to_vec();
    let mut counts: HashMap<u64, u64> = HashMap::new();
    let mut steps = Vec::new();
    let mut total = 0u64;

    for &request in requests {
        let found = state
            .iter()
            .position(|&e| e == request)
            .expect("request not in list");
        let position = found + 1;
        let cost = if full_cost { position as u64 } else { found as u64 };

        match algorithm {
            NaiveAlgorithm::MoveToFront => {
                let mut rebuilt = vec![request];
                rebuilt.extend(state.iter().copied().filter(|&e| e != request));
                state = rebuilt;
            }
            NaiveAlgorithm::Transpose => {
                if found > 0 {
                    state.swap(found, found - 1);
                }
            }
            NaiveAlgorithm::FrequencyCount => {
                *counts.entry(request).or_insert(0) += 1;
                // Stable sort by descending count: elements with equal
                // counts keep their current relative order, which is the
                // same thing as "move forward past strictly smaller
                // counts" when the list is already count-ordered.
                state.sort_by(|a, b| {
                    let ca = counts.get(a).copied().unwrap_or(0);
                    let cb = counts.get(b).copied().unwrap_or(0);
                    cb.cmp(&ca)
                });
            }
        }

        total += cost;
        steps.push(NaiveStep {
            request,
            position,
            cost,
            list_after: state.clone(),
        });
    }

    (steps, total)
}
