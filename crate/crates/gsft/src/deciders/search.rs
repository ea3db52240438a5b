//! Exhaustive ball search and the radius-increasing semi-decision loop.

use super::DeciderError;
use super::{EmptinessVerdict, EmptyCertificate, UnknownReport};
use crate::group::{BallGraph, GroupError};
use crate::search_core::{self, SearchEnd};
use crate::sft::{PartialConfiguration, SftDefinition, SymbolId};

/// Default cap on attempted symbol placements per radius.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    /// First admissible assignment of the ball in canonical order, and the
    /// number of placements attempted to reach it.
    Admissible {
        witness: PartialConfiguration,
        nodes: u64,
    },
    /// The ball carries no locally admissible assignment; the whole tree of
    /// partial assignments was refuted within budget.
    Inadmissible { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

fn witness_from(
    s: &SftDefinition,
    ball: &BallGraph,
    assign: &[SymbolId],
) -> PartialConfiguration {
    let mut w = PartialConfiguration::new(s.alphabet.clone());
    for (v, &sym) in assign.iter().enumerate() {
        w.set(ball.vertices[v].clone(), sym).unwrap();
    }
    w
}

/// Searches the radius-`radius` ball for a locally admissible assignment.
/// Deterministic: vertices in breadth-first order, symbols in alphabet
/// order, so the witness is the lexicographically least admissible one.
pub fn ball_admissibility_search(
    s: &SftDefinition,
    radius: u32,
    budget: u64,
) -> Result<SearchOutcome, DeciderError> {
    let cap = usize::try_from(budget).unwrap_or(usize::MAX);
    let ball = match BallGraph::build(&s.model, radius, cap) {
        Ok(b) => b,
        Err(GroupError::BallBudget { .. }) => {
            return Ok(SearchOutcome::BudgetExceeded { nodes: 0 })
        }
        Err(e) => return Err(DeciderError::Sft(e.into())),
    };
    let compiled = search_core::compile(s, &ball)?;
    let mut witness = None;
    let stats = search_core::backtrack(&compiled, budget, |assign| {
        witness = Some(witness_from(s, &ball, assign));
        false
    });
    Ok(match stats.end {
        SearchEnd::Stopped => SearchOutcome::Admissible {
            witness: witness.expect("stop implies a completed assignment"),
            nodes: stats.nodes,
        },
        SearchEnd::Exhausted => SearchOutcome::Inadmissible { nodes: stats.nodes },
        SearchEnd::BudgetExceeded => SearchOutcome::BudgetExceeded { nodes: stats.nodes },
    })
}

fn combine(
    s: &SftDefinition,
    max_radius: u32,
    outcomes: Vec<SearchOutcome>,
) -> Result<EmptinessVerdict, DeciderError> {
    let mut last_witness = None;
    for (r, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            SearchOutcome::Inadmissible { .. } => {
                return Ok(EmptinessVerdict::Empty(EmptyCertificate::InadmissibleRadius(
                    r as u32,
                )))
            }
            SearchOutcome::BudgetExceeded { nodes } => {
                return Err(DeciderError::BudgetExhausted {
                    radius: r as u32,
                    nodes,
                })
            }
            SearchOutcome::Admissible { witness, .. } => last_witness = Some(witness),
        }
    }
    let _ = s;
    Ok(EmptinessVerdict::Unknown(UnknownReport {
        checked_radius: max_radius,
        witness: last_witness.expect("radius 0 always yields an outcome"),
    }))
}

/// Searches balls of radius 0..=max_radius in order. The first inadmissible
/// radius certifies emptiness; if every ball is admissible the verdict is
/// Unknown with the largest witness. Never returns Nonempty: local
/// admissibility of finitely many balls does not extend in general.
pub fn emptiness_semidecide(
    s: &SftDefinition,
    max_radius: u32,
    budget: u64,
) -> Result<EmptinessVerdict, DeciderError> {
    let mut outcomes = Vec::new();
    for r in 0..=max_radius {
        let outcome = ball_admissibility_search(s, r, budget)?;
        let stop = !matches!(outcome, SearchOutcome::Admissible { .. });
        outcomes.push(outcome);
        if stop {
            break;
        }
    }
    combine(s, max_radius, outcomes)
}

/// Same contract and output as `emptiness_semidecide`, radii searched on a
/// thread pool. Each radius keeps its own full budget, so the combined
/// verdict is identical to the sequential one by construction.
pub fn emptiness_semidecide_threaded(
    s: &SftDefinition,
    max_radius: u32,
    budget: u64,
    threads: usize,
) -> Result<EmptinessVerdict, DeciderError> {
    if threads <= 1 {
        return emptiness_semidecide(s, max_radius, budget);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let results: Vec<Result<SearchOutcome, DeciderError>> = pool.install(|| {
        use rayon::prelude::*;
        (0..=max_radius)
            .into_par_iter()
            .map(|r| ball_admissibility_search(s, r, budget))
            .collect()
    });
    let mut outcomes = Vec::new();
    for res in results {
        let outcome = res?;
        let stop = !matches!(outcome, SearchOutcome::Admissible { .. });
        outcomes.push(outcome);
        if stop {
            break;
        }
    }
    combine(s, max_radius, outcomes)
}
