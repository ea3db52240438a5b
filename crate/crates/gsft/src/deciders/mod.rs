//! Emptiness deciders for one-step SFTs on Z and free groups, plus the
//! exhaustive ball search and semi-decision loop that work on any model.
//!
//! Verdict conventions: Empty carries a re-checkable certificate (an
//! inadmissible radius or the empty surviving-symbol set), Nonempty carries a
//! witness (a periodic cycle or the surviving symbols), Unknown carries the
//! largest admissible ball assignment seen.

mod search;

pub use search::{
    ball_admissibility_search, emptiness_semidecide, emptiness_semidecide_threaded, SearchOutcome,
    DEFAULT_NODE_BUDGET,
};

use crate::sft::{PartialConfiguration, SftDefinition, SftError, SymbolId};
use crate::group::GroupModel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeciderError {
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error("decider expects a one-step SFT over {expected}, got model {found}")]
    WrongModel {
        expected: &'static str,
        found: String,
    },
    #[error("search budget exhausted at radius {radius} after {nodes} nodes")]
    BudgetExhausted { radius: u32, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmptyCertificate {
    /// The ball of this radius admits no locally admissible assignment.
    InadmissibleRadius(u32),
    /// Symbol elimination reached the empty set.
    NoSurvivors,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonemptyWitness {
    /// Periodic cycle read along the generator direction.
    Cycle(Vec<String>),
    /// Symbols surviving elimination.
    Survivors(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnknownReport {
    /// Largest radius that was searched exhaustively.
    pub checked_radius: u32,
    /// Admissible assignment of that ball.
    pub witness: PartialConfiguration,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmptinessVerdict {
    Empty(EmptyCertificate),
    Nonempty(NonemptyWitness),
    Unknown(UnknownReport),
}

impl EmptinessVerdict {
    pub fn is_empty_verdict(&self) -> bool {
        matches!(self, EmptinessVerdict::Empty(_))
    }

    pub fn is_nonempty_verdict(&self) -> bool {
        matches!(self, EmptinessVerdict::Nonempty(_))
    }
}

/// Iteratively removes symbols missing an allowed neighbour among the
/// survivors in some signed direction. Returns the greatest fixed point.
fn eliminate(
    view: &crate::sft::OneStepView,
    directions: usize,
) -> Vec<bool> {
    let n = view.symbol_count;
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            let dead = (0..directions).any(|d| {
                !(0..n).any(|b| {
                    alive[b]
                        && if d % 2 == 0 {
                            view.allowed(d / 2, a, b)
                        } else {
                            view.allowed(d / 2, b, a)
                        }
                })
            });
            if dead {
                alive[a] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

/// Emptiness of a one-step Z-SFT via the symbol digraph: the subshift is
/// nonempty iff the digraph of allowed pairs contains a cycle.
pub fn decide_z(s: &SftDefinition) -> Result<EmptinessVerdict, DeciderError> {
    if s.model != GroupModel::FreeAbelian(1) {
        return Err(DeciderError::WrongModel {
            expected: "z",
            found: s.model.name(),
        });
    }
    let view = s.one_step_view().map_err(DeciderError::Sft)?;
    let alive = eliminate(&view, 2);
    let survivors: Vec<SymbolId> = (0..view.symbol_count).filter(|&a| alive[a]).collect();
    if survivors.is_empty() {
        return Ok(EmptinessVerdict::Empty(EmptyCertificate::NoSurvivors));
    }
    // Walk to the smallest allowed successor until a symbol repeats; the
    // enclosed loop is the canonical witness cycle.
    let mut first_pos: std::collections::HashMap<SymbolId, usize> = Default::default();
    let mut path = vec![survivors[0]];
    first_pos.insert(survivors[0], 0);
    loop {
        let cur = *path.last().unwrap();
        let next = survivors
            .iter()
            .copied()
            .find(|&b| view.allowed(0, cur, b))
            .expect("every survivor keeps an out-neighbour");
        if let Some(&at) = first_pos.get(&next) {
            let cycle = path[at..]
                .iter()
                .map(|&sym| s.alphabet.name(sym).to_string())
                .collect();
            return Ok(EmptinessVerdict::Nonempty(NonemptyWitness::Cycle(cycle)));
        }
        first_pos.insert(next, path.len());
        path.push(next);
    }
}

/// Emptiness of a one-step SFT on a free group: greatest-fixed-point symbol
/// elimination over all signed directions. On the 2k-regular tree a
/// non-empty fixed point extends greedily to a configuration.
pub fn decide_tree(s: &SftDefinition) -> Result<EmptinessVerdict, DeciderError> {
    let GroupModel::FreeGroup(k) = s.model else {
        return Err(DeciderError::WrongModel {
            expected: "free<k>",
            found: s.model.name(),
        });
    };
    let view = s.one_step_view().map_err(DeciderError::Sft)?;
    let alive = eliminate(&view, 2 * k);
    let survivors: Vec<String> = (0..view.symbol_count)
        .filter(|&a| alive[a])
        .map(|a| s.alphabet.name(a).to_string())
        .collect();
    if survivors.is_empty() {
        Ok(EmptinessVerdict::Empty(EmptyCertificate::NoSurvivors))
    } else {
        Ok(EmptinessVerdict::Nonempty(NonemptyWitness::Survivors(
            survivors,
        )))
    }
}
