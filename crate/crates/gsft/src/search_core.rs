//! Shared backtracking core for exhaustive ball searches.
//!
//! Forbidden-pattern occurrences inside a ball are compiled once. The
//! backtracker assigns vertices in canonical BFS index order trying symbols
//! in alphabet order, with forward checking: each placement prunes symbols
//! of later vertices that would complete a forbidden occurrence, so dead
//! branches fail at the choice that caused them instead of after exploring
//! unrelated subtrees. Pruned symbols can appear in no completion of the
//! current prefix, so the enumeration order of complete assignments is the
//! same as for plain chronological backtracking; in particular the first
//! one found is the lexicographically least admissible assignment.

use std::collections::HashSet;

use crate::group::BallGraph;
use crate::sft::{SftDefinition, SftError, SymbolId};

pub(crate) struct Compiled {
    pub vertex_count: usize,
    pub symbol_count: usize,
    /// Each occurrence is a list of (vertex index, required symbol),
    /// sorted by vertex.
    occurrences: Vec<Vec<(usize, SymbolId)>>,
    /// by_vertex[v] indexes the occurrences with a cell at v.
    by_vertex: Vec<Vec<usize>>,
}

pub(crate) fn compile(s: &SftDefinition, ball: &BallGraph) -> Result<Compiled, SftError> {
    let mut occurrences: Vec<Vec<(usize, SymbolId)>> = Vec::new();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); ball.len()];
    for p in &s.forbidden {
        let d0_inv = s.model.inverse(&p.cells()[0].0)?;
        let mut seen: HashSet<_> = HashSet::new();
        for v in &ball.vertices {
            // Positions aligning the first domain cell with a ball vertex
            // cover every occurrence whose domain lies fully inside.
            let at = s.model.multiply(v, &d0_inv)?;
            if !seen.insert(at.clone()) {
                continue;
            }
            let mut cells = Vec::with_capacity(p.len());
            let mut inside = true;
            for (j, sym) in p.cells() {
                match ball.index_of(&s.model.multiply(&at, j)?) {
                    Some(i) => cells.push((i, *sym)),
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                cells.sort_unstable();
                for &(v, _) in &cells {
                    by_vertex[v].push(occurrences.len());
                }
                occurrences.push(cells);
            }
        }
    }
    Ok(Compiled {
        vertex_count: ball.len(),
        symbol_count: s.alphabet.len(),
        occurrences,
        by_vertex,
    })
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
pub(crate) enum SearchEnd {
    /// Whole space explored without the callback stopping the walk.
    Exhausted,
    /// Callback asked to stop (witness accepted, cap reached, ...).
    Stopped,
    BudgetExceeded,
}

pub(crate) struct SearchStats {
    pub nodes: u64,
    pub end: SearchEnd,
}

/// Domain bookkeeping for forward checking, with an undo trail.
struct Domains {
    symbol_count: usize,
    pruned: Vec<bool>,
    live: Vec<usize>,
    trail: Vec<usize>,
}

impl Domains {
    fn new(vertex_count: usize, symbol_count: usize) -> Domains {
        Domains {
            symbol_count,
            pruned: vec![false; vertex_count * symbol_count],
            live: vec![symbol_count; vertex_count],
            trail: Vec::new(),
        }
    }

    fn is_pruned(&self, v: usize, s: SymbolId) -> bool {
        self.pruned[v * self.symbol_count + s]
    }

    /// Prunes (v, s); true when v's domain just became empty.
    fn prune(&mut self, v: usize, s: SymbolId) -> bool {
        let i = v * self.symbol_count + s;
        if !self.pruned[i] {
            self.pruned[i] = true;
            self.trail.push(i);
            self.live[v] -= 1;
        }
        self.live[v] == 0
    }

    fn rewind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().expect("trail is non-empty");
            self.pruned[i] = false;
            self.live[i / self.symbol_count] += 1;
        }
    }
}

/// Exhaustive depth-first enumeration of admissible complete assignments.
/// `on_complete` receives each admissible assignment; returning false stops
/// the walk. Every attempted symbol placement costs one budget node.
pub(crate) fn backtrack<F: FnMut(&[SymbolId]) -> bool>(
    c: &Compiled,
    budget: u64,
    mut on_complete: F,
) -> SearchStats {
    let nv = c.vertex_count;
    let ns = c.symbol_count;
    let mut assign: Vec<SymbolId> = Vec::with_capacity(nv);
    let mut domains = Domains::new(nv, ns);
    // Trail length at each successful placement, for undoing its prunes.
    let mut frames: Vec<usize> = Vec::with_capacity(nv);
    let mut nodes: u64 = 0;

    // Propagates the placement of `assign[d]`: occurrences through d that
    // match all assigned cells either are complete (conflict) or prune
    // their single open cell. Cells past d are open since vertices are
    // assigned in index order. Returns false on conflict.
    let propagate = |assign: &[SymbolId], domains: &mut Domains, d: usize| -> bool {
        'occurrences: for &oi in &c.by_vertex[d] {
            let occ = &c.occurrences[oi];
            let mut open: Option<(usize, SymbolId)> = None;
            for &(v, s) in occ {
                if v <= d {
                    if assign[v] != s {
                        continue 'occurrences;
                    }
                } else if open.is_some() {
                    continue 'occurrences; // two open cells: defer
                } else {
                    open = Some((v, s));
                }
            }
            match open {
                None => return false, // forbidden occurrence fully placed
                Some((v, s)) => {
                    if domains.prune(v, s) {
                        return false;
                    }
                }
            }
        }
        true
    };

    // Places the next consistent symbol >= `from` at the current depth.
    let place = |assign: &mut Vec<SymbolId>,
                 domains: &mut Domains,
                 frames: &mut Vec<usize>,
                 from: SymbolId,
                 nodes: &mut u64|
     -> Option<bool> {
        let depth = assign.len();
        let mut sym = from;
        while sym < ns {
            if domains.is_pruned(depth, sym) {
                sym += 1;
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            assign.push(sym);
            let mark = domains.trail.len();
            if propagate(assign, domains, depth) {
                frames.push(mark);
                return Some(true);
            }
            domains.rewind(mark);
            assign.pop();
            sym += 1;
        }
        Some(false)
    };

    let mut descending = true;
    loop {
        if descending && assign.len() == nv {
            if !on_complete(&assign) {
                return SearchStats {
                    nodes,
                    end: SearchEnd::Stopped,
                };
            }
            descending = false;
            continue;
        }
        if descending {
            match place(&mut assign, &mut domains, &mut frames, 0, &mut nodes) {
                None => {
                    return SearchStats {
                        nodes,
                        end: SearchEnd::BudgetExceeded,
                    }
                }
                Some(true) => {}
                Some(false) => descending = false,
            }
        } else {
            // Backtrack: advance the deepest assigned vertex.
            match assign.pop() {
                None => {
                    return SearchStats {
                        nodes,
                        end: SearchEnd::Exhausted,
                    }
                }
                Some(prev) => {
                    domains.rewind(frames.pop().expect("frame per placement"));
                    match place(&mut assign, &mut domains, &mut frames, prev + 1, &mut nodes) {
                        None => {
                            return SearchStats {
                                nodes,
                                end: SearchEnd::BudgetExceeded,
                            }
                        }
                        Some(true) => descending = true,
                        Some(false) => {}
                    }
                }
            }
        }
    }
}
