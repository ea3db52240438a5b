//! Higher-block recoding to one-step form.
//!
//! Blocks are ball-shaped: radius m is the largest word norm over forbidden
//! domains, the new alphabet is the set of locally admissible assignments of
//! the m-ball, and the new forbidden patterns are the one-step overlap
//! constraints between adjacent blocks. Emptiness is preserved: a
//! configuration and its block recoding determine each other.

use crate::group::BallGraph;
use crate::search_core::{self, SearchEnd};
use crate::sft::{Alphabet, Pattern, SftDefinition, SftError};

/// Hard ceiling on enumerated blocks; recoding is a desk-scale tool.
const BLOCK_CAP: usize = 1 << 16;
const NORM_CAP: usize = 1 << 20;

pub fn to_one_step(s: &SftDefinition) -> Result<SftDefinition, SftError> {
    if s.is_one_step() {
        return Ok(s.clone());
    }
    let model = &s.model;
    let mut m = 0u32;
    for p in &s.forbidden {
        for g in p.domain() {
            m = m.max(model.word_norm(g, NORM_CAP)?);
        }
    }
    let ball = BallGraph::build(model, m, NORM_CAP)?;
    let blocks = admissible_blocks(s, &ball)?;

    let names: Vec<String> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&sym| s.alphabet.name(sym))
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let alphabet = Alphabet::new(names)?;

    // Overlap consistency: blocks q at p and q' at p * g_i must agree on the
    // shared cells, q(g_i * v) = q'(v) whenever both points are in the ball.
    let mut forbidden = Vec::new();
    for i in 0..model.generator_count() {
        let gi = model.generator(i);
        let mut shared: Vec<(usize, usize)> = Vec::new();
        for (vi, v) in ball.vertices.iter().enumerate() {
            if let Some(si) = ball.index_of(&model.multiply(&gi, v)?) {
                shared.push((si, vi));
            }
        }
        for (qa, a) in blocks.iter().enumerate() {
            for (qb, b) in blocks.iter().enumerate() {
                if shared.iter().any(|&(si, vi)| a[si] != b[vi]) {
                    forbidden.push(Pattern::new(
                        model,
                        vec![(model.identity(), qa), (gi.clone(), qb)],
                        blocks.len(),
                    )?);
                }
            }
        }
    }
    SftDefinition::new(model.clone(), alphabet, forbidden)
}

/// Enumerates locally admissible assignments of the ball in canonical order
/// (vertices in BFS order, symbols in alphabet order).
fn admissible_blocks(s: &SftDefinition, ball: &BallGraph) -> Result<Vec<Vec<usize>>, SftError> {
    let compiled = search_core::compile(s, ball)?;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let stats = search_core::backtrack(&compiled, u64::MAX, |assign| {
        out.push(assign.to_vec());
        out.len() <= BLOCK_CAP
    });
    if stats.end == SearchEnd::Stopped {
        return Err(SftError::RecodeTooLarge { cap: BLOCK_CAP });
    }
    Ok(out)
}
