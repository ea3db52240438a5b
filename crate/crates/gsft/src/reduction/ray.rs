//! Rays avoiding the central direction.
//!
//! A ray is an infinite word in positive generators, presented as prefix +
//! repeating period, whose partial products p_0 = 1, p_j = w_1..w_j satisfy
//! subword freedom: p_i^-1 p_j never lies in the cyclic subgroup of the
//! designated central generator for i < j. Freedom is what makes the
//! line-by-line transfer of plane configurations well defined.

use super::ReductionError;
use crate::group::{GroupElement, GroupModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayWord {
    model: GroupModel,
    prefix: Vec<usize>,
    period: Vec<usize>,
    /// p_0..p_L, normal forms of the partial products, freedom-verified.
    prefixes: Vec<GroupElement>,
}

impl RayWord {
    /// Builds a ray from generator indices and verifies subword freedom up
    /// to `length` letters.
    pub fn new(
        model: GroupModel,
        prefix: Vec<usize>,
        period: Vec<usize>,
        length: usize,
    ) -> Result<RayWord, ReductionError> {
        let gens = model.generator_count();
        for &g in prefix.iter().chain(period.iter()) {
            if g >= gens {
                return Err(ReductionError::Group(
                    crate::group::GroupError::UnknownGenerator(format!("generator #{g}")),
                ));
            }
        }
        let mut ray = RayWord {
            model,
            prefix,
            period,
            prefixes: Vec::new(),
        };
        ray.prefixes.push(ray.model.identity());
        ray.extend_verified(length)?;
        Ok(ray)
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn prefix_letters(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period_letters(&self) -> &[usize] {
        &self.period
    }

    /// Number of letters whose partial products are verified subword-free.
    pub fn verified_len(&self) -> usize {
        self.prefixes.len() - 1
    }

    /// Generator index of the j-th letter, 1-based as in w_1 w_2 ...
    /// None once a finite ray (empty period) runs out.
    pub fn letter(&self, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let i = j - 1;
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// Normal form of p_j = w_1..w_j; verified range only.
    pub fn prefix_element(&self, j: usize) -> &GroupElement {
        &self.prefixes[j]
    }

    /// Returns a copy verified up to at least `length` letters, reusing the
    /// existing cache. Every newly cached partial product is checked against
    /// all earlier ones.
    pub fn extended(&self, length: usize) -> Result<RayWord, ReductionError> {
        let mut out = self.clone();
        out.extend_verified(length)?;
        Ok(out)
    }

    fn extend_verified(&mut self, length: usize) -> Result<(), ReductionError> {
        while self.verified_len() < length {
            let j = self.verified_len() + 1;
            let Some(g) = self.letter(j) else {
                return Err(ReductionError::RayTooShort {
                    needed: length,
                    have: self.verified_len(),
                });
            };
            let next = self
                .model
                .multiply(self.prefixes.last().unwrap(), &self.model.generator(g))?;
            check_free_against(&self.model, &self.prefixes, &next, j)?;
            self.prefixes.push(next);
        }
        Ok(())
    }
}

/// p_i^-1 * candidate must avoid the central cyclic subgroup for all i < j.
fn check_free_against(
    model: &GroupModel,
    prefixes: &[GroupElement],
    candidate: &GroupElement,
    j: usize,
) -> Result<(), ReductionError> {
    for (i, p) in prefixes.iter().enumerate() {
        let d = model.multiply(&model.inverse(p)?, candidate)?;
        if model.in_cyclic_subgroup(&d)?.is_some() {
            return Err(ReductionError::RayNotSubwordFree { i, j });
        }
    }
    Ok(())
}

/// Searches for a subword-free ray of the given verified length. Pure powers
/// of each non-central generator are tried first (they give one-letter
/// periods); a depth-first search over positive letters is the fallback, and
/// its output is a plain prefix with no period. Every candidate partial
/// product costs one budget unit.
pub fn find_ray(
    model: &GroupModel,
    length: usize,
    budget: u64,
) -> Result<RayWord, ReductionError> {
    let central = model
        .central_generator()
        .ok_or_else(|| ReductionError::MissingCentral {
            model: model.name(),
        })?;
    let gens = model.generator_count();
    for g in 0..gens {
        if g == central {
            continue;
        }
        if let Ok(ray) = RayWord::new(model.clone(), Vec::new(), vec![g], length) {
            return Ok(ray);
        }
    }
    // Depth-first over positive letters, pruning unfree partial products.
    let mut letters: Vec<usize> = Vec::new();
    let mut prefixes = vec![model.identity()];
    let mut nodes: u64 = 0;
    let mut next_try = 0usize;
    loop {
        let mut advanced = false;
        for g in next_try..gens {
            nodes += 1;
            if nodes > budget {
                return Err(ReductionError::RayNotFound {
                    model: model.name(),
                });
            }
            let cand = match model.multiply(prefixes.last().unwrap(), &model.generator(g)) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if check_free_against(model, &prefixes, &cand, letters.len() + 1).is_ok() {
                letters.push(g);
                prefixes.push(cand);
                advanced = true;
                break;
            }
        }
        if advanced {
            if letters.len() == length {
                return RayWord::new(model.clone(), letters, Vec::new(), length);
            }
            next_try = 0;
            continue;
        }
        // Backtrack.
        match letters.pop() {
            None => {
                return Err(ReductionError::RayNotFound {
                    model: model.name(),
                })
            }
            Some(last) => {
                prefixes.pop();
                next_try = last + 1;
            }
        }
    }
}
