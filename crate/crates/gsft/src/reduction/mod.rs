//! Dimension-changing reductions between subshifts.
//!
//! Two constructions: lifting an SFT from a subgroup to the ambient group
//! along a coset embedding (emptiness transfers both ways), and compiling a
//! one-step plane SFT into an SFT on a group with a designated central
//! generator and a subword-free ray (plane configurations transfer along the
//! ray lines). Both directions of the configuration transfer ship as
//! executable functions restricted to balls.

mod ray;
mod transfer;

pub use ray::{find_ray, RayWord};
pub use transfer::{decode_g_config, encode_z2_config, EncodeResult, Z2Config, Z2Patch};

use crate::group::{CosetEmbedding, GroupElement, GroupError, GroupModel};
use crate::sft::{Alphabet, Pattern, PartialConfiguration, SftDefinition, SftError, SymbolId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error("expected an SFT over {expected}, got {found}")]
    WrongBase { expected: String, found: String },
    #[error("model {model} declares no designated central generator")]
    MissingCentral { model: String },
    #[error("model {model} has no non-central generator to carry the second alphabet component")]
    NoSecondDirection { model: String },
    #[error("ray is over {ray_model}, target is {target}")]
    RayModelMismatch { ray_model: String, target: String },
    #[error("ray partial products p_{i} and p_{j} differ by a central power")]
    RayNotSubwordFree { i: usize, j: usize },
    #[error("ray provides {have} verified letters, {needed} needed")]
    RayTooShort { needed: usize, have: usize },
    #[error("no subword-free ray found for {model} within budget")]
    RayNotFound { model: String },
    #[error("configuration support misses {element}, needed by the transfer")]
    InsufficientSupport { element: String },
    #[error("second components disagree along the line of {element}")]
    InconsistentComponent { element: String },
    #[error("plane configuration violates the base SFT at column {col}, row {row} ({direction})")]
    BaseConfigInadmissible {
        col: i64,
        row: i64,
        direction: &'static str,
    },
    #[error("symbol id {symbol} does not fit the base alphabet of size {size}")]
    SymbolOutOfAlphabet { symbol: SymbolId, size: usize },
}

/// One-step SFT compiled from a plane SFT onto a target group, together
/// with everything needed to move configurations across: the base SFT, the
/// pairing of base symbols with direction indices, the ray, and the rule
/// tag of every forbidden pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSft {
    pub base: SftDefinition,
    pub sft: SftDefinition,
    pub ray: RayWord,
    /// "I" / "II" / "III", aligned with `sft.forbidden`.
    pub rule_tags: Vec<&'static str>,
}

impl ReducedSft {
    pub fn target(&self) -> &GroupModel {
        &self.sft.model
    }

    /// Directions usable as second components, 1-based generator positions
    /// 2..=n (position 1 is the central generator).
    pub fn direction_count(&self) -> usize {
        self.sft.model.generator_count() - 1
    }

    /// Symbol id of the pair (base symbol, direction position i in 2..=n).
    pub fn pair_symbol(&self, base: SymbolId, position: usize) -> SymbolId {
        debug_assert!((2..=self.sft.model.generator_count()).contains(&position));
        base * self.direction_count() + (position - 2)
    }

    /// Inverse of `pair_symbol`.
    pub fn split_symbol(&self, sym: SymbolId) -> (SymbolId, usize) {
        (sym / self.direction_count(), sym % self.direction_count() + 2)
    }
}

fn pair_alphabet(base: &Alphabet, n: usize) -> Result<Alphabet, SftError> {
    let mut names = Vec::new();
    for a in 0..base.len() {
        for i in 2..=n {
            names.push(format!("{}:{}", base.name(a), i));
        }
    }
    Alphabet::new(names)
}

/// Compiles a one-step plane SFT into a one-step SFT on `target`. The
/// alphabet becomes (base symbol, direction) pairs; three forbidden-pattern
/// families keep directions constant along central lines (I), impose the
/// horizontal relation along central lines (II), and impose the vertical
/// relation across each non-central generator (III). Everything else is
/// allowed.
pub fn reduce_z2_to_g(
    s: &SftDefinition,
    target: &GroupModel,
    ray: &RayWord,
) -> Result<ReducedSft, ReductionError> {
    if s.model != GroupModel::FreeAbelian(2) {
        return Err(ReductionError::WrongBase {
            expected: "z2".into(),
            found: s.model.name(),
        });
    }
    let view = s.one_step_view().map_err(ReductionError::Sft)?;
    if target.central_generator() != Some(0) {
        return Err(ReductionError::MissingCentral {
            model: target.name(),
        });
    }
    let n = target.generator_count();
    if n < 2 {
        return Err(ReductionError::NoSecondDirection {
            model: target.name(),
        });
    }
    if ray.model() != target {
        return Err(ReductionError::RayModelMismatch {
            ray_model: ray.model().name(),
            target: target.name(),
        });
    }

    let alphabet = pair_alphabet(&s.alphabet, n).map_err(ReductionError::Sft)?;
    let na = s.alphabet.len();
    let dirs = n - 1;
    let pair = |a: SymbolId, i: usize| a * dirs + (i - 2);
    let g1 = target.generator(0);
    let mut forbidden = Vec::new();
    let mut rule_tags = Vec::new();
    let push = |cells: Vec<(GroupElement, SymbolId)>, tag: &'static str,
                    forbidden: &mut Vec<Pattern>,
                    rule_tags: &mut Vec<&'static str>|
     -> Result<(), ReductionError> {
        forbidden.push(Pattern::new(target, cells, alphabet.len()).map_err(ReductionError::Sft)?);
        rule_tags.push(tag);
        Ok(())
    };

    // (I) the direction component is constant along central lines.
    for a in 0..na {
        for i in 2..=n {
            for b in 0..na {
                for j in 2..=n {
                    if i == j {
                        continue;
                    }
                    push(
                        vec![
                            (target.identity(), pair(a, i)),
                            (g1.clone(), pair(b, j)),
                        ],
                        "I",
                        &mut forbidden,
                        &mut rule_tags,
                    )?;
                }
            }
        }
    }
    // (II) the horizontal relation holds along central lines.
    for a in 0..na {
        for b in 0..na {
            if view.allowed(0, a, b) {
                continue;
            }
            for i in 2..=n {
                push(
                    vec![
                        (target.identity(), pair(a, i)),
                        (g1.clone(), pair(b, i)),
                    ],
                    "II",
                    &mut forbidden,
                    &mut rule_tags,
                )?;
            }
        }
    }
    // (III) the vertical relation holds across the generator named by the
    // direction component, whatever direction sits above.
    for i in 2..=n {
        let gi = target.generator(i - 1);
        for a in 0..na {
            for b in 0..na {
                if view.allowed(1, a, b) {
                    continue;
                }
                for j in 2..=n {
                    push(
                        vec![
                            (target.identity(), pair(a, i)),
                            (gi.clone(), pair(b, j)),
                        ],
                        "III",
                        &mut forbidden,
                        &mut rule_tags,
                    )?;
                }
            }
        }
    }

    let sft = SftDefinition::new(target.clone(), alphabet, forbidden)
        .map_err(ReductionError::Sft)?;
    Ok(ReducedSft {
        base: s.clone(),
        sft,
        ray: ray.clone(),
        rule_tags,
    })
}

/// Re-indexes the forbidden patterns of a subgroup SFT through the
/// embedding, yielding an SFT over the ambient group with the same
/// alphabet. Emptiness is preserved in both directions.
pub fn lift_subgroup_sft(
    s_h: &SftDefinition,
    e: &CosetEmbedding,
) -> Result<SftDefinition, ReductionError> {
    if s_h.model != e.subgroup {
        return Err(ReductionError::WrongBase {
            expected: e.subgroup.name(),
            found: s_h.model.name(),
        });
    }
    let mut forbidden = Vec::new();
    for p in &s_h.forbidden {
        let cells = p
            .cells()
            .iter()
            .map(|(h, sym)| Ok((e.embed(h)?, *sym)))
            .collect::<Result<Vec<_>, ReductionError>>()?;
        forbidden.push(
            Pattern::new(&e.ambient, cells, s_h.alphabet.len()).map_err(ReductionError::Sft)?,
        );
    }
    SftDefinition::new(e.ambient.clone(), s_h.alphabet.clone(), forbidden)
        .map_err(ReductionError::Sft)
}

/// Pulls a subgroup configuration up to the ambient group on a window:
/// c'(g) = c(h(g)) where g = f(g) * embed(h(g)). Every window element must
/// decompose to a supported subgroup point.
pub fn lift_configuration(
    c: &PartialConfiguration,
    e: &CosetEmbedding,
    window: &[GroupElement],
) -> Result<PartialConfiguration, ReductionError> {
    let mut out = PartialConfiguration::new(c.alphabet.clone());
    for g in window {
        let (_rep, h) = e.decompose(g)?;
        let sym = c.get(&h).ok_or_else(|| ReductionError::InsufficientSupport {
            element: e.subgroup.display(&h),
        })?;
        out.set(g.clone(), sym).map_err(ReductionError::Sft)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deciders::{ball_admissibility_search, decide_z, SearchOutcome, DEFAULT_NODE_BUDGET};
    use crate::sft::locally_admissible;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a", "b"]).unwrap()
    }

    fn checkerboard_z2() -> SftDefinition {
        let differ = vec![false, true, true, false];
        SftDefinition::one_step(GroupModel::FreeAbelian(2), ab(), &[differ.clone(), differ])
            .unwrap()
    }

    fn heis_ray() -> RayWord {
        RayWord::new(GroupModel::Heisenberg, Vec::new(), vec![1], 64).unwrap()
    }

    /// Counts patterns of each rule tag by independent re-enumeration of
    /// the schema sizes.
    #[test]
    fn rule_counts_match_schema() {
        let r = reduce_z2_to_g(&checkerboard_z2(), &GroupModel::Heisenberg, &heis_ray()).unwrap();
        let n = 3usize; // generators z, x, y
        let na = 2usize;
        let count = |tag: &str| r.rule_tags.iter().filter(|t| **t == tag).count();
        assert_eq!(count("I"), na * na * (n - 1) * (n - 2));
        assert_eq!(count("II"), 2 * (n - 1)); // two disallowed horizontal pairs
        assert_eq!(count("III"), 2 * (n - 1) * (n - 1));
        assert_eq!(r.sft.forbidden.len(), 8 + 4 + 8);
        assert_eq!(r.sft.alphabet.len(), na * (n - 1));
        assert!(r.sft.is_one_step());
    }

    #[test]
    fn singleton_alphabet_all_allowed_only_rule_one_fires() {
        let one = Alphabet::new(vec!["a"]).unwrap();
        let s = SftDefinition::one_step(
            GroupModel::FreeAbelian(2),
            one,
            &[vec![true], vec![true]],
        )
        .unwrap();
        let r = reduce_z2_to_g(&s, &GroupModel::Heisenberg, &heis_ray()).unwrap();
        assert_eq!(r.sft.alphabet.len(), 2);
        assert_eq!(r.rule_tags, vec!["I", "I"]);
    }

    #[test]
    fn reduction_rejects_bad_targets() {
        let s = checkerboard_z2();
        let free2 = GroupModel::FreeGroup(2);
        let ray = heis_ray();
        assert!(matches!(
            reduce_z2_to_g(&s, &free2, &ray),
            Err(ReductionError::MissingCentral { .. })
        ));
        let z = GroupModel::FreeAbelian(1);
        assert!(matches!(
            reduce_z2_to_g(&s, &z, &ray),
            Err(ReductionError::NoSecondDirection { .. })
        ));
        let z2 = GroupModel::FreeAbelian(2);
        assert!(matches!(
            reduce_z2_to_g(&s, &z2, &ray),
            Err(ReductionError::RayModelMismatch { .. })
        ));
    }

    #[test]
    fn all_vertical_forbidden_reduces_to_inadmissible() {
        // Base empty for a visible reason: no vertical pair is allowed.
        let s = SftDefinition::one_step(
            GroupModel::FreeAbelian(2),
            ab(),
            &[vec![true; 4], vec![false; 4]],
        )
        .unwrap();
        let r = reduce_z2_to_g(&s, &GroupModel::Heisenberg, &heis_ray()).unwrap();
        let out = ball_admissibility_search(&r.sft, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert!(matches!(out, SearchOutcome::Inadmissible { .. }));
    }

    #[test]
    fn lift_one_step_z_sft_constrains_one_direction() {
        // Forbid (a, a) adjacency on the line, lift along the x-axis.
        let m = GroupModel::FreeAbelian(1);
        let not_aa = vec![false, true, true, true];
        let s_h = SftDefinition::one_step(m, ab(), &[not_aa]).unwrap();
        let e = CosetEmbedding::z_in_z2();
        let s_g = lift_subgroup_sft(&s_h, &e).unwrap();
        assert_eq!(s_g.model, GroupModel::FreeAbelian(2));
        assert_eq!(s_g.forbidden.len(), 1);
        assert_eq!(
            s_g.forbidden[0].cells()[1].0,
            GroupElement::Abelian(vec![1, 0])
        );
        // Alternating in x, constant in y, admissible on the radius-3 ball.
        let mut c = PartialConfiguration::new(ab());
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                if x.abs() + y.abs() <= 3 {
                    c.set(GroupElement::Abelian(vec![x, y]), x.rem_euclid(2) as usize)
                        .unwrap();
                }
            }
        }
        assert!(locally_admissible(&c, &s_g).unwrap());
    }

    #[test]
    fn lift_transfers_emptiness_for_all_two_symbol_z_sfts() {
        let e = CosetEmbedding::z_in_z2();
        for mask in 0u32..16 {
            let table: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
            let s_h =
                SftDefinition::one_step(GroupModel::FreeAbelian(1), ab(), &[table]).unwrap();
            let s_g = lift_subgroup_sft(&s_h, &e).unwrap();
            let verdict = decide_z(&s_h).unwrap();
            let out = ball_admissibility_search(&s_g, 3, DEFAULT_NODE_BUDGET).unwrap();
            if verdict.is_empty_verdict() {
                assert!(
                    matches!(out, SearchOutcome::Inadmissible { .. }),
                    "mask {mask:04b}"
                );
            } else {
                assert!(
                    matches!(out, SearchOutcome::Admissible { .. }),
                    "mask {mask:04b}"
                );
            }
        }
    }

    #[test]
    fn lift_configuration_copies_along_cosets() {
        // Alternating on the line, lifted to constant columns.
        let mut c = PartialConfiguration::new(ab());
        for k in -4..=4i64 {
            c.set(GroupElement::Abelian(vec![k]), k.rem_euclid(2) as usize)
                .unwrap();
        }
        let e = CosetEmbedding::z_in_z2();
        let ball = crate::group::BallGraph::build(&GroupModel::FreeAbelian(2), 2, 1 << 16).unwrap();
        let lifted = lift_configuration(&c, &e, &ball.vertices).unwrap();
        for (g, sym) in lifted.iter() {
            let GroupElement::Abelian(v) = g else { unreachable!() };
            assert_eq!(sym, v[0].rem_euclid(2) as usize, "at {v:?}");
        }
        // Window on the embedded line recovers c itself.
        let line: Vec<GroupElement> = (-2..=2i64)
            .map(|k| GroupElement::Abelian(vec![k, 0]))
            .collect();
        let on_line = lift_configuration(&c, &e, &line).unwrap();
        for k in -2..=2i64 {
            assert_eq!(
                on_line.get(&GroupElement::Abelian(vec![k, 0])),
                c.get(&GroupElement::Abelian(vec![k]))
            );
        }
        // Out-of-support window points are reported.
        let far = vec![GroupElement::Abelian(vec![9, 0])];
        assert!(matches!(
            lift_configuration(&c, &e, &far),
            Err(ReductionError::InsufficientSupport { .. })
        ));
    }
}
