//! Moving configurations between the plane and a reduced target group.
//!
//! Encoding seeds the ray lines p_j<g1> with plane row j, then repeatedly
//! extends to any unassigned line whose g_m-translate is assigned, shifting
//! the plane coordinates one row down. Decoding walks the chain of line
//! base points named by the second components and reads rows back off.

use super::{ReducedSft, ReductionError};
use crate::group::{BallGraph, GroupElement, GroupModel};
use crate::sft::{Alphabet, PartialConfiguration, SymbolId};

/// Total plane configuration, periodic in both directions: the value at
/// (col, row) is rows[row mod h][col mod w]. Row 0 is the bottom row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Config {
    rows: Vec<Vec<SymbolId>>,
}

impl Z2Config {
    pub fn periodic(rows: Vec<Vec<SymbolId>>) -> Result<Z2Config, ReductionError> {
        if rows.is_empty() || rows[0].is_empty() || rows.iter().any(|r| r.len() != rows[0].len())
        {
            return Err(ReductionError::WrongBase {
                expected: "non-empty rectangular period".into(),
                found: "ragged or empty rows".into(),
            });
        }
        Ok(Z2Config { rows })
    }

    /// Single symbol everywhere.
    pub fn constant(sym: SymbolId) -> Z2Config {
        Z2Config {
            rows: vec![vec![sym]],
        }
    }

    /// Symbols 0/1 by coordinate-sum parity.
    pub fn checkerboard() -> Z2Config {
        Z2Config {
            rows: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// Horizontal stripes: symbol = row parity.
    pub fn stripes() -> Z2Config {
        Z2Config {
            rows: vec![vec![0], vec![1]],
        }
    }

    pub fn value(&self, col: i64, row: i64) -> SymbolId {
        let h = self.rows.len() as i64;
        let r = &self.rows[row.rem_euclid(h) as usize];
        r[col.rem_euclid(r.len() as i64) as usize]
    }

    pub fn period_rows(&self) -> &[Vec<SymbolId>] {
        &self.rows
    }

    fn max_symbol(&self) -> SymbolId {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Checks the total periodic configuration against a one-step plane
    /// SFT; one period rectangle covers all neighbour pairs.
    fn check_against(&self, base: &crate::sft::SftDefinition) -> Result<(), ReductionError> {
        let view = base.one_step_view().map_err(ReductionError::Sft)?;
        if self.max_symbol() >= base.alphabet.len() {
            return Err(ReductionError::SymbolOutOfAlphabet {
                symbol: self.max_symbol(),
                size: base.alphabet.len(),
            });
        }
        let h = self.rows.len() as i64;
        let w = self.rows[0].len() as i64;
        for row in 0..h {
            for col in 0..w {
                let here = self.value(col, row);
                if !view.allowed(0, here, self.value(col + 1, row)) {
                    return Err(ReductionError::BaseConfigInadmissible {
                        col,
                        row,
                        direction: "horizontal",
                    });
                }
                if !view.allowed(1, here, self.value(col, row + 1)) {
                    return Err(ReductionError::BaseConfigInadmissible {
                        col,
                        row,
                        direction: "vertical",
                    });
                }
            }
        }
        Ok(())
    }
}

/// Rectangular window of a plane configuration; rows[row][col], row 0 at
/// the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Patch {
    pub alphabet: Alphabet,
    pub rows: Vec<Vec<SymbolId>>,
}

impl Z2Patch {
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Plane partial configuration with cell (col, row) at coordinate
    /// (col, row), for admissibility checks against the base SFT.
    pub fn to_partial_configuration(&self) -> PartialConfiguration {
        let mut c = PartialConfiguration::new(self.alphabet.clone());
        for (row, syms) in self.rows.iter().enumerate() {
            for (col, &sym) in syms.iter().enumerate() {
                c.set(GroupElement::Abelian(vec![col as i64, row as i64]), sym)
                    .unwrap();
            }
        }
        c
    }
}

/// Ball-restricted encoding output: the configuration plus any ball
/// vertices the extension could not reach (line fragments clipped at the
/// window border, never an admissibility failure).
#[derive(Debug, Clone, PartialEq)]
pub struct EncodeResult {
    pub config: PartialConfiguration,
    pub uncovered: Vec<GroupElement>,
}

/// Per-vertex bookkeeping: plane coordinate carried by the cell and the
/// 1-based position of the second-component generator.
#[derive(Clone, Copy, Debug)]
struct CellMeta {
    col: i64,
    row: i64,
    position: usize,
}

/// Assigns one whole line x<g1> inside the ball. The base point carries
/// (col, row); the point x g1^t carries (col + t, row).
fn assign_line(
    model: &GroupModel,
    ball: &BallGraph,
    meta: &mut [Option<CellMeta>],
    base: &GroupElement,
    base_meta: CellMeta,
) -> Result<usize, ReductionError> {
    let inv_base = model.inverse(base)?;
    let mut assigned = 0;
    for (v, g) in ball.vertices.iter().enumerate() {
        let d = model.multiply(&inv_base, g)?;
        if let Some(t) = model.in_cyclic_subgroup(&d)? {
            let m = CellMeta {
                col: base_meta.col + t,
                row: base_meta.row,
                position: base_meta.position,
            };
            // Lines never collide: distinct ray lines differ by subword
            // freedom, later lines are chosen outside the assigned set.
            assert!(meta[v].is_none(), "line through {} re-assigns vertex", model.display(base));
            meta[v] = Some(m);
            assigned += 1;
        }
    }
    Ok(assigned)
}

/// Encodes a plane configuration into a ball of the reduced SFT's target.
/// Seed: the line through p_j carries plane row j with second component
/// naming the next ray letter. Extension: any unassigned x with x g_m
/// assigned (m non-central) receives the row below, component m. Runs until
/// no extension applies inside the ball.
pub fn encode_z2_config(
    c: &Z2Config,
    s_g: &ReducedSft,
    radius: u32,
) -> Result<EncodeResult, ReductionError> {
    c.check_against(&s_g.base)?;
    let model = s_g.target().clone();
    let ball = BallGraph::build(&model, radius, 1 << 22).map_err(ReductionError::Group)?;
    // Lines through deep ray prefixes cannot re-enter the ball for the
    // shipped models: every non-central letter grows the norm floor.
    let line_cap = 8 * (radius as usize + 2) + 4 * s_g.ray.period_letters().len().max(1);
    let ray = s_g.ray.extended(line_cap + 1)?;

    let mut meta: Vec<Option<CellMeta>> = vec![None; ball.len()];
    for j in 0..=line_cap {
        let position = match ray.letter(j + 1) {
            Some(g) => g + 1, // generator index to 1-based position
            None => {
                return Err(ReductionError::RayTooShort {
                    needed: j + 1,
                    have: ray.verified_len(),
                })
            }
        };
        if position < 2 {
            // A central ray letter would have failed freedom checks.
            return Err(ReductionError::RayNotSubwordFree { i: j, j: j + 1 });
        }
        assign_line(
            &model,
            &ball,
            &mut meta,
            ray.prefix_element(j),
            CellMeta {
                col: 0,
                row: j as i64,
                position,
            },
        )?;
    }

    // Extension loop: smallest unassigned ball vertex with an assigned
    // g_m-translate, smallest such m; deterministic, so re-runs agree.
    loop {
        let mut step: Option<(usize, CellMeta)> = None;
        'scan: for v in 0..ball.len() {
            if meta[v].is_some() {
                continue;
            }
            for m in 1..model.generator_count() {
                let shifted = model.multiply(&ball.vertices[v], &model.generator(m))?;
                if let Some(u) = ball.index_of(&shifted) {
                    if let Some(above) = meta[u] {
                        step = Some((
                            v,
                            CellMeta {
                                col: above.col,
                                row: above.row - 1,
                                position: m + 1,
                            },
                        ));
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, new_meta)) = step else { break };
        let base = ball.vertices[v].clone();
        assign_line(&model, &ball, &mut meta, &base, new_meta)?;
    }

    let mut config = PartialConfiguration::new(s_g.sft.alphabet.clone());
    let mut uncovered = Vec::new();
    for (v, g) in ball.vertices.iter().enumerate() {
        match meta[v] {
            Some(m) => {
                let sym = s_g.pair_symbol(c.value(m.col, m.row), m.position);
                config.set(g.clone(), sym).map_err(ReductionError::Sft)?;
            }
            None => uncovered.push(g.clone()),
        }
    }
    Ok(EncodeResult { config, uncovered })
}

/// Reads a width x height plane patch back out of a configuration over the
/// reduced SFT's target. Row j is read along base_j<g1>; the second
/// component of row j names the generator stepping to base_{j+1}. height 0
/// still reads the single row through the identity.
pub fn decode_g_config(
    c: &PartialConfiguration,
    s_g: &ReducedSft,
    width: usize,
    height: usize,
) -> Result<Z2Patch, ReductionError> {
    if c.alphabet != s_g.sft.alphabet {
        return Err(ReductionError::Sft(crate::sft::SftError::AlphabetMismatch));
    }
    let model = s_g.target().clone();
    let cols = width.max(1);
    let rows_wanted = height.max(1);
    let mut rows: Vec<Vec<SymbolId>> = Vec::with_capacity(rows_wanted);
    let mut base = model.identity();
    for _row in 0..rows_wanted {
        let mut row_syms = Vec::with_capacity(cols);
        let mut row_position: Option<usize> = None;
        let mut cursor = base.clone();
        for col in 0..cols {
            if col > 0 {
                cursor = model.multiply(&cursor, &model.generator(0))?;
            }
            let sym = c
                .get(&cursor)
                .ok_or_else(|| ReductionError::InsufficientSupport {
                    element: model.display(&cursor),
                })?;
            let (base_sym, position) = s_g.split_symbol(sym);
            match row_position {
                None => row_position = Some(position),
                Some(p) if p != position => {
                    return Err(ReductionError::InconsistentComponent {
                        element: model.display(&cursor),
                    })
                }
                _ => {}
            }
            row_syms.push(base_sym);
        }
        rows.push(row_syms);
        let position = row_position.expect("cols >= 1");
        base = model.multiply(&base, &model.generator(position - 1))?;
    }
    Ok(Z2Patch {
        alphabet: s_g.base.alphabet.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{reduce_z2_to_g, RayWord};
    use crate::sft::{locally_admissible, SftDefinition};

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a", "b"]).unwrap()
    }

    fn heis_ray() -> RayWord {
        RayWord::new(GroupModel::Heisenberg, Vec::new(), vec![1], 64).unwrap()
    }

    fn reduced_checkerboard() -> ReducedSft {
        let differ = vec![false, true, true, false];
        let base = SftDefinition::one_step(
            GroupModel::FreeAbelian(2),
            ab(),
            &[differ.clone(), differ],
        )
        .unwrap();
        reduce_z2_to_g(&base, &GroupModel::Heisenberg, &heis_ray()).unwrap()
    }

    fn reduced_free() -> ReducedSft {
        let base = SftDefinition::one_step(
            GroupModel::FreeAbelian(2),
            ab(),
            &[vec![true; 4], vec![true; 4]],
        )
        .unwrap();
        reduce_z2_to_g(&base, &GroupModel::Heisenberg, &heis_ray()).unwrap()
    }

    #[test]
    fn constant_config_encodes_constant_first_components() {
        let s_g = reduced_free();
        let out = encode_z2_config(&Z2Config::constant(0), &s_g, 2).unwrap();
        assert!(!out.config.is_empty());
        for (_, sym) in out.config.iter() {
            assert_eq!(s_g.split_symbol(sym).0, 0);
        }
        assert!(locally_admissible(&out.config, &s_g.sft).unwrap());
    }

    #[test]
    fn checkerboard_encoding_is_admissible_and_alternates_on_lines() {
        let s_g = reduced_checkerboard();
        let out = encode_z2_config(&Z2Config::checkerboard(), &s_g, 2).unwrap();
        assert!(locally_admissible(&out.config, &s_g.sft).unwrap());
        // Along the central line through the identity: alternation.
        let m = GroupModel::Heisenberg;
        for t in -2..2i64 {
            let here = GroupElement::Heis(0, 0, t);
            let next = GroupElement::Heis(0, 0, t + 1);
            let (a, _) = s_g.split_symbol(out.config.get(&here).unwrap());
            let (b, _) = s_g.split_symbol(out.config.get(&next).unwrap());
            assert_ne!(a, b, "at t={t}");
        }
        let _ = m;
    }

    #[test]
    fn ray_lines_carry_the_next_letter() {
        // For the pure-x ray every seeded line names x as its component.
        let s_g = reduced_free();
        let out = encode_z2_config(&Z2Config::constant(0), &s_g, 2).unwrap();
        for j in 0..=2i64 {
            let p = GroupElement::Heis(j, 0, 0); // x^j
            let (_, position) = s_g.split_symbol(out.config.get(&p).unwrap());
            assert_eq!(position, 2, "row {j}");
        }
    }

    #[test]
    fn stripes_round_trip_through_the_ball() {
        for config in [
            Z2Config::constant(1),
            Z2Config::checkerboard(),
            Z2Config::stripes(),
        ] {
            let s_g = reduced_free();
            let out = encode_z2_config(&config, &s_g, 2).unwrap();
            let patch = decode_g_config(&out.config, &s_g, 2, 2).unwrap();
            for row in 0..2i64 {
                for col in 0..2i64 {
                    assert_eq!(
                        patch.rows[row as usize][col as usize],
                        config.value(col, row),
                        "({col},{row})"
                    );
                }
            }
            // The decoded patch is admissible for the base SFT.
            let pc = patch.to_partial_configuration();
            assert!(locally_admissible(&pc, &s_g.base).unwrap());
        }
    }

    #[test]
    fn inadmissible_base_config_is_rejected() {
        let s_g = reduced_checkerboard();
        let err = encode_z2_config(&Z2Config::constant(0), &s_g, 1).unwrap_err();
        assert!(matches!(
            err,
            ReductionError::BaseConfigInadmissible {
                direction: "horizontal",
                ..
            }
        ));
    }

    #[test]
    fn decode_needs_support() {
        let s_g = reduced_free();
        let out = encode_z2_config(&Z2Config::constant(0), &s_g, 1).unwrap();
        // Width 9 runs past the radius-1 ball.
        let err = decode_g_config(&out.config, &s_g, 9, 1).unwrap_err();
        assert!(matches!(err, ReductionError::InsufficientSupport { .. }));
    }

    #[test]
    fn decode_detects_component_flips() {
        let s_g = reduced_free();
        let mut c = PartialConfiguration::new(s_g.sft.alphabet.clone());
        // Two cells on the central line with different second components.
        c.set(GroupElement::Heis(0, 0, 0), s_g.pair_symbol(0, 2))
            .unwrap();
        c.set(GroupElement::Heis(0, 0, 1), s_g.pair_symbol(0, 3))
            .unwrap();
        let err = decode_g_config(&c, &s_g, 2, 1).unwrap_err();
        assert!(matches!(
            err,
            ReductionError::InconsistentComponent { .. }
        ));
    }

    #[test]
    fn height_zero_reads_one_row() {
        let s_g = reduced_free();
        let out = encode_z2_config(&Z2Config::stripes(), &s_g, 1).unwrap();
        let patch = decode_g_config(&out.config, &s_g, 2, 0).unwrap();
        assert_eq!(patch.height(), 1);
        assert_eq!(patch.rows[0], vec![0, 0]); // stripes row 0
    }

    #[test]
    fn extension_fills_exactly_the_downward_closure() {
        // For the pure-x ray the positive translate rule only ever lowers
        // or keeps the y-coordinate, so the covered region is the half
        // space y <= 0 and the stall frontier is exactly y >= 1.
        let s_g = reduced_free();
        let out = encode_z2_config(&Z2Config::constant(0), &s_g, 2).unwrap();
        let ball = BallGraph::build(&GroupModel::Heisenberg, 2, 1 << 16).unwrap();
        for g in &ball.vertices {
            let GroupElement::Heis(_, b, _) = g else { unreachable!() };
            assert_eq!(
                out.uncovered.contains(g),
                *b >= 1,
                "vertex {g:?}"
            );
        }
        assert!(out.config.get(&GroupElement::Heis(0, -1, 0)).is_some());
        assert!(out.config.get(&GroupElement::Heis(0, 1, 0)).is_none());
    }
}
