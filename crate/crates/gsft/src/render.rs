//! Deterministic SVG pictures of plane patches and ball assignments.
//!
//! Patches draw as a grid of unit squares, row 0 at the bottom, filled by
//! symbol in alphabet order from a fixed palette. Configurations over a
//! group draw as layered rows, one row per line of the central cyclic
//! subgroup; when the alphabet is a pair alphabet ("a:2"), the fill follows
//! the first component and the border colour the second.

use crate::group::{GroupElement, GroupError, GroupModel};
use crate::reduction::Z2Patch;
use crate::sft::{Alphabet, PartialConfiguration, SymbolId};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("nothing to draw: empty input")]
    EmptyInput,
    #[error(transparent)]
    Group(#[from] GroupError),
}

const CELL: i64 = 20;
const FILL: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];
const EDGE: [&str; 6] = [
    "#1f1f1f", "#a81f1f", "#1f4fa8", "#1f7a1f", "#8a4f1f", "#5f1f8a",
];
const PLAIN_EDGE: &str = "#333333";

fn fill_color(index: usize) -> &'static str {
    FILL[index % FILL.len()]
}

fn edge_color(direction: usize) -> &'static str {
    EDGE[direction % EDGE.len()]
}

/// Fill and border classes per symbol. Pair names "base:p" with p >= 2 map
/// to (base class, direction p - 2); anything else fills by its own id
/// with the plain border.
fn classify(alphabet: &Alphabet) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut bases: Vec<&str> = Vec::new();
    let mut fills = Vec::with_capacity(alphabet.len());
    let mut edges = Vec::with_capacity(alphabet.len());
    for name in alphabet.names() {
        let split = name.rsplit_once(':').and_then(|(base, suffix)| {
            let p: usize = suffix.parse().ok()?;
            (p >= 2).then_some((base, p - 2))
        });
        let (base, edge) = match split {
            Some((base, dir)) => (base, Some(dir)),
            None => (name.as_str(), None),
        };
        let class = bases.iter().position(|&b| b == base).unwrap_or_else(|| {
            bases.push(base);
            bases.len() - 1
        });
        fills.push(class);
        edges.push(edge);
    }
    (fills, edges)
}

fn rect(out: &mut String, x: i64, y: i64, fill: &str, stroke: &str, width: i64, title: &str) {
    writeln!(
        out,
        "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" \
         stroke=\"{stroke}\" stroke-width=\"{width}\"><title>{title}</title></rect>"
    )
    .unwrap();
}

fn document(width: i64, height: i64, body: String) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    )
}

/// Unit-square grid of a plane patch, row 0 at the bottom.
pub fn patch_svg(patch: &Z2Patch) -> Result<String, RenderError> {
    let (w, h) = (patch.width(), patch.height());
    if w == 0 || h == 0 {
        return Err(RenderError::EmptyInput);
    }
    let mut body = String::new();
    for (row, syms) in patch.rows.iter().enumerate() {
        let y = (h - 1 - row) as i64 * CELL;
        for (col, &sym) in syms.iter().enumerate() {
            rect(
                &mut body,
                col as i64 * CELL,
                y,
                fill_color(sym),
                PLAIN_EDGE,
                1,
                patch.alphabet.name(sym),
            );
        }
    }
    Ok(document(w as i64 * CELL, h as i64 * CELL, body))
}

/// One central line of the support: offsets are positions along the line
/// relative to its first (smallest) element.
struct Line {
    cells: Vec<(i64, SymbolId)>,
}

/// Groups the support into lines of the central cyclic subgroup. Models
/// without a central generator fall back to one element per line. Keys come
/// from the configuration's ordered support, so the outcome is independent
/// of insertion order.
fn central_lines(
    model: &GroupModel,
    c: &PartialConfiguration,
) -> Result<Vec<Line>, RenderError> {
    let grouped = model.central_generator().is_some();
    let mut lines: Vec<(GroupElement, GroupElement, Line)> = Vec::new(); // (rep, rep^-1, line)
    'cells: for (g, sym) in c.iter() {
        if grouped {
            for (_, inv_rep, line) in lines.iter_mut() {
                let d = model.multiply(inv_rep, g)?;
                if let Some(t) = model.in_cyclic_subgroup(&d)? {
                    line.cells.push((t, sym));
                    continue 'cells;
                }
            }
        }
        lines.push((
            g.clone(),
            model.inverse(g)?,
            Line {
                cells: vec![(0, sym)],
            },
        ));
    }
    Ok(lines.into_iter().map(|(_, _, line)| line).collect())
}

/// Layered picture of a configuration: one row per central line, cells at
/// their offsets along the line, fill by first component and border by
/// second component for pair alphabets.
pub fn configuration_svg(
    model: &GroupModel,
    c: &PartialConfiguration,
) -> Result<String, RenderError> {
    if c.is_empty() {
        return Err(RenderError::EmptyInput);
    }
    let (fills, edges) = classify(&c.alphabet);
    let lines = central_lines(model, c)?;
    let width = lines
        .iter()
        .map(|l| {
            let min = l.cells.iter().map(|&(t, _)| t).min().unwrap();
            let max = l.cells.iter().map(|&(t, _)| t).max().unwrap();
            max - min + 1
        })
        .max()
        .unwrap();
    let mut body = String::new();
    for (row, line) in lines.iter().enumerate() {
        let min = line.cells.iter().map(|&(t, _)| t).min().unwrap();
        for &(t, sym) in &line.cells {
            let (stroke, stroke_width) = match edges[sym] {
                Some(dir) => (edge_color(dir), 2),
                None => (PLAIN_EDGE, 1),
            };
            rect(
                &mut body,
                (t - min) * CELL,
                row as i64 * CELL,
                fill_color(fills[sym]),
                stroke,
                stroke_width,
                c.alphabet.name(sym),
            );
        }
    }
    Ok(document(width * CELL, lines.len() as i64 * CELL, body))
}
