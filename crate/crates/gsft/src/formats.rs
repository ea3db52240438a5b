//! JSON document formats shared by the command-line tool and the library.
//!
//! One document per value: tilesets ({"group", "alphabet", "forbidden"},
//! with reduced tilesets adding "base", "ray" and a per-pattern
//! "provenance"), rays ({"group", "prefix", "period"}), configurations over
//! a group, plane patches, plane period configurations, and probe reports.
//! Group elements always travel as signed-generator words; "-x" is the
//! inverse of generator x. Serializers emit canonical documents: parse then
//! serialize is the identity on them.

use crate::deciders::{EmptinessVerdict, EmptyCertificate, NonemptyWitness};
use crate::ends::ProbeReport;
use crate::group::{GroupElement, GroupModel};
use crate::reduction::{RayWord, ReducedSft, Z2Config, Z2Patch};
use crate::sft::{Alphabet, PartialConfiguration, Pattern, SftDefinition, SymbolId};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct FormatError(pub String);

impl From<crate::group::GroupError> for FormatError {
    fn from(e: crate::group::GroupError) -> Self {
        FormatError(e.to_string())
    }
}

impl From<crate::sft::SftError> for FormatError {
    fn from(e: crate::sft::SftError) -> Self {
        FormatError(e.to_string())
    }
}

impl From<crate::reduction::ReductionError> for FormatError {
    fn from(e: crate::reduction::ReductionError) -> Self {
        FormatError(e.to_string())
    }
}

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

fn parse_root(text: &str) -> Result<Map<String, Value>, FormatError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(bad("top level must be an object")),
    }
}

fn str_field<'v>(map: &'v Map<String, Value>, key: &str) -> Result<&'v str, FormatError> {
    map.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(format!("missing or non-string field \"{key}\"")))
}

fn array_field<'v>(map: &'v Map<String, Value>, key: &str) -> Result<&'v [Value], FormatError> {
    map.get(key)
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .ok_or_else(|| bad(format!("missing or non-array field \"{key}\"")))
}

fn string_list(values: &[Value], what: &str) -> Result<Vec<String>, FormatError> {
    values
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad(format!("{what} entries must be strings")))
        })
        .collect()
}

fn element_from_word(model: &GroupModel, word: &Value) -> Result<GroupElement, FormatError> {
    let Value::Array(letters) = word else {
        return Err(bad("domain entries must be arrays of generator names"));
    };
    let names = string_list(letters, "word")?;
    let parsed = model.parse_word(&names)?;
    Ok(model.evaluate_word(&parsed)?)
}

pub fn word_value(model: &GroupModel, g: &GroupElement) -> Result<Value, FormatError> {
    let word = model.word_of(g)?;
    Ok(Value::Array(
        model
            .word_names(&word)
            .into_iter()
            .map(Value::String)
            .collect(),
    ))
}

fn alphabet_from(map: &Map<String, Value>) -> Result<Alphabet, FormatError> {
    let names = string_list(array_field(map, "alphabet")?, "alphabet")?;
    Ok(Alphabet::new(names)?)
}

fn pattern_from(
    model: &GroupModel,
    alphabet: &Alphabet,
    value: &Value,
) -> Result<Pattern, FormatError> {
    let Value::Object(map) = value else {
        return Err(bad("forbidden entries must be objects"));
    };
    let domain = array_field(map, "domain")?;
    let symbols = string_list(array_field(map, "symbols")?, "symbols")?;
    if domain.len() != symbols.len() {
        return Err(bad("domain and symbols must have equal length"));
    }
    let cells = domain
        .iter()
        .zip(&symbols)
        .map(|(word, name)| Ok((element_from_word(model, word)?, alphabet.id_of(name)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Pattern::new(model, cells, alphabet.len())?)
}

/// Symbol-pair list like [["a","b"], ["b","a"]] into an allowed table.
fn allowed_table(
    alphabet: &Alphabet,
    values: &[Value],
    key: &str,
) -> Result<Vec<bool>, FormatError> {
    let n = alphabet.len();
    let mut table = vec![false; n * n];
    for entry in values {
        let Value::Array(pair) = entry else {
            return Err(bad(format!("\"{key}\" entries must be symbol pairs")));
        };
        if pair.len() != 2 {
            return Err(bad(format!("\"{key}\" entries must be symbol pairs")));
        }
        let names = string_list(pair, key)?;
        table[alphabet.id_of(&names[0])? * n + alphabet.id_of(&names[1])?] = true;
    }
    Ok(table)
}

fn sft_from(map: &Map<String, Value>) -> Result<SftDefinition, FormatError> {
    let model = GroupModel::from_name(str_field(map, "group")?)?;
    let alphabet = alphabet_from(map)?;
    let has_convenience =
        map.contains_key("horizontal_allowed") || map.contains_key("vertical_allowed");
    if has_convenience {
        if model != GroupModel::FreeAbelian(2) {
            return Err(bad(
                "horizontal_allowed/vertical_allowed apply to z2 tilesets only",
            ));
        }
        if map.contains_key("forbidden") {
            return Err(bad(
                "use either forbidden or the allowed-pair convenience keys, not both",
            ));
        }
        let horizontal = allowed_table(
            &alphabet,
            array_field(map, "horizontal_allowed")?,
            "horizontal_allowed",
        )?;
        let vertical = allowed_table(
            &alphabet,
            array_field(map, "vertical_allowed")?,
            "vertical_allowed",
        )?;
        return Ok(SftDefinition::one_step(
            model,
            alphabet,
            &[horizontal, vertical],
        )?);
    }
    let forbidden = array_field(map, "forbidden")?
        .iter()
        .map(|v| pattern_from(&model, &alphabet, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SftDefinition::new(model, alphabet, forbidden)?)
}

fn pattern_value(
    model: &GroupModel,
    alphabet: &Alphabet,
    p: &Pattern,
    provenance: Option<&str>,
) -> Result<Value, FormatError> {
    let mut domain = Vec::new();
    let mut symbols = Vec::new();
    for (g, sym) in p.cells() {
        domain.push(word_value(model, g)?);
        symbols.push(Value::String(alphabet.name(*sym).to_string()));
    }
    let mut map = Map::new();
    map.insert("domain".into(), Value::Array(domain));
    if let Some(tag) = provenance {
        map.insert("provenance".into(), Value::String(tag.into()));
    }
    map.insert("symbols".into(), Value::Array(symbols));
    Ok(Value::Object(map))
}

fn sft_value(s: &SftDefinition, tags: Option<&[&'static str]>) -> Result<Value, FormatError> {
    let forbidden = s
        .forbidden
        .iter()
        .enumerate()
        .map(|(i, p)| pattern_value(&s.model, &s.alphabet, p, tags.map(|t| t[i])))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "group": s.model.name(),
        "alphabet": s.alphabet.names(),
        "forbidden": forbidden,
    }))
}

pub fn serialize_sft(s: &SftDefinition) -> Result<Value, FormatError> {
    sft_value(s, None)
}

pub fn serialize_reduced(r: &ReducedSft) -> Result<Value, FormatError> {
    let mut doc = sft_value(&r.sft, Some(&r.rule_tags))?;
    let map = doc.as_object_mut().unwrap();
    map.insert("base".into(), serialize_sft(&r.base)?);
    map.insert("ray".into(), serialize_ray(&r.ray)?);
    Ok(doc)
}

pub fn serialize_ray(ray: &RayWord) -> Result<Value, FormatError> {
    let names = ray.model().generator_names();
    let letters = |ls: &[usize]| -> Vec<Value> {
        ls.iter()
            .map(|&g| Value::String(names[g].clone()))
            .collect()
    };
    Ok(json!({
        "group": ray.model().name(),
        "period": letters(ray.period_letters()),
        "prefix": letters(ray.prefix_letters()),
    }))
}

fn letters_from(model: &GroupModel, values: &[Value], what: &str) -> Result<Vec<usize>, FormatError> {
    let names = model.generator_names();
    string_list(values, what)?
        .iter()
        .map(|name| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| bad(format!("unknown generator \"{name}\" in {what}")))
        })
        .collect()
}

pub fn parse_ray(text: &str) -> Result<RayWord, FormatError> {
    let map = parse_root(text)?;
    let model = GroupModel::from_name(str_field(&map, "group")?)?;
    let prefix = letters_from(&model, array_field(&map, "prefix")?, "prefix")?;
    let period = letters_from(&model, array_field(&map, "period")?, "period")?;
    // Verify freedom over the prefix plus a few period turns.
    let length = prefix.len() + 4 * period.len();
    Ok(RayWord::new(model, prefix, period, length)?)
}

/// A tileset document: plain, or reduced (carrying base, ray, provenance).
#[derive(Debug, Clone)]
pub enum ParsedTileset {
    Plain(SftDefinition),
    Reduced(ReducedSft),
}

impl ParsedTileset {
    pub fn sft(&self) -> &SftDefinition {
        match self {
            ParsedTileset::Plain(s) => s,
            ParsedTileset::Reduced(r) => &r.sft,
        }
    }
}

pub fn parse_tileset(text: &str) -> Result<ParsedTileset, FormatError> {
    let map = parse_root(text)?;
    let sft = sft_from(&map)?;
    if !map.contains_key("base") && !map.contains_key("ray") {
        return Ok(ParsedTileset::Plain(sft));
    }
    let Some(Value::Object(base_map)) = map.get("base") else {
        return Err(bad("reduced tilesets need a \"base\" tileset object"));
    };
    let base = sft_from(base_map)?;
    let Some(ray_value) = map.get("ray") else {
        return Err(bad("reduced tilesets need a \"ray\" object"));
    };
    let ray = parse_ray(&ray_value.to_string())?;
    // Rebuild through the compiler: guarantees tags and pair layout, and
    // rejects files whose forbidden list does not match the rules.
    let rebuilt = crate::reduction::reduce_z2_to_g(&base, &sft.model, &ray)?;
    if rebuilt.sft != sft {
        return Err(bad(
            "reduced tileset does not match its base and ray (corrupt or edited file)",
        ));
    }
    Ok(ParsedTileset::Reduced(rebuilt))
}

pub fn serialize_configuration(
    model: &GroupModel,
    c: &PartialConfiguration,
) -> Result<Value, FormatError> {
    let cells = c
        .iter()
        .map(|(g, sym)| {
            Ok(json!({
                "at": word_value(model, g)?,
                "symbol": c.alphabet.name(sym),
            }))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(json!({
        "alphabet": c.alphabet.names(),
        "cells": cells,
        "group": model.name(),
        "kind": "configuration",
    }))
}

pub fn parse_configuration(
    text: &str,
) -> Result<(GroupModel, PartialConfiguration), FormatError> {
    let map = parse_root(text)?;
    if str_field(&map, "kind")? != "configuration" {
        return Err(bad("expected a configuration document"));
    }
    let model = GroupModel::from_name(str_field(&map, "group")?)?;
    let alphabet = alphabet_from(&map)?;
    let mut c = PartialConfiguration::new(alphabet);
    for cell in array_field(&map, "cells")? {
        let Value::Object(cell_map) = cell else {
            return Err(bad("cells must be objects"));
        };
        let at = cell_map
            .get("at")
            .ok_or_else(|| bad("cell misses \"at\""))?;
        let g = element_from_word(&model, at)?;
        let sym = c.alphabet.id_of(str_field(cell_map, "symbol")?)?;
        if c.get(&g).is_some() {
            return Err(bad(format!("duplicate cell at {}", model.display(&g))));
        }
        c.set(g, sym)?;
    }
    Ok((model, c))
}

pub fn serialize_patch(patch: &Z2Patch) -> Value {
    let rows: Vec<Value> = patch
        .rows
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|&sym| Value::String(patch.alphabet.name(sym).to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "alphabet": patch.alphabet.names(),
        "height": patch.height(),
        "kind": "patch",
        "rows": rows,
        "width": patch.width(),
    })
}

pub fn parse_patch(text: &str) -> Result<Z2Patch, FormatError> {
    let map = parse_root(text)?;
    if str_field(&map, "kind")? != "patch" {
        return Err(bad("expected a patch document"));
    }
    let alphabet = alphabet_from(&map)?;
    let rows = array_field(&map, "rows")?
        .iter()
        .map(|row| {
            let Value::Array(cells) = row else {
                return Err(bad("patch rows must be arrays"));
            };
            string_list(cells, "rows")?
                .iter()
                .map(|name| alphabet.id_of(name).map_err(FormatError::from))
                .collect::<Result<Vec<SymbolId>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(bad("patch rows must be non-empty and rectangular"));
    }
    Ok(Z2Patch { alphabet, rows })
}

/// Plane period configuration for encoding: named built-in or explicit
/// rows. Symbol names resolve against the given base alphabet.
pub fn plane_config_from_spec(
    spec: &str,
    alphabet: &Alphabet,
) -> Result<Z2Config, FormatError> {
    match spec {
        "constant" => Ok(Z2Config::constant(0)),
        "checkerboard" => {
            need_symbols(alphabet, 2, spec)?;
            Ok(Z2Config::checkerboard())
        }
        "stripes" => {
            need_symbols(alphabet, 2, spec)?;
            Ok(Z2Config::stripes())
        }
        _ => {
            if let Some(name) = spec.strip_prefix("constant:") {
                return Ok(Z2Config::constant(alphabet.id_of(name)?));
            }
            Err(bad(format!(
                "unknown plane configuration \"{spec}\" (use constant, constant:SYM, checkerboard, stripes, or a plane-config file)"
            )))
        }
    }
}

fn need_symbols(alphabet: &Alphabet, n: usize, what: &str) -> Result<(), FormatError> {
    if alphabet.len() < n {
        return Err(bad(format!(
            "\"{what}\" needs at least {n} symbols, alphabet has {}",
            alphabet.len()
        )));
    }
    Ok(())
}

pub fn parse_plane_config(text: &str, alphabet: &Alphabet) -> Result<Z2Config, FormatError> {
    let map = parse_root(text)?;
    if str_field(&map, "kind")? != "plane-config" {
        return Err(bad("expected a plane-config document"));
    }
    let rows = array_field(&map, "rows")?
        .iter()
        .map(|row| {
            let Value::Array(cells) = row else {
                return Err(bad("plane-config rows must be arrays"));
            };
            string_list(cells, "rows")?
                .iter()
                .map(|name| alphabet.id_of(name).map_err(FormatError::from))
                .collect::<Result<Vec<SymbolId>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Z2Config::periodic(rows)?)
}

pub fn serialize_verdict(
    model: &GroupModel,
    verdict: &EmptinessVerdict,
) -> Result<Value, FormatError> {
    Ok(match verdict {
        EmptinessVerdict::Nonempty(w) => {
            let (kind, symbols) = match w {
                NonemptyWitness::Cycle(symbols) => ("cycle", symbols),
                NonemptyWitness::Survivors(symbols) => ("survivors", symbols),
            };
            json!({
                "group": model.name(),
                "verdict": "nonempty",
                "witness": { "kind": kind, "symbols": symbols },
            })
        }
        EmptinessVerdict::Empty(c) => {
            let certificate = match c {
                EmptyCertificate::InadmissibleRadius(r) => {
                    json!({ "kind": "inadmissible-radius", "radius": r })
                }
                EmptyCertificate::NoSurvivors => json!({ "kind": "no-survivors" }),
            };
            json!({
                "certificate": certificate,
                "group": model.name(),
                "verdict": "empty",
            })
        }
        EmptinessVerdict::Unknown(report) => json!({
            "checked_radius": report.checked_radius,
            "group": model.name(),
            "verdict": "unknown",
            "witness": serialize_configuration(model, &report.witness)?,
        }),
    })
}

pub fn serialize_probe(report: &ProbeReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "R": row.big_r,
                "boundary": row.boundary,
                "component_widths": row.component_widths,
                "components": row.components,
                "r": row.r,
                "width": row.width,
            })
        })
        .collect();
    json!({
        "growing": report.growing,
        "model": report.model,
        "rows": rows,
    })
}
