//! Python bindings: groups, tilesets, and every pipeline operation.
//!
//! Documents cross the boundary as plain Python values: functions return
//! dicts/lists mirroring the JSON formats, and accept either JSON text or
//! an equivalent dict. Errors become ValueError.

use gsft::deciders::{
    decide_tree, decide_z, emptiness_semidecide_threaded, DEFAULT_NODE_BUDGET,
};
use gsft::ends::thickness_profile;
use gsft::formats::{self, ParsedTileset};
use gsft::group::{BallGraph, CosetEmbedding, GroupModel};
use gsft::reduction::{
    decode_g_config, encode_z2_config, find_ray as search_ray, lift_subgroup_sft, reduce_z2_to_g,
};
use gsft::render;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

const BALL_CAP: usize = 1 << 22;
const RAY_SEARCH_BUDGET: u64 = 1 << 20;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64()
                    .expect("JSON numbers are i64, u64 or f64")
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, value_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// JSON text from a str argument, or json.dumps of anything else.
fn doc_text(doc: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(text) = doc.extract::<String>() {
        return Ok(text);
    }
    doc.py()
        .import("json")?
        .call_method1("dumps", (doc,))?
        .extract()
}

/// A finitely generated group model.
#[pyclass(frozen)]
struct Group {
    model: GroupModel,
}

#[pymethods]
impl Group {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Group {
            model: GroupModel::from_name(name).map_err(value_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.model.name()
    }

    fn generators(&self) -> Vec<String> {
        self.model.generator_names()
    }

    fn central_generator(&self) -> Option<usize> {
        self.model.central_generator()
    }

    fn ball_size(&self, radius: u32) -> PyResult<usize> {
        Ok(BallGraph::build(&self.model, radius, BALL_CAP)
            .map_err(value_err)?
            .len())
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.model.name())
    }
}

/// A tileset document, plain or reduced.
#[pyclass(frozen)]
struct Tileset {
    inner: ParsedTileset,
}

#[pymethods]
impl Tileset {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Tileset {
            inner: formats::parse_tileset(text).map_err(value_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        let doc = match &self.inner {
            ParsedTileset::Plain(s) => formats::serialize_sft(s),
            ParsedTileset::Reduced(r) => formats::serialize_reduced(r),
        }
        .map_err(value_err)?;
        Ok(doc.to_string())
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.sft().model.name()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.sft().alphabet.names().to_vec()
    }

    #[getter]
    fn forbidden_count(&self) -> usize {
        self.inner.sft().forbidden.len()
    }

    #[getter]
    fn is_reduced(&self) -> bool {
        matches!(self.inner, ParsedTileset::Reduced(_))
    }

    fn __repr__(&self) -> String {
        format!(
            "Tileset(group={:?}, symbols={}, forbidden={}{})",
            self.group(),
            self.inner.sft().alphabet.len(),
            self.forbidden_count(),
            if self.is_reduced() { ", reduced" } else { "" },
        )
    }
}

impl Tileset {
    fn reduced(&self) -> PyResult<&gsft::reduction::ReducedSft> {
        match &self.inner {
            ParsedTileset::Reduced(r) => Ok(r),
            ParsedTileset::Plain(_) => Err(value_err(
                "a reduced tileset is required (output of reduce)",
            )),
        }
    }
}

/// Exact emptiness decision for Z and free-group tilesets.
#[pyfunction]
fn decide<'py>(py: Python<'py>, tileset: &Tileset) -> PyResult<Bound<'py, PyAny>> {
    let s = tileset.inner.sft();
    let verdict = match s.model {
        GroupModel::FreeAbelian(1) => decide_z(s),
        GroupModel::FreeGroup(_) => decide_tree(s),
        ref other => {
            return Err(value_err(format!(
                "no exact decider for {}; use search",
                other.name()
            )))
        }
    }
    .map_err(value_err)?;
    value_to_py(
        py,
        &formats::serialize_verdict(&s.model, &verdict).map_err(value_err)?,
    )
}

/// Exhaustive ball search for emptiness up to `radius`.
#[pyfunction]
#[pyo3(signature = (tileset, radius=3, budget=None, threads=1))]
fn search<'py>(
    py: Python<'py>,
    tileset: &Tileset,
    radius: u32,
    budget: Option<u64>,
    threads: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let s = tileset.inner.sft();
    let verdict =
        emptiness_semidecide_threaded(s, radius, budget.unwrap_or(DEFAULT_NODE_BUDGET), threads)
            .map_err(value_err)?;
    value_to_py(
        py,
        &formats::serialize_verdict(&s.model, &verdict).map_err(value_err)?,
    )
}

/// Compile a plane tileset onto `group`, searching for a ray when none is
/// given.
#[pyfunction]
#[pyo3(signature = (tileset, group, ray=None))]
fn reduce(tileset: &Tileset, group: &str, ray: Option<&str>) -> PyResult<Tileset> {
    let ParsedTileset::Plain(base) = &tileset.inner else {
        return Err(value_err("reduce expects a plain plane tileset"));
    };
    let target = GroupModel::from_name(group).map_err(value_err)?;
    let ray = match ray {
        Some(text) => formats::parse_ray(text).map_err(value_err)?,
        None => search_ray(&target, 64, RAY_SEARCH_BUDGET).map_err(value_err)?,
    };
    let reduced = reduce_z2_to_g(base, &target, &ray).map_err(value_err)?;
    Ok(Tileset {
        inner: ParsedTileset::Reduced(reduced),
    })
}

/// Lift a subgroup tileset along a named coset embedding.
#[pyfunction]
fn lift(tileset: &Tileset, embedding: &str) -> PyResult<Tileset> {
    let e = CosetEmbedding::from_name(embedding).map_err(value_err)?;
    let lifted = lift_subgroup_sft(tileset.inner.sft(), &e).map_err(value_err)?;
    Ok(Tileset {
        inner: ParsedTileset::Plain(lifted),
    })
}

/// Search for a subword-free ray; returns the ray document.
#[pyfunction]
#[pyo3(signature = (group, length=64))]
fn find_ray<'py>(py: Python<'py>, group: &str, length: usize) -> PyResult<Bound<'py, PyAny>> {
    let model = GroupModel::from_name(group).map_err(value_err)?;
    let ray = search_ray(&model, length, RAY_SEARCH_BUDGET).map_err(value_err)?;
    value_to_py(py, &formats::serialize_ray(&ray).map_err(value_err)?)
}

/// Encode a periodic plane configuration (builtin name or plane-config
/// JSON) into a ball of the reduced tileset's target group.
#[pyfunction]
fn encode<'py>(
    py: Python<'py>,
    tileset: &Tileset,
    config: &Bound<'py, PyAny>,
    radius: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let reduced = tileset.reduced()?;
    let plane = match config.extract::<String>() {
        Ok(spec) if !spec.trim_start().starts_with('{') => {
            formats::plane_config_from_spec(&spec, &reduced.base.alphabet).map_err(value_err)?
        }
        _ => formats::parse_plane_config(&doc_text(config)?, &reduced.base.alphabet)
            .map_err(value_err)?,
    };
    let result = encode_z2_config(&plane, reduced, radius).map_err(value_err)?;
    let model = reduced.target();
    let mut doc =
        formats::serialize_configuration(model, &result.config).map_err(value_err)?;
    let uncovered = result
        .uncovered
        .iter()
        .map(|g| formats::word_value(model, g))
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_err)?;
    doc.as_object_mut()
        .expect("configuration documents are objects")
        .insert("uncovered".into(), Value::Array(uncovered));
    value_to_py(py, &doc)
}

/// Read a width x height plane patch back out of a window configuration.
#[pyfunction]
#[pyo3(signature = (tileset, window, width=2, height=2))]
fn decode<'py>(
    py: Python<'py>,
    tileset: &Tileset,
    window: &Bound<'py, PyAny>,
    width: usize,
    height: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let reduced = tileset.reduced()?;
    let (model, c) = formats::parse_configuration(&doc_text(window)?).map_err(value_err)?;
    if &model != reduced.target() {
        return Err(value_err(format!(
            "window is over {}, the reduced tileset targets {}",
            model.name(),
            reduced.target().name()
        )));
    }
    let patch = decode_g_config(&c, reduced, width, height).map_err(value_err)?;
    value_to_py(py, &formats::serialize_patch(&patch))
}

/// Boundary components and Menger widths of balls at the given radii.
#[pyfunction]
fn ends_profile<'py>(
    py: Python<'py>,
    group: &str,
    radii: Vec<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let model = GroupModel::from_name(group).map_err(value_err)?;
    let report = thickness_profile(&model, &radii, BALL_CAP).map_err(value_err)?;
    value_to_py(py, &formats::serialize_probe(&report))
}

/// SVG picture of a patch or configuration document.
#[pyfunction]
fn render_svg(doc: &Bound<'_, PyAny>) -> PyResult<String> {
    let text = doc_text(doc)?;
    let kind = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("kind").and_then(Value::as_str).map(str::to_string));
    match kind.as_deref() {
        Some("patch") => {
            render::patch_svg(&formats::parse_patch(&text).map_err(value_err)?)
                .map_err(value_err)
        }
        Some("configuration") => {
            let (model, c) = formats::parse_configuration(&text).map_err(value_err)?;
            render::configuration_svg(&model, &c).map_err(value_err)
        }
        _ => Err(value_err("expected a patch or configuration document")),
    }
}

#[pymodule]
pub fn gsft_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Tileset>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(find_ray, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(ends_profile, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
