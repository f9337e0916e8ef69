//! Python bindings. Structures cross the boundary as the same JSON text the
//! command-line tool reads and writes; reports come back as Python objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use dblcat::error::Error;
use dblcat::fixtures::{corrupted_parity, parity_squares, pushout_spec};
use dblcat::groth::{completeness_source, spine_source};
use dblcat::homology::{betti, we_witness, Ring};
use dblcat::json::{self as js, validate_document, violations_to_json, Json};
use dblcat::pushout::{pushout_dbl_box_sieve, verify_nerve_preserves_pushout, DblSievePushoutSpec};
use dblcat::sset::{csd2_poset, nerve, poset_nerve, Shape};
use dblcat::{DblFunctor, FinCat, FinFunctor, SimplicialMap, TruncSSet};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(text: &str) -> PyResult<Value> {
    js::parse(text).map_err(err)
}

fn read<T: Json>(text: &str) -> PyResult<T> {
    T::from_json(&parse(text)?).map_err(err)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let loads = py.import("json")?.getattr("loads")?;
    Ok(loads.call1((v.to_string(),))?.unbind())
}

fn text(v: &Value) -> String {
    js::to_text(v)
}

/// The violations found in any document, as a list of dicts; empty when valid.
#[pyfunction]
fn validate(py: Python<'_>, document: &str) -> PyResult<Py<PyAny>> {
    let (_, vs) = validate_document(&parse(document)?).map_err(err)?;
    to_py(py, &violations_to_json(&vs))
}

/// Nerve of a category, truncated at `max_dim`.
#[pyfunction]
#[pyo3(signature = (category, max_dim = 3))]
fn category_nerve(category: &str, max_dim: usize) -> PyResult<String> {
    let c: FinCat = read(category)?;
    Ok(text(&nerve(&c, max_dim).map_err(err)?.to_json()))
}

/// Nerve of cSd²(K) for `shape` one of simplex, boundary or horn.
#[pyfunction]
#[pyo3(signature = (shape, k, t = 0, max_dim = 3))]
fn csd2(shape: &str, k: usize, t: usize, max_dim: usize) -> PyResult<String> {
    let shape = match shape {
        "simplex" => Shape::Simplex,
        "boundary" => Shape::Boundary,
        "horn" => Shape::Horn(t),
        other => return Err(PyValueError::new_err(format!("unknown shape {other:?}"))),
    };
    let p = csd2_poset(shape, k).map_err(err)?;
    Ok(text(&poset_nerve(&p, max_dim).map_err(err)?.to_json()))
}

/// Homology report of a simplicial set over `ring` (q, z or z2).
#[pyfunction]
#[pyo3(signature = (sset, ring = "q"))]
fn homology(py: Python<'_>, sset: &str, ring: &str) -> PyResult<Py<PyAny>> {
    let x: TruncSSet = read(sset)?;
    let ring: Ring = ring.parse().map_err(|e: Error| err(e))?;
    to_py(py, &betti(&x, ring).to_json())
}

/// Homology comparison along a simplicial map, functor or double functor.
#[pyfunction]
#[pyo3(signature = (map, max_dim = 3))]
fn witness(py: Python<'_>, map: &str, max_dim: usize) -> PyResult<Py<PyAny>> {
    let v = parse(map)?;
    let verdict = match js::detect(&v) {
        Some(js::Kind::SimplicialMap) => we_witness(&SimplicialMap::from_json(&v).map_err(err)?, max_dim),
        Some(js::Kind::Functor) => we_witness(&FinFunctor::from_json(&v).map_err(err)?, max_dim),
        _ => we_witness(&DblFunctor::from_json(&v).map_err(err)?, max_dim),
    }
    .map_err(err)?;
    to_py(py, &verdict.to_json())
}

/// A built-in example by name: spine (with `n`), completeness, parity
/// (optionally with `corrupt`), or any named pushout spec.
#[pyfunction]
#[pyo3(signature = (name, n = 2, corrupt = None))]
fn fixture(name: &str, n: usize, corrupt: Option<&str>) -> PyResult<String> {
    let v = match (name, corrupt) {
        ("spine", _) => spine_source(n).map_err(err)?.0.to_json(),
        ("completeness", _) => completeness_source().map_err(err)?.0.to_json(),
        ("parity", None) => parity_squares().to_json(),
        ("parity", Some(c)) => {
            corrupted_parity(c).ok_or_else(|| PyValueError::new_err(format!("unknown corruption {c:?}")))?.to_json()
        }
        _ => pushout_spec(name)
            .map_err(err)?
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?
            .to_json(),
    };
    Ok(text(&v))
}

/// The double category presented by a double sieve pushout spec.
#[pyfunction]
fn pushout_dbl(spec: &str) -> PyResult<String> {
    let spec: DblSievePushoutSpec = read(spec)?;
    Ok(text(&pushout_dbl_box_sieve(&spec).map_err(err)?.dbl.to_json()))
}

/// Whether each horizontal nerve level of the pushout is the pushout of levels.
#[pyfunction]
#[pyo3(signature = (spec, max_dim = 3))]
fn verify_nerve(spec: &str, max_dim: usize) -> PyResult<Vec<bool>> {
    let spec: DblSievePushoutSpec = read(spec)?;
    Ok(verify_nerve_preserves_pushout(&spec, max_dim).map_err(err)?.iter().map(|l| l.isomorphic).collect())
}

#[pymodule]
#[pyo3(name = "dblcat")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(category_nerve, m)?)?;
    m.add_function(wrap_pyfunction!(csd2, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(pushout_dbl, m)?)?;
    m.add_function(wrap_pyfunction!(verify_nerve, m)?)?;
    Ok(())
}
