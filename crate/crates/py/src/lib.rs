//! Python bindings: every entry point takes configuration text or group
//! parameters and returns the CLI's JSON report as a string.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use symdeg::config::validate_config;
use symdeg::degree::DegreeEngine;
use symdeg::report::{self, IsotropyCheck};
use symdeg::spectral::Problem;
use symdeg::symmetry::{GammaSpec, Layout, SymmetryGroup};
use symdeg::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) | Error::Assumption { .. } => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn group(m: usize, dihedral: Option<usize>, dm_first: bool) -> Result<SymmetryGroup, Error> {
    let (spec, k) = match dihedral {
        Some(n) => (GammaSpec::Dihedral(n), n),
        None => (GammaSpec::Trivial, 1),
    };
    let layout = if dm_first { Layout::DmFirst } else { Layout::GammaFirst };
    SymmetryGroup::new(&spec, k, m, layout)
}

fn problem(config: &str) -> Result<Problem, Error> {
    Problem::new(validate_config(config)?)
}

/// Conjugacy classes of subgroups of `Γ × D_m × Z_2`.
#[pyfunction]
#[pyo3(signature = (m, dihedral=None, dm_first=false))]
fn group_info(m: usize, dihedral: Option<usize>, dm_first: bool) -> PyResult<String> {
    let sym = group(m, dihedral, dm_first).map_err(to_py)?;
    let engine = DegreeEngine::for_group(&sym).map_err(to_py)?;
    Ok(report::group_info(&sym, &engine).json_string())
}

#[pyfunction]
#[pyo3(signature = (m, dihedral=None, dm_first=false))]
fn basic_degrees(m: usize, dihedral: Option<usize>, dm_first: bool) -> PyResult<String> {
    let sym = group(m, dihedral, dm_first).map_err(to_py)?;
    let engine = DegreeEngine::for_group(&sym).map_err(to_py)?;
    Ok(report::basic_degrees(&engine).map_err(to_py)?.json_string())
}

/// Existence report for a configuration document.
#[pyfunction]
#[pyo3(signature = (config, seed=None))]
fn existence(py: Python<'_>, config: &str, seed: Option<u64>) -> PyResult<String> {
    py.detach(|| {
        let p = problem(config)?;
        let r = p.existence_degree()?;
        let iso = seed.map(|s| IsotropyCheck::run(&p, &r, s)).transpose()?;
        Ok(report::existence(&p, &r, iso.as_ref()).json_string())
    })
    .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (config, window=None))]
fn bifurcation(py: Python<'_>, config: &str, window: Option<(f64, f64)>) -> PyResult<String> {
    py.detach(|| {
        let p = problem(config)?;
        let r = p.bifurcation_report(window)?;
        Ok(report::bifurcation(&p, &r).json_string())
    })
    .map_err(to_py)
}

/// Raises `ValueError` naming the violated assumption.
#[pyfunction]
fn validate(config: &str) -> PyResult<()> {
    validate_config(config).map(|_| ()).map_err(to_py)
}

#[pymodule]
fn symdeg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(group_info, m)?)?;
    m.add_function(wrap_pyfunction!(basic_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(existence, m)?)?;
    m.add_function(wrap_pyfunction!(bifurcation, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
