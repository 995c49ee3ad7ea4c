//! Python bindings: scenario runner and catalog, exchanged as JSON strings.

use fanocheck::catalog;
use fanocheck::cli::{self, RunConfig};
use fanocheck::ideals::DEFAULT_BUDGET;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

/// `(name, label, quote)` for every registered scenario, sorted by name.
pub fn scenario_table() -> Vec<(String, String, String)> {
    cli::list_scenarios().into_iter().map(|(n, a)| (n.to_string(), a.label.to_string(), a.quote.to_string())).collect()
}

fn config(seed: u64, budget: usize) -> RunConfig {
    RunConfig { seed, budget, ..RunConfig::default() }
}

/// JSON report of one scenario; `None` if the name is not registered.
pub fn scenario_json(name: &str, seed: u64, budget: usize) -> Option<String> {
    cli::run_scenario(name, &config(seed, budget)).ok().map(|r| cli::render_json(&[r]))
}

/// JSON array of all reports and the exit code the CLI would return.
pub fn all_json(seed: u64, budget: usize) -> (String, i32) {
    let reports = cli::run_all(&config(seed, budget));
    (cli::render_json(&reports), cli::exit_code(&reports))
}

/// `(id, stored −K³, recomputed −K³)` per catalog row.
pub fn catalog_check() -> Result<Vec<(String, i64, i64)>, String> {
    catalog::entries()
        .iter()
        .map(|e| catalog::verify_entry(e).map(|r| (r.id, r.expected, r.recomputed)).map_err(|err| err.to_string()))
        .collect()
}

#[pyfunction]
fn list_scenarios() -> Vec<(String, String, String)> {
    scenario_table()
}

#[pyfunction]
#[pyo3(signature = (name, seed = 0, budget = DEFAULT_BUDGET))]
fn run_scenario(py: Python<'_>, name: &str, seed: u64, budget: usize) -> PyResult<String> {
    py.detach(|| scenario_json(name, seed, budget)).ok_or_else(|| PyKeyError::new_err(format!("unknown scenario '{name}'")))
}

/// Returns `(json, exit_code)`.
#[pyfunction]
#[pyo3(signature = (seed = 0, budget = DEFAULT_BUDGET))]
fn run_all(py: Python<'_>, seed: u64, budget: usize) -> (String, i32) {
    py.detach(|| all_json(seed, budget))
}

#[pyfunction]
fn catalog_json() -> String {
    catalog::export_json(&catalog::entries())
}

#[pyfunction]
fn verify_catalog() -> PyResult<Vec<(String, i64, i64)>> {
    catalog_check().map_err(PyValueError::new_err)
}

#[pymodule]
fn fanocheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(list_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_catalog, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
