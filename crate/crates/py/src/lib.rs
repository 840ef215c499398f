//! Python bindings: each function takes the same TOML text the CLI reads.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lhs_core::checks::{run_suite, CheckOptions, Suite};
use lhs_core::config::{parse_extension_spec, parse_overrides};
use lhs_core::group::{build_extension_group, AbelianPGroupSpec};
use lhs_core::ring::{massey_triple, CohoClass};
use lhs_core::sseq::{Rational, Sseq};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Run the engine and return the report as JSON.
#[pyfunction]
#[pyo3(signature = (spec, max_degree = 20, overrides = None, r_max = 7, seed = 0))]
fn sseq_report(spec: &str, max_degree: usize, overrides: Option<&str>, r_max: usize, seed: u64) -> PyResult<String> {
    let spec = parse_extension_spec(spec).map_err(value_error)?;
    let overrides = parse_overrides(overrides.unwrap_or("")).map_err(value_error)?;
    let mut engine = Sseq::new(&spec, max_degree, &overrides).map_err(value_error)?;
    if seed != 0 {
        engine = engine.with_seed(seed);
    }
    let run = engine.run(r_max).map_err(value_error)?;
    serde_json::to_string(&run.report).map_err(value_error)
}

/// `dim H^n` of the extension group for `n ≤ max_degree`, from a minimal resolution.
#[pyfunction]
#[pyo3(signature = (spec, max_degree = 8))]
fn cohomology_dims(spec: &str, max_degree: usize) -> PyResult<Vec<usize>> {
    let spec = parse_extension_spec(spec).map_err(value_error)?;
    let group = build_extension_group(&spec).map_err(value_error)?;
    lhs_core::oracle::cohomology_dims(&group.table, spec.p, max_degree).map_err(value_error)
}

/// `(representative, indeterminacy basis, contains zero)`.
#[pyfunction]
fn massey(p: u32, quotient: Vec<u32>, a: &str, b: &str, c: &str) -> PyResult<(String, Vec<String>, bool)> {
    let g = AbelianPGroupSpec::new(p, quotient).map_err(value_error)?;
    let parse = |s: &str| CohoClass::parse_any(s, &g).map_err(value_error);
    let m = massey_triple(&parse(a)?, &parse(b)?, &parse(c)?).map_err(value_error)?;
    let basis = m.indeterminacy_basis.iter().map(|x| x.to_string()).collect();
    Ok((m.representative.to_string(), basis, m.contains_zero()))
}

/// Coefficients of `s^0 … s^terms`.
#[pyfunction]
#[pyo3(signature = (series, terms = 12))]
fn expand(series: &str, terms: usize) -> PyResult<Vec<i64>> {
    Rational::parse(series).and_then(|r| r.expand(terms)).map_err(value_error)
}

/// Run one self-check suite; returns whether it passed.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0))]
fn verify(suite: &str, seed: u64) -> PyResult<bool> {
    let suite: Suite = suite.parse().map_err(PyValueError::new_err)?;
    let options = CheckOptions { seed, ..CheckOptions::default() };
    Ok(run_suite(suite, &options).passed)
}

#[pymodule]
fn lhs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(sseq_report, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dims, m)?)?;
    m.add_function(wrap_pyfunction!(massey, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functions_without_the_interpreter() {
        assert_eq!(expand("1/(1-s)^3", 3).unwrap(), vec![1, 3, 6, 10]);
        let (rep, basis, zero) = massey(3, vec![1], "y1", "y1", "y1").unwrap();
        assert_eq!((rep.as_str(), basis.len(), zero), ("x1", 0, false));
        let spec = "p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"x1\"\n";
        assert_eq!(cohomology_dims(spec, 4).unwrap(), vec![1, 2, 3, 4, 5]);
        let report = sseq_report(spec, 10, None, 7, 0).unwrap();
        assert!(report.contains("\"coefficients\":[1,2,3"));
        assert!(verify("cyclic-massey", 0).unwrap());
    }
}
