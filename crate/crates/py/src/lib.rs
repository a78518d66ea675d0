//! Python bindings: thin wrappers over the core decision procedures.

use pyo3::prelude::*;

#[pymodule]
fn elliptic_summer_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
