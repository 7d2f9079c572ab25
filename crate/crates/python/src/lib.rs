//! Python bindings: `import zdgraph_py`.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use zdgraph::cochordal::BlockKind;
use zdgraph::{Classification, Error, RingSpec};

create_exception!(zdgraph_py, ZdgraphError, PyValueError, "Base class for library errors.");
create_exception!(zdgraph_py, NotCochordalError, ZdgraphError, "The graph has an induced 2K2.");
create_exception!(zdgraph_py, ScaleExceededError, ZdgraphError, "Input exceeds a computation bound.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotCochordal { .. } => NotCochordalError::new_err(e.to_string()),
        Error::ScaleExceeded { .. } => ScaleExceededError::new_err(e.to_string()),
        Error::Parse(_) | Error::InvalidParameter(_) => ZdgraphError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| ZdgraphError::new_err(e.to_string()))
}

/// A ring family member: `zn:<n>`, `gauss:<m>`, `poly:<p>,<c>` or `chain:<q>,<L>`.
#[pyclass(name = "RingSpec", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRingSpec(RingSpec);

#[pymethods]
impl PyRingSpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyRingSpec).map_err(to_py)
    }

    #[staticmethod]
    fn residue(n: u64) -> PyResult<Self> {
        RingSpec::residue(n).map(PyRingSpec).map_err(to_py)
    }

    #[staticmethod]
    fn gaussian(m: u32) -> PyResult<Self> {
        RingSpec::gaussian(m).map(PyRingSpec).map_err(to_py)
    }

    #[staticmethod]
    fn truncated_poly(p: u64, c: u32) -> PyResult<Self> {
        RingSpec::truncated_poly(p, c).map(PyRingSpec).map_err(to_py)
    }

    #[staticmethod]
    fn chain(q: u64, length: u32) -> PyResult<Self> {
        RingSpec::chain(q, length).map(PyRingSpec).map_err(to_py)
    }

    #[getter]
    fn vertex_count(&self) -> BigUint {
        zdgraph::vertex_count(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingSpec('{}')", self.0)
    }
}

/// Accepts either a `RingSpec` or its string form.
fn spec_arg(obj: &Bound<'_, PyAny>) -> PyResult<RingSpec> {
    if let Ok(s) = obj.cast::<PyRingSpec>() {
        return Ok(s.get().0);
    }
    let text: String = obj.extract()?;
    text.parse().map_err(to_py)
}

#[pyclass(name = "Classification", frozen)]
struct PyClassification(Classification);

#[pymethods]
impl PyClassification {
    /// One of `prime_edgeless`, `prime_power`, `two_prime`, `three_prime_squarefree`, `not_cochordal`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            Classification::PrimeEdgeless { .. } => "prime_edgeless",
            Classification::PrimePower { .. } => "prime_power",
            Classification::TwoPrime { .. } => "two_prime",
            Classification::ThreePrimeSquarefree { .. } => "three_prime_squarefree",
            Classification::NotCochordal { .. } => "not_cochordal",
        }
    }

    #[getter]
    fn is_cochordal(&self) -> bool {
        self.0.is_cochordal()
    }

    /// The two edges of an induced matching, or `None` for cochordal graphs.
    #[getter]
    fn witness(&self) -> Option<((u64, u64), (u64, u64))> {
        match self.0 {
            Classification::NotCochordal { witness, .. } => {
                let [a, b] = witness.first;
                let [c, d] = witness.second;
                Some(((a, b), (c, d)))
            }
            _ => None,
        }
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("<Classification {}>", self.0)
    }
}

#[pyclass(name = "BettiTable", frozen)]
struct PyBettiTable(zdgraph::BettiTable);

#[pymethods]
impl PyBettiTable {
    /// `[β_1, …, β_pd]`.
    #[getter]
    fn betas(&self) -> Vec<BigUint> {
        self.0.betas().to_vec()
    }

    fn beta(&self, i: usize) -> BigUint {
        self.0.beta(i)
    }

    #[getter]
    fn pd(&self) -> usize {
        self.0.pd()
    }

    #[getter]
    fn regularity(&self) -> usize {
        self.0.regularity()
    }

    #[getter]
    fn is_linear(&self) -> bool {
        self.0.is_linear()
    }

    fn diagram(&self) -> String {
        self.0.diagram()
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.diagram()
    }
}

#[pyclass(name = "HilbertSeries", frozen)]
struct PyHilbertSeries(zdgraph::HilbertSeries);

#[pymethods]
impl PyHilbertSeries {
    #[getter]
    fn numerator(&self) -> Vec<BigInt> {
        self.0.numerator.clone()
    }

    #[getter]
    fn denom_exponent(&self) -> u64 {
        self.0.denom_exponent
    }

    /// `(numerator, pole_order)` after cancelling common factors of `1 - t`.
    fn reduced(&self) -> (Vec<BigInt>, u64) {
        let r = self.0.reduce();
        (r.numerator, r.pole_order)
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "CmStatus", frozen, get_all)]
struct PyCmStatus {
    cohen_macaulay: bool,
    unmixed: Option<bool>,
    depth: u64,
    dim: u64,
    height: u64,
    pd: u64,
    vertices: u64,
}

#[pymethods]
impl PyCmStatus {
    fn __str__(&self) -> String {
        let yn = if self.cohen_macaulay { "yes" } else { "no" };
        format!("depth {}, dim {}, CM: {yn}", self.depth, self.dim)
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph(zdgraph::SimpleGraph);

#[pymethods]
impl PyGraph {
    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    /// Vertex labels in index order (`"12"` for residues, `"k:j"` for chain layers).
    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().iter().map(ToString::to_string).collect()
    }

    /// Edges as index pairs `(u, v)` with `u < v`.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.vertex_count() && v < self.0.vertex_count() && self.0.has_edge(u, v)
    }

    fn is_cochordal(&self) -> bool {
        zdgraph::oracle_cochordal(&self.0)
    }

    fn to_dot(&self) -> String {
        self.0.export_dot()
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.0)
    }
}

#[pyclass(name = "OracleReport", frozen)]
struct PyOracleReport(zdgraph::OracleReport);

#[pymethods]
impl PyOracleReport {
    /// `"agree"`, `"disagree"` or `"skipped"`.
    #[getter]
    fn verdict(&self) -> &'static str {
        self.0.verdict()
    }

    #[getter]
    fn all_agree(&self) -> bool {
        self.0.all_agree()
    }

    /// `(name, status, formula, oracle)` per check.
    fn checks(&self) -> Vec<(String, String, String, String)> {
        self.0
            .checks
            .iter()
            .map(|c| {
                let status = match c.status {
                    zdgraph::CheckStatus::Agree => "agree",
                    zdgraph::CheckStatus::Disagree => "disagree",
                    zdgraph::CheckStatus::Skipped => "skipped",
                };
                (c.name.clone(), status.to_string(), c.formula.clone(), c.oracle.clone())
            })
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn classify(n: u64) -> PyResult<PyClassification> {
    zdgraph::classify(n).map(PyClassification).map_err(to_py)
}

#[pyfunction]
fn betti_table(spec: &Bound<'_, PyAny>) -> PyResult<PyBettiTable> {
    zdgraph::betti_table(&spec_arg(spec)?).map(PyBettiTable).map_err(to_py)
}

#[pyfunction]
fn projective_dimension(spec: &Bound<'_, PyAny>) -> PyResult<u64> {
    zdgraph::projective_dimension(&spec_arg(spec)?).map_err(to_py)
}

#[pyfunction]
fn hilbert_series(spec: &Bound<'_, PyAny>) -> PyResult<PyHilbertSeries> {
    zdgraph::hilbert_series(&spec_arg(spec)?).map(PyHilbertSeries).map_err(to_py)
}

#[pyfunction]
fn hilbert_function(spec: &Bound<'_, PyAny>, degree: u64) -> PyResult<BigUint> {
    zdgraph::hilbert_function(&spec_arg(spec)?, degree).map_err(to_py)
}

#[pyfunction]
fn cm_status(spec: &Bound<'_, PyAny>) -> PyResult<PyCmStatus> {
    let c = zdgraph::cm_status(&spec_arg(spec)?).map_err(to_py)?;
    Ok(PyCmStatus {
        cohen_macaulay: c.cohen_macaulay,
        unmixed: c.unmixed,
        depth: c.depth,
        dim: c.dim,
        height: c.height,
        pd: c.pd,
        vertices: c.vertices,
    })
}

/// `(alpha, height, dim)`.
#[pyfunction]
fn alpha_height_dim(spec: &Bound<'_, PyAny>) -> PyResult<(u64, u64, u64)> {
    let d = zdgraph::alpha_height_dim(&spec_arg(spec)?).map_err(to_py)?;
    Ok((d.alpha, d.height, d.dim))
}

/// Coefficients `f_0, f_1, …` of the independence polynomial of a chain-family graph.
#[pyfunction]
fn independence_polynomial(spec: &Bound<'_, PyAny>) -> PyResult<Vec<BigUint>> {
    let spec = spec_arg(spec)?;
    let c = zdgraph::chain_params(&spec)
        .ok_or_else(|| ZdgraphError::new_err(format!("{spec}: closed form only for chain families")))?;
    zdgraph::independence_polynomial_chain(c).map(|f| f.coefficients).map_err(to_py)
}

/// Blocks as `(kind, parameter, length)`: `("decreasing", first, len)` or `("constant", value, len)`.
#[pyfunction]
fn type_sequence(spec: &Bound<'_, PyAny>) -> PyResult<Vec<(&'static str, u64, u64)>> {
    let ts = zdgraph::type_sequence(&spec_arg(spec)?).map_err(to_py)?;
    Ok(ts
        .blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Decreasing { first } => ("decreasing", first, b.length),
            BlockKind::Constant { value } => ("constant", value, b.length),
        })
        .collect())
}

#[pyfunction]
fn build_graph(spec: &Bound<'_, PyAny>) -> PyResult<PyGraph> {
    zdgraph::build_graph(&spec_arg(spec)?).map(PyGraph).map_err(to_py)
}

/// Brute-force linear-strand Betti numbers `[β_1, …]`, for graphs up to `bound` vertices.
#[pyfunction]
#[pyo3(signature = (spec, bound = zdgraph::DEFAULT_ORACLE_BOUND))]
fn oracle_linear_betti(py: Python<'_>, spec: &Bound<'_, PyAny>, bound: usize) -> PyResult<Vec<BigUint>> {
    let g = zdgraph::build_graph(&spec_arg(spec)?).map_err(to_py)?;
    py.detach(|| zdgraph::oracle_linear_betti_all(&g, bound)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (spec, bound = zdgraph::DEFAULT_ORACLE_BOUND))]
fn cross_check(py: Python<'_>, spec: &Bound<'_, PyAny>, bound: usize) -> PyResult<PyOracleReport> {
    let spec = spec_arg(spec)?;
    Ok(PyOracleReport(py.detach(|| zdgraph::cross_check(&spec, bound))))
}

#[pymodule]
fn zdgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ZdgraphError", py.get_type::<ZdgraphError>())?;
    m.add("NotCochordalError", py.get_type::<NotCochordalError>())?;
    m.add("ScaleExceededError", py.get_type::<ScaleExceededError>())?;
    m.add("DEFAULT_ORACLE_BOUND", zdgraph::DEFAULT_ORACLE_BOUND)?;
    m.add_class::<PyRingSpec>()?;
    m.add_class::<PyClassification>()?;
    m.add_class::<PyBettiTable>()?;
    m.add_class::<PyHilbertSeries>()?;
    m.add_class::<PyCmStatus>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyOracleReport>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(betti_table, m)?)?;
    m.add_function(wrap_pyfunction!(projective_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_series, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(cm_status, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_height_dim, m)?)?;
    m.add_function(wrap_pyfunction!(independence_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(type_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(build_graph, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_linear_betti, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
