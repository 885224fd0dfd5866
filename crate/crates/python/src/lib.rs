//! Python bindings. Complex values cross the boundary as Python `complex`,
//! matrices as nested lists in the excitation-sorted basis.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

use udw_harvest::elements::{self, DetectorParams as CoreParams, PairElements as CoreElements};
use udw_harvest::linalg::CMatrix;
use udw_harvest::sweep::{self, ConfigKind, Figure, Measure, SweepSpec};
use udw_harvest::three_detector::{self as three, ThreeDetectorState as CoreThree, TriangleConfig};
use udw_harvest::two_detector::{self as two, TwoDetectorState as CoreTwo};
use udw_harvest::{selftest, special, Error};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::UnsupportedConfiguration(msg) => PyNotImplementedError::new_err(msg),
        Error::Nonphysical { .. } | Error::Overflow { .. } | Error::NoConvergence { .. } => {
            PyArithmeticError::new_err(err.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m[(i, j)]).collect()).collect()
}

fn params(coupling: f64, gap: f64) -> PyResult<CoreParams> {
    CoreParams::new(coupling, gap).map_err(to_py)
}

#[pyfunction]
fn erf(z: Complex64) -> PyResult<Complex64> {
    special::erf_complex(z).map_err(to_py)
}

#[pyfunction]
fn erfc(z: Complex64) -> PyResult<Complex64> {
    special::erfc_complex(z).map_err(to_py)
}

/// `exp(z^2) erfc(z)`.
#[pyfunction]
fn erfcx(z: Complex64) -> PyResult<Complex64> {
    special::erfcx_scaled(z).map_err(to_py)
}

#[pyfunction]
fn transition_probability(coupling: f64, gap: f64) -> PyResult<f64> {
    Ok(elements::transition_probability(&params(coupling, gap)?))
}

#[pyfunction]
fn correlation_c(coupling: f64, gap: f64, separation: f64) -> PyResult<f64> {
    elements::correlation_c(&params(coupling, gap)?, separation).map_err(to_py)
}

#[pyfunction]
fn correlation_x(coupling: f64, gap: f64, separation: f64) -> PyResult<Complex64> {
    elements::correlation_x(&params(coupling, gap)?, separation).map_err(to_py)
}

/// Matrix elements `(P, C, X)` of one detector pair.
#[pyclass(frozen, skip_from_py_object, name = "PairElements")]
#[derive(Clone)]
struct PyPairElements {
    inner: CoreElements,
}

#[pymethods]
impl PyPairElements {
    #[new]
    fn new(coupling: f64, gap: f64, separation: f64) -> PyResult<Self> {
        let inner = CoreElements::compute(&params(coupling, gap)?, separation).map_err(to_py)?;
        Ok(PyPairElements { inner })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c
    }

    #[getter]
    fn x(&self) -> Complex64 {
        self.inner.x
    }

    #[getter]
    fn separation(&self) -> f64 {
        self.inner.separation
    }

    /// Tags for elements beyond the perturbative thresholds; empty when clean.
    fn perturbativity(&self) -> Vec<String> {
        elements::perturbativity_check(&self.inner).tags()
    }

    fn __repr__(&self) -> String {
        let e = &self.inner;
        format!("PairElements(p={:e}, c={:e}, x={:e}, separation={})", e.p, e.c, e.x, e.separation)
    }
}

#[pyclass(frozen, name = "TwoDetectorState")]
struct PyTwoDetectorState {
    inner: CoreTwo,
}

#[pymethods]
impl PyTwoDetectorState {
    #[new]
    fn new(coupling: f64, gap: f64, separation: f64) -> PyResult<Self> {
        let e = CoreElements::compute(&params(coupling, gap)?, separation).map_err(to_py)?;
        Ok(PyTwoDetectorState { inner: two::assemble_two(e) })
    }

    #[staticmethod]
    fn from_elements(elements: &PyPairElements) -> Self {
        PyTwoDetectorState { inner: two::assemble_two(elements.inner) }
    }

    #[getter]
    fn elements(&self) -> PyPairElements {
        PyPairElements { inner: *self.inner.elems() }
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.rho().matrix())
    }

    fn closed_form_spectrum(&self) -> Vec<f64> {
        self.inner.closed_form_spectrum().to_vec()
    }

    fn coherence_l1(&self) -> f64 {
        two::coherence_l1_two(&self.inner)
    }

    /// Relative entropy of coherence in bits.
    fn rec(&self) -> PyResult<f64> {
        two::rec_two(&self.inner).map(|r| r.bits).map_err(to_py)
    }

    fn rec_numeric(&self) -> PyResult<f64> {
        two::rec_two_numeric(&self.inner).map(|r| r.bits).map_err(to_py)
    }

    fn negativity(&self) -> f64 {
        two::negativity_two(&self.inner)
    }

    fn negativity_numeric(&self) -> PyResult<f64> {
        two::negativity_two_numeric(&self.inner).map_err(to_py)
    }
}

#[pyclass(frozen, name = "ThreeDetectorState")]
struct PyThreeDetectorState {
    inner: CoreThree,
}

impl PyThreeDetectorState {
    fn build(config: TriangleConfig, coupling: f64, gap: f64) -> PyResult<Self> {
        let inner = three::assemble_three(config, &params(coupling, gap)?).map_err(to_py)?;
        Ok(PyThreeDetectorState { inner })
    }
}

#[pymethods]
impl PyThreeDetectorState {
    #[staticmethod]
    fn equilateral(coupling: f64, gap: f64, separation: f64) -> PyResult<Self> {
        Self::build(TriangleConfig::Equilateral { separation }, coupling, gap)
    }

    #[staticmethod]
    fn linear(coupling: f64, gap: f64, separation: f64) -> PyResult<Self> {
        Self::build(TriangleConfig::Linear { separation }, coupling, gap)
    }

    #[staticmethod]
    fn scalene(coupling: f64, gap: f64, lac: f64, shift: f64) -> PyResult<Self> {
        Self::build(TriangleConfig::Scalene { lac, shift }, coupling, gap)
    }

    #[getter]
    fn config(&self) -> String {
        self.inner.config().to_string()
    }

    /// `(L_AB, L_AC, L_BC)`.
    fn separations(&self) -> PyResult<(f64, f64, f64)> {
        let s = three::resolve_geometry(self.inner.config()).map_err(to_py)?;
        Ok((s.ab, s.ac, s.bc))
    }

    /// `[AB, AC, BC]`.
    fn pair_elements(&self) -> Vec<PyPairElements> {
        self.inner.pair_elements().iter().map(|&inner| PyPairElements { inner }).collect()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.rho().matrix())
    }

    fn closed_form_spectrum(&self) -> PyResult<Vec<f64>> {
        three::closed_form_spectrum(&self.inner).map(|s| s.to_vec()).map_err(to_py)
    }

    fn coherence_l1(&self) -> f64 {
        three::coherence_l1_three(&self.inner)
    }

    fn rec(&self) -> PyResult<f64> {
        three::rec_three(&self.inner).map(|r| r.bits).map_err(to_py)
    }

    fn rec_numeric(&self) -> PyResult<f64> {
        three::rec_three_numeric(&self.inner).map(|r| r.bits).map_err(to_py)
    }

    fn tripartite_negativity(&self) -> PyResult<f64> {
        three::tripartite_negativity(&self.inner).map_err(to_py)
    }

    fn tripartite_negativity_numeric(&self) -> PyResult<f64> {
        three::tripartite_negativity_numeric(&self.inner).map_err(to_py)
    }

    fn monogamy_residual(&self) -> PyResult<f64> {
        three::monogamy_residual(&self.inner).map_err(to_py)
    }
}

fn csv(spec: &SweepSpec) -> PyResult<String> {
    let records = sweep::run_sweep(spec).map_err(to_py)?;
    let mut buf = Vec::new();
    sweep::emit_csv(&records, &mut buf).map_err(to_py)?;
    String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_measures(measures: Option<&str>) -> PyResult<std::collections::BTreeSet<Measure>> {
    measures.map_or_else(|| Ok(Measure::all()), |m| Measure::parse_list(m).map_err(to_py))
}

/// Runs a sweep and returns the CSV text.
#[pyfunction]
#[pyo3(signature = (config, coupling, gaps, min, max, steps, lac=None, measures=None))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    config: &str,
    coupling: f64,
    gaps: Vec<f64>,
    min: f64,
    max: f64,
    steps: usize,
    lac: Option<f64>,
    measures: Option<&str>,
) -> PyResult<String> {
    let spec = SweepSpec {
        config: config.parse::<ConfigKind>().map_err(to_py)?,
        coupling,
        gaps,
        min,
        max,
        steps,
        lac,
        measures: parse_measures(measures)?,
    };
    csv(&spec)
}

/// CSV text of a figure preset (`fig1`, `fig3`, `fig4`, `fig5`).
#[pyfunction]
#[pyo3(signature = (name, gaps=None))]
fn figure(name: &str, gaps: Option<Vec<f64>>) -> PyResult<String> {
    let mut spec = sweep::figure_preset(name.parse::<Figure>().map_err(to_py)?);
    if let Some(g) = gaps {
        spec.gaps = g;
    }
    csv(&spec)
}

/// `(name, max_deviation, tolerance, passed)`.
type CheckRow = (String, f64, f64, bool);

/// `(passed, [check, ...])`.
#[pyfunction]
#[pyo3(signature = (mutation=None))]
fn run_selftest(mutation: Option<&str>) -> PyResult<(bool, Vec<CheckRow>)> {
    let mutation = mutation.map(str::parse::<selftest::Mutation>).transpose().map_err(to_py)?;
    let report = selftest::run(mutation);
    let checks = report.checks.iter().map(|c| (c.name.to_string(), c.max_deviation, c.tolerance, c.passed())).collect();
    Ok((report.passed(), checks))
}

#[pymodule]
fn udw_harvest_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(erf, m)?)?;
    m.add_function(wrap_pyfunction!(erfc, m)?)?;
    m.add_function(wrap_pyfunction!(erfcx, m)?)?;
    m.add_function(wrap_pyfunction!(transition_probability, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_c, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_x, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add_class::<PyPairElements>()?;
    m.add_class::<PyTwoDetectorState>()?;
    m.add_class::<PyThreeDetectorState>()?;
    m.add("CSV_HEADER", sweep::CSV_HEADER)?;
    Ok(())
}
