//! Python bindings: networks, pipeline runs, ESOP minimization, Toffoli
//! lowering and the affine class database.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyNotImplementedError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use revsynth::classify::db::{lookup_and_instantiate, AnClassDb};
use revsynth::classify::{build_database, canonicalize_an, class_representatives, MAX_CLASS_VARS};
use revsynth::clifford::{decompose_mct, AncillaContext, CliffordTNetwork};
use revsynth::esop::{minimize, Cube, EsopCover, EsopHeuristic};
use revsynth::logic::aiger::write_aiger;
use revsynth::logic::blif::write_blif;
use revsynth::logic::LogicNetwork;
use revsynth::pipeline::{
    self, parse_network, run_lut_mapping, run_pipeline, run_skeleton, InputFormat, OutputPaths, PipelineConfig,
    RunOptions, Skeleton,
};
use revsynth::rev::RevGate;
use revsynth::tt::TruthTable;
use revsynth::Error;

create_exception!(revsynth, VerificationError, PyException);

type Witness = (Vec<u8>, u8, bool);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Param(_) | Error::TooManyVars(_) => PyValueError::new_err(e.to_string()),
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Verify(_) => VerificationError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parsed<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

fn table(bits: u64, num_vars: u32) -> PyResult<TruthTable> {
    if num_vars > 6 {
        return Err(PyValueError::new_err("integer truth tables cover at most 6 variables"));
    }
    if num_vars < 6 && bits >> (1u32 << num_vars) != 0 {
        return Err(PyValueError::new_err(format!("{bits:#x} has bits beyond {} rows", 1u32 << num_vars)));
    }
    Ok(TruthTable::from_u64(num_vars, bits))
}

/// Combinational logic network read from ASCII AIGER or BLIF.
#[pyclass(name = "LogicNetwork", module = "revsynth")]
#[derive(Clone)]
struct PyLogicNetwork {
    inner: LogicNetwork,
}

#[pymethods]
impl PyLogicNetwork {
    /// Parse text; `format` is "aiger" or "blif", detected when omitted.
    #[staticmethod]
    #[pyo3(signature = (text, format=None))]
    fn parse(text: &str, format: Option<&str>) -> PyResult<Self> {
        let fmt = format.map(parsed::<InputFormat>).transpose()?;
        let (inner, _) = parse_network(text, fmt).map_err(py_err)?;
        Ok(PyLogicNetwork { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (path, format=None))]
    fn read(path: PathBuf, format: Option<&str>) -> PyResult<Self> {
        let fmt = format.map(parsed::<InputFormat>).transpose()?;
        let (inner, _) = pipeline::read_network(&path, fmt).map_err(py_err)?;
        Ok(PyLogicNetwork { inner })
    }

    #[getter]
    fn num_inputs(&self) -> usize {
        self.inner.inputs().len()
    }

    #[getter]
    fn num_outputs(&self) -> usize {
        self.inner.outputs().len()
    }

    #[getter]
    fn num_gates(&self) -> usize {
        self.inner.num_gates()
    }

    #[getter]
    fn lut_bound(&self) -> Option<usize> {
        self.inner.lut_bound()
    }

    /// Output truth tables as hex strings, most significant row first.
    fn output_tables(&self) -> PyResult<Vec<String>> {
        if self.inner.inputs().len() > 16 {
            return Err(PyValueError::new_err("truth tables are limited to 16 inputs"));
        }
        Ok(self.inner.output_tables().iter().map(TruthTable::to_hex).collect())
    }

    /// k-LUT mapping with the default recovery schedule.
    #[pyo3(signature = (lut_size, area_iters=2, flow_iters=1))]
    fn map(&self, lut_size: usize, area_iters: usize, flow_iters: usize) -> PyResult<Self> {
        let cfg = PipelineConfig { lut_size, area_iters, flow_iters, ..Default::default() };
        Ok(PyLogicNetwork { inner: run_lut_mapping(&self.inner, &cfg).map_err(py_err)? })
    }

    #[pyo3(signature = (model="top"))]
    fn to_blif(&self, model: &str) -> String {
        write_blif(&self.inner, model)
    }

    fn to_aiger(&self) -> PyResult<String> {
        write_aiger(&self.inner).map_err(|e| py_err(e.into()))
    }

    fn __repr__(&self) -> String {
        format!("LogicNetwork(inputs={}, outputs={}, gates={})", self.num_inputs(), self.num_outputs(), self.num_gates())
    }
}

/// Synthesis parameters. Enumerations are given by name, e.g.
/// `order="topo_tfi_sort"`, `mapping="direct"`, `esop_heuristic="def"`.
#[pyclass(name = "Config", module = "revsynth")]
#[derive(Clone)]
struct PyConfig {
    inner: PipelineConfig,
}

#[pymethods]
impl PyConfig {
    #[new]
    #[pyo3(signature = (
        lut_size=16, order="topo_def", area_iters=2, flow_iters=1, mapping="hybrid", esop_extract="aig",
        esop_heuristic="def_wo4", hybrid_area_iters=2, hybrid_flow_iters=1, satopt=false, db=None
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        lut_size: usize,
        order: &str,
        area_iters: usize,
        flow_iters: usize,
        mapping: &str,
        esop_extract: &str,
        esop_heuristic: &str,
        hybrid_area_iters: usize,
        hybrid_flow_iters: usize,
        satopt: bool,
        db: Option<PathBuf>,
    ) -> PyResult<Self> {
        let inner = PipelineConfig {
            lut_size,
            order: parsed(order)?,
            area_iters,
            flow_iters,
            mapping: parsed(mapping)?,
            esop_extract: parsed(esop_extract)?,
            esop_heuristic: parsed(esop_heuristic)?,
            hybrid_area_iters,
            hybrid_flow_iters,
            sat_opt: satopt,
            db_path: db,
        };
        Ok(PyConfig { inner })
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(py_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("config serializes")
    }

    #[getter]
    fn lut_size(&self) -> usize {
        self.inner.lut_size
    }

    fn __repr__(&self) -> String {
        format!("Config({})", self.to_json())
    }
}

/// Gate network after LUT mapping and single-target gate synthesis.
#[pyclass(name = "Skeleton", module = "revsynth")]
struct PySkeleton {
    inner: Skeleton,
}

#[pymethods]
impl PySkeleton {
    #[getter]
    fn qubits(&self) -> usize {
        self.inner.qubits()
    }

    #[getter]
    fn num_gates(&self) -> usize {
        self.inner.network().gates.len()
    }

    #[getter]
    fn num_luts(&self) -> usize {
        self.inner.lut_network.num_gates()
    }

    #[getter]
    fn extra_line(&self) -> bool {
        self.inner.extra_line
    }

    /// Ancilla lines, counting copy lines and the extra line.
    #[getter]
    fn ancillae(&self) -> usize {
        self.inner.synth.ancillae()
    }

    /// Single-target gate network as JSON.
    fn to_json(&self) -> String {
        revsynth::rev::json::to_json(self.inner.network()).to_string()
    }

    /// Line allocation events, one string each.
    fn trace(&self) -> Vec<String> {
        self.inner.synth.trace.iter().map(ToString::to_string).collect()
    }
}

/// Clifford+T circuit with its statistics.
#[pyclass(name = "Result", module = "revsynth")]
struct PyResult_ {
    circuit: CliffordTNetwork,
    stats: String,
    qubits: usize,
}

#[pymethods]
impl PyResult_ {
    #[getter]
    fn qubits(&self) -> usize {
        self.qubits
    }

    #[getter]
    fn t_count(&self) -> usize {
        self.circuit.t_count()
    }

    #[getter]
    fn num_gates(&self) -> usize {
        self.circuit.len()
    }

    fn qasm(&self) -> String {
        self.circuit.to_qasm()
    }

    /// Statistics report as JSON text.
    fn stats_json(&self) -> String {
        self.stats.clone()
    }

    fn __repr__(&self) -> String {
        format!("Result(qubits={}, t_count={})", self.qubits, self.circuit.t_count())
    }
}

fn config_or_default(config: Option<PyRef<'_, PyConfig>>) -> PipelineConfig {
    config.map(|c| c.inner.clone()).unwrap_or_default()
}

/// Steps 1 and 2: the qubit count is fixed here.
#[pyfunction]
#[pyo3(signature = (network, config=None))]
fn synthesize(network: &PyLogicNetwork, config: Option<PyRef<'_, PyConfig>>) -> PyResult<PySkeleton> {
    let cfg = config_or_default(config);
    Ok(PySkeleton { inner: run_skeleton(&network.inner, &cfg).map_err(py_err)? })
}

/// All three steps. Raises `VerificationError` when `verify` finds a mismatch.
#[pyfunction]
#[pyo3(signature = (network, config=None, verify=false, jobs=None, deterministic=true))]
fn run(
    py: Python<'_>,
    network: &PyLogicNetwork,
    config: Option<PyRef<'_, PyConfig>>,
    verify: bool,
    jobs: Option<usize>,
    deterministic: bool,
) -> PyResult<PyResult_> {
    let cfg = config_or_default(config);
    let opts = RunOptions { jobs, verify, deterministic };
    let net = network.inner.clone();
    let o = py.allow_threads(|| run_pipeline(&net, &cfg, &opts)).map_err(py_err)?;
    Ok(PyResult_ { qubits: o.stats.qubits, stats: o.stats.to_json(), circuit: o.circuit })
}

/// Full run on a file, writing the requested outputs.
#[pyfunction]
#[pyo3(signature = (path, config=None, real=None, qasm=None, stats=None, verify=false, jobs=None, deterministic=true))]
#[allow(clippy::too_many_arguments)]
fn run_file(
    py: Python<'_>,
    path: PathBuf,
    config: Option<PyRef<'_, PyConfig>>,
    real: Option<PathBuf>,
    qasm: Option<PathBuf>,
    stats: Option<PathBuf>,
    verify: bool,
    jobs: Option<usize>,
    deterministic: bool,
) -> PyResult<PyResult_> {
    let cfg = config_or_default(config);
    let opts = RunOptions { jobs, verify, deterministic };
    let out = OutputPaths { real, qasm, stats };
    let o = py.allow_threads(|| pipeline::run_full(&path, &cfg, &opts, None, &out)).map_err(py_err)?;
    Ok(PyResult_ { qubits: o.stats.qubits, stats: o.stats.to_json(), circuit: o.circuit })
}

/// Minimize an ESOP given as `(mask, polarity)` pairs; returns the same form.
#[pyfunction]
#[pyo3(signature = (num_vars, cubes, heuristic="def_wo4"))]
fn minimize_esop(num_vars: u32, cubes: Vec<(u32, u32)>, heuristic: &str) -> PyResult<Vec<(u32, u32)>> {
    if !(1..=32).contains(&num_vars) {
        return Err(PyValueError::new_err("num_vars must be in 1..=32"));
    }
    let h: EsopHeuristic = parsed(heuristic)?;
    let cover = EsopCover::from_cubes(num_vars, cubes.into_iter().map(|(m, p)| Cube::new(m, p & m)).collect());
    Ok(minimize(&cover, h).cubes.iter().map(|c| (c.mask, c.polarity)).collect())
}

/// Clifford+T circuit for a Toffoli gate with `controls` positive controls on
/// qubits 0..controls, target `controls`, and `helpers` borrowed lines after
/// it. Returns `(t_count, qasm)`.
#[pyfunction]
#[pyo3(signature = (controls, helpers=0))]
fn toffoli(controls: usize, helpers: usize) -> PyResult<(usize, String)> {
    let g = RevGate::mct((0..controls).map(|i| (i, true)).collect(), controls);
    let (mut c, _) = decompose_mct(&g, &AncillaContext::dirty(controls + 1..controls + 1 + helpers)).map_err(py_err)?;
    c.qubits = controls + 1 + helpers;
    Ok((c.t_count(), c.to_qasm()))
}

/// Class representative (smallest truth table integer) of a function of up
/// to four variables, with the witness `(rows, b, p)`.
#[pyfunction]
fn canonicalize(bits: u64, num_vars: u32) -> PyResult<(u64, Witness)> {
    let (rep, w) = canonicalize_an(&table(bits, num_vars)?).map_err(py_err)?;
    Ok((rep.as_u64(), (w.rows, w.b, w.p)))
}

#[pyfunction]
fn representatives(num_vars: u32) -> PyResult<Vec<u64>> {
    Ok(class_representatives(num_vars).map_err(py_err)?.iter().map(TruthTable::as_u64).collect())
}

/// Circuits per affine class of functions of up to four variables.
#[pyclass(name = "ClassDatabase", module = "revsynth")]
struct PyClassDatabase {
    inner: AnClassDb,
}

#[pymethods]
impl PyClassDatabase {
    /// Baseline database built by direct mapping of each representative.
    #[staticmethod]
    #[pyo3(signature = (heuristic="def_wo4"))]
    fn build(heuristic: &str) -> PyResult<Self> {
        Ok(PyClassDatabase { inner: build_database(MAX_CLASS_VARS, parsed(heuristic)?).map_err(py_err)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyClassDatabase { inner: AnClassDb::load(&path).map_err(py_err)? })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Circuit for `f` on controls 0..n, target n and one helper line:
    /// `(t_count, qasm)`.
    fn lookup(&self, bits: u64, num_vars: u32) -> PyResult<(usize, String)> {
        let f = table(bits, num_vars)?;
        let n = num_vars as usize;
        let c = lookup_and_instantiate(&self.inner, &(0..n).collect::<Vec<_>>(), &f, n, &[n + 1], n + 2).map_err(py_err)?;
        Ok((c.t_count(), c.to_qasm()))
    }

    /// Replace the circuit of a class representative with a cheaper one.
    fn import_qasm(&mut self, bits: u64, num_vars: u32, qasm: &str) -> PyResult<()> {
        let f = table(bits, num_vars)?;
        let c = CliffordTNetwork::from_qasm(qasm, None).map_err(|e| py_err(e.into()))?;
        self.inner.import(&f, c).map_err(py_err)
    }
}

#[pymodule]
#[pyo3(name = "revsynth")]
fn revsynth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLogicNetwork>()?;
    m.add_class::<PyConfig>()?;
    m.add_class::<PySkeleton>()?;
    m.add_class::<PyResult_>()?;
    m.add_class::<PyClassDatabase>()?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(run_file, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_esop, m)?)?;
    m.add_function(wrap_pyfunction!(toffoli, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(representatives, m)?)?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    Ok(())
}
