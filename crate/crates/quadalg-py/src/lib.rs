//! Python bindings. Scalars cross the boundary as strings in the canonical text form of
//! the field; vectors are lists of such strings.

// pyo3 0.22 macro expansion trips this lint on every PyResult method.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use quadalg::cli::config::RunConfig;
use quadalg::cli::{self, CliError, Command, Instance};
use quadalg::composition::CompositionAlgebra;
use quadalg::field::{FieldCtx, FieldElem};
use quadalg::linalg::Vector;
use quadalg::moufang::{Letter, RootSystem, RootWord, WElem};
use quadalg::quadrangular::QuadrangularAlgebra;
use quadalg::verify::{CheckRecord, ModeKind, VerifyOptions};
use serde_json::{json, Value};

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::ConfigParse { .. } | CliError::Construction(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(py.import_bound("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn from_py(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = py.import_bound("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(value_err)
}

fn field_spec(vars: Option<Vec<String>>) -> Value {
    match vars {
        None => json!({ "kind": "rationals" }),
        Some(vars) => json!({ "kind": "function_field", "vars": vars }),
    }
}

fn options(mode: &str, seed: u64, trials: u64) -> PyResult<VerifyOptions> {
    let mode = match mode {
        "symbolic" => ModeKind::Symbolic,
        "random" => ModeKind::Random,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    Ok(VerifyOptions { mode, seed, trials, ..Default::default() })
}

fn build(construction: Value, vars: Option<Vec<String>>) -> PyResult<Instance> {
    let cfg = json!({ "name": "python", "field": field_spec(vars), "construction": construction });
    let cfg = RunConfig::from_json(&cfg.to_string(), "<python>").map_err(cli_err)?;
    cli::build(&cfg).map_err(cli_err)
}

fn parse_vec(ctx: &FieldCtx, v: &[String], len: usize) -> PyResult<Vector> {
    if v.len() != len {
        return Err(PyValueError::new_err(format!("expected {len} coordinates, got {}", v.len())));
    }
    v.iter().map(|s| ctx.parse(s).map_err(value_err)).collect()
}

fn fmt_vec(ctx: &FieldCtx, v: &[FieldElem]) -> Vec<String> {
    v.iter().map(|x| ctx.format(x)).collect()
}

fn records(py: Python<'_>, recs: &[CheckRecord]) -> PyResult<PyObject> {
    to_py(py, &serde_json::to_value(recs).map_err(value_err)?)
}

/// Runs a configuration given as a dict; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (config, command = "verify"))]
fn run(py: Python<'_>, config: &Bound<'_, PyAny>, command: &str) -> PyResult<PyObject> {
    let command = match command {
        "build" => Command::Build,
        "construct" => Command::Construct,
        "verify" => Command::Verify,
        "rootgroups" => Command::Rootgroups,
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let cfg = RunConfig::from_json(&from_py(py, config)?.to_string(), "<python>").map_err(cli_err)?;
    let report = py.allow_threads(|| cli::run(&cfg, command)).map_err(cli_err)?;
    to_py(py, &serde_json::from_str(&report.to_json()).map_err(value_err)?)
}

/// Normalizes a scalar to canonical form.
#[pyfunction]
#[pyo3(signature = (text, vars = None))]
fn normalize(text: &str, vars: Option<Vec<String>>) -> PyResult<String> {
    let ctx = vars.map_or(FieldCtx::Rationals, FieldCtx::function_field);
    Ok(ctx.format(&ctx.parse(text).map_err(value_err)?))
}

#[pyclass(name = "CompositionAlgebra", module = "quadalg_py")]
struct PyComposition {
    inner: CompositionAlgebra,
}

impl PyComposition {
    fn arg(&self, x: &[String]) -> PyResult<Vector> {
        parse_vec(self.inner.ctx(), x, self.inner.dim())
    }
    fn out(&self, v: &[FieldElem]) -> Vec<String> {
        fmt_vec(self.inner.ctx(), v)
    }
}

#[pymethods]
impl PyComposition {
    /// Cayley-Dickson doubling of the base field with the given parameters.
    #[new]
    #[pyo3(signature = (params, vars = None))]
    fn new(params: Vec<String>, vars: Option<Vec<String>>) -> PyResult<Self> {
        match build(json!({ "kind": "composition", "params": params }), vars)? {
            Instance::Composition(inner) => Ok(PyComposition { inner }),
            _ => unreachable!("composition spec builds a composition algebra"),
        }
    }
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn basis(&self, p: usize) -> PyResult<Vec<String>> {
        if p >= self.inner.dim() {
            return Err(PyValueError::new_err("basis index out of range"));
        }
        Ok(self.out(&self.inner.basis(p)))
    }
    fn mul(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.inner.mul(&self.arg(&x)?, &self.arg(&y)?)))
    }
    fn conj(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.inner.conj(&self.arg(&x)?)))
    }
    fn norm(&self, x: Vec<String>) -> PyResult<String> {
        Ok(self.inner.ctx().format(&self.inner.norm(&self.arg(&x)?)))
    }
    fn inverse(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.inner.inverse(&self.arg(&x)?).map_err(value_err)?))
    }
    fn associator(&self, x: Vec<String>, y: Vec<String>, z: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.inner.associator(&self.arg(&x)?, &self.arg(&y)?, &self.arg(&z)?)))
    }
    /// Flips the sign of one structure constant; for exercising the checks.
    fn corrupt_sign(&mut self, p: usize, q: usize) {
        self.inner.corrupt_sign(p, q);
    }
    #[pyo3(signature = (mode = "symbolic", seed = 1, trials = 100))]
    fn identity_suite(&self, py: Python<'_>, mode: &str, seed: u64, trials: u64) -> PyResult<PyObject> {
        let opts = options(mode, seed, trials)?;
        let recs = py.allow_threads(|| self.inner.identity_suite(&opts));
        records(py, &recs)
    }
}

#[pyclass(name = "QuadrangularAlgebra", module = "quadalg_py")]
struct PyQuadrangular {
    inner: Instance,
}

impl PyQuadrangular {
    fn qa(&self) -> &QuadrangularAlgebra {
        match &self.inner {
            Instance::PseudoQuadratic(_, qa) => qa,
            Instance::Etype(c) => c.quadrangular(),
            _ => unreachable!("built from a pseudo-quadratic or etype spec"),
        }
    }
    fn v(&self, v: &[String]) -> PyResult<Vector> {
        parse_vec(self.qa().ctx(), v, self.qa().v_dim())
    }
    fn x(&self, x: &[String]) -> PyResult<Vector> {
        parse_vec(self.qa().ctx(), x, self.qa().x0_dim())
    }
    fn out(&self, v: &[FieldElem]) -> Vec<String> {
        fmt_vec(self.qa().ctx(), v)
    }
    fn scalar(&self, x: &FieldElem) -> String {
        self.qa().ctx().format(x)
    }
}

#[pymethods]
impl PyQuadrangular {
    /// The quadrangular algebra of type E6, E7 or E8 with parameter `a` and slots `s2, s3, ...`.
    #[staticmethod]
    #[pyo3(signature = (etype, a, slots, vars = None, base_point = None))]
    fn etype(etype: &str, a: String, slots: Vec<String>, vars: Option<Vec<String>>, base_point: Option<Vec<String>>) -> PyResult<Self> {
        let spec = json!({ "kind": "etype", "etype": etype, "a": a, "slots": slots, "base_point": base_point });
        Ok(PyQuadrangular { inner: build(spec, vars)? })
    }
    /// The quadrangular algebra of the anisotropic pseudo-quadratic space `L^n` with
    /// `h(x, y) = sum conj(x_i) gamma_i y_i`.
    #[staticmethod]
    #[pyo3(signature = (l, gamma, vars = None))]
    fn pseudo_quadratic(l: Vec<String>, gamma: Vec<Vec<String>>, vars: Option<Vec<String>>) -> PyResult<Self> {
        let spec = json!({ "kind": "pseudo_quadratic", "l": l, "gamma": gamma });
        Ok(PyQuadrangular { inner: build(spec, vars)? })
    }
    #[getter]
    fn v_dim(&self) -> usize {
        self.qa().v_dim()
    }
    #[getter]
    fn x0_dim(&self) -> usize {
        self.qa().x0_dim()
    }
    #[getter]
    fn base(&self) -> Vec<String> {
        self.out(self.qa().base())
    }
    fn q(&self, v: Vec<String>) -> PyResult<String> {
        Ok(self.scalar(&self.qa().q(&self.v(&v)?)))
    }
    fn f(&self, v: Vec<String>, w: Vec<String>) -> PyResult<String> {
        Ok(self.scalar(&self.qa().f(&self.v(&v)?, &self.v(&w)?)))
    }
    /// `x . v`.
    fn act(&self, x: Vec<String>, v: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.qa().act(&self.x(&x)?, &self.v(&v)?)))
    }
    fn h(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.qa().h(&self.x(&x)?, &self.x(&y)?)))
    }
    fn theta(&self, x: Vec<String>, v: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.qa().theta(&self.x(&x)?, &self.v(&v)?)))
    }
    fn pi(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out(&self.qa().pi(&self.x(&x)?)))
    }
    fn g(&self, x: Vec<String>, y: Vec<String>) -> PyResult<String> {
        Ok(self.scalar(&self.qa().g(&self.x(&x)?, &self.x(&y)?)))
    }
    #[pyo3(signature = (mode = "random", seed = 1, trials = 100))]
    fn verify_axioms(&self, py: Python<'_>, mode: &str, seed: u64, trials: u64) -> PyResult<PyObject> {
        let opts = options(mode, seed, trials)?;
        let recs = py.allow_threads(|| self.qa().verify_axioms(&opts));
        records(py, &recs)
    }
    /// The full suite of the construction, as run by `quadalg verify`.
    #[pyo3(signature = (mode = "random", seed = 1, trials = 100))]
    fn checks(&self, py: Python<'_>, mode: &str, seed: u64, trials: u64) -> PyResult<PyObject> {
        let opts = options(mode, seed, trials)?;
        let recs = py.allow_threads(|| self.inner.checks(&opts)).map_err(cli_err)?;
        records(py, &recs)
    }
}

/// Root groups `U1..U4`. `W` elements are flat lists of `X0` then `J0` coordinates, `V`
/// elements are half-space coordinates, and a word `x1(w1) x2(v2) x3(w3) x4(v4)` is the
/// tuple `(w1, v2, w3, v4)`.
#[pyclass(name = "RootGroups", module = "quadalg_py")]
struct PyRootGroups {
    inner: Instance,
}

type PyWord = (Vec<String>, Vec<String>, Vec<String>, Vec<String>);

impl PyRootGroups {
    fn rs(&self) -> &RootSystem {
        match &self.inner {
            Instance::Rootgroups(_, rs) => rs,
            _ => unreachable!("rootgroups spec builds a root system"),
        }
    }
    fn w(&self, w: &[String]) -> PyResult<WElem> {
        let rs = self.rs();
        let c = parse_vec(rs.ctx(), w, rs.w_param_dim())?;
        let k = rs.x0().dim();
        Ok(rs.w_from_coords(&c[..k], &c[k..]))
    }
    fn v(&self, v: &[String]) -> PyResult<Vector> {
        let rs = self.rs();
        Ok(rs.v_from_coords(&parse_vec(rs.ctx(), v, rs.v_dim())?))
    }
    fn out_w(&self, w: &WElem) -> Vec<String> {
        fmt_vec(self.rs().ctx(), &self.rs().w_param(w))
    }
    fn out_v(&self, v: &[FieldElem]) -> Vec<String> {
        fmt_vec(self.rs().ctx(), &self.rs().v_coords(v))
    }
    fn word(&self, g: &PyWord) -> PyResult<RootWord> {
        Ok(RootWord { w1: self.w(&g.0)?, v2: self.v(&g.1)?, w3: self.w(&g.2)?, v4: self.v(&g.3)? })
    }
    fn out_word(&self, g: &RootWord) -> PyWord {
        (self.out_w(&g.w1), self.out_v(&g.v2), self.out_w(&g.w3), self.out_v(&g.v4))
    }
}

#[pymethods]
impl PyRootGroups {
    /// `target` is a dict as in the `rootgroups` construction of a run configuration, e.g.
    /// `{"kind": "quadratic_form", "diag": ["1", "2"], "base": ["1", "0"]}`.
    #[new]
    #[pyo3(signature = (target, vars = None))]
    fn new(py: Python<'_>, target: &Bound<'_, PyDict>, vars: Option<Vec<String>>) -> PyResult<Self> {
        let spec = json!({ "kind": "rootgroups", "target": from_py(py, target.as_any())? });
        Ok(PyRootGroups { inner: build(spec, vars)? })
    }
    #[getter]
    fn w_dim(&self) -> usize {
        self.rs().w_param_dim()
    }
    #[getter]
    fn v_dim(&self) -> usize {
        self.rs().v_dim()
    }
    fn w_add(&self, w1: Vec<String>, w2: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out_w(&self.rs().w_add(&self.w(&w1)?, &self.w(&w2)?).map_err(value_err)?))
    }
    fn w_neg(&self, w: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out_w(&self.rs().w_neg(&self.w(&w)?).map_err(value_err)?))
    }
    /// The `U2` element of `[x1(w1), x3(w2)]`.
    fn comm13(&self, w1: Vec<String>, w2: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out_v(&self.rs().comm13(&self.w(&w1)?, &self.w(&w2)?).map_err(value_err)?))
    }
    /// The `U3` element of `[x2(v1), x4(v2)]`.
    fn comm24(&self, v1: Vec<String>, v2: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.out_w(&self.rs().comm24(&self.v(&v1)?, &self.v(&v2)?).map_err(value_err)?))
    }
    /// The `U2` and `U3` parts of `[x1(w), x4(v)]`.
    fn comm14(&self, w: Vec<String>, v: Vec<String>) -> PyResult<(Vec<String>, Vec<String>)> {
        let (c2, c3) = self.rs().comm14(&self.w(&w)?, &self.v(&v)?).map_err(value_err)?;
        Ok((self.out_v(&c2), self.out_w(&c3)))
    }
    fn word_mul(&self, g: PyWord, h: PyWord) -> PyResult<PyWord> {
        Ok(self.out_word(&self.rs().word_mul(&self.word(&g)?, &self.word(&h)?).map_err(value_err)?))
    }
    fn word_inv(&self, g: PyWord) -> PyResult<PyWord> {
        Ok(self.out_word(&self.rs().word_inv(&self.word(&g)?).map_err(value_err)?))
    }
    /// Normal form of a product of generators given as `(index, coords)` pairs.
    fn collect(&self, letters: Vec<(usize, Vec<String>)>) -> PyResult<PyWord> {
        let letters = letters
            .iter()
            .map(|(i, c)| match i {
                1 => Ok(Letter::X1(self.w(c)?)),
                2 => Ok(Letter::X2(self.v(c)?)),
                3 => Ok(Letter::X3(self.w(c)?)),
                4 => Ok(Letter::X4(self.v(c)?)),
                _ => Err(PyValueError::new_err(format!("root group index {i} out of range"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(self.out_word(&self.rs().collect(letters).map_err(value_err)?))
    }
    /// Group laws, collection, and the comparison with the classical description.
    #[pyo3(signature = (mode = "random", seed = 1, trials = 100))]
    fn checks(&self, py: Python<'_>, mode: &str, seed: u64, trials: u64) -> PyResult<PyObject> {
        let opts = options(mode, seed, trials)?;
        let recs = py.allow_threads(|| self.inner.checks(&opts)).map_err(cli_err)?;
        records(py, &recs)
    }
}

#[pymodule]
pub fn quadalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_class::<PyComposition>()?;
    m.add_class::<PyQuadrangular>()?;
    m.add_class::<PyRootGroups>()?;
    Ok(())
}
