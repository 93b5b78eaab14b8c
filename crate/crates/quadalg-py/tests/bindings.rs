use pyo3::prelude::*;
use pyo3::types::PyDict;
use quadalg_py::quadalg_py;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyDict>)>(f: F) {
    pyo3::append_to_inittab!(quadalg_py);
    Python::with_gil(|py| {
        let globals = PyDict::new_bound(py);
        globals.set_item("qa", py.import_bound("quadalg_py").unwrap()).unwrap();
        f(py, &globals);
    });
}

fn exec(py: Python<'_>, globals: &Bound<'_, PyDict>, code: &str) {
    py.run_bound(code, Some(globals), None).unwrap_or_else(|e| panic!("{e}\n{code}"));
}

#[test]
fn bindings_round_trip() {
    with_module(|py, g| {
        exec(
            py,
            g,
            r#"
o = qa.CompositionAlgebra(["-1", "-1", "-1"])
assert o.dim == 8
x = ["1", "2", "0", "-1", "0", "0", "3", "1/2"]
assert o.norm(x) == "61/4"
assert o.mul(x, o.inverse(x)) == o.basis(0)
assert all(r["status"] == "pass" for r in o.identity_suite("symbolic"))

e6 = qa.QuadrangularAlgebra.etype("E6", "-1", ["1", "1"])
assert (e6.v_dim, e6.x0_dim) == (6, 8)
y = ["0", "1", "0", "0", "2", "0", "0", "0"]
assert e6.act(y, e6.base) == y
assert e6.q(e6.pi(y)) != "0"

rg = qa.RootGroups({"kind": "quadratic_form", "diag": ["1", "2", "3"], "base": ["1", "0", "0"]})
assert rg.comm14(["3"], ["1", "2", "-1"]) == (["3", "6", "-3"], ["36"])
assert rg.comm24(["1", "0", "0"], ["0", "1", "0"]) == ["0"]

for bad in (lambda: o.norm(["1"]), lambda: qa.normalize("1/0"), lambda: rg.collect([(5, ["1"])])):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("accepted bad input")

report = qa.run({"name": "p", "construction": {"kind": "pseudo_quadratic", "l": ["-1"], "gamma": [["0", "1"]]},
                 "verify": {"mode": "random", "trials": 20}})
assert report["passed"] and report["summary"]["fail"] == 0
"#,
        );
    });
}
