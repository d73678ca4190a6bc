//! Drives the module through an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl for<'py> FnOnce(Python<'py>, &Bound<'py, PyDict>) -> R) -> R {
    Python::attach(|py| {
        let m = PyModule::new(py, "gossip_rank").unwrap();
        gossip_rank_py::gossip_rank_py(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("gr", m).unwrap();
        f(py, &globals)
    })
}

fn eval<'py>(py: Python<'py>, globals: &Bound<'py, PyDict>, expr: &str) -> Bound<'py, PyAny> {
    let code = std::ffi::CString::new(expr).unwrap();
    py.eval(&code, Some(globals), None).unwrap()
}

#[test]
fn kendall_and_gap() {
    with_module(|py, g| {
        assert_eq!(
            eval(py, g, "gr.kendall_tau([1, 2, 3], [3, 2, 1])")
                .extract::<u64>()
                .unwrap(),
            3
        );
        let c: f64 = eval(py, g, "gr.Graph.generate('complete', 3).spectral_gap()")
            .extract()
            .unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    });
}

#[test]
fn consensus_rules_agree_on_a_unanimous_profile() {
    with_module(|py, g| {
        for rule in ["borda", "copeland", "footrule", "kemeny"] {
            let expr = format!("gr.Profile([[2, 1, 3]] * 4).consensus('{rule}')['ranking']");
            assert_eq!(eval(py, g, &expr).extract::<Vec<usize>>().unwrap(), vec![2, 1, 3]);
        }
    });
}

#[test]
fn errors_map_to_python_exceptions() {
    with_module(|py, g| {
        let code = std::ffi::CString::new("gr.Profile([[1, 1, 2]])").unwrap();
        let err = py.eval(&code, Some(g), None).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let code = std::ffi::CString::new("gr.Profile.load('/nonexistent.soc')").unwrap();
        let err = py.eval(&code, Some(g), None).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyOSError>(py));
    });
}

#[test]
fn simulation_converges_on_a_complete_graph() {
    with_module(|py, g| {
        let code = "(lambda p: (lambda s: (s.run(3000), s.kendall_error(p.consensus('copeland')['ranking']))[1])\
                    (gr.Simulation('lk-copeland', p, gr.Graph.generate('complete', 21), 5)))\
                    (gr.Profile.mallows(21, 5, 0.3, seed=2))";
        assert_eq!(eval(py, g, code).extract::<f64>().unwrap(), 0.0);
    });
}
