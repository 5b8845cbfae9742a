use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(f: impl FnOnce(Python<'_>, &Bound<'_, PyModule>) -> PyResult<()>) {
    use pyenthom::pyenthom;
    pyo3::append_to_inittab!(pyenthom);
    Python::attach(|py| {
        let m = py.import("pyenthom").expect("module registers");
        f(py, &m).unwrap();
    });
}

#[test]
fn module_round_trip() {
    with_module(|py, m| {
        let locals = PyDict::new(py);
        locals.set_item("pe", m)?;
        py.run(
            c"
w3 = pe.PureState.named('w3')
bc = pe.barcode(w3, 'D', 'cech', 'concurrence')
assert bc.signature == 'H0:2f1i,H1:1f0i', bc.signature
assert pe.classify(pe.PureState.named('F'))['genuine_rips'] == '4q-f/B6'
assert pe.bound(4) == 912
try:
    pe.barcode(w3, complex='alpha')
    raise AssertionError('bad complex accepted')
except ValueError:
    pass
",
            None,
            Some(&locals),
        )
    });
}
