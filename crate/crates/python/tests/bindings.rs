use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(script: &str) {
    Python::attach(|py| {
        let module = PyModule::new(py, "pymaxstretch").unwrap();
        pymaxstretch::pymaxstretch(&module).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("ms", module).unwrap();
        let code = std::ffi::CString::new(script).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn matrix_round_trip_and_generation() {
    with_module(
        r#"
m = ms.BinaryMatrix(["1101", "1111", "0111", "1111"])
assert m.n == 4
assert m.get(0, 2) == 0
assert ms.BinaryMatrix.parse(m.to_text()) == m
assert ms.BinaryMatrix.generate("identity", 3).rows() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
a = ms.BinaryMatrix.generate("bernoulli", 8, density=0.5, seed=1)
assert a == ms.BinaryMatrix.generate("bernoulli", 8, density=0.5, seed=1)
for bad in ("2\n1 2\n0 1\n", "", "2\n10\n"):
    try:
        ms.BinaryMatrix.parse(bad)
    except ValueError:
        pass
    else:
        raise AssertionError(bad)
"#,
    );
}

#[test]
fn solvers_and_verification() {
    with_module(
        r#"
m = ms.BinaryMatrix(["1101", "1111", "0111", "1111"])
for name in ("naive", "recursive", "memoized", "dp"):
    r = ms.solve(m, name)
    assert (r.side, r.anchor, r.area) == (3, (1, 1), 9), (name, r)
    assert ms.verify_witness(m, r)
    assert ms.MaxSquareResult.parse(str(r)) == r
dp = ms.solve(m)
assert dp.counters == {"cells_inspected": 16, "table_updates": 16}
assert ms.dp_table(ms.BinaryMatrix(["11", "11"])) == [[1, 1], [1, 2]]
assert not ms.verify_witness(ms.BinaryMatrix.generate("identity", 3), ms.MaxSquareResult(2, (0, 0)))
big = ms.BinaryMatrix.generate("bernoulli", 20, seed=3)
try:
    ms.solve(big, "recursive")
except ms.InstanceTooLargeError:
    pass
else:
    raise AssertionError("cap not enforced")
assert issubclass(ms.InstanceTooLargeError, ValueError)
one = ms.BinaryMatrix(["1"])
assert ms.solve(one, "recursive").counters["recursive_calls"] == 4 == ms.call_count_oracle(one)
assert ms.call_count_oracle(ms.BinaryMatrix.generate("all-ones", 60)) > 2**128
"#,
    );
}

#[test]
fn counting_functions() {
    with_module(
        r#"
assert ms.phi_base(3) == 6
assert ms.phi_recursive(2, 2) == 9 == ms.count_by_enumeration(2, 2)
assert ms.phi_closed(4, 7) == 280
assert ms.square_count(3) == 14
try:
    ms.phi_closed(0, 3)
except ValueError:
    pass
else:
    raise AssertionError("domain error expected")
"#,
    );
}

#[test]
fn bench_surface() {
    with_module(
        r#"
recs = ms.run_sweep(["dp"], [16, 32, 64, 128], kind="all-ones", reps=1)
assert [r.metric("table_updates") for r in recs] == [256, 1024, 4096, 16384]
assert recs[0].metric("recursive_calls") is None
slope, r2 = ms.fit_growth(recs, "table_updates")
assert abs(slope - 2.0) < 1e-9 and abs(r2 - 1.0) < 1e-9
text = ms.emit_csv(recs)
assert text.splitlines()[0] == "solver,n,density,seed,reps,time_median_ns,time_min_ns,cells_inspected,submatrices_enumerated,recursive_calls,table_updates"
assert ms.parse_csv(text) == recs
try:
    ms.run_sweep(["recursive"], [16])
except ms.InstanceTooLargeError:
    pass
else:
    raise AssertionError("cap not enforced")
"#,
    );
}
