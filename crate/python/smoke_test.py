"""Smoke test for the pymaxstretch extension. Build it first with
`maturin develop --release -m crates/python/Cargo.toml`."""

import pymaxstretch as ms


def main():
    m = ms.BinaryMatrix(["1101", "1111", "0111", "1111"])
    assert ms.BinaryMatrix.parse(m.to_text()) == m

    for solver in ("naive", "recursive", "memoized", "dp"):
        r = ms.solve(m, solver)
        assert (r.side, r.anchor) == (3, (1, 1)), (solver, r)
        assert ms.verify_witness(m, r)
        print(f"{solver:>9}: {r}")

    assert not ms.verify_witness(m, ms.MaxSquareResult(4, (0, 0)))
    assert ms.phi_closed(3, 3) == ms.phi_recursive(3, 3) == ms.count_by_enumeration(3, 3) == 36
    assert ms.square_count(3) == 14
    assert ms.call_count_oracle(ms.BinaryMatrix(["1"])) == 4

    big = ms.BinaryMatrix.generate("planted", 24, density=0.3, planted_side=6, seed=9)
    assert ms.solve(big).side >= 6
    try:
        ms.solve(big, "recursive")
    except ms.InstanceTooLargeError as e:
        print("cap enforced:", e)
    else:
        raise AssertionError("recursive solver accepted n=24")

    recs = ms.run_sweep(["naive", "dp"], [8, 12, 16, 24], kind="all-ones", reps=3)
    slope, r2 = ms.fit_growth([r for r in recs if r.solver == "dp"], "table_updates")
    assert abs(slope - 2.0) < 1e-9, slope
    assert ms.parse_csv(ms.emit_csv(recs)) == recs
    print(f"dp table_updates slope {slope:.3f} (r2={r2:.3f})")
    print("smoke test OK")


if __name__ == "__main__":
    main()
