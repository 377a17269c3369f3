//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxstretch::bench::{self, fit_growth, run_sweep, square_count, Metric, SweepConfig};
use maxstretch::combinatorics::{count_by_enumeration, phi_closed, phi_recursive};
use maxstretch::matrix::{generate, parse_matrix, serialize_matrix, GeneratorKind, GeneratorSpec};
use maxstretch::solvers::{solve, solve_dp, solve_naive, solve_recursive, verify_witness, SolverKind};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_ones(n: usize) -> maxstretch::BinaryMatrix {
    generate(&GeneratorSpec::new(GeneratorKind::AllOnes, n)).unwrap()
}

/// 1. Four-solver equivalence with witness verification on 200 instances.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let densities = [0.2, 0.5, 0.8];
    for i in 0..200u64 {
        let n = (i % 13) as usize;
        let density = densities[(i % 3) as usize];
        let m = generate(&GeneratorSpec::bernoulli(n, density, i)).map_err(|e| e.to_string())?;
        let mut sides = Vec::new();
        for kind in SolverKind::ALL {
            let r = solve(kind, &m, None).map_err(|e| e.to_string())?;
            let ok = verify_witness(&m, &r).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{kind} witness rejected on instance {i} (n={n}, p={density})"))?;
            sides.push(r.side);
        }
        ensure(sides.windows(2).all(|w| w[0] == w[1]), || {
            format!("sides differ on instance {i}: {sides:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, limit 60 s"))?;
    Ok(format!("200 instances agree, {elapsed:.2?}"))
}

/// 2. Exact identities for the submatrix count.
fn phi_identities() -> Outcome {
    for m in 1..=50u64 {
        for n in 1..=50u64 {
            let (r, c) = (phi_recursive(m, n), phi_closed(m, n));
            ensure(r.is_ok() && r == c, || format!("recursive {r:?} != closed {c:?} at ({m},{n})"))?;
        }
    }
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let (e, c) = (count_by_enumeration(m, n), phi_closed(m, n));
            ensure(e.is_ok() && e == c, || format!("enumeration {e:?} != closed {c:?} at ({m},{n})"))?;
        }
    }
    for n in 1..=1000u64 {
        let phi = phi_closed(n, n).map_err(|e| e.to_string())?;
        let rhs = u128::from(n).pow(2) * u128::from(n + 1).pow(2);
        ensure(phi * 4 == rhs, || format!("4*phi({n},{n}) = {} != {rhs}", phi * 4))?;
    }
    Ok("recursive=closed on [1,50]^2, enumeration=closed on [1,12]^2, 4*phi(n,n)=n^2(n+1)^2 on [1,1000]".into())
}

/// 3. DP performs exactly n² table updates; fitted slope is 2.
fn dp_quadratic() -> Outcome {
    for n in [1usize, 7, 64, 513] {
        let m = generate(&GeneratorSpec::bernoulli(n, 0.5, n as u64)).unwrap();
        let updates = solve_dp(&m).counters.table_updates;
        ensure(updates == Some((n * n) as u64), || format!("n={n}: updates {updates:?}"))?;
    }
    let cfg = SweepConfig {
        solvers: vec![SolverKind::Dp],
        sizes: vec![16, 32, 64, 128, 256],
        template: GeneratorSpec::bernoulli(0, 0.5, 1),
        reps: 1,
        recursion_cap: None,
    };
    let records = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let est = fit_growth(&records, Metric::TableUpdates).map_err(|e| e.to_string())?;
    ensure((est.slope - 2.0).abs() <= 1e-9, || format!("slope {}", est.slope))?;
    Ok(format!("updates = n^2 on {{1,7,64,513}}, slope {:.12}", est.slope))
}

/// 4. Naive enumerates n(n+1)(2n+1)/6 squares on all-ones; cell work grows ~n^5.
fn naive_counts() -> Outcome {
    for n in 1..=64usize {
        let r = solve_naive(&all_ones(n));
        let expected = (n * (n + 1) * (2 * n + 1) / 6) as u64;
        ensure(r.counters.submatrices_enumerated == Some(expected), || {
            format!("n={n}: enumerated {:?}, expected {expected}", r.counters.submatrices_enumerated)
        })?;
        ensure(u128::from(expected) == square_count(n as u64).unwrap(), || format!("square_count({n})"))?;
    }
    let cfg = SweepConfig {
        solvers: vec![SolverKind::Naive],
        sizes: vec![8, 12, 16, 24, 32],
        template: GeneratorSpec::new(GeneratorKind::AllOnes, 0),
        reps: 1,
        recursion_cap: None,
    };
    let records = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let est = fit_growth(&records, Metric::CellsInspected).map_err(|e| e.to_string())?;
    ensure((4.6..=5.2).contains(&est.slope), || format!("cells slope {} outside [4.6, 5.2]", est.slope))?;
    Ok(format!("square counts exact on [1,64], cells_inspected slope {:.4}", est.slope))
}

/// 5. Measured recursive calls equal the counting oracle; growth ratio > 3.
fn recursion_cost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50u64 {
        let n = rng.random_range(0..=12usize);
        let density = rng.random_range(0.1..0.95);
        let m = generate(&GeneratorSpec::bernoulli(n, density, 1000 + i)).unwrap();
        let r = solve_recursive(&m, Some(12)).map_err(|e| e.to_string())?;
        let oracle = bench::call_count_oracle(&m);
        ensure(BigUint::from(r.counters.recursive_calls.unwrap()) == oracle, || {
            format!("random instance {i} (n={n}): measured {:?}, oracle {oracle}", r.counters.recursive_calls)
        })?;
    }
    let mut calls = vec![0u64; 13];
    for n in 1..=12usize {
        let m = all_ones(n);
        let measured = solve_recursive(&m, Some(12)).unwrap().counters.recursive_calls.unwrap();
        let oracle = bench::call_count_oracle(&m);
        ensure(BigUint::from(measured) == oracle, || format!("all-ones n={n}: {measured} vs {oracle}"))?;
        calls[n] = measured;
    }
    let mut min_ratio = f64::INFINITY;
    for n in 6..=11 {
        let ratio = calls[n + 1] as f64 / calls[n] as f64;
        ensure(ratio > 3.0, || format!("calls({})/calls({n}) = {ratio}", n + 1))?;
        min_ratio = min_ratio.min(ratio);
    }
    Ok(format!("oracle exact on 50 random + all-ones [1,12]; min growth ratio {min_ratio:.3}"))
}

/// 6. Median times order dp <= naive <= recursive at every size.
fn fig1_ordering() -> Outcome {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_maxstretch"))
        .args(["bench", "--solvers", "naive,recursive,dp", "--sizes", "8,10,12", "--density", "0.5", "--reps", "11"])
        .env_remove("MAXSTRETCH_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(output.status.success(), || format!("bench exited with {}", output.status))?;
    let records = bench::parse_csv(&output.stdout[..]).map_err(|e| e.to_string())?;
    let median = |kind: SolverKind, n: usize| {
        records
            .iter()
            .find(|r| r.solver == kind && r.n == n)
            .map(|r| r.time_median_ns)
            .ok_or_else(|| format!("missing {kind} at n={n}"))
    };
    let mut summary = Vec::new();
    for n in [8, 10, 12] {
        let (dp, naive, rec) = (median(SolverKind::Dp, n)?, median(SolverKind::Naive, n)?, median(SolverKind::Recursive, n)?);
        ensure(dp <= naive && naive <= rec, || format!("n={n}: dp {dp} naive {naive} recursive {rec} ns"))?;
        summary.push(format!("n={n}: {dp}<={naive}<={rec}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}, limit 5 min"))?;
    Ok(summary.join(", "))
}

/// 7. Serialization, generation and CSV round-trips.
fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let kinds = [
        GeneratorKind::AllOnes,
        GeneratorKind::AllZeros,
        GeneratorKind::Identity,
        GeneratorKind::Bernoulli,
        GeneratorKind::Planted,
    ];
    for i in 0..100 {
        let n = rng.random_range(0..=256usize);
        let spec = GeneratorSpec {
            kind: kinds[rng.random_range(0..kinds.len())],
            n,
            density: rng.random_range(0.0..=1.0),
            planted_side: rng.random_range(0..=n),
            seed: rng.random(),
        };
        let m = generate(&spec).map_err(|e| e.to_string())?;
        ensure(generate(&spec).unwrap() == m, || format!("spec {i} not deterministic: {spec:?}"))?;
        let back = parse_matrix(&serialize_matrix(&m)).map_err(|e| e.to_string())?;
        ensure(back == m, || format!("spec {i} did not round-trip: {spec:?}"))?;
    }
    let cfg = SweepConfig {
        solvers: SolverKind::ALL.to_vec(),
        sizes: vec![4, 6, 8, 10],
        template: GeneratorSpec::bernoulli(0, 0.5, 3),
        reps: 3,
        recursion_cap: Some(12),
    };
    let records = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    bench::emit_csv(&records, &mut buf).map_err(|e| e.to_string())?;
    bench::emit_slopes(&bench::fit_all(&records), &mut buf).map_err(|e| e.to_string())?;
    let parsed = bench::parse_csv(&buf[..]).map_err(|e| e.to_string())?;
    ensure(parsed == records, || "CSV round-trip changed records".into())?;
    Ok(format!("100 specs round-trip and are deterministic; {} CSV records round-trip", records.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 oracle equivalence", oracle_equivalence),
        ("AC2 phi identities", phi_identities),
        ("AC3 dp quadratic", dp_quadratic),
        ("AC4 naive enumeration counts", naive_counts),
        ("AC5 recursion cost", recursion_cost),
        ("AC6 timing order dp<=naive<=recursive", fig1_ordering),
        ("AC7 round-trip and determinism", round_trips),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
