//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::cli::{check_case, exit_code_cases, golden_cases, run};
use common::*;
use lu_invariants::linalg::cayley_hamilton_residual;
use lu_invariants::{
    adjoint_of, build_basis, compare, conjugate, decompose2, decompose3, fingerprint, haar_su,
    random_density, reconstruct2, reconstruct3, DensityMatrix, InvariantSettings, RngSeed,
    VerdictStatus,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn random_state(dims: &[usize], seed: u64) -> DensityMatrix {
    let side: usize = dims.iter().product();
    random_density(dims, 1 + (seed as usize * 7) % side, RngSeed(seed)).unwrap()
}

fn adjoint_rotations() -> Outcome {
    let mut worst_orth = 0.0f64;
    let mut worst_det = 0.0f64;
    for d in 2..=4 {
        let basis = build_basis(d).unwrap();
        for seed in 0..50u64 {
            let o = adjoint_of(&haar_su(d, RngSeed(seed)).unwrap(), &basis).unwrap();
            worst_orth = worst_orth.max(o.orthogonality_defect());
            worst_det = worst_det.max((o.matrix().determinant() - 1.0).abs());
        }
    }
    let summary = format!("max ‖OᵗO−I‖ {worst_orth:.1e}, max |det O−1| {worst_det:.1e}");
    if worst_orth <= 1e-10 && worst_det <= 1e-8 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn transformation_laws() -> Outcome {
    let mut worst = 0.0f64;
    for dims in [[2, 2], [2, 3], [3, 3]] {
        for seed in 0..50u64 {
            worst = worst.max(bipartite_law_defect(&dims, 1000 + seed));
        }
    }
    for dims in [[2, 2, 2], [2, 2, 3]] {
        for seed in 0..50u64 {
            worst = worst.max(tripartite_law_defect(&dims, 2000 + seed));
        }
    }
    let summary = format!("max entrywise defect {worst:.1e}");
    if worst <= 1e-10 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Largest `|a−b| / max(|a|,|b|)` over all entries, for `draws` random
/// (state, local unitaries) pairs per dimension set.
fn orbit_invariance(dims_list: &[&[usize]], draws: u64, salt: u64) -> Outcome {
    let settings = InvariantSettings::default();
    let mut worst = 0.0f64;
    let mut worst_key = String::new();
    let mut checked = 0usize;
    for dims in dims_list {
        for seed in 0..draws {
            let rho = random_state(dims, salt + seed);
            let (locals, _) = random_locals(dims, salt + 10_000 + seed);
            let a = fingerprint(&rho, &settings).unwrap();
            let b = fingerprint(&conjugate(&rho, &locals).unwrap(), &settings).unwrap();
            for ((key, x), (_, y)) in a.entries().iter().zip(b.entries()) {
                let scale = x.abs().max(y.abs());
                let rel = if scale == 0.0 {
                    0.0
                } else {
                    (x - y).abs() / scale
                };
                if rel > worst {
                    worst = rel;
                    worst_key = key.to_string();
                }
                checked += 1;
            }
        }
    }
    let summary = format!("{checked} entries, max relative deviation {worst:.1e} ({worst_key})");
    if worst <= 1e-10 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn discrimination() -> Outcome {
    let settings = InvariantSettings::default();
    let fp = |rho: &DensityMatrix| fingerprint(rho, &settings).unwrap();

    let v = compare(&fp(&bell()), &fp(&product00()), 1e-9).unwrap();
    let witness = v.witnesses.iter().find(|w| w.key == "T1.iii.beta=1");
    let bell_ok = v.status == VerdictStatus::Distinct
        && witness.is_some_and(|w| {
            (w.value_a - 3.0 / 16.0).abs() <= 1e-15 && (w.value_b - 1.0 / 16.0).abs() <= 1e-15
        });
    if !bell_ok {
        return Err(format!("Bell vs |00⟩: {v:?}"));
    }

    let v = compare(&fp(&ghz()), &fp(&w_state()), 1e-9).unwrap();
    if v.status != VerdictStatus::Distinct {
        return Err("GHZ vs W not distinct".into());
    }
    let ghz_w = v.witnesses.len();

    let configs: [&[usize]; 5] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3]];
    for i in 0..50u64 {
        let dims = configs[i as usize % configs.len()];
        let rho = random_state(dims, 3000 + i);
        let (locals, _) = random_locals(dims, 4000 + i);
        let v = compare(&fp(&rho), &fp(&conjugate(&rho, &locals).unwrap()), 1e-9).unwrap();
        if v.status != VerdictStatus::Inconclusive {
            return Err(format!("LU conjugate {i} ({dims:?}) reported distinct"));
        }
    }
    Ok(format!(
        "Bell/|00⟩ witness 3/16 vs 1/16, GHZ/W {ghz_w} witnesses, 50 LU pairs inconclusive"
    ))
}

fn round_trip() -> Outcome {
    let configs: [&[usize]; 5] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3]];
    let mut worst = 0.0f64;
    for dims in configs {
        for seed in 0..100u64 {
            let rho = random_state(dims, 5000 + seed);
            let back = if dims.len() == 2 {
                reconstruct2(&decompose2(&rho).unwrap()).unwrap()
            } else {
                reconstruct3(&decompose3(&rho).unwrap()).unwrap()
            };
            worst = worst.max((back.matrix() - rho.matrix()).camax());
        }
    }
    let summary = format!("500 states, max entrywise error {worst:.1e}");
    if worst <= 1e-12 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn cayley_hamilton() -> Outcome {
    let configs: [[usize; 2]; 3] = [[2, 2], [2, 3], [3, 3]];
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let b = decompose2(&random_state(&configs[i as usize % 3], 6000 + i)).unwrap();
        worst = worst.max(cayley_hamilton_residual(&b.r, &b.s));
    }
    let summary = format!("20 states, max relative residual {worst:.1e}");
    if worst <= 1e-8 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn cli_contract() -> Outcome {
    let cases = golden_cases();
    for case in &cases {
        check_case(case, false)?;
    }
    let codes = exit_code_cases();
    for (args, expected) in &codes {
        let (code, _, stderr) = run(args);
        if code != *expected {
            return Err(format!(
                "{args:?}: exit {code}, expected {expected} ({stderr})"
            ));
        }
    }
    Ok(format!(
        "{} golden files, {} exit-code cases",
        cases.len(),
        codes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "adjoint rotations are special orthogonal",
            Duration::from_secs(5),
            adjoint_rotations,
        ),
        (
            "coefficient transformation laws",
            Duration::from_secs(30),
            transformation_laws,
        ),
        (
            "two-party orbit invariance",
            Duration::from_secs(60),
            || orbit_invariance(&[&[2, 2], &[2, 3], &[3, 3]], 200, 0),
        ),
        (
            "three-party orbit invariance",
            Duration::from_secs(120),
            || orbit_invariance(&[&[2, 2, 2], &[2, 2, 3]], 100, 100_000),
        ),
        ("discrimination", Duration::from_secs(60), discrimination),
        (
            "decompose/reconstruct round trip",
            Duration::from_secs(60),
            round_trip,
        ),
        (
            "Cayley-Hamilton redundancy",
            Duration::from_secs(60),
            cayley_hamilton,
        ),
        ("CLI contract", Duration::from_secs(120), cli_contract),
    ];
    let mut failed = 0;
    for (index, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{elapsed:.2?}]", index + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{elapsed:.2?}]", index + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
