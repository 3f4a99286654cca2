//! Acceptance suite: runs criteria 1 through 11 once each, prints one line
//! per criterion and fails if any criterion fails.

use std::process::ExitCode;

use jetform::verify::{self, tolerances, CRITERIA};

const SEED: u64 = 20240611;

/// Minimum case counts per criterion.
const MIN_CASES: [(u8, usize); 11] = [
    (1, 100),
    (2, 201),
    (3, 200),
    (4, 200),
    (5, 2),
    (6, 150),
    (7, 100),
    (8, 201),
    (9, 3),
    (10, 12),
    (11, 50),
];

fn pinned_tolerances() -> Vec<String> {
    let pins = [
        ("quadrature vs exact", tolerances::QUADRATURE_VS_EXACT, 1e-8),
        ("operator convergence sup", tolerances::CONVERGENCE_SUP, 1e-3),
        ("tangent limit angle", tolerances::TANGENT_ANGLE, 1e-4),
        ("black-box split residual", tolerances::SPLIT_RESIDUAL, 1e-8),
        ("reversed concatenation", tolerances::REVERSE_CONCAT, 1e-10),
        ("junction derivatives", tolerances::JUNCTION, 1e-6),
        ("black-box quadrature", tolerances::BLACK_BOX, 1e-6),
    ];
    pins.iter()
        .filter(|(_, actual, expected)| actual != expected)
        .map(|(name, actual, expected)| format!("{name}: {actual:e} instead of {expected:e}"))
        .collect()
}

fn main() -> ExitCode {
    let mut ok = true;
    let drift = pinned_tolerances();
    if drift.is_empty() {
        println!("tolerances pinned");
    } else {
        ok = false;
        for d in &drift {
            println!("tolerance drift: {d}");
        }
    }

    let all: Vec<_> = CRITERIA.iter().map(|&(id, _, f)| (id, f)).collect();
    assert_eq!(all.len(), 11);
    for report in verify::run(&all, SEED) {
        let min = MIN_CASES.iter().find(|(id, _)| *id == report.id).map_or(0, |m| m.1);
        let enough = report.cases >= min;
        println!("{report}");
        if !enough {
            println!("criterion {:>2} ran {} cases, needs {min}", report.id, report.cases);
        }
        ok &= report.passed && enough;
    }
    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
