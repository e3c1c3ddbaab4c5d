//! Acceptance suite. Runs every criterion in order, prints one
//! `criterion N: PASS|FAIL ...` line each, and exits non-zero if any fails.
//! Positional arguments select criteria by number.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use csl_core::clifford::{dimension_accounting, spinor_dim, verify_relations, CliffordRealization};
use csl_core::gilbert::{
    check_gilbert, dim_obstruction, mixed_signature_check, spinning_evidence, standard_witness_for,
};
use csl_core::hardy::{
    convolution_crosscheck, localized_field, suite_crb, suite_dirac, suite_idempotency,
    suite_involution, suite_rbc, suite_schwartz, CliffordOps, Grid, SuiteConfig, TOL_OFF_AXIS,
    TOL_PERIODIZATION, TOL_QUADRATURE,
};

fn criterion_1_relation_suite() -> (bool, String) {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=13 {
        let r = CliffordRealization::build(n).unwrap();
        let rep = verify_relations(&r).unwrap();
        if !rep.pass {
            failures.push(n);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && secs < 30.0;
    (pass, format!("n = 1..13, failing n = {failures:?}, {secs:.2} s"))
}

fn criterion_2_dimension_table() -> (bool, String) {
    // dim_R of the spinor space for m = 0..7, scaled by 16^k
    let table = [1usize, 2, 4, 4, 8, 8, 8, 8];
    let mut bad = Vec::new();
    for k in 0..=2u32 {
        for (m, base) in table.iter().enumerate() {
            let n = 8 * k as usize + m;
            if spinor_dim(n) != base * 16usize.pow(k) {
                bad.push(format!("spinor_dim({n})"));
            }
            if n == 0 {
                continue;
            }
            let acc = dimension_accounting(&CliffordRealization::build(n).unwrap());
            if !acc.ok {
                bad.push(format!("accounting({n}) = {} != {}", acc.algebra_dim, acc.expected));
            }
        }
    }
    (bad.is_empty(), format!("k = 0..2, m = 0..7, mismatches = {bad:?}"))
}

fn criterion_3_gilbert_witnesses() -> (bool, String) {
    let mut failing = Vec::new();
    for n in [2, 3, 4, 5, 8, 9, 10, 11, 12, 13] {
        let r = CliffordRealization::build(n).unwrap();
        let ws = standard_witness_for(&r).unwrap();
        assert_eq!(ws.len(), if n % 8 == 3 { 2 } else { 1 });
        for w in &ws {
            let rep = check_gilbert(&r, w).unwrap();
            if !rep.verdict {
                failing.push(format!("{n}/{}", w.component_tag.as_str()));
            }
        }
    }
    let pass = failing.is_empty();
    (pass, format!("n in {{2,3,4,5,8,9,10,11,12,13}}, failing = {failing:?}"))
}

fn criterion_4_dichotomy() -> (bool, String) {
    let pattern_ok = (3..=16).all(|n| dim_obstruction(n).unwrap().obstructed == matches!(n % 8, 6 | 7));
    let mut mins = Vec::new();
    for n in [6, 7] {
        let ev = spinning_evidence(n, 50, 2024).unwrap();
        for c in &ev.components {
            assert_eq!(c.basis_dims.len(), 8);
            assert_eq!(c.random_dims.len(), 50);
            mins.push((n, c.tag.as_str(), c.min_dim));
        }
    }
    let spins_ok = mins.iter().all(|&(_, _, d)| d == 8);
    let pass = pattern_ok && spins_ok;
    (pass, format!("inequality pattern ok = {pattern_ok}, min spin dims = {mins:?}"))
}

fn criterion_5_hardy_identities() -> (bool, String) {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for n in [2, 3, 4] {
        let cfg = SuiteConfig::new(n, 64, 2.0 * PI, 20, 7).unwrap();
        for rep in [
            suite_idempotency(&cfg).unwrap(),
            suite_involution(&cfg).unwrap(),
            suite_rbc(&cfg).unwrap(),
            suite_crb(&cfg).unwrap(),
        ] {
            pass &= rep.pass;
            lines.push(format!("{}(n={}) {:.1e}", rep.test, n, rep.residual));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    (pass, format!("{}; {secs:.1} s", lines.join(", ")))
}

fn criterion_6_monogenicity() -> (bool, String) {
    let cfg = SuiteConfig::new(3, 32, 2.0 * PI, 1, 3).unwrap();
    let (rep, checks) = suite_dirac(&cfg).unwrap();
    let pass = checks.iter().all(|c| c.pass);
    let detail = format!(
        "orders = {:?}, spectral residual = {:.1e}",
        rep.orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>(),
        rep.spectral_residual
    );
    (pass, detail)
}

fn criterion_7_kernel_crosscheck() -> (bool, String) {
    let ops = CliffordOps::for_n(2).unwrap();
    let residuals: Vec<f64> = [16.0, 32.0, 64.0]
        .iter()
        .map(|&len| {
            let grid = Grid::new(1, 256, len).unwrap();
            let f = localized_field(grid, 2, ops.dim).unwrap();
            convolution_crosscheck(&ops, &f, 0.5).unwrap().residual
        })
        .collect();
    let small = residuals.iter().all(|&r| r < TOL_PERIODIZATION);
    let decreasing = residuals.windows(2).all(|w| w[1] < w[0]);
    let pass = small && decreasing;
    let shown: Vec<String> = residuals.iter().map(|r| format!("{r:.2e}")).collect();
    (pass, format!("L = 16, 32, 64: residuals = {shown:?}"))
}

fn criterion_8_schwartz_normalization() -> (bool, String) {
    let mut lines = Vec::new();
    let mut pass = true;
    for n in 2..=4 {
        let (rep, _) = suite_schwartz(n).unwrap();
        let off = rep.off_axis.iter().copied().fold(0.0, f64::max);
        pass &= rep.verification_residual < TOL_QUADRATURE && off < TOL_OFF_AXIS;
        lines.push(format!(
            "n={n} c={:.10} |R1f(0)-1|={:.1e} max|Rjf(0)|={:.1e}",
            rep.c, rep.verification_residual, off
        ));
    }
    (pass, lines.join(", "))
}

fn criterion_9_mixed_signature() -> (bool, String) {
    let mut lines = Vec::new();
    let mut pass = true;
    for n in [3, 5, 8] {
        let r = CliffordRealization::build(n).unwrap();
        let rep = mixed_signature_check(&r).unwrap();
        pass &= rep.pass;
        lines.push(format!(
            "n={n} expected squares {:?} observed {:?} all anticommute = {}",
            rep.expected_squares, rep.observed_squares, rep.all_anticommute
        ));
    }
    (pass, lines.join("; "))
}

type Criterion = fn() -> (bool, String);

const CRITERIA: [(u32, Criterion); 9] = [
    (1, criterion_1_relation_suite),
    (2, criterion_2_dimension_table),
    (3, criterion_3_gilbert_witnesses),
    (4, criterion_4_dichotomy),
    (5, criterion_5_hardy_identities),
    (6, criterion_6_monogenicity),
    (7, criterion_7_kernel_crosscheck),
    (8, criterion_8_schwartz_normalization),
    (9, criterion_9_mixed_signature),
];

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.trim_start_matches("criterion_").parse().ok())
        .collect();
    let mut failed = 0;
    for (id, run) in CRITERIA {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let (pass, detail) = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| (false, "panicked before producing a result".into()));
        println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
