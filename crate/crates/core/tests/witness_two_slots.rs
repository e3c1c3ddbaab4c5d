//! Witnesses whose realization has two octonion slots. These take about two
//! minutes in release mode; run with `cargo test -- --ignored`.

use csl_core::clifford::CliffordRealization;
use csl_core::gilbert::{check_gilbert, standard_witness_for, standard_witness_with, LiftGrading};

fn all_components_pass(n: usize) {
    let r = CliffordRealization::build(n).unwrap();
    for w in standard_witness_for(&r).unwrap() {
        let rep = check_gilbert(&r, &w).unwrap();
        assert!(rep.verdict, "n = {n}, component {}, failing j = {:?}", w.component_tag.as_str(), rep.failing_j());
    }
}

#[test]
#[ignore]
fn witness_n19_both_components() {
    all_components_pass(19);
}

#[test]
#[ignore]
fn witness_n21() {
    all_components_pass(21);
}

#[test]
#[ignore]
fn witnesses_n16_to_n18_and_n20() {
    for n in [16, 17, 18, 20] {
        all_components_pass(n);
    }
}

#[test]
#[ignore]
fn first_slot_lift_fails_only_the_last_slot_at_n19() {
    let r = CliffordRealization::build(19).unwrap();
    let w = &standard_witness_with(&r, LiftGrading::FirstSlot).unwrap()[0];
    let rep = check_gilbert(&r, w).unwrap();
    assert!(!rep.verdict);
    assert!(rep.decomposition_ok);
    assert_eq!(rep.failing_j(), (11..19).collect::<Vec<_>>());
}
