//! Module invariants at their stated scales, beyond what the per-criterion
//! acceptance gate already sweeps.

#![allow(clippy::needless_range_loop)]

use duality_core::algebra::{way_below_matrix, way_below_powerset_oracle};
use duality_core::enumerate::poset_classes_by_size;
use duality_core::suite::{run_suite, SuiteConfig};

/// Three-way agreement of the way-below computations on every lattice with
/// at most 8 elements: the directed-subset algorithm, the full powerset
/// oracle, and the order itself.
#[test]
fn way_below_three_way_agreement_up_to_8() {
    let mut lattices = 0usize;
    for p in poset_classes_by_size(8).expect("within cap").into_iter().flatten() {
        if !p.classify().is_lattice {
            continue;
        }
        lattices += 1;
        let matrix = way_below_matrix(&p).expect("lattice");
        for a in 0..p.len() {
            for b in 0..p.len() {
                let directed = matrix[b] >> a & 1 == 1;
                let oracle = way_below_powerset_oracle(&p, a, b).expect("small lattice");
                assert_eq!(directed, oracle, "directed vs powerset at n={}", p.len());
                assert_eq!(directed, p.leq(a, b), "≪ must equal <= at n={}", p.len());
            }
        }
    }
    assert_eq!(lattices, 1 + 1 + 1 + 2 + 5 + 15 + 53 + 222);
}

/// The full suite at the default configuration comes back green.
#[test]
fn default_suite_run_is_green() {
    let report = run_suite(&SuiteConfig::default());
    assert!(!report.has_failures(), "{}", report.to_json());
}
