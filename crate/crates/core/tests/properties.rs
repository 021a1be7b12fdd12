use std::cmp::Ordering;

use mf1_core::corpus::{corpus, CorpusSpec, Family};
use mf1_core::{
    averaged_f1, delta_closed_form, delta_direct, divergence_condition, extremal_matrix,
    f1_of_averages, macro_report, opposing_skew_pair, supremum_bound, ConfusionMatrix,
};
use proptest::prelude::*;

fn matrix(max_n: usize, max_cell: u64) -> impl Strategy<Value = ConfusionMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max_cell, n * n)
            .prop_map(move |cells| ConfusionMatrix::from_row_major(n, cells).unwrap())
    })
}

fn matrix_and_perm() -> impl Strategy<Value = (ConfusionMatrix, Vec<usize>)> {
    matrix(8, 500).prop_flat_map(|cm| {
        let n = cm.n();
        (Just(cm), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn metrics_in_unit_range(cm in matrix(8, 1000)) {
        for m in cm.per_class_metrics() {
            for v in [m.precision, m.recall, m.f1] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            if m.precision + m.recall > 0.0 {
                prop_assert!(m.f1 >= m.precision.min(m.recall) - 1e-15);
                prop_assert!(m.f1 <= m.precision.max(m.recall) + 1e-15);
            } else {
                prop_assert_eq!(m.f1, 0.0);
            }
        }
        let r = macro_report(&cm);
        prop_assert!((0.0..=1.0).contains(&r.averaged_f1));
        prop_assert!((0.0..=1.0).contains(&r.f1_of_averages));
    }

    #[test]
    fn zero_denominator_convention(cm in matrix(6, 3)) {
        for i in 0..cm.n() {
            prop_assert_eq!(cm.precision(i).unwrap() == 0.0, cm.row_sum(i) == 0 || cm.get(i, i) == 0);
            prop_assert_eq!(cm.recall(i).unwrap() == 0.0, cm.col_sum(i) == 0 || cm.get(i, i) == 0);
        }
    }

    #[test]
    fn scale_invariance(cm in matrix(8, 200), c in 1u64..50) {
        let scaled = cm.scaled(c);
        for (a, b) in cm.per_class_metrics().iter().zip(scaled.per_class_metrics()) {
            prop_assert!((a.precision - b.precision).abs() < 1e-12);
            prop_assert!((a.recall - b.recall).abs() < 1e-12);
            prop_assert!((a.f1 - b.f1).abs() < 1e-12);
        }
        prop_assert!((averaged_f1(&cm) - averaged_f1(&scaled)).abs() < 1e-12);
        prop_assert!((f1_of_averages(&cm) - f1_of_averages(&scaled)).abs() < 1e-12);
    }

    #[test]
    fn permutation_equivariance((cm, perm) in matrix_and_perm()) {
        let permuted = cm.permute(&perm).unwrap();
        let before = cm.per_class_metrics();
        let after = permuted.per_class_metrics();
        for (k, m) in before.iter().enumerate() {
            let moved = &after[perm[k]];
            prop_assert_eq!(m.precision, moved.precision);
            prop_assert_eq!(m.recall, moved.recall);
            prop_assert_eq!(m.f1, moved.f1);
        }
        prop_assert!((averaged_f1(&cm) - averaged_f1(&permuted)).abs() < 1e-12);
        prop_assert!((f1_of_averages(&cm) - f1_of_averages(&permuted)).abs() < 1e-12);
    }

    #[test]
    fn transpose_duality(cm in matrix(8, 500)) {
        let t = cm.transpose();
        for i in 0..cm.n() {
            prop_assert_eq!(t.precision(i).unwrap(), cm.recall(i).unwrap());
            prop_assert_eq!(t.recall(i).unwrap(), cm.precision(i).unwrap());
            prop_assert!((t.f1(i).unwrap() - cm.f1(i).unwrap()).abs() < 1e-15);
        }
        prop_assert!((averaged_f1(&cm) - averaged_f1(&t)).abs() < 1e-12);
        prop_assert!((f1_of_averages(&cm) - f1_of_averages(&t)).abs() < 1e-12);
    }

    #[test]
    fn gap_identities(cm in matrix(13, 1000)) {
        let direct = delta_direct(&cm);
        prop_assert!(direct >= -1e-12);
        prop_assert!((direct - delta_closed_form(&cm)).abs() <= 1e-9);
        if cm.n() >= 2 {
            prop_assert!(direct < supremum_bound(cm.n()).unwrap());
        }
        // the implications that hold on every matrix
        if opposing_skew_pair(&cm).is_some() {
            prop_assert!(direct > 0.0);
        }
        if direct > 1e-12 {
            prop_assert!(divergence_condition(&cm));
        }
    }

    #[test]
    fn equivalence_with_positive_diagonal(cm in matrix(13, 1000)) {
        prop_assume!((0..cm.n()).all(|i| cm.get(i, i) > 0));
        let cond = divergence_condition(&cm);
        prop_assert_eq!(cond, opposing_skew_pair(&cm).is_some());
        prop_assert_eq!(cond, delta_direct(&cm) > 1e-9);
    }
}

#[test]
fn theorem_suite_on_seeded_corpus() {
    let matrices = corpus(&CorpusSpec::default(), 7, 10_000);
    let mut diverging = 0;
    let mut positive_diagonal = 0;
    for cm in &matrices {
        let r = macro_report(cm);
        assert!(r.delta_direct >= -1e-12);
        assert!((r.delta_direct - r.delta_closed_form).abs() <= 1e-9);
        assert!(r.delta_direct < supremum_bound(cm.n()).unwrap());
        if (0..cm.n()).any(|i| cm.get(i, i) == 0) {
            continue;
        }
        positive_diagonal += 1;
        let cond = divergence_condition(cm);
        assert_eq!(r.delta_direct > 1e-9, cond, "{cm:?}");
        assert_eq!(r.diverges, cond);
        if cond {
            diverging += 1;
            let (i, j) = opposing_skew_pair(cm).unwrap();
            assert_eq!(cm.precision_cmp_recall(i).unwrap(), Ordering::Less);
            assert_eq!(cm.precision_cmp_recall(j).unwrap(), Ordering::Greater);
        } else {
            assert_eq!(opposing_skew_pair(cm), None);
        }
    }
    assert!(positive_diagonal > 9_000, "{positive_diagonal}");
    // both sides of the equivalence are exercised
    assert!(diverging > 1000 && diverging < positive_diagonal, "{diverging}");
}

/// With a zero diagonal cell a class has `P = R = 0` whatever its row and
/// column sums, so "some class has `P != R`" no longer forces an opposing
/// pair, and a positive gap no longer needs an opposing pair. The implications that survive are checked here,
/// and the counterexample itself is pinned.
#[test]
fn zero_diagonal_classes_break_the_equivalence() {
    let spec = CorpusSpec {
        families: vec![Family::ZeroedDiagonal],
        ..CorpusSpec::default()
    };
    let (mut no_gap, mut gap_without_pair) = (0, 0);
    for cm in corpus(&spec, 11, 5_000) {
        let d = delta_direct(&cm);
        let opposing = opposing_skew_pair(&cm).is_some();
        // opposing pair => positive gap => some class with P != R
        if opposing {
            assert!(d > 1e-9, "{cm:?}");
        }
        if d > 1e-9 {
            assert!(divergence_condition(&cm));
        }
        if divergence_condition(&cm) && d <= 1e-9 {
            no_gap += 1;
        }
        if d > 1e-9 && !opposing {
            gap_without_pair += 1;
        }
    }
    assert!(no_gap > 0 && gap_without_pair > 0, "{no_gap} {gap_without_pair}");

    // only class 0 has a hit: P0 = 1/3 < R0 = 1, every other class is 0/0
    let cm = ConfusionMatrix::from_rows(&[[1u64, 1, 1], [0, 0, 0], [0, 0, 0]]).unwrap();
    assert!(divergence_condition(&cm));
    assert_eq!(opposing_skew_pair(&cm), None);
    assert_eq!(delta_direct(&cm), 0.0);
    assert_eq!(delta_closed_form(&cm), 0.0);
    assert!(!macro_report(&cm).diverges);

    // gap without an opposing pair: all hit classes have P < R, class 1 has
    // no hit and absorbs the surplus gold labels
    let cm = ConfusionMatrix::from_rows(&[[2u64, 3, 0], [0, 0, 0], [0, 3, 1]]).unwrap();
    assert_eq!(opposing_skew_pair(&cm), None);
    assert!(delta_direct(&cm) > 1e-3);
}

#[test]
fn extremal_sequence_converges() {
    for n in [2usize, 3, 4, 13] {
        let bound = supremum_bound(n).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=6 {
            let z = 10u64.pow(k);
            let d = delta_direct(&extremal_matrix(n, z).unwrap());
            assert!(d >= prev, "n={n} z={z}");
            assert!(d < bound);
            prev = d;
        }
        assert!((bound - prev).abs() < 1e-5, "n={n}: {prev} vs {bound}");
    }
}
