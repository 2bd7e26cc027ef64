mod common;

use lcpath_core::classes::{
    almost_c0_sampled, classify, copositive_sampled, is_n, is_p, is_psd, n0_exact_order, principal_minors,
};
use lcpath_core::{CopositivityVerdict, Matrix};
use proptest::prelude::*;

fn square(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3.0f64..3.0, n * n).prop_map(move |d| Matrix::new(n, n, d).unwrap())
    })
}

#[test]
fn example_labels() {
    let ex = common::examples();
    let a = |i: usize| ex[i].instance().a().clone();
    assert!(is_n(&a(0)).unwrap());
    assert!(!is_psd(&a(0)));
    assert!(is_psd(&a(1)));
    assert!(!is_n(&a(3)).unwrap());
    assert!(almost_c0_sampled(&a(4), 30).is_yes());
    assert!(almost_c0_sampled(&a(3), 30).is_no());
    assert_eq!(n0_exact_order(&a(6)).unwrap(), Some(2));

    let pm = principal_minors(&a(2)).unwrap();
    assert_eq!(pm.values().copied().collect::<Vec<_>>(), vec![1.0, 0.0, 0.0]);
}

#[test]
fn copositivity_witness_on_sum_negative_matrix() {
    let a = common::examples()[4].instance().a().clone();
    // e^t A e = -3
    let e = [1.0 / 3.0; 3];
    let v: f64 = e.iter().zip(a.mul_vec(&e)).map(|(u, w)| u * w).sum();
    assert!((v + 3.0 / 9.0).abs() < 1e-15);
    assert!(copositive_sampled(&a, 20).is_no());
}

#[test]
fn report_is_consistent() {
    for ex in common::examples() {
        let rep = classify(ex.instance().a(), 20).unwrap();
        assert!(!(rep.is_p && rep.is_n));
        if rep.is_p {
            assert!(rep.n0_exact_order.is_none());
        }
        assert_eq!(rep.minor_extremes.len(), ex.x0.len());
        for (lo, hi) in &rep.minor_extremes {
            assert!(lo <= hi);
        }
    }
}

proptest! {
    #[test]
    fn verdicts_are_scale_invariant(a in square(4), alpha in 0.1f64..10.0) {
        let s = a.scale(alpha);
        prop_assert_eq!(is_p(&a).unwrap(), is_p(&s).unwrap());
        prop_assert_eq!(is_n(&a).unwrap(), is_n(&s).unwrap());
        prop_assert_eq!(is_psd(&a), is_psd(&s));
    }

    #[test]
    fn p_and_n_exclusive(a in square(5)) {
        prop_assert!(!(is_p(&a).unwrap() && is_n(&a).unwrap()));
        if is_p(&a).unwrap() {
            prop_assert!(n0_exact_order(&a).unwrap().is_none());
        }
    }

    #[test]
    fn copositivity_witnesses_are_real(a in square(4), density in 2usize..12) {
        if let CopositivityVerdict::No { witness } = copositive_sampled(&a, density) {
            prop_assert!(witness.iter().all(|&v| v >= 0.0));
            let v: f64 = witness.iter().zip(a.mul_vec(&witness)).map(|(u, w)| u * w).sum();
            prop_assert!(v < 0.0);
        }
        if a.rows() >= 2 {
            if let CopositivityVerdict::No { witness } = almost_c0_sampled(&a, density) {
                if !witness.is_empty() {
                    let v: f64 = witness.iter().zip(a.mul_vec(&witness)).map(|(u, w)| u * w).sum();
                    prop_assert!(v < 0.0 && witness.iter().all(|&x| x >= 0.0));
                }
            }
        }
    }

    #[test]
    fn nonnegative_matrices_are_copositive(d in prop::collection::vec(0.0f64..3.0, 9)) {
        let a = Matrix::new(3, 3, d).unwrap();
        prop_assert!(copositive_sampled(&a, 10).is_yes());
    }
}
