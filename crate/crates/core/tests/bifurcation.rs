mod common;

use symdeg::bifurcation::{critical_set, default_window};
use symdeg::burnside::BurnsideElement;
use symdeg::config::validate_config;
use symdeg::rep::RepLabel;
use symdeg::spectral::Problem;
use symdeg::Error;

#[test]
fn first_invariants_for_d3_example() {
    let p = common::problem("bifurcation_m3.json");
    let r = p.bifurcation_report(None).unwrap();
    let inv = &r.invariants;
    let alphas: Vec<f64> = inv.iter().map(|i| i.at.alpha).collect();
    for want in [-2.0, -17.0 / 9.0, -0.5, -7.0 / 18.0] {
        assert!(alphas.iter().any(|a| (a - want).abs() < 1e-9), "{want} missing from {alphas:?}");
    }
    let deg00 = p.engine.basic_degree(RepLabel::minus(0, 0)).unwrap().value;
    assert_eq!(inv[0].omega, &p.ring().unit() - &deg00);
    assert_eq!(inv[0].omega, BurnsideElement::generator(p.poset().find("D_3×D_3").unwrap()));
    assert_eq!(inv[2].omega, -&inv[1].omega);
    assert!(inv.iter().all(|i| i.nonzero && i.at.simple));
}

#[test]
fn odd_crossings_force_nonzero_invariants() {
    let p = common::problem("bifurcation_m3.json");
    for inv in p.bifurcation_report(Some((-3.0, 0.0))).unwrap().invariants {
        if inv.odd_crossing_predicts_nonzero {
            assert!(inv.nonzero, "α = {}", inv.at.alpha);
        }
    }
}

#[test]
fn default_window_covers_all_negative_crossings() {
    let p = common::problem("existence_m3.json");
    let eig = p.matrix_spectrum().unwrap();
    let (lo, hi) = default_window(&eig);
    assert_eq!((lo, hi), (-3.0, 0.0));
    let pts = critical_set(&eig, 3, (lo, hi), 1e-9);
    assert_eq!(pts.len(), 8);
}

#[test]
fn coincident_crossings_are_merged_and_strict_mode_refuses_them() {
    let text = common::diagonal_config(2, &[-1.0, -0.25]);
    let p = Problem::new(validate_config(&text).unwrap()).unwrap();
    let r = p.bifurcation_report(Some((-2.0, 0.5))).unwrap();
    let merged: Vec<_> = r.invariants.iter().filter(|i| !i.at.simple).collect();
    assert_eq!(merged.len(), 1);
    let idx = r.invariants.iter().position(|i| !i.at.simple).unwrap();
    let pts: Vec<_> = r.invariants.iter().map(|i| i.at.clone()).collect();
    let err = p.local_invariant(&pts[idx], &pts[..idx], true).unwrap_err();
    assert!(matches!(err, Error::AmbiguousCrossing(_)));
}

#[test]
fn singular_matrix_is_rejected() {
    let p =
        Problem::new(validate_config(&common::diagonal_config(3, &[0.0, -1.0])).unwrap()).unwrap();
    let e = p.bifurcation_report(None).unwrap_err();
    assert!(e.to_string().contains("non-singular"), "{e}");
}
