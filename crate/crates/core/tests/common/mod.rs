#![allow(dead_code)]

use std::path::PathBuf;

use symdeg::config::validate_config;
use symdeg::degree::DegreeEngine;
use symdeg::spectral::Problem;
use symdeg::symmetry::{GammaSpec, Layout, SymmetryGroup};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn problem(name: &str) -> Problem {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    Problem::new(validate_config(&text).expect("fixture valid")).expect("problem builds")
}

pub fn trivial(m: usize) -> SymmetryGroup {
    SymmetryGroup::new(&GammaSpec::Trivial, 1, m, Layout::GammaFirst).unwrap()
}

pub fn d3(m: usize, layout: Layout) -> SymmetryGroup {
    SymmetryGroup::new(&GammaSpec::Dihedral(3), 3, m, layout).unwrap()
}

pub fn engine(sym: &SymmetryGroup) -> DegreeEngine {
    DegreeEngine::for_group(sym).unwrap()
}

/// Diagonal configuration with `Γ` trivial.
pub fn diagonal_config(m: usize, mus: &[f64]) -> String {
    let k = mus.len();
    let rows: Vec<Vec<f64>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { mus[i] } else { 0.0 }).collect()).collect();
    serde_json::json!({"m": m, "k": k, "gamma": {"type": "trivial"}, "A": rows}).to_string()
}
