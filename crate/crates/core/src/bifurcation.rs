//! Critical set `Λ` and local bifurcation invariants `ω_G(α)` for
//! `ü = (−α + A)u + f(t, u)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::rep::RepLabel;
use crate::spectral::{eigenspace_multiplicities, terms_of, EigenvalueEntry, Problem, Term};

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    pub alpha: f64,
    /// Every `(j, μ)` realizing this value; more than one means a coincidence.
    pub sources: Vec<(usize, f64)>,
    pub crossing_multiplicities: BTreeMap<RepLabel, u64>,
    pub simple: bool,
}

impl CriticalPoint {
    pub fn j(&self) -> usize {
        self.sources[0].0
    }

    pub fn mu(&self) -> f64 {
        self.sources[0].1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BifurcationInvariant {
    pub at: CriticalPoint,
    #[serde(skip)]
    pub omega: BurnsideElement,
    pub omega_terms: Vec<Term>,
    pub nonzero: bool,
    /// Odd crossing of every irreducible with nontrivial basic degree.
    pub odd_crossing_predicts_nonzero: bool,
}

/// `α_{j,μ} = j²/m² + μ`.
pub fn alpha_value(j: usize, mu: f64, m: usize) -> f64 {
    (j * j) as f64 / (m * m) as f64 + mu
}

/// `[min σ(A) − 1, 0)`.
pub fn default_window(eigenvalues: &[EigenvalueEntry]) -> (f64, f64) {
    let lo = eigenvalues.iter().map(|e| e.mu).fold(f64::INFINITY, f64::min);
    (lo - 1.0, 0.0)
}

/// All `α_{j,μ}` with `lo ≤ α < hi`, ascending; values within `tol` merge.
pub fn critical_set(
    eigenvalues: &[EigenvalueEntry],
    m: usize,
    window: (f64, f64),
    tol: f64,
) -> Vec<CriticalPoint> {
    let (lo, hi) = window;
    let mut raw: Vec<(f64, usize, &EigenvalueEntry)> = Vec::new();
    for e in eigenvalues {
        let mut j = 0;
        loop {
            let a = alpha_value(j, e.mu, m);
            if a >= hi {
                break;
            }
            if a >= lo {
                raw.push((a, j, e));
            }
            j += 1;
        }
    }
    raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut out: Vec<CriticalPoint> = Vec::new();
    for (a, j, e) in raw {
        let mults = eigenspace_multiplicities(j, e, m);
        match out.last_mut() {
            Some(last) if (a - last.alpha).abs() <= tol => {
                last.sources.push((j, e.mu));
                last.simple = false;
                for (l, c) in mults {
                    *last.crossing_multiplicities.entry(l).or_default() += c;
                }
            }
            _ => out.push(CriticalPoint {
                alpha: a,
                sources: vec![(j, e.mu)],
                crossing_multiplicities: mults,
                simple: true,
            }),
        }
    }
    out
}

impl Problem {
    /// `Π_{earlier} deg^{mult} ∘ ((G) − Π_{here} deg^{mult})`.
    pub fn local_invariant(
        &self,
        point: &CriticalPoint,
        before: &[CriticalPoint],
        strict: bool,
    ) -> Result<BifurcationInvariant> {
        if strict && !point.simple {
            return Err(Error::AmbiguousCrossing(point.alpha));
        }
        let mut prefix: BTreeMap<RepLabel, u64> = BTreeMap::new();
        for p in before {
            for (&l, &c) in &p.crossing_multiplicities {
                *prefix.entry(l).or_default() += c;
            }
        }
        let ring = self.ring();
        let here = self.engine.linear_degree(&point.crossing_multiplicities)?;
        let omega = ring.multiply(&self.engine.linear_degree(&prefix)?, &(&ring.unit() - &here))?;
        let mut predicts = !point.crossing_multiplicities.is_empty();
        for (&l, &c) in &point.crossing_multiplicities {
            let d = self.engine.basic_degree(l)?.value;
            predicts &= c % 2 == 1 && d != ring.unit();
        }
        Ok(BifurcationInvariant {
            omega_terms: terms_of(&omega, self.poset()),
            nonzero: !omega.is_zero(),
            odd_crossing_predicts_nonzero: predicts,
            at: point.clone(),
            omega,
        })
    }

    /// Invariants at every critical point in the window (configured, or the
    /// default below zero).
    pub fn bifurcation_report(&self, window: Option<(f64, f64)>) -> Result<BifurcationReport> {
        let tol = self.config.tolerance;
        let eigenvalues = self.matrix_spectrum()?;
        if let Some(e) = eigenvalues.iter().find(|e| e.mu.abs() <= tol) {
            return Err(Error::Assumption {
                assumption: "(non-singular A)",
                detail: format!("A has the eigenvalue {}", e.mu),
            });
        }
        let window = window.or(self.config.window).unwrap_or_else(|| default_window(&eigenvalues));
        let points = critical_set(&eigenvalues, self.m(), window, tol);
        let mut invariants = Vec::with_capacity(points.len());
        for (n, p) in points.iter().enumerate() {
            let inv = self.local_invariant(p, &points[..n], false)?;
            if inv.odd_crossing_predicts_nonzero && !inv.nonzero {
                return Err(Error::Consistency(format!(
                    "odd crossing at α = {} but ω vanishes",
                    p.alpha
                )));
            }
            invariants.push(inv);
        }
        Ok(BifurcationReport { window, eigenvalues, invariants })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BifurcationReport {
    pub window: (f64, f64),
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub invariants: Vec<BifurcationInvariant>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(mu: f64) -> EigenvalueEntry {
        EigenvalueEntry { mu, exact: None, multiplicity: 1, isotypic: vec![1] }
    }

    #[test]
    fn critical_values_of_sample_spectrum() {
        let pts = critical_set(&[entry(-2.0), entry(-0.5)], 3, (-3.0, 0.0), 1e-9);
        let alphas: Vec<f64> = pts.iter().take(4).map(|p| p.alpha).collect();
        let want = [-2.0, -17.0 / 9.0, -14.0 / 9.0, -1.0];
        for (a, w) in alphas.iter().zip(want) {
            assert!((a - w).abs() < 1e-12, "{alphas:?}");
        }
        assert!(pts.iter().all(|p| p.alpha < 0.0 && p.simple));
    }

    #[test]
    fn coincidences_merge() {
        // m = 2: α_{2,−1} = α_{1,−1/4} = 0.
        let pts = critical_set(&[entry(-1.0), entry(-0.25)], 2, (-2.0, 0.5), 1e-9);
        let merged: Vec<&CriticalPoint> = pts.iter().filter(|p| !p.simple).collect();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].sources.len(), 2);
    }

    #[test]
    fn empty_window() {
        assert!(critical_set(&[entry(-2.0)], 3, (0.05, 0.1), 1e-9).is_empty());
    }
}
