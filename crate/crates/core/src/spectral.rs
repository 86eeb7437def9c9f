//! From `(Γ, m, A)` to the existence degree `(G) − G-deg(𝒜, B(𝔼))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::config::ProblemConfig;
use crate::degree::DegreeEngine;
use crate::error::{Error, Result};
use crate::lattice::SubgroupPoset;
use crate::linalg::{cluster_sorted, jacobi_eigen};
use crate::rep::{
    alpha, dihedral_s, fold_frequency, isotypic_multiplicity_in_eigenspace, maximal_orbit_types,
    IrrepTable, RepLabel,
};
use crate::symmetry::{GammaKind, SymmetryGroup};

/// Relative distance below which numerical eigenvalues are merged.
pub const CLUSTER_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueEntry {
    pub mu: f64,
    /// Exact value when the configuration supplied one.
    pub exact: Option<String>,
    pub multiplicity: usize,
    /// `m_l(μ)` for every irreducible `𝒰_l` of `Γ`.
    pub isotypic: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeLambda {
    pub j: usize,
    pub mu_index: usize,
    pub lambda: f64,
    /// `E(λ_{j,μ})` as `G`-isotypic multiplicities.
    pub components: Vec<(RepLabel, u64)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SpectralTable {
    pub m: usize,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub negative: Vec<NegativeLambda>,
    /// `𝔧_μ` per eigenvalue, `None` for `μ ≥ 0`.
    pub jmax: Vec<Option<usize>>,
    /// `β_i(μ)` keyed by `(i, eigenvalue index)`.
    pub beta: BTreeMap<(usize, usize), u64>,
    pub eta: BTreeMap<usize, u64>,
    pub rho: BTreeMap<usize, u64>,
}

/// `λ_{j,μ} = 1 + m²(μ − 1)/(j² + m²)`.
pub fn lambda_value(j: usize, mu: f64, m: usize) -> f64 {
    let (j2, m2) = ((j * j) as f64, (m * m) as f64);
    1.0 + m2 * (mu - 1.0) / (j2 + m2)
}

/// The integer `𝔧` with `𝔧² < m²(−μ) < (𝔧 + 1)²`.
pub fn j_max(mu: f64, m: usize, tol: f64) -> Result<usize> {
    if mu >= 0.0 {
        return Err(Error::InvalidParameter(format!("𝔧_μ needs μ < 0, got {mu}")));
    }
    let m2 = (m * m) as f64;
    let target = -mu * m2;
    let mut j = target.sqrt().floor() as usize;
    while ((j + 1) * (j + 1)) as f64 <= target {
        j += 1;
    }
    while j > 0 && (j * j) as f64 >= target {
        j -= 1;
    }
    for b in [j, j + 1] {
        if b > 0 && ((b * b) as f64 - target).abs() <= tol * m2 {
            return Err(Error::Degenerate(format!(
                "μ = {mu} lies on the boundary −{b}²/{m}² of the frequency count"
            )));
        }
    }
    Ok(j)
}

/// Pairs `(j, μ)` with `|j²/m² + μ| ≤ tol`, scanning `j² ≤ m² max|μ| + 1`.
pub fn nondegeneracy_violations(mus: &[f64], m: usize, tol: f64) -> Vec<(usize, f64)> {
    let m2 = (m * m) as f64;
    let bound = m2 * mus.iter().map(|x| x.abs()).fold(0.0, f64::max) + 1.0;
    let mut out = Vec::new();
    let mut j = 0usize;
    while (j * j) as f64 <= bound {
        for &mu in mus {
            if ((j * j) as f64 / m2 + mu).abs() <= tol {
                out.push((j, mu));
            }
        }
        j += 1;
    }
    out
}

pub fn check_nondegeneracy(mus: &[f64], m: usize, tol: f64) -> Result<()> {
    let v = nondegeneracy_violations(mus, m, tol);
    if v.is_empty() {
        return Ok(());
    }
    let witnesses: Vec<String> = v.iter().map(|(j, mu)| format!("(j={j}, μ={mu})")).collect();
    Err(Error::Assumption {
        assumption: "(A5)",
        detail: format!("j²/m² + μ = 0 at {}", witnesses.join(", ")),
    })
}

/// Everything derived from the symmetry group alone.
pub struct Problem {
    pub config: ProblemConfig,
    pub sym: SymmetryGroup,
    pub engine: DegreeEngine,
}

impl Problem {
    pub fn new(config: ProblemConfig) -> Result<Self> {
        let sym = config.symmetry_group()?;
        let engine = DegreeEngine::for_group(&sym)?;
        Ok(Problem { config, sym, engine })
    }

    pub fn poset(&self) -> &SubgroupPoset {
        self.engine.poset()
    }

    pub fn ring(&self) -> &BurnsideRing {
        self.engine.ring()
    }

    pub fn irreps(&self) -> &IrrepTable {
        self.engine.table()
    }

    pub fn m(&self) -> usize {
        self.config.m
    }

    /// Eigenvalues of `A` with total and `Γ`-isotypic multiplicities.
    pub fn matrix_spectrum(&self) -> Result<Vec<EigenvalueEntry>> {
        let c = &self.config;
        let values = jacobi_eigen(&c.a, 1e-15).values;
        let mut entries: Vec<(f64, Option<String>, usize)> = Vec::new();
        match &c.spectrum {
            Some(exact) => {
                let mut total = 0;
                for e in exact {
                    let mu = e.mu.value;
                    let found = values
                        .iter()
                        .filter(|&&v| (v - mu).abs() <= 1e-6 * mu.abs().max(1.0))
                        .count();
                    if found != e.multiplicity {
                        return Err(Error::InvalidParameter(format!(
                            "supplied eigenvalue {} has multiplicity {} but A has {found}",
                            e.mu.render(),
                            e.multiplicity
                        )));
                    }
                    total += found;
                    entries.push((mu, Some(e.mu.render()), e.multiplicity));
                }
                if total != c.k {
                    return Err(Error::InvalidParameter(format!(
                        "supplied spectrum covers {total} of {} eigenvalues",
                        c.k
                    )));
                }
                entries.sort_by(|a, b| a.0.total_cmp(&b.0));
            }
            None => {
                for r in cluster_sorted(&values, CLUSTER_TOL) {
                    let mean = values[r.clone()].iter().sum::<f64>() / r.len() as f64;
                    entries.push((mean, None, r.len()));
                }
                for w in entries.windows(2) {
                    if w[1].0 - w[0].0 <= 10.0 * c.tolerance {
                        return Err(Error::Degenerate(format!(
                            "eigenvalues {} and {} are too close to separate",
                            w[0].0, w[1].0
                        )));
                    }
                }
            }
        }
        let gamma = self.irreps().gamma_irreps();
        let mut out = Vec::with_capacity(entries.len());
        for (mu, exact, multiplicity) in entries {
            let mut isotypic = Vec::with_capacity(gamma.len());
            for irrep in gamma {
                isotypic.push(isotypic_multiplicity_in_eigenspace(
                    &c.a,
                    mu,
                    self.sym.action(),
                    irrep,
                    c.tolerance,
                )?);
            }
            let dim: usize = isotypic.iter().zip(gamma).map(|(m, g)| m * g.dim).sum();
            if dim != multiplicity {
                return Err(Error::Numeric(format!(
                    "isotypic split of μ = {mu} has dimension {dim}, expected {multiplicity}"
                )));
            }
            out.push(EigenvalueEntry { mu, exact, multiplicity, isotypic });
        }
        Ok(out)
    }

    /// Spectrum, nondegeneracy check, negative `λ`s and the `β/η/ρ` counters.
    pub fn spectral_table(&self) -> Result<SpectralTable> {
        let m = self.m();
        let tol = self.config.tolerance;
        let eigenvalues = self.matrix_spectrum()?;
        let mus: Vec<f64> = eigenvalues.iter().map(|e| e.mu).collect();
        check_nondegeneracy(&mus, m, tol)?;
        let mut jmax = Vec::with_capacity(eigenvalues.len());
        let mut negative = Vec::new();
        for (idx, e) in eigenvalues.iter().enumerate() {
            if e.mu >= 0.0 {
                jmax.push(None);
                continue;
            }
            let top = j_max(e.mu, m, tol)?;
            jmax.push(Some(top));
            for j in 0..=top {
                negative.push(NegativeLambda {
                    j,
                    mu_index: idx,
                    lambda: lambda_value(j, e.mu, m),
                    components: eigenspace_multiplicities(j, e, m).into_iter().collect(),
                });
            }
        }
        let mut table = SpectralTable { m, eigenvalues, negative, jmax, ..Default::default() };
        count_beta_eta_rho(&mut table);
        Ok(table)
    }

    /// `G-deg(−id, B(E(λ_{j,μ})))`.
    pub fn eigenspace_degree(&self, j: usize, entry: &EigenvalueEntry) -> Result<BurnsideElement> {
        self.engine.linear_degree(&eigenspace_multiplicities(j, entry, self.m()))
    }

    /// Labels `𝒱_{i,l}^-` spanning the ambient space `𝔼`: every `D_m` index
    /// `i` and every `Γ`-index `l` occurring in `R^k`.
    pub fn ambient_labels(&self, table: &SpectralTable) -> Vec<RepLabel> {
        let ng = self.irreps().gamma_irreps().len();
        let nd = self.irreps().dm_irreps().len();
        let mut out = Vec::new();
        for l in 0..ng {
            if table.eigenvalues.iter().any(|e| e.isotypic[l] > 0) {
                out.extend((0..nd).map(|i| RepLabel::minus(i, l)));
            }
        }
        out
    }

    pub fn character_of(&self, labels: &[RepLabel]) -> Result<Vec<f64>> {
        let mut chi = vec![0.0; self.sym.order()];
        for &l in labels {
            let rep = self
                .irreps()
                .get(l)
                .ok_or_else(|| Error::InvalidParameter(format!("no irreducible {l}")))?;
            for (c, x) in chi.iter_mut().zip(&rep.character) {
                *c += x;
            }
        }
        Ok(chi)
    }

    pub fn existence_degree(&self) -> Result<DegreeReport> {
        let table = self.spectral_table()?;
        let mut exponents: BTreeMap<RepLabel, u64> = BTreeMap::new();
        for n in &table.negative {
            for &(label, mult) in &n.components {
                *exponents.entry(label).or_default() += mult;
            }
        }
        let product = self.engine.linear_degree(&exponents)?;
        let degree = &self.ring().unit() - &product;
        let ambient = self.ambient_labels(&table);
        let maximal = maximal_orbit_types(&self.character_of(&ambient)?, self.poset())?;
        let guarantees = interpret(&degree, self.poset(), &self.sym, &maximal);
        let total_solutions = total_solutions(&guarantees);
        let poset = self.poset();
        Ok(DegreeReport {
            nonzero_terms: terms_of(&degree, poset),
            maximal_orbit_types: maximal.iter().map(|&h| poset.name(h).to_string()).collect(),
            maximal_ids: maximal,
            exponents: exponents.into_iter().filter(|&(_, e)| e > 0).collect(),
            ambient,
            guarantees,
            total_solutions,
            degree,
            product,
            table,
        })
    }

    /// Parity predictions checked against a degree; only for trivial `Γ`.
    pub fn parity_predictions(&self, table: &SpectralTable) -> Result<Vec<Prediction>> {
        if self.sym.gamma_kind() != GammaKind::Trivial {
            return Err(Error::Unsupported("parity predictions need trivial Γ".into()));
        }
        Ok(parity_predictions(&table.rho, self.m()))
    }
}

/// `E(λ_{j,μ})` as multiplicities of `𝒱_{i,l}^-`.
pub fn eigenspace_multiplicities(
    j: usize,
    entry: &EigenvalueEntry,
    m: usize,
) -> BTreeMap<RepLabel, u64> {
    let mut out = BTreeMap::new();
    for (l, &ml) in entry.isotypic.iter().enumerate() {
        if ml == 0 {
            continue;
        }
        for i in fold_frequency(j, m).indices() {
            *out.entry(RepLabel::minus(i, l)).or_default() += ml as u64;
        }
    }
    out
}

/// Fills `β_i(μ)`, `η_i` and `ρ_i` for the `D_m × Z_2` projection.
pub fn count_beta_eta_rho(table: &mut SpectralTable) {
    let m = table.m;
    let s = dihedral_s(m);
    let last = if m.is_multiple_of(2) { s + 2 } else { s };
    table.beta.clear();
    for (idx, (e, jm)) in table.eigenvalues.iter().zip(&table.jmax).enumerate() {
        let Some(top) = *jm else { continue };
        let mult = e.multiplicity as u64;
        let q = (top / m) as u64;
        let a = alpha(top, m);
        table.beta.insert((0, idx), (q + 1) * mult);
        table.beta.insert((s, idx), q * mult);
        if m.is_multiple_of(2) {
            let b = (q + u64::from(2 * a >= m)) * mult;
            table.beta.insert((s + 1, idx), b);
            table.beta.insert((s + 2, idx), b);
        }
        for i in (1..).take_while(|&i| 2 * i < m) {
            let b = 2 * q + u64::from(i <= a) + u64::from(m - i <= a);
            table.beta.insert((i, idx), b * mult);
        }
    }
    table.eta = (0..=last).map(|i| (i, 0)).collect();
    for (&(i, _), &b) in &table.beta {
        *table.eta.get_mut(&i).expect("index in range") += b;
    }
    table.rho = table.eta.clone();
    for i in (1..).take_while(|&i| 2 * i < m) {
        let h = i.gcd(&m);
        let sum = (1..)
            .take_while(|&x| 2 * x < m)
            .filter(|x| x.gcd(&m) == h)
            .map(|x| table.eta[&x])
            .sum();
        table.rho.insert(i, sum);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub name: String,
    #[serde(serialize_with = "crate::report::serialize_bigint")]
    pub coefficient: BigInt,
}

pub fn terms_of(x: &BurnsideElement, poset: &SubgroupPoset) -> Vec<Term> {
    x.terms()
        .map(|(h, c)| Term { name: poset.name(h).to_string(), coefficient: c.clone() })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionGuarantee {
    pub orbit_type: String,
    #[serde(skip)]
    pub class_id: usize,
    #[serde(serialize_with = "crate::report::serialize_bigint")]
    pub coefficient: BigInt,
    /// `|G| / |H|`.
    pub orbit_size: usize,
    pub nonconstant: bool,
    pub minimal_period_exceeds_base: bool,
    /// Whether `(H)` is a maximal orbit type of `𝔼 \ {0}`.
    pub maximal: bool,
}

/// One guarantee per nonzero coefficient of `degree`.
pub fn interpret(
    degree: &BurnsideElement,
    poset: &SubgroupPoset,
    sym: &SymmetryGroup,
    maximal: &[usize],
) -> Vec<SolutionGuarantee> {
    let dm = sym.embedded_dm();
    let e_gamma = sym.gamma().identity();
    let e_dm = sym.dm().identity();
    degree
        .terms()
        .map(|(h, c)| {
            let class = poset.class(h);
            let nonconstant = !class.conjugates.iter().any(|k| dm.iter().all(|&x| k.contains(x)));
            let minimal_period_exceeds_base = class.representative.members().iter().any(|x| {
                let (a, d, e) = sym.parts(x);
                a == e_gamma && e == 1 && d != e_dm
            });
            SolutionGuarantee {
                orbit_type: class.name.clone(),
                class_id: h,
                coefficient: c.clone(),
                orbit_size: sym.order() / class.order(),
                nonconstant,
                minimal_period_exceeds_base,
                maximal: maximal.contains(&h),
            }
        })
        .collect()
}

/// Sum of orbit sizes over maximal orbit types other than `(G)`.
pub fn total_solutions(guarantees: &[SolutionGuarantee]) -> usize {
    guarantees.iter().filter(|g| g.maximal && g.orbit_size > 1).map(|g| g.orbit_size).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    #[serde(skip)]
    pub degree: BurnsideElement,
    /// `G-deg(𝒜, B(𝔼))`.
    #[serde(skip)]
    pub product: BurnsideElement,
    /// Total crossing count of every `𝒱_{i,l}^-` in the negative spectrum.
    pub exponents: Vec<(RepLabel, u64)>,
    pub ambient: Vec<RepLabel>,
    pub nonzero_terms: Vec<Term>,
    pub maximal_orbit_types: Vec<String>,
    #[serde(skip)]
    pub maximal_ids: Vec<usize>,
    pub guarantees: Vec<SolutionGuarantee>,
    pub total_solutions: usize,
    pub table: SpectralTable,
}

/// A parity rule and the orbit types it promises; at least one of the
/// `alternatives` must carry a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub rule: String,
    pub alternatives: Vec<String>,
}

fn odd_prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while m.is_multiple_of(2) {
        m /= 2;
    }
    let mut p = 3;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Orbit types promised by odd `ρ_i` for `Γ` trivial.
pub fn parity_predictions(rho: &BTreeMap<usize, u64>, m: usize) -> Vec<Prediction> {
    let s = dihedral_s(m);
    let odd = |i: usize| rho.get(&i).is_some_and(|r| r % 2 == 1);
    let mut out = Vec::new();
    let mut push =
        |rule: String, alternatives: Vec<String>| out.push(Prediction { rule, alternatives });
    if odd(0) {
        push("ρ_0 odd".into(), vec![format!("D_{m}")]);
    }
    if odd(s) {
        push("ρ_𝔰 odd".into(), vec![format!("D_{m}^z")]);
    }
    for p in odd_prime_factors(m) {
        let ml = m / p;
        if odd(ml) {
            push(format!("ρ_{ml} odd"), vec![format!("D_{ml}^z"), format!("D_{m}^z")]);
        }
    }
    let e0 = m.trailing_zeros() as usize;
    if e0 > 0 {
        if odd(s + 1) {
            push("ρ_𝔰+1 odd".into(), vec![format!("D_{m}^d")]);
        }
        if odd(s + 2) {
            push("ρ_𝔰+2 odd".into(), vec![format!("D_{m}^d\u{302}")]);
        }
        for k in 2..=e0 {
            let i = m >> k;
            if odd(i) {
                let t = m >> (k - 1);
                push(format!("ρ_{i} odd"), vec![format!("D_{t}^d")]);
                push(format!("ρ_{i} odd"), vec![format!("D\u{303}_{t}^d")]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_and_jmax() {
        assert!((lambda_value(1, -2.0, 3) + 1.7).abs() < 1e-15);
        assert!((lambda_value(2, -0.5, 4) + 0.2).abs() < 1e-15);
        assert_eq!(lambda_value(7, 1.0, 5), 1.0);
        assert_eq!(j_max(-2.0, 3, 1e-9).unwrap(), 4);
        assert_eq!(j_max(-2.0, 4, 1e-9).unwrap(), 5);
        assert_eq!(j_max(-0.5, 4, 1e-9).unwrap(), 2);
        assert!(matches!(j_max(-1.0, 2, 1e-9), Err(Error::Degenerate(_))));
    }

    #[test]
    fn nondegeneracy() {
        assert!(check_nondegeneracy(&[-2.0, -0.5], 3, 1e-9).is_ok());
        assert_eq!(nondegeneracy_violations(&[-1.0], 2, 1e-9), vec![(2, -1.0)]);
        assert_eq!(nondegeneracy_violations(&[-4.0], 1, 1e-9), vec![(2, -4.0)]);
    }

    fn single(mu: f64, m: usize) -> SpectralTable {
        let e = EigenvalueEntry { mu, exact: None, multiplicity: 1, isotypic: vec![1] };
        let mut t = SpectralTable {
            m,
            jmax: vec![Some(j_max(mu, m, 1e-9).unwrap())],
            eigenvalues: vec![e],
            ..Default::default()
        };
        count_beta_eta_rho(&mut t);
        t
    }

    #[test]
    fn beta_for_simple_example() {
        for m in [3, 4, 5, 6, 8] {
            let p = (m / 2) as f64;
            let mu = -((p + 0.5) / m as f64).powi(2);
            let t = single(mu, m);
            let s = dihedral_s(m);
            assert_eq!(t.beta[&(0, 0)], 1);
            assert_eq!(t.beta[&(s, 0)], 0);
            for i in (1..).take_while(|&i| 2 * i < m) {
                assert_eq!(t.beta[&(i, 0)], 1, "m={m} i={i}");
            }
            if m % 2 == 0 {
                assert_eq!(t.beta[&(s + 1, 0)], 1);
                assert_eq!(t.beta[&(s + 2, 0)], 1);
            }
        }
    }

    #[test]
    fn beta_matches_fold_tally() {
        for m in 2..10 {
            for mu in [-0.3, -1.7, -4.2, -9.1] {
                let t = single(mu, m);
                let top = t.jmax[0].unwrap();
                let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
                for j in 0..=top {
                    for i in fold_frequency(j, m).indices() {
                        *tally.entry(i).or_default() += 1;
                    }
                }
                for (&i, &eta) in &t.eta {
                    assert_eq!(eta, tally.get(&i).copied().unwrap_or(0), "m={m} μ={mu} i={i}");
                }
            }
        }
    }

    #[test]
    fn predictions_follow_parities() {
        let rho: BTreeMap<usize, u64> = [(0, 1), (1, 1), (2, 3), (3, 0), (4, 1), (5, 1)].into();
        let p = parity_predictions(&rho, 6);
        let rules: Vec<&str> = p.iter().map(|x| x.rule.as_str()).collect();
        assert_eq!(rules, ["ρ_0 odd", "ρ_2 odd", "ρ_𝔰+1 odd", "ρ_𝔰+2 odd"]);
        assert_eq!(p[1].alternatives, ["D_2^z", "D_6^z"]);
        assert_eq!(odd_prime_factors(90), [3, 5]);
    }
}
