//! Real representations: dihedral irreducibles, irreducibles of
//! `Γ × D_m × Z_2`, fixed-point dimensions, isotypic multiplicities and orbit
//! types.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup, PermutationAction, Structure};
use crate::lattice::{Subgroup, SubgroupPoset};
use crate::linalg::{cluster_sorted, jacobi_eigen, Matrix};
use crate::symmetry::{GammaKind, SymmetryGroup};

/// Integrality tolerance for rounded character averages.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// A real irreducible representation of some finite group, by element.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    pub character: Vec<f64>,
    pub matrices: Vec<Matrix>,
    /// `⟨χ, χ⟩`: 1, 2 or 4 for real, complex or quaternionic type.
    pub norm: f64,
}

impl Irrep {
    fn from_matrices(matrices: Vec<Matrix>) -> Self {
        let dim = matrices[0].rows();
        let character: Vec<f64> = matrices.iter().map(Matrix::trace).collect();
        let norm = character.iter().map(|c| c * c).sum::<f64>() / character.len() as f64;
        Irrep { dim, character, matrices, norm }
    }
}

/// `𝔰 = ⌊(n + 1) / 2⌋`, the index of the sign-type irreducible of `D_n`.
pub fn dihedral_s(n: usize) -> usize {
    n.div_ceil(2)
}

/// Number of irreducibles of `D_n`: `𝔰 + 1`, or `𝔰 + 3` for even `n`.
pub fn dihedral_irrep_count(n: usize) -> usize {
    dihedral_s(n) + if n.is_multiple_of(2) { 3 } else { 1 }
}

/// Irreducibles `𝒱_0, .., 𝒱_{𝔰(+2)}` of `D_n` in index order.
pub fn dihedral_irreps(n: usize) -> Result<Vec<Irrep>> {
    if n == 0 {
        return Err(Error::InvalidParameter("D_0 has no representations".into()));
    }
    let s = dihedral_s(n);
    let one_dim = |rot: f64, refl: f64| {
        let m = (0..2 * n)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                Matrix::scalar(rot.powi(a as i32) * refl.powi(b as i32))
            })
            .collect();
        Irrep::from_matrices(m)
    };
    let mut out = vec![one_dim(1.0, 1.0)];
    for i in 1..s {
        if 2 * i >= n {
            break;
        }
        let m = (0..2 * n)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                let t = 2.0 * PI * (i * a) as f64 / n as f64;
                let (c, sn) = (t.cos(), t.sin());
                let rot = Matrix::from_rows(&[vec![c, -sn], vec![sn, c]]);
                if b == 0 {
                    rot
                } else {
                    rot.mul(&Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]))
                }
            })
            .collect();
        out.push(Irrep::from_matrices(m));
    }
    out.push(one_dim(1.0, -1.0));
    if n.is_multiple_of(2) {
        out.push(one_dim(-1.0, 1.0));
        out.push(one_dim(-1.0, -1.0));
    }
    debug_assert_eq!(out.len(), dihedral_irrep_count(n));
    Ok(out)
}

/// Real irreducibles of an arbitrary small group, split out of the regular
/// representation by a random symmetric element of its commutant.
pub fn regular_decomposition(g: &FiniteGroup, seed: u64) -> Result<Vec<Irrep>> {
    const MAX: usize = 60;
    let n = g.order();
    if n > MAX {
        return Err(Error::Unsupported(format!(
            "generic irreducible decomposition is limited to order {MAX}, got {n}"
        )));
    }
    let left: Vec<Matrix> = g
        .elements()
        .map(|x| {
            let mut m = Matrix::zeros(n, n);
            for y in g.elements() {
                m[(g.mul(x, y), y)] = 1.0;
            }
            m
        })
        .collect();
    for attempt in 0..16u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut x = Matrix::zeros(n, n);
        for h in g.elements() {
            let c: f64 = rng.gen_range(-1.0..1.0);
            for y in g.elements() {
                let z = g.mul(y, g.inv(h));
                x[(z, y)] += c;
                x[(y, z)] += c;
            }
        }
        let eig = jacobi_eigen(&x, 1e-15);
        let mut found: Vec<Irrep> = Vec::new();
        let mut ok = true;
        for range in cluster_sorted(&eig.values, 1e-8) {
            let mut q = Matrix::zeros(n, range.len());
            for (c, col) in range.clone().enumerate() {
                for r in 0..n {
                    q[(r, c)] = eig.vectors[(r, col)];
                }
            }
            let qt = q.transpose();
            let irrep = Irrep::from_matrices(left.iter().map(|l| qt.mul(l).mul(&q)).collect());
            let indicator =
                g.elements().map(|y| irrep.character[g.mul(y, y)]).sum::<f64>() / n as f64;
            let expected = match irrep.norm.round() as i64 {
                1 => 1.0,
                2 => 0.0,
                4 => -2.0,
                _ => f64::NAN,
            };
            if (irrep.norm - irrep.norm.round()).abs() > INTEGRALITY_TOL
                || (indicator - expected).abs() > INTEGRALITY_TOL
            {
                ok = false;
                break;
            }
            let dup = found.iter().any(|f| {
                f.dim == irrep.dim
                    && f.character.iter().zip(&irrep.character).all(|(a, b)| (a - b).abs() < 1e-6)
            });
            if !dup {
                found.push(irrep);
            }
        }
        let total: f64 = found.iter().map(|f| (f.dim * f.dim) as f64 / f.norm).sum();
        if ok && (total - n as f64).abs() < INTEGRALITY_TOL {
            found.sort_by(|a, b| {
                a.dim.cmp(&b.dim).then_with(|| {
                    b.character
                        .iter()
                        .zip(&a.character)
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
            });
            return Ok(found);
        }
    }
    Err(Error::Numeric("regular representation did not split into irreducibles".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// `𝒱_{i,l}^±`: `i` indexes `D_m`, `l` indexes `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepLabel {
    pub i: usize,
    pub l: usize,
    pub parity: Parity,
}

impl RepLabel {
    pub fn minus(i: usize, l: usize) -> Self {
        RepLabel { i, l, parity: Parity::Minus }
    }

    pub fn plus(i: usize, l: usize) -> Self {
        RepLabel { i, l, parity: Parity::Plus }
    }

    /// `𝒱_{i,l}^±`, or `𝒱_i^±` when `Γ` is trivial.
    pub fn render(&self, gamma_trivial: bool) -> String {
        let p = match self.parity {
            Parity::Plus => '+',
            Parity::Minus => '-',
        };
        if gamma_trivial {
            format!("𝒱_{}^{p}", self.i)
        } else {
            format!("𝒱_{{{},{}}}^{p}", self.i, self.l)
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibleRep {
    pub label: RepLabel,
    pub dim: usize,
    pub character: Vec<f64>,
    pub matrices: Vec<Matrix>,
    pub norm: f64,
}

impl IrreducibleRep {
    /// The element matrices of the given generators.
    pub fn generator_matrices(&self, generators: &[usize]) -> Vec<Matrix> {
        generators.iter().map(|&g| self.matrices[g].clone()).collect()
    }
}

/// Irreducibles of `Γ × D_m × Z_2` as tensor products.
#[derive(Clone, Debug)]
pub struct IrrepTable {
    irreps: Vec<IrreducibleRep>,
    gamma: Vec<Irrep>,
    dm: Vec<Irrep>,
    gamma_trivial: bool,
}

/// Seed of the commutant element used for non-dihedral `Γ`.
pub const GAMMA_DECOMPOSITION_SEED: u64 = 0x5eed;

pub fn gamma_irreps(sym: &SymmetryGroup) -> Result<Vec<Irrep>> {
    match sym.gamma_kind() {
        GammaKind::Trivial => Ok(vec![Irrep::from_matrices(vec![Matrix::scalar(1.0)])]),
        GammaKind::Dihedral(n) => dihedral_irreps(n),
        GammaKind::Permutation => regular_decomposition(sym.gamma(), GAMMA_DECOMPOSITION_SEED),
    }
}

pub fn build_g_irreps(sym: &SymmetryGroup) -> Result<IrrepTable> {
    let gamma = gamma_irreps(sym)?;
    let dm = dihedral_irreps(sym.m())?;
    let g = sym.group();
    let mut irreps = Vec::new();
    for (l, gl) in gamma.iter().enumerate() {
        for (i, di) in dm.iter().enumerate() {
            for parity in [Parity::Plus, Parity::Minus] {
                let matrices: Vec<Matrix> = g
                    .elements()
                    .map(|x| {
                        let (a, d, e) = sym.parts(x);
                        let s = if parity == Parity::Minus && e == 1 { -1.0 } else { 1.0 };
                        gl.matrices[a].kron(&di.matrices[d]).scale(s)
                    })
                    .collect();
                let character: Vec<f64> = matrices.iter().map(Matrix::trace).collect();
                irreps.push(IrreducibleRep {
                    label: RepLabel { i, l, parity },
                    dim: gl.dim * di.dim,
                    character,
                    matrices,
                    norm: gl.norm * di.norm,
                });
            }
        }
    }
    Ok(IrrepTable { irreps, gamma, dm, gamma_trivial: sym.gamma_kind() == GammaKind::Trivial })
}

impl IrrepTable {
    pub fn irreps(&self) -> &[IrreducibleRep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn get(&self, label: RepLabel) -> Option<&IrreducibleRep> {
        self.irreps.iter().find(|r| r.label == label)
    }

    pub fn gamma_irreps(&self) -> &[Irrep] {
        &self.gamma
    }

    pub fn dm_irreps(&self) -> &[Irrep] {
        &self.dm
    }

    pub fn gamma_trivial(&self) -> bool {
        self.gamma_trivial
    }

    pub fn render_label(&self, label: RepLabel) -> String {
        label.render(self.gamma_trivial)
    }
}

/// `(1/|G|) Σ a(g) b(g)` for real characters.
pub fn inner_product(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64
}

pub fn add_characters(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn round_checked(x: f64, what: &str) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() > INTEGRALITY_TOL {
        return Err(Error::Numeric(format!("{what} = {x} is not an integer")));
    }
    Ok(r as i64)
}

/// `dim V^H = (1/|H|) Σ_{h ∈ H} χ(h)`.
pub fn fixed_point_dim(character: &[f64], h: &Subgroup) -> Result<usize> {
    fixed_point_dim_set(character, h.members())
}

pub fn fixed_point_dim_set(character: &[f64], h: &ElementSet) -> Result<usize> {
    let avg = h.iter().map(|x| character[x]).sum::<f64>() / h.len() as f64;
    let d = round_checked(avg, "fixed-point dimension")?;
    usize::try_from(d).map_err(|_| Error::Numeric(format!("negative fixed-point dimension {d}")))
}

/// Dense model of a (reducible) representation, one matrix per element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl Representation {
    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a IrreducibleRep>) -> Self {
        let parts: Vec<&IrreducibleRep> = parts.into_iter().collect();
        let order = parts.first().map_or(0, |p| p.matrices.len());
        let matrices = (0..order)
            .map(|g| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.matrices[g]).collect();
                Matrix::direct_sum(&blocks)
            })
            .collect();
        Representation { dim: parts.iter().map(|p| p.dim).sum(), matrices }
    }

    pub fn from_irrep(irrep: &Irrep) -> Self {
        Representation { dim: irrep.dim, matrices: irrep.matrices.clone() }
    }

    pub fn character(&self) -> Vec<f64> {
        self.matrices.iter().map(Matrix::trace).collect()
    }
}

/// Spectral projector of `a` onto the eigenvalues clustering with `mu`.
pub fn spectral_projector(a: &Matrix, mu: f64, rel_tol: f64) -> Matrix {
    let eig = jacobi_eigen(a, 1e-15);
    let n = a.rows();
    let mut p = Matrix::zeros(n, n);
    for (c, &lam) in eig.values.iter().enumerate() {
        if (lam - mu).abs() <= rel_tol * mu.abs().max(1.0) {
            for r in 0..n {
                for s in 0..n {
                    p[(r, s)] += eig.vectors[(r, c)] * eig.vectors[(s, c)];
                }
            }
        }
    }
    p
}

/// Checks `A σ(γ) = σ(γ) A` for every element of `Γ`.
pub fn check_equivariance(a: &Matrix, action: &PermutationAction, tol: f64) -> Result<()> {
    for (g, perm) in action.images.iter().enumerate() {
        let s = Matrix::from_rows(&action.matrix(g));
        if a.mul(&s).max_abs_diff(&s.mul(a)) > tol {
            return Err(Error::Assumption {
                assumption: "(A4)",
                detail: format!("A does not commute with the permutation {}", perm.cycle_string()),
            });
        }
    }
    Ok(())
}

/// Multiplicity of the `Γ`-irreducible `irrep` in the eigenspace `E_A(μ)`.
pub fn isotypic_multiplicity_in_eigenspace(
    a: &Matrix,
    mu: f64,
    action: &PermutationAction,
    irrep: &Irrep,
    tol: f64,
) -> Result<usize> {
    check_equivariance(a, action, tol)?;
    let p = spectral_projector(a, mu, 1e-7);
    let order = action.images.len();
    let mut sum = 0.0;
    for g in 0..order {
        let s = Matrix::from_rows(&action.matrix(g));
        sum += irrep.character[g] * p.mul(&s).trace();
    }
    let m = sum / order as f64 / irrep.norm;
    let r = round_checked(m, "isotypic multiplicity")?;
    usize::try_from(r).map_err(|_| Error::Numeric(format!("negative multiplicity {r}")))
}

/// `D_m`-components of the restriction of the `j`-th `O(2)` frequency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldResult {
    /// `(i, count)` pairs in increasing `i`.
    pub components: Vec<(usize, usize)>,
}

impl FoldResult {
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().flat_map(|&(i, c)| std::iter::repeat_n(i, c))
    }

    pub fn dimension(&self, m: usize) -> usize {
        self.components
            .iter()
            .map(|&(i, c)| c * if i == 0 || i >= dihedral_s(m) { 1 } else { 2 })
            .sum()
    }
}

/// `α(j) = j mod m`.
pub fn alpha(j: usize, m: usize) -> usize {
    j % m
}

/// `i(j)`: `α(j)` folded into `0..=⌊m/2⌋`.
pub fn fold_index(j: usize, m: usize) -> usize {
    let a = alpha(j, m);
    if a <= m / 2 {
        a
    } else {
        m - a
    }
}

pub fn fold_frequency(j: usize, m: usize) -> FoldResult {
    let s = dihedral_s(m);
    let a = alpha(j, m);
    let components = if j == 0 {
        vec![(0, 1)]
    } else if a == 0 {
        vec![(0, 1), (s, 1)]
    } else if m.is_multiple_of(2) && 2 * a == m {
        vec![(s + 1, 1), (s + 2, 1)]
    } else {
        vec![(fold_index(j, m), 1)]
    };
    FoldResult { components }
}

/// Fixed-point dimension of a character at every class representative.
pub fn fixed_point_profile(character: &[f64], poset: &SubgroupPoset) -> Result<Vec<usize>> {
    poset.classes().iter().map(|c| fixed_point_dim(character, &c.representative)).collect()
}

/// Orbit types of a representation: `(H)` such that `dim V^H > dim V^K` for
/// every class `(K)` strictly above `(H)`. `(G)` is always included.
pub fn orbit_types_of_character(character: &[f64], poset: &SubgroupPoset) -> Result<Vec<usize>> {
    let dims = fixed_point_profile(character, poset)?;
    Ok((0..poset.len())
        .filter(|&h| (h + 1..poset.len()).all(|k| !poset.leq(h, k) || dims[k] < dims[h]))
        .collect())
}

/// Orbit types in `V \ {0}`: drops `(G)` unless it fixes a nonzero vector.
pub fn nonzero_orbit_types(character: &[f64], poset: &SubgroupPoset) -> Result<Vec<usize>> {
    let top = poset.top();
    let dims = fixed_point_profile(character, poset)?;
    Ok(orbit_types_of_character(character, poset)?
        .into_iter()
        .filter(|&h| h != top || dims[top] > 0)
        .collect())
}

/// Maximal orbit types in `V \ {0}`.
pub fn maximal_orbit_types(character: &[f64], poset: &SubgroupPoset) -> Result<Vec<usize>> {
    Ok(poset.maximal(&nonzero_orbit_types(character, poset)?))
}

/// Isotropy classes observed at random points of `V` and of every fixed
/// subspace `V^H`, plus `(G)` for the origin.
pub fn isotropy_oracle(
    rep: &Representation,
    poset: &SubgroupPoset,
    trials: usize,
    seed: u64,
) -> Vec<usize> {
    let g = poset.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(poset.top());
    let mut projectors = vec![Matrix::identity(rep.dim)];
    for c in poset.classes() {
        let mut p = Matrix::zeros(rep.dim, rep.dim);
        for h in c.representative.members().iter() {
            p = p.add(&rep.matrices[h]);
        }
        projectors.push(p.scale(1.0 / c.order() as f64));
    }
    for p in &projectors {
        for _ in 0..trials {
            let raw: Vec<f64> = (0..rep.dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = p.mul_vec(&raw);
            let norm = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
            if norm < 1e-9 {
                continue;
            }
            let stab = ElementSet::from_ids(
                g.order(),
                g.elements().filter(|&x| {
                    let w = rep.matrices[x].mul_vec(&v);
                    w.iter().zip(&v).all(|(a, b)| (a - b).abs() <= 1e-9 * norm)
                }),
            );
            if let Some(id) = poset.class_of_set(&stab) {
                seen.insert(id);
            }
        }
    }
    seen.into_iter().collect()
}

/// Regular representation of a group as permutation matrices.
pub fn regular_representation(g: &FiniteGroup) -> Representation {
    let n = g.order();
    let matrices = g
        .elements()
        .map(|x| {
            let mut m = Matrix::zeros(n, n);
            for y in g.elements() {
                m[(g.mul(x, y), y)] = 1.0;
            }
            m
        })
        .collect();
    Representation { dim: n, matrices }
}

/// True if `g` was built as `D_n` (used to pick closed-form irreducibles).
pub fn is_dihedral(g: &FiniteGroup) -> bool {
    matches!(g.structure(), Structure::Dihedral(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_dihedral, make_sign_group};
    use crate::lattice::conjugacy_classes;
    use crate::symmetry::{GammaSpec, Layout};

    #[test]
    fn dihedral_dimensions() {
        let dims = |n| dihedral_irreps(n).unwrap().iter().map(|r| r.dim).collect::<Vec<_>>();
        assert_eq!(dims(3), [1, 2, 1]);
        assert_eq!(dims(4), [1, 2, 1, 1, 1]);
        for n in 1..=9 {
            let irr = dihedral_irreps(n).unwrap();
            assert_eq!(irr.iter().map(|r| r.dim * r.dim).sum::<usize>(), 2 * n);
            for (a, ra) in irr.iter().enumerate() {
                for (b, rb) in irr.iter().enumerate() {
                    let ip = inner_product(&ra.character, &rb.character);
                    assert!((ip - f64::from(u8::from(a == b))).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn fixed_points_in_d3() {
        let d3 = make_dihedral(3).unwrap();
        let irr = dihedral_irreps(3).unwrap();
        let kappa = Subgroup::generated(&d3, &[3]);
        assert_eq!(fixed_point_dim(&irr[1].character, &kappa).unwrap(), 1);
        assert_eq!(fixed_point_dim(&irr[0].character, &kappa).unwrap(), 1);
        assert_eq!(fixed_point_dim(&irr[2].character, &Subgroup::whole(&d3)).unwrap(), 0);
        assert!(fixed_point_dim(&[0.5, 0.0, 0.0, 0.0, 0.0, 0.0], &Subgroup::trivial(&d3)).is_err());
    }

    #[test]
    fn folding_cases() {
        assert_eq!(fold_frequency(0, 3).components, [(0, 1)]);
        assert_eq!(fold_frequency(4, 3).components, [(1, 1)]);
        assert_eq!(fold_frequency(3, 3).components, [(0, 1), (2, 1)]);
        assert_eq!(fold_frequency(2, 4).components, [(3, 1), (4, 1)]);
        assert_eq!(fold_frequency(5, 6).components, [(1, 1)]);
        for m in 2..9 {
            for j in 1..30 {
                assert_eq!(fold_frequency(j, m).dimension(m), 2);
            }
        }
    }

    #[test]
    fn regular_rep_of_z2_isotropy() {
        let z2 = make_sign_group();
        let p = conjugacy_classes(&z2).unwrap();
        let found = isotropy_oracle(&regular_representation(&z2), &p, 8, 1);
        assert_eq!(found, vec![0, 1]);
    }

    #[test]
    fn generic_decomposition_matches_dihedral() {
        let d4 = make_dihedral(4).unwrap();
        let irr = regular_decomposition(&d4, 3).unwrap();
        assert_eq!(irr.iter().map(|r| r.dim).collect::<Vec<_>>(), [1, 1, 1, 1, 2]);
        let z3 = crate::group::make_cyclic(3).unwrap();
        let irr = regular_decomposition(&z3, 3).unwrap();
        assert_eq!(irr.len(), 2);
        assert!((irr[1].norm - 2.0).abs() < 1e-9);
    }

    #[test]
    fn g_irrep_counts() {
        let s = SymmetryGroup::new(&GammaSpec::Dihedral(3), 3, 3, Layout::GammaFirst).unwrap();
        assert_eq!(build_g_irreps(&s).unwrap().len(), 18);
        let s = SymmetryGroup::new(&GammaSpec::Trivial, 1, 3, Layout::GammaFirst).unwrap();
        assert_eq!(build_g_irreps(&s).unwrap().len(), 6);
    }
}
