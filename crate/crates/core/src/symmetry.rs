//! The full symmetry group `Γ × D_m × Z_2` of a problem, with coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    dihedral_vertex_action, direct_product, make_dihedral, make_permutation_group, make_sign_group,
    make_trivial, ElementId, FiniteGroup, Permutation, PermutationAction, DEFAULT_MAX_ORDER,
};

/// How `Γ` is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaSpec {
    Trivial,
    /// `D_n` acting on the vertices of a regular `n`-gon.
    Dihedral(usize),
    Permutation {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

/// Factor order of the product; it only affects element labels and subgroup
/// names, never the algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// `Γ × (D_m × Z_2)`.
    #[default]
    GammaFirst,
    /// `D_m × (Γ × Z_2)`.
    DmFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaKind {
    Trivial,
    Dihedral(usize),
    Permutation,
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    m: usize,
    layout: Layout,
    kind: GammaKind,
    gamma: FiniteGroup,
    action: PermutationAction,
    dm: FiniteGroup,
    group: FiniteGroup,
}

impl SymmetryGroup {
    /// Builds `G`; `k` is the dimension of the configuration space `R^k`.
    pub fn new(spec: &GammaSpec, k: usize, m: usize, layout: Layout) -> Result<Self> {
        Self::with_cap(spec, k, m, layout, DEFAULT_MAX_ORDER)
    }

    pub fn with_cap(
        spec: &GammaSpec,
        k: usize,
        m: usize,
        layout: Layout,
        max_order: usize,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        let (gamma, action, kind) = match spec {
            GammaSpec::Trivial => {
                let t = make_trivial();
                let action =
                    PermutationAction { degree: k, images: vec![Permutation::identity(k)] };
                (t, action, GammaKind::Trivial)
            }
            GammaSpec::Dihedral(n) => {
                let d = make_dihedral(*n)?;
                let action = dihedral_vertex_action(&d)?;
                (d, action, GammaKind::Dihedral(*n))
            }
            GammaSpec::Permutation { degree, generators } => {
                let (g, a) = make_permutation_group(*degree, generators, max_order)?;
                (g, a, GammaKind::Permutation)
            }
        };
        if action.degree != k {
            return Err(Error::InvalidParameter(format!(
                "Γ acts on R^{} but k = {k}",
                action.degree
            )));
        }
        let dm = make_dihedral(m)?;
        let z2 = make_sign_group();
        if 4 * m * gamma.order() > max_order {
            return Err(Error::SizeLimit { what: "symmetry group", limit: max_order });
        }
        let group = match (kind, layout) {
            (GammaKind::Trivial, _) => direct_product(&dm, &z2)?,
            (_, Layout::GammaFirst) => direct_product(&gamma, &direct_product(&dm, &z2)?)?,
            (_, Layout::DmFirst) => direct_product(&dm, &direct_product(&gamma, &z2)?)?,
        };
        Ok(SymmetryGroup { m, layout, kind, gamma, action, dm, group })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn gamma_kind(&self) -> GammaKind {
        self.kind
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn action(&self) -> &PermutationAction {
        &self.action
    }

    pub fn dm(&self) -> &FiniteGroup {
        &self.dm
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Splits an element into `(γ, d, sign)` with `sign = 1` meaning `-1`.
    pub fn parts(&self, g: ElementId) -> (ElementId, ElementId, usize) {
        let (ng, nd) = (self.gamma.order(), self.dm.order());
        match (self.kind, self.layout) {
            (GammaKind::Trivial, _) => (0, g / 2, g % 2),
            (_, Layout::GammaFirst) => (g / (2 * nd), (g % (2 * nd)) / 2, g % 2),
            (_, Layout::DmFirst) => ((g % (2 * ng)) / 2, g / (2 * ng), g % 2),
        }
    }

    pub fn compose(&self, gamma: ElementId, d: ElementId, sign: usize) -> ElementId {
        let (ng, nd) = (self.gamma.order(), self.dm.order());
        match (self.kind, self.layout) {
            (GammaKind::Trivial, _) => d * 2 + sign,
            (_, Layout::GammaFirst) => gamma * 2 * nd + d * 2 + sign,
            (_, Layout::DmFirst) => d * 2 * ng + gamma * 2 + sign,
        }
    }

    /// The copy `{e} × D_m × {+1}`.
    pub fn embedded_dm(&self) -> Vec<ElementId> {
        self.dm.elements().map(|d| self.compose(self.gamma.identity(), d, 0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        for layout in [Layout::GammaFirst, Layout::DmFirst] {
            let s = SymmetryGroup::new(&GammaSpec::Dihedral(3), 3, 4, layout).unwrap();
            assert_eq!(s.order(), 96);
            let g = s.group();
            for x in g.elements() {
                let (a, d, e) = s.parts(x);
                assert_eq!(s.compose(a, d, e), x);
            }
            for x in g.elements() {
                for y in g.elements() {
                    let (a1, d1, e1) = s.parts(x);
                    let (a2, d2, e2) = s.parts(y);
                    let z = s.compose(s.gamma().mul(a1, a2), s.dm().mul(d1, d2), (e1 + e2) % 2);
                    assert_eq!(g.mul(x, y), z);
                }
            }
        }
        let s = SymmetryGroup::new(&GammaSpec::Trivial, 2, 5, Layout::GammaFirst).unwrap();
        assert_eq!(s.order(), 20);
        assert_eq!(s.group().structure_name(), "D_5×Z_2");
    }

    #[test]
    fn names_follow_layout() {
        let a = SymmetryGroup::new(&GammaSpec::Dihedral(3), 3, 3, Layout::GammaFirst).unwrap();
        assert_eq!(a.group().structure_name(), "D_3×D_3×Z_2");
        let b = SymmetryGroup::new(&GammaSpec::Dihedral(3), 3, 4, Layout::DmFirst).unwrap();
        assert_eq!(b.group().structure_name(), "D_4×D_3×Z_2");
    }

    #[test]
    fn k_mismatch_rejected() {
        assert!(SymmetryGroup::new(&GammaSpec::Dihedral(3), 4, 3, Layout::GammaFirst).is_err());
    }
}
