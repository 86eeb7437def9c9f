//! Basic degrees `deg_𝒱 = G-deg(−id, B(𝒱))` and products of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::lattice::{conjugacy_classes, SubgroupPoset};
use crate::rep::{build_g_irreps, dihedral_s, fixed_point_profile, IrrepTable, RepLabel};
use crate::symmetry::SymmetryGroup;

#[derive(Clone, Debug, Serialize)]
pub struct BasicDegree {
    pub label: RepLabel,
    #[serde(skip)]
    pub value: BurnsideElement,
}

/// Equivariant degree from the Brouwer degrees `deg(f^H, Ω^H)` of the
/// restrictions to every fixed-point space, one value per class.
///
/// Coefficients are recovered top-down:
/// `n_H = (d_H − Σ_{K > H} n_K n(H,K) |W(K)|) / |W(H)|`.
pub fn degree_from_fixed_point_degrees(
    poset: &SubgroupPoset,
    fixed_degrees: &[BigInt],
) -> Result<BurnsideElement> {
    if fixed_degrees.len() != poset.len() {
        return Err(Error::InvalidParameter(format!(
            "expected {} fixed-point degrees, got {}",
            poset.len(),
            fixed_degrees.len()
        )));
    }
    let mut coeffs: Vec<(usize, BigInt)> = Vec::new();
    for h in (0..poset.len()).rev() {
        let mut num = fixed_degrees[h].clone();
        for (k, nk) in &coeffs {
            if *k != h && poset.leq(h, *k) {
                num -= nk * BigInt::from(poset.n_count(h, *k) * poset.class(*k).weyl_order);
            }
        }
        let w = BigInt::from(poset.class(h).weyl_order);
        let (q, r) = num.div_rem(&w);
        if !r.is_zero() {
            return Err(Error::Numeric(format!(
                "non-exact division {num}/{w} at ({})",
                poset.name(h)
            )));
        }
        if !q.is_zero() {
            coeffs.push((h, q));
        }
    }
    Ok(BurnsideElement::from_terms(coeffs))
}

/// `deg_𝒱` for a representation given by its character.
pub fn basic_degree_of_character(
    character: &[f64],
    poset: &SubgroupPoset,
) -> Result<BurnsideElement> {
    let dims = fixed_point_profile(character, poset)?;
    let signs: Vec<BigInt> =
        dims.iter().map(|&d| BigInt::from(if d % 2 == 0 { 1 } else { -1 })).collect();
    degree_from_fixed_point_degrees(poset, &signs)
}

/// Basic degrees of a fixed irreducible table, memoized per label.
pub struct DegreeEngine {
    ring: Arc<BurnsideRing>,
    table: Arc<IrrepTable>,
    memo: RwLock<HashMap<RepLabel, BurnsideElement>>,
}

impl DegreeEngine {
    pub fn new(ring: Arc<BurnsideRing>, table: Arc<IrrepTable>) -> Self {
        DegreeEngine { ring, table, memo: RwLock::new(HashMap::new()) }
    }

    /// Builds the lattice, ring and irreducibles of a symmetry group.
    pub fn for_group(sym: &SymmetryGroup) -> Result<Self> {
        let poset = Arc::new(conjugacy_classes(sym.group())?);
        let table = Arc::new(build_g_irreps(sym)?);
        Ok(DegreeEngine::new(Arc::new(BurnsideRing::new(poset)), table))
    }

    pub fn ring(&self) -> &BurnsideRing {
        &self.ring
    }

    pub fn poset(&self) -> &SubgroupPoset {
        self.ring.poset()
    }

    pub fn table(&self) -> &IrrepTable {
        &self.table
    }

    pub fn basic_degree(&self, label: RepLabel) -> Result<BasicDegree> {
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&label) {
            return Ok(BasicDegree { label, value: v.clone() });
        }
        let rep = self
            .table
            .get(label)
            .ok_or_else(|| Error::InvalidParameter(format!("no irreducible {label}")))?;
        let value = basic_degree_of_character(&rep.character, self.poset())?;
        self.memo.write().expect("memo poisoned").insert(label, value.clone());
        Ok(BasicDegree { label, value })
    }

    /// `Π deg_𝒱^{m_𝒱}`; only the parity of each multiplicity matters.
    pub fn linear_degree(
        &self,
        multiplicities: &BTreeMap<RepLabel, u64>,
    ) -> Result<BurnsideElement> {
        let mut acc = self.ring.unit();
        for (&label, &mult) in multiplicities {
            if mult == 0 {
                continue;
            }
            let d = self.basic_degree(label)?.value;
            acc = self.ring.multiply(&acc, &self.ring.power(&d, mult)?)?;
        }
        Ok(acc)
    }

    /// Basic degrees of every irreducible in table order.
    pub fn all(&self) -> Result<Vec<BasicDegree>> {
        self.table.irreps().iter().map(|r| self.basic_degree(r.label)).collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// The closed forms of `deg_{𝒱_i^-}` in `A(D_m × Z_2)`, built by class name.
pub fn closed_form_basic_degree(
    m: usize,
    i: usize,
    poset: &SubgroupPoset,
) -> Result<BurnsideElement> {
    let s = dihedral_s(m);
    let last = if m.is_multiple_of(2) { s + 2 } else { s };
    if m == 0 || i > last {
        return Err(Error::InvalidParameter(format!("no irreducible 𝒱_{i} of D_{m}")));
    }
    let id = |name: String| {
        poset.find(&name).ok_or_else(|| Error::Consistency(format!("class {name} not found")))
    };
    let top = BurnsideElement::generator(poset.top());
    let minus = |name: String| -> Result<BurnsideElement> {
        Ok(&top - &BurnsideElement::generator(id(name)?))
    };
    if i == 0 {
        return minus(format!("D_{m}"));
    }
    if i == s {
        return minus(format!("D_{m}^z"));
    }
    if m.is_multiple_of(2) && i == s + 1 {
        return minus(format!("D_{m}^d"));
    }
    if m.is_multiple_of(2) && i == s + 2 {
        return minus(format!("D_{m}^d\u{302}"));
    }
    let h = gcd(m, i);
    let q = m / h;
    let names: [String; 3] = if q % 2 == 1 {
        [format!("D_{h}"), format!("D_{h}^z"), format!("Z_{h}")]
    } else if q % 4 == 2 {
        let t = 2 * h;
        [format!("D_{t}^d"), format!("D_{t}^d\u{302}"), format!("Z_{t}^d")]
    } else {
        let t = 2 * h;
        [format!("D_{t}^d"), format!("D\u{303}_{t}^d"), format!("Z_{t}^d")]
    };
    let mut out = top.clone();
    out = &out - &BurnsideElement::generator(id(names[0].clone())?);
    out = &out - &BurnsideElement::generator(id(names[1].clone())?);
    out = &out + &BurnsideElement::generator(id(names[2].clone())?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_dihedral, make_sign_group};
    use crate::lattice::conjugacy_classes;
    use crate::symmetry::{GammaSpec, Layout};

    fn engine(m: usize) -> DegreeEngine {
        let sym = SymmetryGroup::new(&GammaSpec::Trivial, 1, m, Layout::GammaFirst).unwrap();
        DegreeEngine::for_group(&sym).unwrap()
    }

    #[test]
    fn trivial_irrep_gives_minus_unit() {
        let e = engine(3);
        let d = e.basic_degree(RepLabel::plus(0, 0)).unwrap().value;
        assert_eq!(d, -&BurnsideElement::generator(e.poset().top()));
    }

    #[test]
    fn closed_forms_match_for_small_m() {
        for m in [3, 4] {
            let e = engine(m);
            let last = e.table().dm_irreps().len();
            for i in 0..last {
                let got = e.basic_degree(RepLabel::minus(i, 0)).unwrap().value;
                let want = closed_form_basic_degree(m, i, e.poset()).unwrap();
                assert_eq!(got, want, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn linear_degree_parities() {
        let e = engine(3);
        let mut mult = BTreeMap::new();
        mult.insert(RepLabel::minus(1, 0), 2);
        assert_eq!(e.linear_degree(&mult).unwrap(), e.ring().unit());
        mult.insert(RepLabel::minus(1, 0), 3);
        assert_eq!(
            e.linear_degree(&mult).unwrap(),
            e.basic_degree(RepLabel::minus(1, 0)).unwrap().value
        );
    }

    #[test]
    fn hook_rejects_wrong_length() {
        let g = direct_product(&make_dihedral(2).unwrap(), &make_sign_group()).unwrap();
        let p = conjugacy_classes(&g).unwrap();
        assert!(degree_from_fixed_point_degrees(&p, &[BigInt::from(1)]).is_err());
    }
}
