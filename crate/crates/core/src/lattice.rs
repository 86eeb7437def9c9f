//! Subgroups, their conjugacy classes and the containment poset.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElementId, ElementSet, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::naming::canonical_name;

/// A subgroup stored as a membership bitset over the parent's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(ElementSet);

impl Subgroup {
    /// Wraps a set after checking identity, closure and Lagrange.
    pub fn new(g: &FiniteGroup, set: ElementSet) -> Result<Self> {
        let ok = set.contains(g.identity())
            && g.order().is_multiple_of(set.len())
            && set.iter().all(|a| set.iter().all(|b| set.contains(g.mul(a, g.inv(b)))));
        if ok {
            Ok(Subgroup(set))
        } else {
            Err(Error::InvalidParameter(format!("{set:?} is not a subgroup")))
        }
    }

    pub fn generated(g: &FiniteGroup, gens: &[ElementId]) -> Self {
        Subgroup(closure(g, &ElementSet::from_ids(g.order(), [g.identity()]), &[], gens))
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup(ElementSet::full(g.order()))
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup(ElementSet::from_ids(g.order(), [g.identity()]))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: ElementId) -> bool {
        self.0.contains(g)
    }

    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn conjugate_by(&self, g: &FiniteGroup, x: ElementId) -> Subgroup {
        Subgroup(ElementSet::from_ids(g.order(), self.0.iter().map(|h| g.conjugate(x, h))))
    }

    fn sorted_ids(&self) -> Vec<ElementId> {
        self.0.to_vec()
    }
}

/// Smallest subgroup containing the subgroup `base` (generated by
/// `base_gens`) and the elements `extra`.
fn closure(
    g: &FiniteGroup,
    base: &ElementSet,
    base_gens: &[ElementId],
    extra: &[ElementId],
) -> ElementSet {
    let mut set = base.clone();
    let mut elems: Vec<ElementId> = set.to_vec();
    let gens: Vec<ElementId> = base_gens.iter().chain(extra).copied().collect();
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        for &s in &gens {
            let p = g.mul(a, s);
            if set.insert(p) {
                elems.push(p);
            }
        }
        i += 1;
    }
    set
}

/// All subgroups of `g`, found by extending cyclic subgroups one generator at
/// a time until no new subgroup appears.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_capped(g, DEFAULT_MAX_ORDER)
}

pub fn enumerate_subgroups_capped(g: &FiniteGroup, max_order: usize) -> Result<Vec<Subgroup>> {
    if g.order() > max_order {
        return Err(Error::SizeLimit { what: "subgroup enumeration", limit: max_order });
    }
    let trivial = Subgroup::trivial(g).0;
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut all: Vec<ElementSet> = Vec::new();
    let mut layer: Vec<(ElementSet, Vec<ElementId>)> = Vec::new();
    for x in g.elements() {
        let c = closure(g, &trivial, &[], &[x]);
        if seen.insert(c.clone()) {
            all.push(c.clone());
            layer.push((c, vec![x]));
        }
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &layer {
            // Different outside elements can generate different overgroups,
            // so each one is tried.
            for x in g.elements() {
                if h.contains(x) {
                    continue;
                }
                let c = closure(g, h, gens, &[x]);
                if seen.insert(c.clone()) {
                    all.push(c.clone());
                    let mut gx = gens.clone();
                    gx.push(x);
                    next.push((c, gx));
                }
            }
        }
        layer = next;
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(all.into_iter().map(Subgroup).collect())
}

/// One conjugacy class of subgroups `(H)`.
#[derive(Clone, Debug)]
pub struct ConjugacyClassOfSubgroups {
    pub id: usize,
    pub representative: Subgroup,
    pub conjugates: Vec<Subgroup>,
    pub normalizer: Subgroup,
    pub weyl_order: usize,
    pub name: String,
    order_profile: Vec<usize>,
}

impl ConjugacyClassOfSubgroups {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// The poset `Φ(G)` with all data needed by Burnside-ring arithmetic.
#[derive(Clone, Debug)]
pub struct SubgroupPoset {
    group: FiniteGroup,
    classes: Vec<ConjugacyClassOfSubgroups>,
    /// `n[l * len + h]` = number of conjugates of `(H)` containing the
    /// representative of `(L)`.
    n: Vec<u32>,
    covers: Vec<Vec<usize>>,
    class_of: HashMap<ElementSet, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CcsRecord {
    pub id: usize,
    pub name: String,
    pub order: usize,
    pub normalizer_order: usize,
    pub weyl_order: usize,
    pub conjugates: usize,
    /// Ids of the classes directly above this one.
    pub covers: Vec<usize>,
}

/// Enumerates subgroups of `g` and organizes them into `Φ(G)`.
pub fn conjugacy_classes(g: &FiniteGroup) -> Result<SubgroupPoset> {
    conjugacy_classes_capped(g, DEFAULT_MAX_ORDER)
}

pub fn conjugacy_classes_capped(g: &FiniteGroup, max_order: usize) -> Result<SubgroupPoset> {
    let subgroups = enumerate_subgroups_capped(g, max_order)?;
    let mut assigned: HashSet<ElementSet> = HashSet::new();
    let mut classes = Vec::new();
    for h in &subgroups {
        if assigned.contains(&h.0) {
            continue;
        }
        let mut conjugates: Vec<Subgroup> = Vec::new();
        for x in g.elements() {
            let c = h.conjugate_by(g, x);
            if assigned.insert(c.0.clone()) {
                conjugates.push(c);
            }
        }
        conjugates.sort_by_key(Subgroup::sorted_ids);
        let representative = conjugates[0].clone();
        let normalizer = Subgroup(ElementSet::from_ids(
            g.order(),
            g.elements().filter(|&x| representative.conjugate_by(g, x) == representative),
        ));
        let mut order_profile: Vec<usize> =
            representative.0.iter().map(|x| g.element_order(x)).collect();
        order_profile.sort_unstable();
        classes.push(ConjugacyClassOfSubgroups {
            id: 0,
            name: canonical_name(g, &representative.0),
            weyl_order: normalizer.order() / representative.order(),
            representative,
            conjugates,
            normalizer,
            order_profile,
        });
    }
    Ok(SubgroupPoset::assemble(g.clone(), classes))
}

impl SubgroupPoset {
    fn assemble(group: FiniteGroup, mut classes: Vec<ConjugacyClassOfSubgroups>) -> Self {
        // Representatives are the lexicographically least conjugates, which
        // also fixes the order of tie suffixes.
        classes.sort_by(|a, b| {
            (a.order(), &a.order_profile, &a.name, a.representative.sorted_ids()).cmp(&(
                b.order(),
                &b.order_profile,
                &b.name,
                b.representative.sorted_ids(),
            ))
        });
        let mut multiplicity: HashMap<String, usize> = HashMap::new();
        for c in &classes {
            *multiplicity.entry(c.name.clone()).or_default() += 1;
        }
        let mut counter: HashMap<String, usize> = HashMap::new();
        for c in classes.iter_mut() {
            if multiplicity[&c.name] > 1 {
                let k = counter.entry(c.name.clone()).or_default();
                *k += 1;
                c.name = format!("{}#{}", c.name, k);
            }
        }
        for (i, c) in classes.iter_mut().enumerate() {
            c.id = i;
        }

        let len = classes.len();
        let mut n = vec![0u32; len * len];
        for l in 0..len {
            let rep = &classes[l].representative;
            for h in l..len {
                if !classes[h].order().is_multiple_of(rep.order()) {
                    continue;
                }
                n[l * len + h] =
                    classes[h].conjugates.iter().filter(|c| rep.is_subgroup_of(c)).count() as u32;
            }
        }
        let mut covers = vec![Vec::new(); len];
        for l in 0..len {
            for h in l + 1..len {
                if n[l * len + h] == 0 {
                    continue;
                }
                let direct = (l + 1..h).all(|k| n[l * len + k] == 0 || n[k * len + h] == 0);
                if direct {
                    covers[l].push(h);
                }
            }
        }
        let mut class_of = HashMap::new();
        for c in &classes {
            for s in &c.conjugates {
                class_of.insert(s.0.clone(), c.id);
            }
        }
        SubgroupPoset { group, classes, n, covers, class_of }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjugacyClassOfSubgroups] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &ConjugacyClassOfSubgroups {
        &self.classes[id]
    }

    /// Id of `(G)`; the canonical order puts it last.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// Id of the trivial class; always first.
    pub fn bottom(&self) -> usize {
        0
    }

    /// `n(L, H)`: conjugates of `H` containing the representative of `L`.
    pub fn n_count(&self, l: usize, h: usize) -> usize {
        self.n[l * self.classes.len() + h] as usize
    }

    /// `(L) ≤ (H)`.
    pub fn leq(&self, l: usize, h: usize) -> bool {
        self.n_count(l, h) > 0
    }

    pub fn covers(&self, id: usize) -> &[usize] {
        &self.covers[id]
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.class_of.get(&h.0).copied()
    }

    pub fn class_of_set(&self, h: &ElementSet) -> Option<usize> {
        self.class_of.get(h).copied()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn name(&self, id: usize) -> &str {
        &self.classes[id].name
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates.len()).sum()
    }

    /// Maximal elements of a set of class ids under `≤`.
    pub fn maximal(&self, ids: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = ids
            .iter()
            .copied()
            .filter(|&a| !ids.iter().any(|&b| b != a && self.leq(a, b)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn records(&self) -> Vec<CcsRecord> {
        self.classes
            .iter()
            .map(|c| CcsRecord {
                id: c.id,
                name: c.name.clone(),
                order: c.order(),
                normalizer_order: c.normalizer.order(),
                weyl_order: c.weyl_order,
                conjugates: c.conjugates.len(),
                covers: self.covers[c.id].clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_dihedral, make_sign_group};

    #[test]
    fn small_counts() {
        let z2 = make_sign_group();
        assert_eq!(enumerate_subgroups(&z2).unwrap().len(), 2);
        assert_eq!(conjugacy_classes(&z2).unwrap().len(), 2);
        let d3 = make_dihedral(3).unwrap();
        assert_eq!(enumerate_subgroups(&d3).unwrap().len(), 6);
        let p = conjugacy_classes(&d3).unwrap();
        assert_eq!(p.len(), 4);
        let names: Vec<&str> = p.classes().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Z_1", "D_1", "Z_3", "D_3"]);
        let d1 = p.find("D_1").unwrap();
        assert_eq!(p.n_count(d1, p.top()), 1);
        assert_eq!(p.n_count(p.bottom(), d1), 3);
        assert!(!p.leq(d1, p.find("Z_3").unwrap()));
    }

    #[test]
    fn class_invariants_d4_z2() {
        let g = direct_product(&make_dihedral(4).unwrap(), &make_sign_group()).unwrap();
        let p = conjugacy_classes(&g).unwrap();
        for c in p.classes() {
            assert_eq!(c.conjugates.len() * c.normalizer.order(), g.order());
            assert_eq!(c.weyl_order * c.order(), c.normalizer.order());
        }
        assert_eq!(p.subgroup_count(), enumerate_subgroups(&g).unwrap().len());
        assert_eq!(p.class(p.top()).order(), g.order());
    }

    #[test]
    fn cap_is_enforced() {
        let g = make_dihedral(30).unwrap();
        assert!(enumerate_subgroups_capped(&g, 50).is_err());
    }
}
