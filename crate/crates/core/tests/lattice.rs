use std::collections::BTreeSet;

use symdeg::group::{
    direct_product, make_cyclic, make_dihedral, make_sign_group, ElementSet, FiniteGroup,
};
use symdeg::lattice::{conjugacy_classes, enumerate_subgroups, Subgroup};

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    Subgroup::generated(g, gens).members().to_vec()
}

fn is_subgroup(g: &FiniteGroup, set: &[usize]) -> bool {
    set.contains(&g.identity())
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
}

/// Every subset containing the identity, tested for closure.
fn subsets_oracle(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set = vec![g.identity()];
        set.extend(others.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x));
        set.sort_unstable();
        if n.is_multiple_of(set.len()) && is_subgroup(g, &set) {
            out.insert(set);
        }
    }
    out
}

/// Subgroups generated by at most three elements.
fn generators_oracle(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                out.insert(closure(g, &[a, b, c]));
            }
        }
    }
    out
}

fn computed(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    enumerate_subgroups(g).unwrap().iter().map(|h| h.members().to_vec()).collect()
}

fn small_groups() -> Vec<FiniteGroup> {
    let z2 = make_sign_group();
    let mut out =
        vec![make_cyclic(6).unwrap(), make_dihedral(4).unwrap(), make_dihedral(6).unwrap()];
    for n in [2, 3, 4, 5, 6] {
        out.push(direct_product(&make_dihedral(n).unwrap(), &z2).unwrap());
    }
    out.push(direct_product(&make_dihedral(2).unwrap(), &make_dihedral(3).unwrap()).unwrap());
    out
}

#[test]
fn subgroups_match_subset_oracle() {
    for g in small_groups().iter().filter(|g| g.order() <= 12) {
        assert_eq!(computed(g), subsets_oracle(g), "{}", g.structure_name());
    }
}

#[test]
fn subgroups_match_generator_oracle() {
    for g in small_groups() {
        assert_eq!(computed(&g), generators_oracle(&g), "{}", g.structure_name());
    }
}

#[test]
fn class_data_is_consistent() {
    for g in small_groups() {
        let p = conjugacy_classes(&g).unwrap();
        assert_eq!(p.class(p.bottom()).order(), 1);
        assert_eq!(p.class(p.top()).order(), g.order());
        let total: usize = p.classes().iter().map(|c| c.conjugates.len()).sum();
        assert_eq!(total, computed(&g).len());
        let mut names = BTreeSet::new();
        for c in p.classes() {
            assert_eq!(c.normalizer.order() * c.conjugates.len(), g.order());
            assert_eq!(c.weyl_order * c.order(), c.normalizer.order());
            assert!(names.insert(c.name.clone()), "duplicate name {}", c.name);
            assert_eq!(p.n_count(c.id, c.id), 1);
            assert!(p.leq(p.bottom(), c.id) && p.leq(c.id, p.top()));
        }
    }
}

#[test]
fn containment_counts_match_direct_count() {
    let g = direct_product(&make_dihedral(4).unwrap(), &make_sign_group()).unwrap();
    let p = conjugacy_classes(&g).unwrap();
    for l in p.classes() {
        for h in p.classes() {
            let rep: &ElementSet = l.representative.members();
            let direct = h.conjugates.iter().filter(|k| rep.is_subset(k.members())).count();
            assert_eq!(p.n_count(l.id, h.id), direct, "{} in {}", l.name, h.name);
            assert_eq!(p.leq(l.id, h.id), direct > 0);
        }
    }
}

#[test]
fn lattice_size_of_d3_d3_z2() {
    let d3 = make_dihedral(3).unwrap();
    let z2 = make_sign_group();
    let g = direct_product(&d3, &direct_product(&d3, &z2).unwrap()).unwrap();
    assert_eq!(conjugacy_classes(&g).unwrap().len(), 69);
}
