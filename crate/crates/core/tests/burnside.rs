use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use symdeg::burnside::{BurnsideElement, BurnsideRing};
use symdeg::group::{direct_product, make_dihedral, make_sign_group};
use symdeg::lattice::conjugacy_classes;

fn ring(n: usize, with_sign: bool) -> BurnsideRing {
    let d = make_dihedral(n).unwrap();
    let g = if with_sign { direct_product(&d, &make_sign_group()).unwrap() } else { d };
    BurnsideRing::new(Arc::new(conjugacy_classes(&g).unwrap()))
}

fn element(len: usize) -> impl Strategy<Value = BurnsideElement> {
    prop::collection::vec((0..len, -3i64..=3), 0..6).prop_map(BurnsideElement::from_terms)
}

#[test]
fn generator_products_match_orbit_counts() {
    for r in [ring(3, true), ring(4, false), ring(4, true)] {
        let n = r.poset().len();
        for h in 0..n {
            for k in 0..n {
                assert_eq!(r.generator_product(h, k).unwrap(), r.multiply_oracle(h, k));
            }
        }
    }
}

#[test]
fn unit_and_zero() {
    let r = ring(3, true);
    let x = BurnsideElement::from_terms([(0, 2), (3, -1)]);
    assert_eq!(r.multiply(&r.unit(), &x).unwrap(), x);
    assert!(r.multiply(&BurnsideElement::zero(), &x).unwrap().is_zero());
}

#[test]
fn marks_of_generators_are_fixed_point_counts() {
    let r = ring(3, true);
    let p = r.poset();
    for h in 0..p.len() {
        let marks = r.marks(&BurnsideElement::generator(h));
        for (k, mark) in marks.iter().enumerate() {
            let expected = if p.leq(k, h) { p.n_count(k, h) * p.class(h).weyl_order } else { 0 };
            assert_eq!(mark, &BigInt::from(expected), "({}) on ({})", p.name(h), p.name(k));
        }
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in element(10), b in element(10), c in element(10)) {
        let r = ring(3, true);
        let ab = r.multiply(&a, &b).unwrap();
        prop_assert_eq!(&ab, &r.multiply(&b, &a).unwrap());
        prop_assert_eq!(
            r.multiply(&ab, &c).unwrap(),
            r.multiply(&a, &r.multiply(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            r.multiply(&a, &(&b + &c)).unwrap(),
            &ab + &r.multiply(&a, &c).unwrap()
        );
        prop_assert_eq!(r.multiply(&a, &r.unit()).unwrap(), a.clone());
    }

    #[test]
    fn marks_are_multiplicative(a in element(20), b in element(20)) {
        let r = ring(4, true);
        let ab = r.multiply(&a, &b).unwrap();
        let (ma, mb, mab) = (r.marks(&a), r.marks(&b), r.marks(&ab));
        for k in 0..mab.len() {
            prop_assert_eq!(&mab[k], &(&ma[k] * &mb[k]));
        }
    }

    #[test]
    fn powers_agree_with_repeated_products(a in element(10), n in 0u64..5) {
        let r = ring(3, true);
        let mut acc = r.unit();
        for _ in 0..n {
            acc = r.multiply(&acc, &a).unwrap();
        }
        prop_assert_eq!(r.power(&a, n).unwrap(), acc);
    }
}
