//! Canonical subgroup names.
//!
//! Names depend only on the conjugacy class and on the provenance of the
//! ambient group:
//!
//! * `D_n`: `Z_k` for rotation subgroups; `D_k` for dihedral subgroups whose
//!   reflections include `γ^c κ` with `c` even, `D̃_k` when `n/k` is even and the
//!   reflections have odd `c`.
//! * `X × Z_2` (sign group on the right), with `K` the projection to `X` and
//!   `K0 = {x : (x, +1) ∈ H}`:
//!   - `K` when no element carries `-1`;
//!   - `K^p` when `H = K × Z_2`;
//!   - otherwise `H` is the graph of an epimorphism `K → Z_2` with kernel `K0`,
//!     named `Z_k^d` (cyclic `K`), `K^z` (dihedral `K`, cyclic `K0`), `K^d`
//!     (dihedral `K0` of the same tilde type as `K`) or `K^d̂` (tilde types
//!     differ). For non-dihedral `X` the generic form `K^{K0}` is used.
//! * `A × B` in general: Goursat data `(P_A, A_0, P_B, B_0)`. A product
//!   subgroup is `P_A×P_B`; otherwise `P_A^{A_0}×_{Q}^{B_0}P_B` where `Q` is
//!   the common quotient and trivial kernels are omitted.
//! * anything else: `Z_k`, `D_k` or `K_n` by isomorphism profile.

use crate::group::{ElementSet, FiniteGroup, Structure};

pub const TILDE_D: &str = "D\u{303}";
const HAT_D: &str = "d\u{302}";

/// Name of `h` as a subgroup of `g`; the whole group gets its structural name.
pub fn canonical_name(g: &FiniteGroup, h: &ElementSet) -> String {
    if h.len() == g.order() && matches!(g.structure(), Structure::Product(..)) {
        return g.structure_name();
    }
    name_in(g, h)
}

fn name_in(g: &FiniteGroup, h: &ElementSet) -> String {
    match g.structure() {
        Structure::Trivial => "Z_1".into(),
        Structure::Cyclic(_) => format!("Z_{}", h.len()),
        Structure::Sign => format!("Z_{}", h.len()),
        Structure::Dihedral(n) => dihedral_name(*n, h),
        Structure::Permutation(_) => generic_name(g, h),
        Structure::Product(a, b) => {
            if matches!(b.structure(), Structure::Sign) {
                sign_twist_name(g, a, h)
            } else {
                goursat_name(g, a, b, h)
            }
        }
    }
}

/// True for a dihedral subgroup of `D_n` in the tilde class.
pub fn dihedral_is_tilde(n: usize, h: &ElementSet) -> bool {
    let rotations = h.iter().filter(|&x| x < n).count();
    let Some(c) = h.iter().filter(|&x| x >= n).map(|x| x - n).min() else {
        return false;
    };
    let index = n / rotations;
    index.is_multiple_of(2) && c % 2 == 1
}

fn dihedral_name(n: usize, h: &ElementSet) -> String {
    let k = h.iter().filter(|&x| x < n).count();
    if h.len() == k {
        format!("Z_{k}")
    } else if dihedral_is_tilde(n, h) {
        format!("{TILDE_D}_{k}")
    } else {
        format!("D_{k}")
    }
}

fn sign_twist_name(g: &FiniteGroup, x: &FiniteGroup, h: &ElementSet) -> String {
    let nb = 2;
    let mut k = ElementSet::empty(x.order());
    let mut k0 = ElementSet::empty(x.order());
    for e in h.iter() {
        k.insert(e / nb);
        if e % nb == 0 {
            k0.insert(e / nb);
        }
    }
    let minus_identity = g.pair(x.identity(), 1).unwrap();
    let base = name_in(x, &k);
    if h.contains(minus_identity) {
        return format!("{base}^p");
    }
    if k0.len() == k.len() {
        return base;
    }
    match x.structure() {
        Structure::Dihedral(n) => {
            let n = *n;
            let k_dihedral = k.iter().any(|e| e >= n);
            let k0_dihedral = k0.iter().any(|e| e >= n);
            if !k_dihedral {
                format!("{base}^d")
            } else if !k0_dihedral {
                format!("{base}^z")
            } else if dihedral_is_tilde(n, &k0) == dihedral_is_tilde(n, &k) {
                format!("{base}^d")
            } else {
                format!("{base}^{HAT_D}")
            }
        }
        _ => format!("{base}^{{{}}}", name_in(x, &k0)),
    }
}

fn goursat_name(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup, h: &ElementSet) -> String {
    let mut pa = ElementSet::empty(a.order());
    let mut pb = ElementSet::empty(b.order());
    let mut a0 = ElementSet::empty(a.order());
    let mut b0 = ElementSet::empty(b.order());
    for e in h.iter() {
        let (x, y) = g.split(e).unwrap();
        pa.insert(x);
        pb.insert(y);
        if y == b.identity() {
            a0.insert(x);
        }
        if x == a.identity() {
            b0.insert(y);
        }
    }
    let (na, nb) = (name_in(a, &pa), name_in(b, &pb));
    if a0.len() == pa.len() {
        return format!("{na}×{nb}");
    }
    let sup = |grp: &FiniteGroup, k: &ElementSet| {
        if k.len() == 1 {
            String::new()
        } else {
            format!("^{{{}}}", name_in(grp, k))
        }
    };
    format!("{na}{}×_{{{}}}{}{nb}", sup(a, &a0), quotient_name(a, &pa, &a0), sup(b, &b0))
}

/// Isomorphism-profile name of `p / k` for a normal subgroup `k ⊴ p`.
fn quotient_name(g: &FiniteGroup, p: &ElementSet, k: &ElementSet) -> String {
    let q = p.len() / k.len();
    let coset_order = |x: usize| {
        let mut y = x;
        let mut t = 1;
        while !k.contains(y) {
            y = g.mul(y, x);
            t += 1;
        }
        t
    };
    let orders: Vec<usize> = p.iter().map(coset_order).collect();
    // Each coset contributes |k| identical entries.
    let max = orders.iter().copied().max().unwrap_or(1);
    if max == q {
        return format!("Z_{q}");
    }
    if q.is_multiple_of(2) {
        let half = q / 2;
        let involutions = orders.iter().filter(|&&o| o == 2).count() / k.len();
        // D_half has half + (1 if half even) involutions and an element of order half.
        let expected = half + usize::from(half.is_multiple_of(2));
        if max == half && involutions == expected {
            return format!("D_{half}");
        }
    }
    format!("K_{q}")
}

pub(crate) fn generic_group_name(g: &FiniteGroup) -> String {
    generic_name(g, &ElementSet::full(g.order()))
}

fn generic_name(g: &FiniteGroup, h: &ElementSet) -> String {
    let n = h.len();
    let orders: Vec<(usize, usize)> = h.iter().map(|x| (x, g.element_order(x))).collect();
    if orders.iter().any(|&(_, o)| o == n) {
        return format!("Z_{n}");
    }
    if n.is_multiple_of(2) {
        let k = n / 2;
        for &(x, o) in &orders {
            if o != k {
                continue;
            }
            let mut cyc = ElementSet::empty(g.order());
            let mut y = x;
            for _ in 0..k {
                cyc.insert(y);
                y = g.mul(y, x);
            }
            if orders.iter().all(|&(z, oz)| cyc.contains(z) || oz == 2) {
                return format!("D_{k}");
            }
        }
    }
    format!("K_{n}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_dihedral, make_sign_group};

    #[test]
    fn dihedral_subgroup_names() {
        let n = 4;
        let rot2 = ElementSet::from_ids(8, [0, 2]);
        assert_eq!(dihedral_name(n, &rot2), "Z_2");
        let d2 = ElementSet::from_ids(8, [0, 2, 4, 6]);
        assert_eq!(dihedral_name(n, &d2), "D_2");
        let d2t = ElementSet::from_ids(8, [0, 2, 5, 7]);
        assert_eq!(dihedral_name(n, &d2t), format!("{TILDE_D}_2"));
        let d1t = ElementSet::from_ids(8, [0, 5]);
        assert_eq!(dihedral_name(n, &d1t), format!("{TILDE_D}_1"));
        // Odd index never produces a tilde class.
        let d1 = ElementSet::from_ids(6, [0, 4]);
        assert_eq!(dihedral_name(3, &d1), "D_1");
    }

    #[test]
    fn twisted_names_in_dm_times_z2() {
        let d4 = make_dihedral(4).unwrap();
        let g = direct_product(&d4, &make_sign_group()).unwrap();
        let el = |a: usize, b: usize, s: usize| g.pair(a + 4 * b, s).unwrap();
        // D_4^d: kernel D_2 with κ, γ carries -1.
        let h: Vec<usize> = (0..8)
            .map(|x| {
                let a = x % 4;
                el(a, x / 4, a % 2)
            })
            .collect();
        assert_eq!(canonical_name(&g, &ElementSet::from_ids(16, h)), "D_4^d");
        // D_4^d̂: kernel D̃_2.
        let h: Vec<usize> = (0..8)
            .map(|x| {
                let (a, b) = (x % 4, x / 4);
                el(a, b, (a + b) % 2)
            })
            .collect();
        assert_eq!(canonical_name(&g, &ElementSet::from_ids(16, h)), "D_4^d\u{302}");
        // D_4^z: reflections carry -1.
        let h: Vec<usize> = (0..8).map(|x| el(x % 4, x / 4, x / 4)).collect();
        assert_eq!(canonical_name(&g, &ElementSet::from_ids(16, h)), "D_4^z");
        assert_eq!(canonical_name(&g, &ElementSet::full(16)), "D_4×Z_2");
        let zp = ElementSet::from_ids(16, [el(0, 0, 0), el(0, 0, 1)]);
        assert_eq!(canonical_name(&g, &zp), "Z_1^p");
    }
}
