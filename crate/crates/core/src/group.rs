//! Finite groups as fully materialized multiplication tables.
//!
//! Every group carries a [`Structure`] tag recording how it was built. The
//! tag drives deterministic element labels and the subgroup naming in
//! [`crate::naming`]; two groups are "the same" only if they were built the
//! same way.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the order of any constructed group.
pub const DEFAULT_MAX_ORDER: usize = 400;

/// Index of an element inside its parent group (`0 <= id < order`).
pub type ElementId = usize;

/// A set of elements of a fixed group, stored as a bitset over element ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { words: vec![0; universe.div_ceil(64)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = ElementId>) -> Self {
        let mut s = Self::empty(universe);
        for i in ids {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(&self, id: ElementId) -> bool {
        self.words[id / 64] >> (id % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, id: ElementId) -> bool {
        let fresh = !self.contains(id);
        self.words[id / 64] |= 1 << (id % 64);
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            universe: self.universe,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A permutation of `{0, .., degree-1}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// Builds a permutation from 1-based cycles, e.g. `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::InvalidParameter(format!(
                        "cycle entry {p} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::InvalidParameter(format!("point {p} repeated in cycles")));
                }
            }
            for (a, b) in cycle.iter().zip(cycle.iter().cycle().skip(1)) {
                images[a - 1] = b - 1;
            }
        }
        Ok(Permutation(images))
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.0[start];
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.0[p];
            }
            out.push('(');
            out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A homomorphism from a group into `S_k`, one image per element.
///
/// Acting on `R^k`, element `g` moves coordinate `i` to position `g(i)`, so
/// `ρ(gh) = ρ(g)ρ(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

impl PermutationAction {
    /// Dense `k × k` permutation matrix of an element.
    pub fn matrix(&self, g: ElementId) -> Vec<Vec<f64>> {
        let k = self.degree;
        let mut m = vec![vec![0.0; k]; k];
        for i in 0..k {
            m[self.images[g].apply(i)][i] = 1.0;
        }
        m
    }

    /// Checks `image(gh) = image(g) ∘ image(h)` for every pair.
    pub fn is_homomorphism(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| {
            (0..group.order())
                .all(|h| self.images[group.mul(g, h)] == self.images[g].compose(&self.images[h]))
        })
    }
}

/// Provenance of a group; determines labels and subgroup names.
#[derive(Clone, Debug)]
pub enum Structure {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    /// The group `{+1, -1}`.
    Sign,
    /// A subgroup of `S_k` given by generators.
    Permutation(PermutationAction),
    /// Direct product; element `(a, b)` has id `a * |right| + b`.
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: ElementId,
    labels: Vec<String>,
    structure: Structure,
}

impl FiniteGroup {
    fn from_table(table: Vec<u32>, labels: Vec<String>, structure: Structure) -> Self {
        let order = labels.len();
        debug_assert_eq!(table.len(), order * order);
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g))
            .expect("table has no identity");
        let inverse = (0..order)
            .map(|g| {
                (0..order).find(|&h| table[g * order + h] as usize == identity).expect("no inverse")
                    as u32
            })
            .collect();
        FiniteGroup { order, table, inverse, identity, labels, structure }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    /// `g a g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, a: ElementId) -> ElementId {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn label(&self, g: ElementId) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order
    }

    pub fn element_order(&self, g: ElementId) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Product factors, if this group was built by [`direct_product`].
    pub fn factors(&self) -> Option<(&FiniteGroup, &FiniteGroup)> {
        match &self.structure {
            Structure::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn split(&self, g: ElementId) -> Option<(ElementId, ElementId)> {
        self.factors().map(|(_, b)| (g / b.order(), g % b.order()))
    }

    pub fn pair(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.factors().map(|(_, fb)| a * fb.order() + b)
    }

    pub fn embed_left(&self, a: ElementId) -> Option<ElementId> {
        self.factors().map(|(_, fb)| a * fb.order() + fb.identity())
    }

    pub fn embed_right(&self, b: ElementId) -> Option<ElementId> {
        self.factors().map(|(fa, fb)| fa.identity() * fb.order() + b)
    }

    /// Permutation action, if this is a permutation group.
    pub fn permutation_action(&self) -> Option<&PermutationAction> {
        match &self.structure {
            Structure::Permutation(a) => Some(a),
            _ => None,
        }
    }

    /// Human-readable structural name, e.g. `D_3×D_3×Z_2`.
    pub fn structure_name(&self) -> String {
        match &self.structure {
            Structure::Trivial => "Z_1".into(),
            Structure::Cyclic(n) => format!("Z_{n}"),
            Structure::Dihedral(n) => format!("D_{n}"),
            Structure::Sign => "Z_2".into(),
            Structure::Permutation(_) => crate::naming::generic_group_name(self),
            Structure::Product(a, b) => format!("{}×{}", a.structure_name(), b.structure_name()),
        }
    }

    /// Exhaustive associativity, identity and inverse checks.
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        let e = self.identity;
        for a in 0..n {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                return false;
            }
            if self.mul(self.inv(a), a) != e || self.mul(a, self.inv(a)) != e {
                return false;
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Conjugacy classes of elements, each sorted, ordered by smallest member.
    pub fn element_classes(&self) -> Vec<Vec<ElementId>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<ElementId> = (0..self.order).map(|g| self.conjugate(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Vec<ElementId> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|g| self.mul(g, a) == self.mul(a, g)))
            .collect()
    }

    /// Sorted multiset of element orders, used as a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        p.sort_unstable();
        p
    }
}

pub fn make_trivial() -> FiniteGroup {
    FiniteGroup::from_table(vec![0], vec!["e".into()], Structure::Trivial)
}

pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(((a + b) % n) as u32);
        }
    }
    let labels = (0..n).map(|a| power_label("g", a)).collect();
    Ok(FiniteGroup::from_table(table, labels, Structure::Cyclic(n)))
}

fn power_label(base: &str, a: usize) -> String {
    match a {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{a}"),
    }
}

/// `D_n` of order `2n`; element `γ^a κ^b` has id `a + n b`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("dihedral group D_0".into()));
    }
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            // γ^a κ^b γ^c κ^d = γ^{a ± c} κ^{b+d}
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table.push((rot + n * ((b + d) % 2)) as u32);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            let s = format!("{}{}", power_label("γ", a), if b == 1 { "κ" } else { "" });
            if s.is_empty() {
                "e".into()
            } else {
                s
            }
        })
        .collect();
    Ok(FiniteGroup::from_table(table, labels, Structure::Dihedral(n)))
}

/// The sign group `{+1, -1}` (id 0 is `+1`).
pub fn make_sign_group() -> FiniteGroup {
    FiniteGroup::from_table(vec![0, 1, 1, 0], vec!["+1".into(), "-1".into()], Structure::Sign)
}

/// Closure of the generators under composition, in breadth-first order from
/// the identity.
pub fn make_permutation_group(
    degree: usize,
    generators: &[Permutation],
    max_order: usize,
) -> Result<(FiniteGroup, PermutationAction)> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidParameter(format!(
                "generator {} has degree {}, expected {degree}",
                g.cycle_string(),
                g.degree()
            )));
        }
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in generators {
            let p = elements[i].compose(s);
            if !index.contains_key(&p) {
                if elements.len() >= max_order {
                    return Err(Error::SizeLimit {
                        what: "permutation group closure",
                        limit: max_order,
                    });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.compose(b)] as u32);
        }
    }
    let labels = elements.iter().map(Permutation::cycle_string).collect();
    let action = PermutationAction { degree, images: elements };
    let group = FiniteGroup::from_table(table, labels, Structure::Permutation(action.clone()));
    Ok((group, action))
}

/// Attaches a permutation action to an existing group (e.g. the standard
/// action of a dihedral group on polygon vertices) after checking it is a
/// homomorphism.
pub fn with_action(group: &FiniteGroup, images: Vec<Permutation>) -> Result<PermutationAction> {
    if images.len() != group.order() {
        return Err(Error::InvalidParameter("one image per element required".into()));
    }
    let degree = images.first().map_or(0, Permutation::degree);
    let action = PermutationAction { degree, images };
    if !action.is_homomorphism(group) {
        return Err(Error::InvalidParameter("images do not define a homomorphism".into()));
    }
    Ok(action)
}

/// Standard action of `D_n` on the vertices `1..n` of a regular polygon:
/// `γ` is the cycle `(1 2 .. n)` and `κ` the reflection fixing vertex 1.
pub fn dihedral_vertex_action(dn: &FiniteGroup) -> Result<PermutationAction> {
    let Structure::Dihedral(n) = *dn.structure() else {
        return Err(Error::InvalidParameter("vertex action needs a dihedral group".into()));
    };
    let images = (0..2 * n)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            Permutation(
                (0..n).map(|i| if b == 0 { (i + a) % n } else { (a + n - i) % n }).collect(),
            )
        })
        .collect();
    with_action(dn, images)
}

pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(left, right, DEFAULT_MAX_ORDER)
}

pub fn direct_product_capped(
    left: &FiniteGroup,
    right: &FiniteGroup,
    max_order: usize,
) -> Result<FiniteGroup> {
    let (na, nb) = (left.order(), right.order());
    let order = na * nb;
    if order > max_order {
        return Err(Error::SizeLimit { what: "direct product", limit: max_order });
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a1, b1) = (x / nb, x % nb);
        for y in 0..order {
            let (a2, b2) = (y / nb, y % nb);
            table.push((left.mul(a1, a2) * nb + right.mul(b1, b2)) as u32);
        }
    }
    let mut labels = Vec::with_capacity(order);
    for a in 0..na {
        for b in 0..nb {
            let mut parts = label_parts(left, a);
            parts.extend(label_parts(right, b));
            labels.push(format!("({})", parts.join(", ")));
        }
    }
    Ok(FiniteGroup::from_table(
        table,
        labels,
        Structure::Product(Box::new(left.clone()), Box::new(right.clone())),
    ))
}

fn label_parts(g: &FiniteGroup, x: ElementId) -> Vec<String> {
    match g.split(x) {
        Some((a, b)) => {
            let (fa, fb) = g.factors().unwrap();
            let mut p = label_parts(fa, a);
            p.extend(label_parts(fb, b));
            p
        }
        None => vec![g.label(x).to_string()],
    }
}
