//! Exact arithmetic in the Burnside ring `A(G) = Z[Φ(G)]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::ElementSet;
use crate::lattice::SubgroupPoset;

/// Sparse integer combination of conjugacy classes, keyed by class id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    coeffs: BTreeMap<usize, BigInt>,
}

impl BurnsideElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(id: usize) -> Self {
        Self::term(id, 1)
    }

    pub fn term(id: usize, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero();
        e.add_term(id, c.into());
        e
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut e = Self::zero();
        for (id, c) in terms {
            e.add_term(id, c.into());
        }
        e
    }

    pub fn add_term(&mut self, id: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(id).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&id);
        }
    }

    pub fn coefficient(&self, id: usize) -> BigInt {
        self.coeffs.get(&id).cloned().unwrap_or_default()
    }

    /// Coefficient as `i64`; panics only if it does not fit.
    pub fn coefficient_i64(&self, id: usize) -> i64 {
        self.coefficient(id).to_i64().expect("coefficient exceeds i64")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in canonical (id) order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BurnsideElement { coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Signed-sum rendering `(G) - 2(H) + (K)` using class names.
    pub fn render(&self, poset: &SubgroupPoset) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (id, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                _ => {
                    out.push(' ');
                    out.push_str(sign);
                    out.push(' ');
                }
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push('(');
            out.push_str(poset.name(id));
            out.push(')');
        }
        out
    }
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        let mut out = self.clone();
        for (k, v) in rhs.terms() {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        let mut out = self.clone();
        for (k, v) in rhs.terms() {
            out.add_term(k, -v.clone());
        }
        out
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        BurnsideElement { coeffs: self.coeffs.iter().map(|(&k, v)| (k, -v)).collect() }
    }
}

impl Add for BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: BurnsideElement) -> BurnsideElement {
        &self + &rhs
    }
}

impl Sub for BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: BurnsideElement) -> BurnsideElement {
        &self - &rhs
    }
}

impl Neg for BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        -&self
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(k, v)| format!("{v}·[{k}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type GeneratorProduct = Arc<Vec<(usize, i64)>>;

/// `A(G)` over a fixed lattice, with memoized generator products.
#[derive(Debug)]
pub struct BurnsideRing {
    poset: Arc<SubgroupPoset>,
    memo: RwLock<HashMap<(usize, usize), GeneratorProduct>>,
}

impl BurnsideRing {
    pub fn new(poset: Arc<SubgroupPoset>) -> Self {
        BurnsideRing { poset, memo: RwLock::new(HashMap::new()) }
    }

    pub fn poset(&self) -> &SubgroupPoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> Arc<SubgroupPoset> {
        Arc::clone(&self.poset)
    }

    /// The unit `(G)`.
    pub fn unit(&self) -> BurnsideElement {
        BurnsideElement::generator(self.poset.top())
    }

    /// Product of two generators via the mark recurrence, evaluated from the
    /// top of the poset down.
    pub fn generator_product(&self, h: usize, k: usize) -> Result<BurnsideElement> {
        let terms = self.generator_terms(h, k)?;
        Ok(BurnsideElement::from_terms(terms.iter().copied()))
    }

    fn generator_terms(&self, h: usize, k: usize) -> Result<GeneratorProduct> {
        let key = (h.min(k), h.max(k));
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&key) {
            return Ok(Arc::clone(v));
        }
        let value = Arc::new(self.recurrence(key.0, key.1)?);
        let mut memo = self.memo.write().expect("memo poisoned");
        Ok(Arc::clone(memo.entry(key).or_insert(value)))
    }

    fn recurrence(&self, h: usize, k: usize) -> Result<Vec<(usize, i64)>> {
        let p = &self.poset;
        let w = |id: usize| p.class(id).weyl_order as i64;
        let mark = |l: usize, x: usize| p.n_count(l, x) as i64 * w(x);
        let mut found: Vec<(usize, i64)> = Vec::new();
        for l in (0..p.len()).rev() {
            if !(p.leq(l, h) && p.leq(l, k)) {
                continue;
            }
            let mut num = mark(l, h) * mark(l, k);
            for &(lt, m) in &found {
                num -= m * mark(l, lt);
            }
            let wl = w(l);
            if num % wl != 0 {
                return Err(Error::Consistency(format!(
                    "non-exact division {num}/{wl} in product ({})·({})",
                    p.name(h),
                    p.name(k)
                )));
            }
            if num != 0 {
                found.push((l, num / wl));
            }
        }
        found.sort_unstable();
        Ok(found)
    }

    pub fn multiply(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (h, ca) in a.terms() {
            for (k, cb) in b.terms() {
                let c = ca * cb;
                for &(l, m) in self.generator_terms(h, k)?.iter() {
                    *acc.entry(l).or_default() += &c * m;
                }
            }
        }
        Ok(BurnsideElement::from_terms(acc))
    }

    pub fn power(&self, a: &BurnsideElement, n: u64) -> Result<BurnsideElement> {
        let mut result = self.unit();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = self.multiply(&result, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a BurnsideElement>,
    ) -> Result<BurnsideElement> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// Marks `φ_L(a) = |X^L|` of an element, one per class.
    pub fn marks(&self, a: &BurnsideElement) -> Vec<BigInt> {
        let p = &self.poset;
        (0..p.len())
            .map(|l| {
                a.terms()
                    .map(|(h, c)| c * BigInt::from(p.n_count(l, h) * p.class(h).weyl_order))
                    .sum()
            })
            .collect()
    }

    /// Generator product by explicit orbit counting on `G/H × G/K`.
    pub fn multiply_oracle(&self, h: usize, k: usize) -> BurnsideElement {
        let p = &self.poset;
        let g = p.group();
        let (ch, map_h) = cosets(p, h);
        let (ck, map_k) = cosets(p, k);
        let (nh, nk) = (ch.len(), ck.len());
        let mut visited = vec![false; nh * nk];
        let mut out = BurnsideElement::zero();
        for start in 0..nh * nk {
            if visited[start] {
                continue;
            }
            let (i, j) = (start / nk, start % nk);
            let mut stab = ElementSet::empty(g.order());
            for x in g.elements() {
                let pi = map_h[g.mul(x, ch[i])];
                let pj = map_k[g.mul(x, ck[j])];
                visited[pi * nk + pj] = true;
                if pi == i && pj == j {
                    stab.insert(x);
                }
            }
            let class = p.class_of_set(&stab).expect("stabilizer is a subgroup");
            out.add_term(class, BigInt::one());
        }
        out
    }
}

/// Coset representatives of the class representative of `id`, and the map
/// from elements to the index of their left coset.
fn cosets(p: &SubgroupPoset, id: usize) -> (Vec<usize>, Vec<usize>) {
    let g = p.group();
    let h = p.class(id).representative.members();
    let mut index = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if index[x] != usize::MAX {
            continue;
        }
        for y in h.iter() {
            index[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    (reps, index)
}
