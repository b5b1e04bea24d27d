//! Hecke algebra of the affine Weyl group and its antispherical module.
//!
//! Elements are sparse sums indexed by alcoves (`w <-> w a_1`). The
//! antispherical module uses the dominant alcoves as basis.

use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::affine_weyl::{AffineWeyl, Alcove};
use crate::laurent::Laurent;

pub type Element = BTreeMap<Alcove, Laurent>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    H,
    N,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::H => "H",
            Basis::N => "N",
        }
    }
}

pub fn add_scaled(x: &mut Element, key: &Alcove, p: &Laurent) {
    if p.is_zero() {
        return;
    }
    let e = x.entry(key.clone()).or_default();
    *e += p;
    if e.is_zero() {
        x.remove(key);
    }
}

pub fn sub_mul(x: &mut Element, q: &Laurent, y: &Element) {
    for (k, p) in y {
        add_scaled(x, k, &-&(q * p));
    }
}

pub fn bar(x: &Element) -> Element {
    x.iter().map(|(k, p)| (k.clone(), p.bar())).collect()
}

/// Canonical-basis engine for one root system, with memo tables that can be
/// read concurrently.
pub struct Hecke {
    pub aw: AffineWeyl,
    n_memo: RwLock<HashMap<Alcove, Arc<Element>>>,
    h_memo: RwLock<HashMap<Alcove, Arc<Element>>>,
    pub(crate) p_memo: RwLock<HashMap<Alcove, Arc<Element>>>,
}

impl Hecke {
    pub fn new(aw: AffineWeyl) -> Self {
        Hecke {
            aw,
            n_memo: RwLock::new(HashMap::new()),
            h_memo: RwLock::new(HashMap::new()),
            p_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn parse(s: &str) -> crate::error::Result<Self> {
        Ok(Self::new(AffineWeyl::parse(s)?))
    }

    pub fn context(&self) -> String {
        self.aw.rs.name()
    }

    /// Right action of `C_s = H_s + v` on the Hecke algebra.
    pub fn hecke_mul_cs(&self, x: &Element, s: usize) -> Element {
        let mut out = Element::new();
        for (w, p) in x {
            let ws = self.aw.right_gen(w, s);
            add_scaled(&mut out, &ws, p);
            let up = self.aw.length(&ws) > self.aw.length(w);
            add_scaled(&mut out, w, &p.shift(if up { 1 } else { -1 }));
        }
        out
    }

    /// Right action of `C_s` on the antispherical module; `N_w C_s = 0` when
    /// `ws` is not dominant.
    pub fn asph_act_cs(&self, x: &Element, s: usize) -> Element {
        let mut out = Element::new();
        for (w, p) in x {
            let ws = self.aw.right_gen(w, s);
            if !self.aw.is_dominant(&ws) {
                continue;
            }
            add_scaled(&mut out, &ws, p);
            let up = self.aw.length(&ws) > self.aw.length(w);
            add_scaled(&mut out, w, &p.shift(if up { 1 } else { -1 }));
        }
        out
    }

    fn memo(&self, basis: Basis) -> &RwLock<HashMap<Alcove, Arc<Element>>> {
        match basis {
            Basis::H => &self.h_memo,
            Basis::N => &self.n_memo,
        }
    }

    pub fn canonical(&self, basis: Basis, y: &Alcove) -> Arc<Element> {
        if let Some(e) = self.memo(basis).read().get(y) {
            return e.clone();
        }
        let a1 = self.aw.fundamental();
        let result = if *y == a1 {
            Element::from([(a1, Laurent::one())])
        } else {
            let s = self.lowest_right_descent(y);
            let ys = self.aw.right_gen(y, s);
            let prev = self.canonical(basis, &ys);
            let mut x = match basis {
                Basis::H => self.hecke_mul_cs(&prev, s),
                Basis::N => self.asph_act_cs(&prev, s),
            };
            self.reduce(basis, y, &mut x);
            x
        };
        let arc = Arc::new(result);
        self.memo(basis).write().entry(y.clone()).or_insert(arc).clone()
    }

    fn lowest_right_descent(&self, y: &Alcove) -> usize {
        let l = self.aw.length(y);
        (0..self.aw.num_gens())
            .find(|&s| self.aw.length(&self.aw.right_gen(y, s)) < l)
            .expect("non-identity element has a right descent")
    }

    /// Subtract canonical elements until every coefficient below `y` lies in `vZ[v]`.
    fn reduce(&self, basis: Basis, y: &Alcove, x: &mut Element) {
        let mut heap: BinaryHeap<(i64, Alcove)> = x
            .keys()
            .filter(|k| *k != y)
            .map(|k| (self.aw.length(k), k.clone()))
            .collect();
        let mut done: HashSet<Alcove> = HashSet::new();
        while let Some((_, z)) = heap.pop() {
            if !done.insert(z.clone()) {
                continue;
            }
            let Some(c) = x.get(&z) else { continue };
            if c.in_v_zv() {
                continue;
            }
            let q = c.bar_invariant_part();
            let nz = self.canonical(basis, &z);
            sub_mul(x, &q, &nz);
            for k in nz.keys() {
                if k != &z && x.contains_key(k) {
                    heap.push((self.aw.length(k), k.clone()));
                }
            }
        }
    }

    pub fn canonical_n(&self, y: &Alcove) -> Arc<Element> {
        self.canonical(Basis::N, y)
    }

    pub fn canonical_h(&self, y: &Alcove) -> Arc<Element> {
        self.canonical(Basis::H, y)
    }

    /// `n_{x,y}`, zero when either argument is not dominant.
    pub fn n_poly(&self, x: &Alcove, y: &Alcove) -> Laurent {
        if !self.aw.is_dominant(x) || !self.aw.is_dominant(y) {
            return Laurent::zero();
        }
        self.canonical_n(y).get(x).cloned().unwrap_or_default()
    }

    pub fn n_at_one(&self, x: &Alcove, y: &Alcove) -> i64 {
        self.n_poly(x, y).eval_one()
    }

    pub fn h_poly(&self, x: &Alcove, y: &Alcove) -> Laurent {
        self.canonical_h(y).get(x).cloned().unwrap_or_default()
    }

    /// Checks `sum_z (-1)^{l(z)} h_{vz,u}(1) = n_{v^{-1},u^{-1}}(1)`.
    pub fn h_vs_n(&self, u: &Alcove, v: &Alcove) -> (i64, i64) {
        let hu = self.canonical_h(u);
        let mut lhs = 0;
        for z in self.aw.finite_group() {
            let vz = self.aw.mul_alcoves(v, z);
            let sign = if self.aw.length(z) % 2 == 0 { 1 } else { -1 };
            lhs += sign * hu.get(&vz).map_or(0, Laurent::eval_one);
        }
        let rhs = self.n_at_one(&self.aw.inverse_alcove(v), &self.aw.inverse_alcove(u));
        (lhs, rhs)
    }

    /// Bar involution of a module element, through `bar(N_x) = bar(N_{xs})(C_s - v^{-1})`.
    pub fn bar_element(&self, basis: Basis, x: &Element) -> Element {
        let mut memo: HashMap<Alcove, Element> = HashMap::new();
        let mut out = Element::new();
        for (k, p) in x {
            let b = self.bar_standard(basis, k, &mut memo);
            sub_mul(&mut out, &-&p.bar(), &b);
        }
        out
    }

    fn bar_standard(&self, basis: Basis, x: &Alcove, memo: &mut HashMap<Alcove, Element>) -> Element {
        if let Some(e) = memo.get(x) {
            return e.clone();
        }
        let r = if *x == self.aw.fundamental() {
            Element::from([(x.clone(), Laurent::one())])
        } else {
            let s = self.lowest_right_descent(x);
            let prev = self.bar_standard(basis, &self.aw.right_gen(x, s), memo);
            let mut r = match basis {
                Basis::H => self.hecke_mul_cs(&prev, s),
                Basis::N => self.asph_act_cs(&prev, s),
            };
            sub_mul(&mut r, &Laurent::monomial(-1, 1), &prev);
            r
        };
        memo.insert(x.clone(), r.clone());
        r
    }

    /// Snapshot of a memo table, sorted by key.
    pub fn memo_snapshot(&self, basis: Basis) -> Vec<(Alcove, Arc<Element>)> {
        let mut v: Vec<_> = self
            .memo(basis)
            .read()
            .iter()
            .map(|(k, e)| (k.clone(), e.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Inserts precomputed canonical elements; all entries are applied together.
    pub fn memo_insert_all(&self, basis: Basis, entries: Vec<(Alcove, Element)>) {
        let mut m = self.memo(basis).write();
        for (k, e) in entries {
            m.entry(k).or_insert_with(|| Arc::new(e));
        }
    }

    pub fn memo_len(&self, basis: Basis) -> usize {
        self.memo(basis).read().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64) -> Alcove {
        Alcove(vec![n])
    }

    #[test]
    fn a1_action() {
        let h = Hecke::parse("A1").unwrap();
        let ne = Element::from([(a(1), Laurent::one())]);
        assert!(h.asph_act_cs(&ne, 0).is_empty());
        let r = h.asph_act_cs(&ne, 1);
        assert_eq!(r, Element::from([(a(2), Laurent::one()), (a(1), Laurent::v())]));
    }

    #[test]
    fn a1_canonical_two_terms() {
        let h = Hecke::parse("A1").unwrap();
        for k in 1..6 {
            assert_eq!(h.n_poly(&a(k), &a(k + 1)), Laurent::v());
            assert_eq!(h.canonical_n(&a(k + 1)).len(), 2);
        }
        assert!(h.n_poly(&a(1), &a(3)).is_zero());
    }

    #[test]
    fn simple_reflection_h() {
        let h = Hecke::parse("A2").unwrap();
        for s in 0..3 {
            let sa = h.aw.generator_alcove(s).clone();
            assert_eq!(h.h_poly(&h.aw.fundamental(), &sa), Laurent::v());
        }
    }

    #[test]
    fn bar_invariance() {
        for t in ["A1", "A2", "C2"] {
            let h = Hecke::parse(t).unwrap();
            for y in h.aw.dominant_within(6) {
                let n = h.canonical_n(&y);
                assert_eq!(h.bar_element(Basis::N, &n), *n, "{t} N {y:?}");
            }
            for y in h.aw.alcoves_within(4) {
                let e = h.canonical_h(&y);
                assert_eq!(h.bar_element(Basis::H, &e), *e, "{t} H {y:?}");
            }
        }
    }

    #[test]
    fn degree_bounds() {
        let h = Hecke::parse("G2").unwrap();
        for y in h.aw.dominant_within(8) {
            for (x, p) in h.canonical_n(&y).iter() {
                if *x == y {
                    assert_eq!(*p, Laurent::one());
                } else {
                    assert!(p.in_v_zv());
                }
            }
        }
    }

    #[test]
    fn quadratic_relation() {
        let h = Hecke::parse("C2").unwrap();
        for y in h.aw.dominant_within(5) {
            let x = Element::from([(y.clone(), Laurent::one())]);
            for s in 0..h.aw.num_gens() {
                let once = h.asph_act_cs(&x, s);
                let twice = h.asph_act_cs(&once, s);
                let mut expect = Element::new();
                for (k, p) in &once {
                    add_scaled(&mut expect, k, &p.shift(1));
                    add_scaled(&mut expect, k, &p.shift(-1));
                }
                assert_eq!(twice, expect);
            }
        }
    }
}
