//! The periodic module: all alcoves as basis, the `E_lambda` elements, the
//! maps `res` and `alt`, and periodic polynomials obtained by stabilizing
//! antispherical ones under deep dominant translation.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::affine_weyl::{Alcove, Leq};
use crate::error::{Error, Result};
use crate::hecke::{add_scaled, Element, Hecke};
use crate::laurent::Laurent;

/// Extra translation steps tried after the first deep one.
pub const STABILIZATION_BUDGET: i64 = 8;

const ORDER_CAP: usize = 1 << 20;

impl Hecke {
    /// `A C_s = As + vA` if `A ≺ As`, else `As + v^{-1} A`.
    pub fn periodic_act_cs(&self, x: &Element, s: usize) -> Element {
        let mut out = Element::new();
        for (a, p) in x {
            let b = self.aw.right_gen(a, s);
            let up = self.aw.periodic_lt_adjacent(a, &b).expect("wall neighbours");
            add_scaled(&mut out, &b, p);
            add_scaled(&mut out, a, &p.shift(if up { 1 } else { -1 }));
        }
        out
    }

    pub fn e_lambda(&self, lambda: &[i64]) -> Element {
        self.aw
            .finite_group()
            .iter()
            .map(|z| {
                (
                    self.aw.translate(z, lambda),
                    Laurent::monomial(self.aw.length(z) as i32, 1),
                )
            })
            .collect()
    }

    /// Signed list `(x * A, (-1)^{l(x)})` over the finite Weyl group.
    pub fn alt_list(&self, a: &Alcove) -> Vec<(Alcove, i64)> {
        self.aw
            .finite_group()
            .iter()
            .map(|x| {
                let sign = if self.aw.length(x) % 2 == 0 { 1 } else { -1 };
                (self.aw.star(x, a), sign)
            })
            .collect()
    }

    pub fn res(&self, x: &Element) -> Element {
        x.iter()
            .filter(|(a, _)| self.aw.is_dominant(a))
            .map(|(a, p)| (a.clone(), p.clone()))
            .collect()
    }

    fn translate_element(&self, x: &Element, mu: &[i64]) -> Element {
        x.iter().map(|(a, p)| (self.aw.translate(a, mu), p.clone())).collect()
    }

    /// Smallest `m >= 0` with `a + 2m rho` inside `rho + C_0^+`.
    fn first_deep(&self, a: &Alcove) -> i64 {
        let rs = &self.aw.rs;
        (0..a.0.len())
            .map(|i| {
                let need = rs.height(i) + 1 - a.0[i];
                let step = 2 * rs.height(i);
                if need <= 0 {
                    0
                } else {
                    (need + step - 1) / step
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// `P_A` as the stable value of `N_{A + m nu}` shifted back, `nu = 2 rho`.
    pub fn canonical_p(&self, a: &Alcove) -> Result<Arc<Element>> {
        if let Some(e) = self.p_memo.read().get(a) {
            return Ok(e.clone());
        }
        let nu: Vec<i64> = vec![2; self.aw.rank()];
        let m0 = self.first_deep(a);
        let at = |m: i64| {
            let shift: Vec<i64> = nu.iter().map(|x| x * m).collect();
            let back: Vec<i64> = shift.iter().map(|x| -x).collect();
            let n = self.canonical_n(&self.aw.translate(a, &shift));
            self.translate_element(&n, &back)
        };
        let mut prev = at(m0);
        for m in m0 + 1..=m0 + STABILIZATION_BUDGET {
            let cur = at(m);
            if cur == prev {
                let arc = Arc::new(cur);
                return Ok(self.p_memo.write().entry(a.clone()).or_insert(arc).clone());
            }
            prev = cur;
        }
        Err(Error::Unstable(format!(
            "periodic element of {:?} did not stabilize within {} steps",
            a, STABILIZATION_BUDGET
        )))
    }

    pub fn p_poly(&self, b: &Alcove, a: &Alcove) -> Result<Laurent> {
        Ok(self.canonical_p(a)?.get(b).cloned().unwrap_or_default())
    }

    /// `res alt P_A`.
    pub fn res_alt(&self, a: &Alcove) -> Result<Element> {
        let mut out = Element::new();
        for (b, sign) in self.alt_list(a) {
            for (c, p) in self.canonical_p(&b)?.iter() {
                if self.aw.is_dominant(c) {
                    add_scaled(&mut out, c, &p.scale(sign));
                }
            }
        }
        Ok(out)
    }

    /// `W_v` applied to `c`, where `v` is a special point.
    pub fn w_v_orbit(&self, v: &[i64], c: &Alcove) -> Vec<Alcove> {
        self.aw
            .finite_group()
            .iter()
            .map(|z| self.aw.act_at_point(z, v, c))
            .collect()
    }

    /// `S_A = { wC : w in W_v, C ⪯ A, C in C_v^+ }` with `A ⊂ Π_v`.
    pub fn support_s_a(&self, a: &Alcove) -> Result<BTreeSet<Alcove>> {
        let v = self.aw.box_point(a);
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        let base = self.aw.translate(a, &neg);
        let mut out = BTreeSet::new();
        for d in self.aw.dominant_within(self.aw.length(&base)) {
            let c = self.aw.translate(&d, &v);
            match self.aw.periodic_leq(&c, a, ORDER_CAP) {
                Leq::Yes => out.extend(self.w_v_orbit(&v, &c)),
                Leq::No => {}
                Leq::Indeterminate => {
                    return Err(Error::Invariant("periodic order search exceeded its cap".into()))
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64) -> Alcove {
        Alcove(vec![n])
    }

    #[test]
    fn a1_action_and_e0() {
        let h = Hecke::parse("A1").unwrap();
        let x = Element::from([(a(1), Laurent::one())]);
        assert_eq!(
            h.periodic_act_cs(&x, 1),
            Element::from([(a(2), Laurent::one()), (a(1), Laurent::v())])
        );
        let y = Element::from([(a(2), Laurent::one())]);
        assert_eq!(
            h.periodic_act_cs(&y, 1),
            Element::from([(a(1), Laurent::one()), (a(2), Laurent::monomial(-1, 1))])
        );
        let e0 = h.e_lambda(&[0]);
        assert_eq!(e0, Element::from([(a(1), Laurent::one()), (a(0), Laurent::v())]));
        assert_eq!(h.res(&e0), Element::from([(a(1), Laurent::one())]));
    }

    #[test]
    fn a2_e0_degrees() {
        let h = Hecke::parse("A2").unwrap();
        let mut degs: Vec<i32> = h.e_lambda(&[0, 0]).values().map(|p| p.min_degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn a1_periodic_polys() {
        let h = Hecke::parse("A1").unwrap();
        assert_eq!(h.p_poly(&a(2), &a(2)).unwrap(), Laurent::one());
        assert_eq!(h.p_poly(&a(1), &a(2)).unwrap(), Laurent::v());
        let s: Vec<Alcove> = h.support_s_a(&a(2)).unwrap().into_iter().collect();
        assert_eq!(s, vec![a(1), a(2)]);
    }

    #[test]
    fn translation_invariance() {
        let h = Hecke::parse("A2").unwrap();
        for x in h.aw.alcoves_within(3) {
            let p = h.canonical_p(&x).unwrap();
            let y = h.aw.translate(&x, &[1, 1]);
            let q = h.canonical_p(&y).unwrap();
            let back: Element = q.iter().map(|(c, p)| (h.aw.translate(c, &[-1, -1]), p.clone())).collect();
            assert_eq!(*p, back);
        }
    }

    #[test]
    fn periodic_quadratic() {
        let h = Hecke::parse("C2").unwrap();
        for x in h.aw.alcoves_within(3) {
            let e = Element::from([(x, Laurent::one())]);
            for s in 0..h.aw.num_gens() {
                let once = h.periodic_act_cs(&e, s);
                let twice = h.periodic_act_cs(&once, s);
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
