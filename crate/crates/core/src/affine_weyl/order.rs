//! The periodic order, boxes, and the hat/check bijections.

use std::collections::{HashSet, VecDeque};

use super::{AffineWeyl, Alcove, UnitFacet};
use crate::error::{Error, Result};
use crate::root_data::pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leq {
    Yes,
    No,
    Indeterminate,
}

impl AffineWeyl {
    /// Is `b` obtained from `a` by crossing one wall towards the generic side.
    /// Returns `None` when the alcoves are not adjacent.
    pub fn periodic_lt_adjacent(&self, a: &Alcove, b: &Alcove) -> Option<bool> {
        let mut diff = a.0.iter().zip(&b.0).filter(|(x, y)| x != y);
        let (x, y) = diff.next()?;
        if diff.next().is_some() || (x - y).abs() != 1 {
            return None;
        }
        Some(y > x)
    }

    /// Decides `a ⪯ b` by searching chains of reflections `s_H` moving towards
    /// the positive side of `H`. Sample points only move by positive multiples
    /// of positive coroots, so the search stays in a bounded parallelotope;
    /// `cap` bounds the number of visited alcoves.
    pub fn periodic_leq(&self, a: &Alcove, b: &Alcove, cap: usize) -> Leq {
        if a == b {
            return Leq::Yes;
        }
        let rs = &self.rs;
        let den = self.sample_den;
        let xa = self.sample_point(a);
        let xb = self.sample_point(b);
        let below = |x: &[i64]| {
            let d: Vec<i64> = xb.iter().zip(x).map(|(p, q)| p - q).collect();
            rs.in_positive_coroot_cone(&d)
        };
        if !below(&xa) {
            return Leq::No;
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::from([xa.clone()]);
        let mut queue = VecDeque::from([xa]);
        while let Some(x) = queue.pop_front() {
            for (c, co) in rs.positive_roots.iter().zip(&rs.coroots) {
                let t = pair(&x, c);
                let mut k = t.div_euclid(den) + 1;
                loop {
                    let step = k * den - t;
                    let y: Vec<i64> = x.iter().zip(co).map(|(p, q)| p + step * q).collect();
                    if !below(&y) {
                        break;
                    }
                    if y == xb {
                        return Leq::Yes;
                    }
                    if seen.insert(y.clone()) {
                        if seen.len() > cap {
                            return Leq::Indeterminate;
                        }
                        queue.push_back(y);
                    }
                    k += 1;
                }
            }
        }
        Leq::No
    }

    /// The special point `v` with `a` inside the box `Π_v`.
    pub fn box_point(&self, a: &Alcove) -> Vec<i64> {
        (0..self.rank()).map(|i| a.0[i] - 1).collect()
    }

    /// Is the integer point `x / den` inside `Π_lambda`.
    pub fn in_box(&self, x: &[i64], den: i64, lambda: &[i64]) -> bool {
        (0..self.rank()).all(|i| {
            let t = x[i] - den * lambda[i];
            t > 0 && t < den
        })
    }

    fn w0_linear(&self) -> super::AffineElement {
        self.element_of(self.w0())
    }

    pub fn hat(&self, a: &Alcove) -> Alcove {
        let lambda = self.box_point(a);
        let b = self.translate(a, &lambda.iter().map(|x| -x).collect::<Vec<_>>());
        let shift: Vec<i64> = lambda.iter().map(|x| x + 2).collect();
        self.translate(&self.left_act(&self.w0_linear(), &b), &shift)
    }

    pub fn check(&self, a: &Alcove) -> Alcove {
        let lambda = self.box_point(a);
        let b = self.translate(a, &lambda.iter().map(|x| -x).collect::<Vec<_>>());
        self.translate(&self.left_act(&self.w0_linear(), &b), &lambda)
    }

    /// `x * A = x lambda + B` for `A = lambda + B`, `x` in the finite Weyl group.
    pub fn star(&self, x: &Alcove, a: &Alcove) -> Alcove {
        let lambda = self.box_point(a);
        let neg: Vec<i64> = lambda.iter().map(|t| -t).collect();
        let b = self.translate(a, &neg);
        self.translate(&b, &self.element_of(x).apply_linear(&lambda))
    }

    /// `v + z (A - v)`: the element `t_v z t_{-v}` of `W_v` applied to `A`.
    pub fn act_at_point(&self, z: &Alcove, v: &[i64], a: &Alcove) -> Alcove {
        let neg: Vec<i64> = v.iter().map(|t| -t).collect();
        self.translate(&self.left_act(&self.element_of(z), &self.translate(a, &neg)), v)
    }

    /// `w_v A`.
    pub fn w_v(&self, v: &[i64], a: &Alcove) -> Alcove {
        self.act_at_point(self.w0(), v, a)
    }

    /// Is `a` inside `rho + C_0^+`.
    pub fn is_rho_deep(&self, a: &Alcove) -> bool {
        (0..a.0.len()).all(|i| a.0[i] > self.rs.height(i))
    }

    /// Hat of the `g`-facet attached to `a ∈ W^g`: the ⪯-minimal alcove of
    /// `a W_g` is hatted and the result is returned as a maximal coset element.
    pub fn hat_facet(&self, a: &Alcove, g: &UnitFacet) -> Result<Alcove> {
        let coset = self.coset(a, g);
        let minimal: Vec<&Alcove> = coset
            .iter()
            .filter(|c| coset.iter().all(|d| self.periodic_leq(c, d, 1 << 20) == Leq::Yes))
            .collect();
        if minimal.len() != 1 {
            return Err(Error::Invariant("no unique ⪯-minimal alcove in coset".into()));
        }
        Ok(self.max_in_coset(&self.hat(minimal[0]), g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_hat() {
        let aw = AffineWeyl::parse("A1").unwrap();
        for k in 0..6 {
            assert_eq!(aw.hat(&Alcove(vec![k + 1])), Alcove(vec![k + 2]));
        }
        assert_eq!(aw.box_point(&Alcove(vec![4])), vec![3]);
        assert_eq!(aw.star(aw.w0(), &Alcove(vec![4])), Alcove(vec![-2]));
    }

    #[test]
    fn a1_periodic_order() {
        let aw = AffineWeyl::parse("A1").unwrap();
        let a = Alcove(vec![1]);
        let b = Alcove(vec![2]);
        assert_eq!(aw.periodic_leq(&a, &a, 100), Leq::Yes);
        assert_eq!(aw.periodic_leq(&a, &b, 100), Leq::Yes);
        assert_eq!(aw.periodic_leq(&b, &a, 100), Leq::No);
        assert_eq!(aw.periodic_lt_adjacent(&a, &b), Some(true));
    }

    #[test]
    fn hat_check_inverse() {
        for t in ["A2", "C2", "G2"] {
            let aw = AffineWeyl::parse(t).unwrap();
            for a in aw.alcoves_within(4) {
                assert_eq!(aw.check(&aw.hat(&a)), a);
                assert_eq!(aw.hat(&aw.check(&a)), a);
            }
        }
    }

    #[test]
    fn hat_of_dominant_is_rho_deep() {
        for t in ["A2", "C2", "G2"] {
            let aw = AffineWeyl::parse(t).unwrap();
            for a in aw.dominant_within(5) {
                assert!(aw.is_rho_deep(&aw.hat(&a)), "{t} {a:?}");
            }
        }
    }
}
