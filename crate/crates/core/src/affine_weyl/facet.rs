//! Rational points, facets, stabilizers and parabolic cosets.

use num_rational::Rational64;
use serde::Serialize;

use super::{AffineElement, AffineWeyl, Alcove};
use crate::error::{Error, Result};
use crate::root_data::{gcd, pair};

/// The point `num / den` of `E`, with `den > 0` and reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub num: Vec<i64>,
    pub den: i64,
}

impl QPoint {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0);
        let s = den.signum();
        let g = num.iter().fold(den.abs(), |g, &x| gcd(g, x));
        QPoint {
            num: num.iter().map(|x| s * x / g).collect(),
            den: den.abs() / g,
        }
    }

    pub fn integral(x: &[i64]) -> Self {
        QPoint { num: x.to_vec(), den: 1 }
    }

    pub fn as_integral(&self) -> Option<Vec<i64>> {
        (self.den == 1).then(|| self.num.clone())
    }

    /// `self * p / q`.
    pub fn scale(&self, p: i64, q: i64) -> Self {
        QPoint::new(self.num.iter().map(|x| x * p).collect(), self.den * q)
    }

    /// Pairing with a root, as (numerator, denominator).
    pub fn pairing(&self, c: &[i64]) -> (i64, i64) {
        (pair(&self.num, c), self.den)
    }

    pub fn act(&self, g: &AffineElement) -> QPoint {
        QPoint::new(g.act(&self.num, self.den), self.den)
    }

    fn from_rationals(v: &[Rational64]) -> Self {
        let den = v.iter().fold(1i64, |d, x| d / gcd(d, *x.denom()) * x.denom());
        QPoint::new(v.iter().map(|x| (x * den).to_integer()).collect(), den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FacetPart {
    /// `<x, alpha> = k`
    Eq(i64),
    /// `n - 1 < <x, alpha> < n`
    Open(i64),
}

/// A facet of the unit arrangement, described root by root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet(pub Vec<FacetPart>);

impl Facet {
    /// Special facets are exactly the points of the coweight lattice.
    pub fn is_special(&self) -> bool {
        self.0.iter().all(|p| matches!(p, FacetPart::Eq(_)))
    }
}

/// A facet in the closure of the fundamental alcove, identified by the set
/// `S_g` of generators fixing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitFacet {
    pub gens: Vec<usize>,
}

impl AffineWeyl {
    pub fn facet_of(&self, x: &QPoint) -> Facet {
        Facet(
            self.rs
                .positive_roots
                .iter()
                .map(|c| {
                    let (p, q) = x.pairing(c);
                    if p % q == 0 {
                        FacetPart::Eq(p / q)
                    } else {
                        FacetPart::Open(p.div_euclid(q) + 1)
                    }
                })
                .collect(),
        )
    }

    /// Vertex of the closed fundamental alcove opposite to wall `s`.
    fn vertex(&self, s: usize) -> Vec<Rational64> {
        let n = self.rank();
        let mut v = vec![Rational64::from_integer(0); n];
        if s < n {
            let f = self.rs.factor_of_coord(s);
            let c = self.rs.positive_roots[self.rs.highest[f]][s];
            v[s] = Rational64::new(1, c);
        }
        v
    }

    pub fn unit_facet(&self, mut gens: Vec<usize>) -> Result<UnitFacet> {
        gens.sort_unstable();
        gens.dedup();
        if gens.iter().any(|&s| s >= self.num_gens()) {
            return Err(Error::Usage("generator out of range".into()));
        }
        for f in 0..self.rs.factors.len() {
            let total = self.rs.factors[f].rank + 1;
            let inside = gens.iter().filter(|&&s| self.gen_factor(s) == f).count();
            if inside == total {
                return Err(Error::Usage("facet type must omit a generator of every factor".into()));
            }
        }
        Ok(UnitFacet { gens })
    }

    pub fn fundamental_facet(&self) -> UnitFacet {
        UnitFacet { gens: Vec::new() }
    }

    /// All facets of the closed fundamental alcove.
    pub fn unit_facets(&self) -> Vec<UnitFacet> {
        let k = self.num_gens();
        let mut out: Vec<UnitFacet> = (0u32..1 << k)
            .filter_map(|mask| self.unit_facet((0..k).filter(|&s| mask >> s & 1 == 1).collect()).ok())
            .collect();
        out.sort_by_key(|g| (g.gens.len(), g.gens.clone()));
        out
    }

    /// Barycentre of the vertices not on the walls of `g`.
    pub fn facet_sample(&self, g: &UnitFacet) -> QPoint {
        let n = self.rank();
        let mut x = vec![Rational64::from_integer(0); n];
        for f in 0..self.rs.factors.len() {
            let verts: Vec<usize> = (0..self.num_gens())
                .filter(|&s| self.gen_factor(s) == f && !g.gens.contains(&s))
                .collect();
            let k = verts.len() as i64;
            for s in verts {
                for (xi, vi) in x.iter_mut().zip(self.vertex(s)) {
                    *xi += vi / k;
                }
            }
        }
        QPoint::from_rationals(&x)
    }

    pub fn is_point(&self, g: &UnitFacet) -> bool {
        g.gens.len() == self.rank()
    }

    pub fn is_special(&self, g: &UnitFacet) -> bool {
        self.is_point(g) && self.facet_sample(g).den == 1
    }

    /// Unit facet containing a point of the closed fundamental alcove.
    pub fn unit_facet_of(&self, x: &QPoint) -> Result<UnitFacet> {
        let mut gens = Vec::new();
        for s in 0..self.num_gens() {
            let p = if s < self.rank() {
                x.pairing(&self.rs.positive_roots[s]).0
            } else {
                let (p, q) = x.pairing(&self.rs.positive_roots[self.rs.highest[s - self.rank()]]);
                q - p
            };
            if p < 0 {
                return Err(Error::Usage(
                    "point is not in the closed fundamental alcove; reduce it first".into(),
                ));
            }
            if p == 0 {
                gens.push(s);
            }
        }
        Ok(UnitFacet { gens })
    }

    /// Stabilizer `W_g` as alcoves, sorted by length; the last is `w_g`.
    pub fn stabilizer(&self, g: &UnitFacet) -> Vec<Alcove> {
        self.generated_by(&g.gens)
    }

    pub fn longest_in_stabilizer(&self, g: &UnitFacet) -> Alcove {
        self.stabilizer(g).pop().unwrap()
    }

    /// Representative of `W box_1 x` in the closed fundamental alcove, plus
    /// `w` with `w box_1 rep = x`.
    pub fn orbit_representative(&self, x: &QPoint) -> (QPoint, AffineElement) {
        let mut cur = x.clone();
        let mut w = AffineElement::identity(self.rank());
        loop {
            let bad = (0..self.num_gens()).find(|&s| {
                if s < self.rank() {
                    cur.pairing(&self.rs.positive_roots[s]).0 < 0
                } else {
                    let (p, q) = cur.pairing(&self.rs.positive_roots[self.rs.highest[s - self.rank()]]);
                    p > q
                }
            });
            match bad {
                Some(s) => {
                    cur = cur.act(self.generator(s));
                    w = w.mul(self.generator(s));
                }
                None => return (cur, w),
            }
        }
    }

    /// The facet of type `g` in the closure of `a`, as a point set.
    pub fn facet_in_closure(&self, a: &Alcove, g: &UnitFacet) -> Facet {
        self.facet_of(&self.facet_sample(g).act(&self.element_of(a)))
    }

    pub fn is_min_in_w0w(&self, a: &Alcove) -> bool {
        self.is_dominant(a)
    }

    pub fn max_in_coset(&self, a: &Alcove, g: &UnitFacet) -> Alcove {
        let mut cur = a.clone();
        'outer: loop {
            let l = self.length(&cur);
            for &s in &g.gens {
                let b = self.right_gen(&cur, s);
                if self.length(&b) > l {
                    cur = b;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    pub fn is_max_in_coset(&self, a: &Alcove, g: &UnitFacet) -> bool {
        let l = self.length(a);
        g.gens.iter().all(|&s| self.length(&self.right_gen(a, s)) < l)
    }

    /// Membership in `fW^g`: dominant and maximal in its `W_g` coset.
    pub fn is_in_fwg(&self, a: &Alcove, g: &UnitFacet) -> bool {
        self.is_dominant(a) && self.is_max_in_coset(a, g)
    }

    /// The equivalent criterion: maximal in `wW_g` and `wr` dominant for all `r`.
    pub fn is_in_fwg_by_coset(&self, a: &Alcove, g: &UnitFacet) -> bool {
        self.is_max_in_coset(a, g)
            && self.stabilizer(g).iter().all(|r| self.is_dominant(&self.mul_alcoves(a, r)))
    }

    /// The coset `a W_g` as alcoves.
    pub fn coset(&self, a: &Alcove, g: &UnitFacet) -> Vec<Alcove> {
        self.stabilizer(g).iter().map(|r| self.mul_alcoves(a, r)).collect()
    }

    /// `fW^g` elements with length at most `radius`.
    pub fn fwg_within(&self, g: &UnitFacet, radius: i64) -> Vec<Alcove> {
        self.dominant_within(radius)
            .into_iter()
            .filter(|a| self.is_in_fwg(a, g))
            .collect()
    }
}
