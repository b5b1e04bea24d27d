//! The affine Weyl group acting on alcoves.
//!
//! Generators are indexed `0..rank` for the finite simple reflections (Dynkin
//! order) followed by one affine reflection per irreducible factor.

mod facet;
mod order;

pub use facet::{Facet, FacetPart, QPoint, UnitFacet};
pub use order::Leq;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{pair, RootSystem};

/// An alcove stored as `n_alpha` per positive root: `n - 1 < <x, alpha> < n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alcove(pub Vec<i64>);

impl fmt::Debug for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `x -> m x + n b` at scale `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub m: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

impl AffineElement {
    pub fn identity(rank: usize) -> Self {
        let m = (0..rank)
            .map(|i| (0..rank).map(|j| (i == j) as i64).collect())
            .collect();
        AffineElement { m, b: vec![0; rank] }
    }

    pub fn translation(mu: &[i64]) -> Self {
        let mut e = Self::identity(mu.len());
        e.b = mu.to_vec();
        e
    }

    pub fn linear(m: Vec<Vec<i64>>) -> Self {
        let n = m.len();
        AffineElement { m, b: vec![0; n] }
    }

    pub fn mul(&self, o: &AffineElement) -> AffineElement {
        let n = self.b.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.m[i][k] * o.m[k][j]).sum()).collect())
            .collect();
        let mut b = self.apply_linear(&o.b);
        for (x, y) in b.iter_mut().zip(&self.b) {
            *x += y;
        }
        AffineElement { m, b }
    }

    pub fn apply_linear(&self, x: &[i64]) -> Vec<i64> {
        self.m.iter().map(|row| pair(row, x)).collect()
    }

    /// Image of an integer point under the action at scale `n`.
    pub fn act(&self, x: &[i64], n: i64) -> Vec<i64> {
        let mut y = self.apply_linear(x);
        for (v, t) in y.iter_mut().zip(&self.b) {
            *v += n * t;
        }
        y
    }

    /// `w .l mu = w box_l (mu + rho) - rho`.
    pub fn act_dot(&self, mu: &[i64], ell: i64) -> Vec<i64> {
        let shifted: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        self.act(&shifted, ell).into_iter().map(|x| x - 1).collect()
    }

    pub fn is_linear(&self) -> bool {
        self.b.iter().all(|&x| x == 0)
    }
}

pub struct AffineWeyl {
    pub rs: RootSystem,
    gens: Vec<AffineElement>,
    /// Per generator and positive root: (sign, image root, constant).
    perm: Vec<Vec<(bool, usize, i64)>>,
    gen_alcoves: Vec<Alcove>,
    finite: OnceLock<Vec<Alcove>>,
    w0: Alcove,
    /// Denominator of the interior sample point `rho / D` of the fundamental alcove.
    pub sample_den: i64,
    words: RwLock<HashMap<Alcove, Vec<u8>>>,
}

impl AffineWeyl {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.rank;
        let mut gens = Vec::new();
        for i in 0..n {
            let m = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| (j == k) as i64 - if k == i { rs.cartan[i][j] } else { 0 })
                        .collect()
                })
                .collect();
            gens.push(AffineElement::linear(m));
        }
        for &h in &rs.highest {
            let th = &rs.positive_roots[h];
            let co = &rs.coroots[h];
            let m = (0..n)
                .map(|j| (0..n).map(|k| (j == k) as i64 - co[j] * th[k]).collect())
                .collect();
            gens.push(AffineElement { m, b: co.clone() });
        }
        let sample_den = rs.max_coxeter_number();
        let w0 = Alcove(vec![0; rs.num_positive()]);
        let mut aw = AffineWeyl {
            rs,
            gens,
            perm: Vec::new(),
            gen_alcoves: Vec::new(),
            finite: OnceLock::new(),
            w0,
            sample_den,
            words: RwLock::new(HashMap::new()),
        };
        aw.perm = aw.gens.iter().map(|g| aw.root_table(g)).collect();
        let a1 = aw.fundamental();
        aw.gen_alcoves = (0..aw.num_gens()).map(|s| aw.left_gen(s, &a1)).collect();
        aw
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::parse(s)?))
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_affine_gen(&self, s: usize) -> bool {
        s >= self.rs.rank
    }

    /// Factor an affine generator belongs to; finite generators by coordinate.
    pub fn gen_factor(&self, s: usize) -> usize {
        if s < self.rs.rank {
            self.rs.factor_of_coord(s)
        } else {
            s - self.rs.rank
        }
    }

    pub fn generator(&self, s: usize) -> &AffineElement {
        &self.gens[s]
    }

    fn root_table(&self, g: &AffineElement) -> Vec<(bool, usize, i64)> {
        let rs = &self.rs;
        let n = rs.rank;
        rs.positive_roots
            .iter()
            .map(|c| {
                // M^T c
                let img: Vec<i64> = (0..n).map(|k| (0..n).map(|j| g.m[j][k] * c[j]).sum()).collect();
                let (pos, idx) = rs.signed_root(&img).expect("linear part preserves roots");
                (pos, idx, pair(&g.b, c))
            })
            .collect()
    }

    pub fn fundamental(&self) -> Alcove {
        Alcove(vec![1; self.rs.num_positive()])
    }

    fn apply_table(table: &[(bool, usize, i64)], a: &Alcove) -> Alcove {
        Alcove(
            table
                .iter()
                .map(|&(pos, b, k)| if pos { a.0[b] + k } else { 1 - a.0[b] + k })
                .collect(),
        )
    }

    /// `s A` for a generator `s`.
    pub fn left_gen(&self, s: usize, a: &Alcove) -> Alcove {
        Self::apply_table(&self.perm[s], a)
    }

    /// `g A` for an arbitrary element of the extended group.
    pub fn left_act(&self, g: &AffineElement, a: &Alcove) -> Alcove {
        Self::apply_table(&self.root_table(g), a)
    }

    pub fn alcove_of(&self, g: &AffineElement) -> Alcove {
        self.left_act(g, &self.fundamental())
    }

    /// Number of hyperplanes separating `a` from the fundamental alcove.
    pub fn length(&self, a: &Alcove) -> i64 {
        a.0.iter().map(|&n| (n - 1).abs()).sum()
    }

    pub fn is_left_descent(&self, s: usize, a: &Alcove) -> bool {
        if s < self.rs.rank {
            a.0[s] <= 0
        } else {
            a.0[self.rs.highest[s - self.rs.rank]] >= 2
        }
    }

    pub fn is_dominant(&self, a: &Alcove) -> bool {
        a.0.iter().all(|&n| n >= 1)
    }

    pub fn is_finite(&self, a: &Alcove) -> bool {
        a.0.iter().all(|&n| n == 0 || n == 1)
    }

    /// Reduced word `s_1 ... s_k` with `A = s_1 ... s_k a_1`, stripping the
    /// lowest-indexed left descent first.
    pub fn word(&self, a: &Alcove) -> Vec<u8> {
        if let Some(w) = self.words.read().get(a) {
            return w.clone();
        }
        let mut out = Vec::new();
        let mut cur = a.clone();
        while let Some(s) = (0..self.num_gens()).find(|&s| self.is_left_descent(s, &cur)) {
            out.push(s as u8);
            cur = self.left_gen(s, &cur);
        }
        self.words.write().insert(a.clone(), out.clone());
        out
    }

    pub fn alcove_of_word(&self, word: &[u8]) -> Result<Alcove> {
        let mut a = self.fundamental();
        for &s in word.iter().rev() {
            if s as usize >= self.num_gens() {
                return Err(Error::Usage(format!("generator {s} out of range")));
            }
            a = self.left_gen(s as usize, &a);
        }
        Ok(a)
    }

    pub fn element_of(&self, a: &Alcove) -> AffineElement {
        let mut g = AffineElement::identity(self.rank());
        for s in self.word(a) {
            g = g.mul(&self.gens[s as usize]);
        }
        g
    }

    pub fn is_in_w(&self, g: &AffineElement) -> bool {
        self.rs.in_coroot_lattice(&g.b)
    }

    pub fn checked_alcove_of(&self, g: &AffineElement) -> Result<Alcove> {
        if !self.is_in_w(g) {
            return Err(Error::Usage("translation part not in the coroot lattice".into()));
        }
        Ok(self.alcove_of(g))
    }

    pub fn inverse(&self, g: &AffineElement) -> AffineElement {
        let lin = AffineElement::linear(g.m.clone());
        let mut inv = AffineElement::identity(self.rank());
        for s in self.word(&self.alcove_of(&lin)).iter().rev() {
            inv = inv.mul(&self.gens[*s as usize]);
        }
        let b = inv.apply_linear(&g.b).into_iter().map(|x| -x).collect();
        AffineElement { m: inv.m, b }
    }

    pub fn inverse_alcove(&self, a: &Alcove) -> Alcove {
        let mut b = self.fundamental();
        for &s in &self.word(a) {
            b = self.left_gen(s as usize, &b);
        }
        b
    }

    /// `A s`, computed by replaying a reduced word of `A` on `s a_1`.
    pub fn right_gen(&self, a: &Alcove, s: usize) -> Alcove {
        let mut b = self.gen_alcoves[s].clone();
        for &t in self.word(a).iter().rev() {
            b = self.left_gen(t as usize, &b);
        }
        b
    }

    pub fn right_act(&self, a: &Alcove, g: &AffineElement) -> Alcove {
        let mut b = self.alcove_of(g);
        for &t in self.word(a).iter().rev() {
            b = self.left_gen(t as usize, &b);
        }
        b
    }

    /// Product of two alcoves viewed as group elements.
    pub fn mul_alcoves(&self, a: &Alcove, b: &Alcove) -> Alcove {
        let mut c = b.clone();
        for &t in self.word(a).iter().rev() {
            c = self.left_gen(t as usize, &c);
        }
        c
    }

    pub fn right_descents(&self, a: &Alcove) -> Vec<usize> {
        let l = self.length(a);
        (0..self.num_gens()).filter(|&s| self.length(&self.right_gen(a, s)) < l).collect()
    }

    pub fn left_descents(&self, a: &Alcove) -> Vec<usize> {
        (0..self.num_gens()).filter(|&s| self.is_left_descent(s, a)).collect()
    }

    /// Bruhat order via the lifting property on left descents.
    pub fn bruhat_leq(&self, x: &Alcove, y: &Alcove) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            if x == y {
                return true;
            }
            if self.length(&x) >= self.length(&y) {
                return false;
            }
            let s = (0..self.num_gens()).find(|&s| self.is_left_descent(s, &y)).unwrap();
            if self.is_left_descent(s, &x) {
                x = self.left_gen(s, &x);
            }
            y = self.left_gen(s, &y);
        }
    }

    /// Elements of the finite Weyl group as alcoves, by (length, bounds).
    pub fn finite_group(&self) -> &[Alcove] {
        self.finite.get_or_init(|| {
            let gens: Vec<usize> = (0..self.rank()).collect();
            self.generated_by(&gens)
        })
    }

    pub fn w0(&self) -> &Alcove {
        &self.w0
    }

    pub fn translate(&self, a: &Alcove, mu: &[i64]) -> Alcove {
        Alcove(
            a.0.iter()
                .zip(&self.rs.positive_roots)
                .map(|(n, c)| n + pair(mu, c))
                .collect(),
        )
    }

    /// Interior sample point of an alcove, scaled by `sample_den`.
    pub fn sample_point(&self, a: &Alcove) -> Vec<i64> {
        self.element_of(a).act(&self.rs.rho_check(), self.sample_den)
    }

    pub fn alcove_of_scaled_point(&self, x: &[i64], den: i64) -> Alcove {
        Alcove(
            self.rs
                .positive_roots
                .iter()
                .map(|c| pair(x, c).div_euclid(den) + 1)
                .collect(),
        )
    }

    /// All alcoves with `d <= radius`, sorted by bounds.
    pub fn alcoves_within(&self, radius: i64) -> Vec<Alcove> {
        let a1 = self.fundamental();
        let mut layer = vec![a1.clone()];
        let mut all: BTreeSet<Alcove> = [a1].into_iter().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for a in &layer {
                for s in 0..self.num_gens() {
                    if !self.is_left_descent(s, a) {
                        let b = self.left_gen(s, a);
                        if all.insert(b.clone()) {
                            next.push(b);
                        }
                    }
                }
            }
            layer = next;
        }
        all.into_iter().collect()
    }

    /// Dominant alcoves with `d <= radius`, sorted by bounds.
    pub fn dominant_within(&self, radius: i64) -> Vec<Alcove> {
        let a1 = self.fundamental();
        let mut layer = vec![a1.clone()];
        let mut all: BTreeSet<Alcove> = [a1].into_iter().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for a in &layer {
                let l = self.length(a);
                for s in 0..self.num_gens() {
                    let b = self.right_gen(a, s);
                    if self.is_dominant(&b) && self.length(&b) > l && all.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            layer = next;
        }
        all.into_iter().collect()
    }

    /// Dominant weights with coordinate sum `<= radius`, lexicographic.
    pub fn dominant_weights_within(&self, radius: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, radius, &mut cur, &mut out);
        out
    }

    /// The alcove `s a_1` for each generator.
    pub fn generator_alcove(&self, s: usize) -> &Alcove {
        &self.gen_alcoves[s]
    }

    /// Word parser: comma separated generator indices, `e` or empty for identity.
    pub fn parse_word(&self, s: &str) -> Result<Alcove> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(self.fundamental());
        }
        let word: Vec<u8> = s
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Usage(format!("bad word '{s}'"))))
            .collect::<Result<_>>()?;
        self.alcove_of_word(&word)
    }

    /// BFS queue helper shared by subgroup enumeration.
    pub(crate) fn generated_by(&self, gens: &[usize]) -> Vec<Alcove> {
        let a1 = self.fundamental();
        let mut out = vec![a1.clone()];
        let mut seen: HashSet<Alcove> = [a1].into_iter().collect();
        let mut q: VecDeque<usize> = VecDeque::from([0]);
        while let Some(k) = q.pop_front() {
            for &s in gens {
                let b = self.left_gen(s, &out[k]);
                if seen.insert(b.clone()) {
                    out.push(b);
                    q.push_back(out.len() - 1);
                }
            }
        }
        out.sort_by_key(|a| (self.length(a), a.clone()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> AffineWeyl {
        AffineWeyl::parse("A1").unwrap()
    }

    #[test]
    fn a1_basics() {
        let aw = a1();
        assert_eq!(aw.fundamental(), Alcove(vec![1]));
        // s0 s1 acts as translation by alpha^vee = 2
        let g = aw.generator(1).mul(aw.generator(0));
        assert_eq!(g.m, vec![vec![1]]);
        assert_eq!(g.b, vec![2]);
        assert_eq!(aw.alcove_of(&g), Alcove(vec![3]));
        assert_eq!(aw.element_of(&Alcove(vec![0])), *aw.generator(0));
        assert_eq!(aw.length(&Alcove(vec![4])), 3);
        assert_eq!(aw.word(&Alcove(vec![3])), vec![1, 0]);
    }

    #[test]
    fn a1_dot_action() {
        let aw = a1();
        let t = AffineElement::translation(&[2]);
        assert_eq!(t.act(&[0], 3), vec![6]);
        assert_eq!(aw.generator(0).act_dot(&[0], 3), vec![-2]);
    }

    #[test]
    fn a1_region() {
        let aw = a1();
        let r: Vec<Vec<i64>> = aw.alcoves_within(2).into_iter().map(|a| a.0).collect();
        // upper bounds n of (n-1, n)
        assert_eq!(r, vec![vec![-1], vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(aw.dominant_within(0), vec![aw.fundamental()]);
    }

    #[test]
    fn a1_bruhat() {
        let aw = a1();
        let s0 = aw.generator_alcove(0).clone();
        let s1 = aw.generator_alcove(1).clone();
        let s0s1 = aw.alcove_of_word(&[0, 1]).unwrap();
        assert!(aw.bruhat_leq(&s1, &s0s1));
        assert!(!aw.bruhat_leq(&s0, &s1));
        assert!(!aw.bruhat_leq(&s1, &s0));
    }

    #[test]
    fn w0_length_is_number_of_positive_roots() {
        for t in ["A2", "C2", "G2", "A3", "B3"] {
            let aw = AffineWeyl::parse(t).unwrap();
            assert_eq!(aw.length(aw.w0()), aw.rs.num_positive() as i64);
            assert!(aw.w0().0.iter().all(|&n| n == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let aw = AffineWeyl::parse("C2").unwrap();
        for a in aw.alcoves_within(5) {
            let g = aw.element_of(&a);
            let gi = aw.inverse(&g);
            assert_eq!(g.mul(&gi), AffineElement::identity(2));
            assert_eq!(aw.alcove_of(&gi), aw.inverse_alcove(&a));
        }
    }

    #[test]
    fn a2_dominant_count_matches_scan() {
        let aw = AffineWeyl::parse("A2").unwrap();
        let dom = aw.dominant_within(3);
        // brute scan of bound vectors (n1, n2, n12) with n12 in {n1+n2-1, n1+n2}
        let mut count = 0;
        for n1 in 1..6i64 {
            for n2 in 1..6i64 {
                for n12 in [n1 + n2 - 1, n1 + n2] {
                    if (n1 - 1) + (n2 - 1) + (n12 - 1) <= 3 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(dom.len(), count);
    }
}
