//! Finite root systems in fundamental-coweight coordinates.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    fn valid_rank(self, n: usize) -> bool {
        match self {
            CartanType::A => n >= 1,
            CartanType::B | CartanType::C => n >= 2,
            CartanType::D => n >= 4,
            CartanType::E => (6..=8).contains(&n),
            CartanType::F => n == 4,
            CartanType::G => n == 2,
        }
    }
}

/// One irreducible factor occupying coordinates `offset..offset + rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: CartanType,
    pub rank: usize,
    pub offset: usize,
}

impl Factor {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank)
    }
}

/// Cartan data with `cartan[i][j] = <alpha_i^vee, alpha_j>`.
///
/// Coweights are integer vectors in the fundamental-coweight basis, so the
/// pairing with a root `sum c_i alpha_i` is `sum c_i x_i`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub factors: Vec<Factor>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots as simple-root coefficient vectors, sorted by
    /// (height, coefficients). Simple roots come first, in Dynkin order.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coroot of each positive root in coweight coordinates.
    pub coroots: Vec<Vec<i64>>,
    pub root_factor: Vec<usize>,
    /// Index of the highest root of each factor.
    pub highest: Vec<usize>,
    root_index: HashMap<Vec<i64>, usize>,
    /// Integer matrix `K` and denominator `den` with `(C^T)^{-1} = K / den`.
    coroot_inv: Vec<Vec<i64>>,
    coroot_den: i64,
}

fn factor_cartan(kind: CartanType, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match kind {
        CartanType::A | CartanType::B | CartanType::C | CartanType::F | CartanType::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        CartanType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match kind {
        CartanType::B => c[n - 1][n - 2] = -2,
        CartanType::C => c[n - 2][n - 1] = -2,
        CartanType::F => c[2][1] = -2,
        CartanType::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// Parses strings like `A1`, `c2`, `A1xC2`.
pub fn parse_type(s: &str) -> Result<Vec<(CartanType, usize)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Usage("empty Cartan type".into()));
    }
    let mut out = Vec::new();
    for part in s.split(['x', 'X']) {
        let mut chars = part.chars();
        let kind = chars
            .next()
            .and_then(CartanType::from_letter)
            .ok_or_else(|| Error::Usage(format!("bad Cartan factor '{part}'")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Usage(format!("bad Cartan factor '{part}'")))?;
        out.push((kind, rank));
    }
    Ok(out)
}

impl RootSystem {
    pub fn parse(s: &str) -> Result<Self> {
        Self::build(&parse_type(s)?)
    }

    pub fn build(spec: &[(CartanType, usize)]) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::Usage("no factors".into()));
        }
        let mut factors = Vec::new();
        let mut offset = 0;
        for &(kind, rank) in spec {
            if !kind.valid_rank(rank) {
                return Err(Error::Usage(format!(
                    "invalid Cartan factor {}{}",
                    kind.letter(),
                    rank
                )));
            }
            factors.push(Factor { kind, rank, offset });
            offset += rank;
        }
        let rank = offset;
        let mut cartan = vec![vec![0i64; rank]; rank];
        for f in &factors {
            let c = factor_cartan(f.kind, f.rank);
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[f.offset + i][f.offset + j] = c[i][j];
                }
            }
        }

        // Close the simple roots under simple reflections, carrying coroots.
        let mut roots: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), roots.len());
            roots.push((e, cartan[i].clone()));
        }
        let mut k = 0;
        while k < roots.len() {
            let (beta, cob) = roots[k].clone();
            for i in 0..rank {
                let p: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                if p == 0 {
                    continue;
                }
                let mut nb = beta.clone();
                nb[i] -= p;
                if nb.iter().any(|&c| c < 0) || seen.contains_key(&nb) {
                    continue;
                }
                let mut nc = cob.clone();
                for j in 0..rank {
                    nc[j] -= cob[i] * cartan[i][j];
                }
                seen.insert(nb.clone(), roots.len());
                roots.push((nb, nc));
            }
            k += 1;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let positive_roots: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
        let coroots: Vec<Vec<i64>> = roots.iter().map(|r| r.1.clone()).collect();
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let root_factor: Vec<usize> = positive_roots
            .iter()
            .map(|r| {
                let i = r.iter().position(|&c| c != 0).unwrap();
                factors.iter().position(|f| f.range().contains(&i)).unwrap()
            })
            .collect();
        let highest = (0..factors.len())
            .map(|f| {
                (0..positive_roots.len())
                    .filter(|&a| root_factor[a] == f)
                    .max_by_key(|&a| (positive_roots[a].iter().sum::<i64>(), a))
                    .unwrap()
            })
            .collect();
        let (coroot_inv, coroot_den) = integer_inverse_transpose(&cartan);
        Ok(RootSystem {
            factors,
            rank,
            cartan,
            positive_roots,
            coroots,
            root_factor,
            highest,
            root_index,
            coroot_inv,
            coroot_den,
        })
    }

    pub fn name(&self) -> String {
        self.factors.iter().map(Factor::name).collect::<Vec<_>>().join("x")
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// Index and sign of `±beta` for a root given by coefficients.
    pub fn signed_root(&self, coeffs: &[i64]) -> Option<(bool, usize)> {
        if let Some(i) = self.root_index(coeffs) {
            return Some((true, i));
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.root_index(&neg).map(|i| (false, i))
    }

    pub fn height(&self, a: usize) -> i64 {
        self.positive_roots[a].iter().sum()
    }

    pub fn pairing(&self, x: &[i64], a: usize) -> i64 {
        pair(x, &self.positive_roots[a])
    }

    pub fn rho_check(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn coxeter_number(&self, f: usize) -> i64 {
        self.height(self.highest[f]) + 1
    }

    pub fn max_coxeter_number(&self) -> i64 {
        (0..self.factors.len()).map(|f| self.coxeter_number(f)).max().unwrap()
    }

    /// Highest root of each factor together with its coroot. This coroot is
    /// the highest short root of the dual system.
    pub fn highest_short_coroots(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        self.highest
            .iter()
            .map(|&a| (self.positive_roots[a].clone(), self.coroots[a].clone()))
            .collect()
    }

    pub fn factor_of_coord(&self, i: usize) -> usize {
        self.factors.iter().position(|f| f.range().contains(&i)).unwrap()
    }

    /// The irreducible factors as standalone root systems.
    pub fn decompose_irreducible(&self) -> Vec<RootSystem> {
        self.factors
            .iter()
            .map(|f| RootSystem::build(&[(f.kind, f.rank)]).unwrap())
            .collect()
    }

    /// Coefficients of `u` in the simple-coroot basis, scaled by `coroot_den`.
    pub fn coroot_coords_scaled(&self, u: &[i64]) -> (Vec<i64>, i64) {
        let q = self
            .coroot_inv
            .iter()
            .map(|row| pair(row, u))
            .collect();
        (q, self.coroot_den)
    }

    pub fn in_coroot_lattice(&self, u: &[i64]) -> bool {
        let (q, d) = self.coroot_coords_scaled(u);
        q.iter().all(|x| x % d == 0)
    }

    /// Is `u` a nonnegative real combination of simple coroots.
    pub fn in_positive_coroot_cone(&self, u: &[i64]) -> bool {
        let (q, _) = self.coroot_coords_scaled(u);
        q.iter().all(|&x| x >= 0)
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        x.iter().all(|&c| c >= 0)
    }

    pub fn is_strictly_dominant(&self, x: &[i64]) -> bool {
        x.iter().all(|&c| c > 0)
    }

    /// `s_i` applied to a coweight.
    pub fn reflect_coweight(&self, i: usize, x: &mut [i64]) {
        let xi = x[i];
        for (j, v) in x.iter_mut().enumerate() {
            *v -= xi * self.cartan[i][j];
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn integer_inverse_transpose(c: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = c.len();
    // Augmented [C^T | I] over the rationals.
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rational64::from_integer(c[j][i])
                    } else {
                        Rational64::from_integer((j - n == i) as i64)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != Rational64::from_integer(0)).unwrap();
        m.swap(col, p);
        let pv = m[col][col];
        for v in m[col].iter_mut() {
            *v /= pv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Rational64::from_integer(0) {
                    let pivot = m[col].clone();
                    for (v, pv) in m[r].iter_mut().zip(pivot) {
                        *v -= f * pv;
                    }
                }
            }
        }
    }
    let mut den = 1i64;
    for row in &m {
        for v in &row[n..] {
            den = lcm(den, *v.denom());
        }
    }
    let inv = m
        .iter()
        .map(|row| row[n..].iter().map(|v| (v * den).to_integer()).collect())
        .collect();
    (inv, den)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (s, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B3", 9),
            ("C2", 4),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1xC2", 5),
        ] {
            assert_eq!(RootSystem::parse(s).unwrap().num_positive(), n, "{s}");
        }
    }

    #[test]
    fn coroot_pairs_to_two() {
        for s in ["B3", "C3", "G2", "F4", "E6"] {
            let rs = RootSystem::parse(s).unwrap();
            for a in 0..rs.num_positive() {
                assert_eq!(rs.pairing(&rs.coroots[a], a), 2);
            }
        }
    }

    #[test]
    fn rho_pairs_to_height() {
        let rs = RootSystem::parse("C2").unwrap();
        let rho = rs.rho_check();
        for a in 0..rs.num_positive() {
            assert_eq!(rs.pairing(&rho, a), rs.height(a));
        }
        let two_rho: Vec<i64> = rho.iter().map(|x| 2 * x).collect();
        assert!(rs.in_coroot_lattice(&two_rho));
        assert!(!rs.in_coroot_lattice(&[1, 0]) || !rs.in_coroot_lattice(&[0, 1]));
    }

    #[test]
    fn parser() {
        assert!(RootSystem::parse("a1xc2").is_ok());
        assert!(RootSystem::parse("D3").is_err());
        assert!(RootSystem::parse("Q2").is_err());
        let rs = RootSystem::parse("A1xC2").unwrap();
        assert_eq!(rs.factors[1].range(), 1..3);
        assert_eq!(rs.name(), "A1xC2");
    }

    #[test]
    fn a2_highest() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.positive_roots[rs.highest[0]], vec![1, 1]);
        assert_eq!(rs.coxeter_number(0), 3);
    }
}
