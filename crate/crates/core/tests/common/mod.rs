//! Brute-force oracles shared by the integration tests. They use only the
//! Cartan matrix and plain integer arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use linkage::blocks::Mode;
use linkage::RootSystem;

/// `l`-adic valuation of a nonzero integer vector.
pub fn valuation(x: &[i64], ell: i64) -> u32 {
    let mut k = 0;
    let mut m = ell;
    while x.iter().all(|v| v % m == 0) {
        k += 1;
        m *= ell;
    }
    k
}

/// `s_i x = x - x_i alpha_i^vee`, with `alpha_i^vee` the i-th Cartan row.
fn reflect(c: &[Vec<i64>], i: usize, x: &mut [i64]) {
    let xi = x[i];
    for (xj, cij) in x.iter_mut().zip(&c[i]) {
        *xj -= xi * cij;
    }
}

/// Block of `lambda` by generating the orbit of `lambda + rho` under simple
/// reflections and translations by `l^{r+1}` times simple coroots, factor by
/// factor, inside a generous box.
pub fn block_oracle(rs: &RootSystem, lambda: &[i64], ell: i64, radius: i64, mode: Mode) -> BTreeSet<Vec<i64>> {
    let mut per_factor: Vec<Vec<Vec<i64>>> = Vec::new();
    for f in &rs.factors {
        let idx: Vec<usize> = f.range().collect();
        let c: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| rs.cartan[i][j]).collect()).collect();
        let x0: Vec<i64> = idx.iter().map(|&i| lambda[i] + 1).collect();
        let r = valuation(&x0, ell);
        let trivial = mode == Mode::Quantum && r > 0;
        let m = if mode == Mode::Quantum { ell } else { ell.pow(r + 1) };
        let bound = 3 * radius + 4 * m + 8;
        let mut seen: HashSet<Vec<i64>> = HashSet::from([x0.clone()]);
        let mut queue = VecDeque::from([x0.clone()]);
        while let Some(x) = queue.pop_front() {
            if trivial {
                break;
            }
            let mut next = Vec::new();
            for i in 0..idx.len() {
                let mut y = x.clone();
                reflect(&c, i, &mut y);
                next.push(y);
                for sign in [-1, 1] {
                    let y: Vec<i64> = x.iter().zip(&c[i]).map(|(a, b)| a + sign * m * b).collect();
                    next.push(y);
                }
            }
            for y in next {
                if y.iter().all(|v| v.abs() <= bound) && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        per_factor.push(
            seen.into_iter()
                .filter(|x| x.iter().all(|&v| v >= 1))
                .map(|x| x.iter().map(|v| v - 1).collect::<Vec<_>>())
                .filter(|mu| mu.iter().sum::<i64>() <= radius)
                .collect(),
        );
    }
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for part in per_factor {
        out = out
            .into_iter()
            .flat_map(|p| {
                part.iter().map(move |mu| {
                    let mut v = p.clone();
                    v.extend(mu);
                    v
                })
            })
            .collect();
    }
    out.into_iter().filter(|v| v.iter().sum::<i64>() <= radius).collect()
}

/// Number of hyperplanes separating an alcove (as `n_alpha` values) from the
/// fundamental alcove.
pub fn hyperplane_distance(n: &[i64]) -> i64 {
    n.iter().map(|v| (v - 1).abs()).sum()
}
