//! Blocks of dominant weights, the relation on `fW^g` generated by
//! nonvanishing `n_{x,y}(1)`, and explicit linking chains.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::affine_weyl::{AffineWeyl, Alcove, QPoint, UnitFacet};
use crate::error::{Error, Result};
use crate::hecke::Hecke;
use crate::root_data::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Modular,
    Quantum,
}

/// `l`-adic valuation of a nonzero coweight in the coweight lattice.
pub fn r_of(lambda: &[i64], ell: i64) -> Result<u32> {
    if lambda.iter().all(|&x| x == 0) {
        return Err(Error::Usage("r is undefined for the zero coweight".into()));
    }
    Ok(lambda
        .iter()
        .filter(|&&x| x != 0)
        .map(|&x| {
            let mut x = x;
            let mut k = 0;
            while x % ell == 0 {
                x /= ell;
                k += 1;
            }
            k
        })
        .min()
        .unwrap())
}

pub fn delta_of(mu: &[i64], ell: i64) -> Result<u32> {
    Ok((r_of(mu, ell)? == 0) as u32)
}

fn plus_rho(lambda: &[i64]) -> Vec<i64> {
    lambda.iter().map(|x| x + 1).collect()
}

/// Checks the constraints on `l` for a mode.
pub fn check_ell(rs: &RootSystem, ell: i64, mode: Mode, allow_unsupported: bool) -> Result<()> {
    if ell < 2 {
        return Err(Error::Usage("ell must be at least 2".into()));
    }
    if mode == Mode::Quantum && !allow_unsupported {
        let h = rs.max_coxeter_number();
        if ell % 2 == 0 || ell <= h {
            return Err(Error::Theory(format!(
                "quantum mode needs ell odd and greater than the Coxeter number {h}"
            )));
        }
        let g2 = rs.factors.iter().any(|f| f.kind == crate::root_data::CartanType::G);
        if g2 && ell == 3 {
            return Err(Error::Theory("quantum mode excludes ell = 3 for type G2".into()));
        }
    }
    Ok(())
}

/// Where `lambda + rho` sits relative to the `box_l` action.
#[derive(Clone, Debug)]
pub struct FacetContext {
    pub ell: i64,
    /// Orbit representative of `(lambda + rho) / l` in the closed fundamental alcove.
    pub rep: QPoint,
    pub g: UnitFacet,
    pub stabilizer_order: usize,
    /// Element of `fW^g` with `w box_1 rep = (lambda + rho) / l`.
    pub w: Alcove,
    pub special: bool,
}

impl FacetContext {
    pub fn new(aw: &AffineWeyl, lambda: &[i64], ell: i64) -> Result<Self> {
        if !aw.rs.is_dominant(lambda) {
            return Err(Error::Usage(format!("weight {lambda:?} is not dominant")));
        }
        let x = QPoint::new(plus_rho(lambda), ell);
        let (rep, w) = aw.orbit_representative(&x);
        let g = aw.unit_facet_of(&rep)?;
        let w = aw.max_in_coset(&aw.alcove_of(&w), &g);
        if !aw.is_in_fwg(&w, &g) {
            return Err(Error::Invariant("parametrizing element not in fW^g".into()));
        }
        Ok(FacetContext {
            ell,
            special: aw.is_special(&g),
            stabilizer_order: aw.stabilizer(&g).len(),
            rep,
            g,
            w,
        })
    }

    /// The dominant weight `l (w box_1 rep) - rho` attached to `w ∈ fW^g`.
    pub fn weight(&self, aw: &AffineWeyl, w: &Alcove) -> Vec<i64> {
        let p = self.rep.act(&aw.element_of(w)).scale(self.ell, 1);
        p.as_integral().expect("integral weight").iter().map(|x| x - 1).collect()
    }
}

pub fn same_orbit(aw: &AffineWeyl, lambda: &[i64], mu: &[i64], ell: i64) -> bool {
    let a = aw.orbit_representative(&QPoint::new(plus_rho(lambda), ell)).0;
    let b = aw.orbit_representative(&QPoint::new(plus_rho(mu), ell)).0;
    a == b
}

/// `n_{w',w}(1) != 0` or `n_{w,w'}(1) != 0`, for `w, w' ∈ fW^g`.
pub fn relation_edge(h: &Hecke, w: &Alcove, w2: &Alcove, g: &UnitFacet) -> Result<bool> {
    if !h.aw.is_in_fwg(w, g) || !h.aw.is_in_fwg(w2, g) {
        return Err(Error::Usage("relation_edge needs elements of fW^g".into()));
    }
    Ok(h.n_at_one(w2, w) != 0 || h.n_at_one(w, w2) != 0)
}

struct Factorized {
    parts: Vec<(AffineWeyl, Vec<i64>)>,
}

fn factorize(rs: &RootSystem, lambda: &[i64]) -> Factorized {
    let parts = rs
        .factors
        .iter()
        .zip(rs.decompose_irreducible())
        .map(|(f, frs)| (AffineWeyl::new(frs), lambda[f.range()].to_vec()))
        .collect();
    Factorized { parts }
}

/// Group acting on one factor: `None` for the trivial group, else `Some(r)`
/// for `W^{(r)} = W_0 ⋉ l^r ZR^vee`.
fn factor_group(lambda: &[i64], ell: i64, mode: Mode) -> Result<Option<u32>> {
    let r = r_of(&plus_rho(lambda), ell)?;
    Ok(match mode {
        Mode::Modular => Some(r),
        Mode::Quantum if r == 0 => Some(0),
        Mode::Quantum => None,
    })
}

/// Is `mu ∈ W^{(r)} ._l lambda`, i.e. `mu + rho ∈ W_0 (lambda + rho) + l^{r+1} ZR^vee`.
fn factor_linked(aw: &AffineWeyl, lambda: &[i64], mu: &[i64], ell: i64, group: Option<u32>) -> bool {
    match group {
        None => lambda == mu,
        Some(r) => {
            let m = ell.pow(r + 1);
            let a = aw.orbit_representative(&QPoint::new(plus_rho(lambda), m)).0;
            let b = aw.orbit_representative(&QPoint::new(plus_rho(mu), m)).0;
            a == b
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockResult {
    pub r: Vec<u32>,
    pub block: Vec<Vec<i64>>,
    pub certified: bool,
}

/// Dominant weights in the block of `lambda`, with every factor of height at
/// most `radius` and total height at most `radius`.
pub fn block_of(rs: &RootSystem, lambda: &[i64], ell: i64, radius: i64, mode: Mode) -> Result<BlockResult> {
    if lambda.len() != rs.rank || !rs.is_dominant(lambda) {
        return Err(Error::Usage(format!("{lambda:?} is not a dominant weight of {rs}")));
    }
    let fz = factorize(rs, lambda);
    let mut r = Vec::new();
    let mut per_factor: Vec<Vec<Vec<i64>>> = Vec::new();
    for (aw, lam) in &fz.parts {
        r.push(r_of(&plus_rho(lam), ell)?);
        let group = factor_group(lam, ell, mode)?;
        per_factor.push(
            aw.dominant_weights_within(radius)
                .into_iter()
                .filter(|mu| factor_linked(aw, lam, mu, ell, group))
                .collect(),
        );
    }
    let mut block: Vec<Vec<i64>> = vec![Vec::new()];
    for part in &per_factor {
        let mut next = Vec::new();
        for prefix in &block {
            for mu in part {
                let mut v = prefix.clone();
                v.extend(mu);
                if v.iter().sum::<i64>() <= radius {
                    next.push(v);
                }
            }
        }
        block = next;
    }
    block.sort();
    Ok(BlockResult {
        r,
        certified: lambda.iter().sum::<i64>() <= radius,
        block,
    })
}

/// Same-block test without region truncation.
pub fn in_same_block(rs: &RootSystem, lambda: &[i64], mu: &[i64], ell: i64, mode: Mode) -> Result<bool> {
    let a = factorize(rs, lambda);
    let b = factorize(rs, mu);
    for ((aw, lam), (_, m)) in a.parts.iter().zip(&b.parts) {
        if !factor_linked(aw, lam, m, ell, factor_group(lam, ell, mode)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub witness: Alcove,
    /// `n_{from, witness}(1)` and `n_{to, witness}(1)`.
    pub n_from: i64,
    pub n_to: i64,
}

/// A path in `fW^g` from `w` to the element attached to `rho + a_1`.
#[derive(Clone, Debug)]
pub struct FacetPath {
    pub nodes: Vec<Alcove>,
    pub steps: Vec<Step>,
    /// `d(hat(A_w) - rho)`.
    pub depth: i64,
}

fn verified_step(h: &Hecke, a: &Alcove, b: &Alcove, u: &Alcove, g: &UnitFacet) -> Result<Step> {
    if !h.aw.is_in_fwg(u, g) {
        return Err(Error::Invariant(format!("witness {u:?} is not in fW^g")));
    }
    let step = Step {
        witness: u.clone(),
        n_from: h.n_at_one(a, u),
        n_to: h.n_at_one(b, u),
    };
    if step.n_from == 0 || step.n_to == 0 {
        return Err(Error::Invariant(format!(
            "witness {u:?} between {a:?} and {b:?} has a vanishing n-value"
        )));
    }
    Ok(step)
}

/// Hat `w` into `rho + C_0^+`, then walk the alcoves down to `rho + a_1`.
/// The facet `g` must not be special; the root system must be irreducible.
pub fn path_to_base(h: &Hecke, w: &Alcove, g: &UnitFacet) -> Result<FacetPath> {
    let aw = &h.aw;
    if aw.rs.factors.len() != 1 {
        return Err(Error::Usage("chains need an irreducible root system".into()));
    }
    if aw.is_special(g) {
        return Err(Error::Usage("chains need a non-special facet".into()));
    }
    if !aw.is_in_fwg(w, g) {
        return Err(Error::Usage(format!("{w:?} is not in fW^g")));
    }
    let rho = aw.rs.rho_check();
    let neg_rho: Vec<i64> = rho.iter().map(|x| -x).collect();
    let base = aw.translate(&aw.fundamental(), &rho);
    let wg = aw.longest_in_stabilizer(g);
    let a_min = aw.mul_alcoves(w, &wg);
    let a_hat = aw.hat(&a_min);
    let depth = aw.length(&aw.translate(&a_hat, &neg_rho));
    let w_hat = aw.max_in_coset(&a_hat, g);

    let mut nodes = vec![w.clone()];
    let mut steps = Vec::new();
    if w_hat != *w {
        steps.push(verified_step(h, w, &w_hat, &w_hat, g)?);
        nodes.push(w_hat);
    }
    let point = aw.is_point(g);
    let mut cur = a_hat;
    while cur != base {
        let l = aw.length(&cur);
        let (s, next) = (0..aw.num_gens())
            .map(|s| (s, aw.right_gen(&cur, s)))
            .find(|(_, b)| aw.length(b) < l && aw.is_rho_deep(b))
            .ok_or_else(|| Error::Invariant(format!("no descent from {cur:?} inside rho + C_0^+")))?;
        if !g.gens.contains(&s) {
            let prev = nodes.last().unwrap().clone();
            let node = aw.max_in_coset(&next, g);
            let u = if point {
                let v = aw.element_of(&next).act(&vec![0; aw.rank()], 1);
                aw.max_in_coset(&aw.translate(&aw.fundamental(), &v), g)
            } else {
                let mut q = g.gens.clone();
                q.push(s);
                aw.max_in_coset(&node, &aw.unit_facet(q)?)
            };
            steps.push(verified_step(h, &prev, &node, &u, g)?);
            nodes.push(node);
        }
        cur = next;
    }
    Ok(FacetPath { nodes, steps, depth })
}

/// Chain of `fW^g` elements from `w` to `w2` with witnesses, and the bound
/// `2 + depth(w) + depth(w2)`.
pub fn facet_chain(h: &Hecke, w: &Alcove, w2: &Alcove, g: &UnitFacet) -> Result<(Vec<Alcove>, Vec<Step>, i64)> {
    let p = path_to_base(h, w, g)?;
    let q = path_to_base(h, w2, g)?;
    let bound = 2 + p.depth + q.depth;
    let mut nodes = p.nodes.clone();
    let mut steps = p.steps.clone();
    for i in (0..q.steps.len()).rev() {
        let s = &q.steps[i];
        steps.push(Step {
            witness: s.witness.clone(),
            n_from: s.n_to,
            n_to: s.n_from,
        });
        nodes.push(q.nodes[i].clone());
    }
    // Erase loops: jump from each node to its last occurrence.
    let mut last: HashMap<&Alcove, usize> = HashMap::new();
    for (i, n) in nodes.iter().enumerate() {
        last.insert(n, i);
    }
    let mut out_nodes = Vec::new();
    let mut out_steps = Vec::new();
    let mut i = 0;
    loop {
        let j = last[&nodes[i]];
        out_nodes.push(nodes[j].clone());
        if j + 1 >= nodes.len() {
            break;
        }
        out_steps.push(steps[j].clone());
        i = j + 1;
    }
    Ok((out_nodes, out_steps, bound))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainWitness {
    pub weight: Vec<i64>,
    pub n_from: i64,
    pub n_to: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainResult {
    pub chain: Vec<Vec<i64>>,
    pub witnesses: Vec<ChainWitness>,
    pub bound: i64,
    pub length: usize,
    pub r: u32,
    pub certified: bool,
}

/// A chain of dominant weights from `lambda` to `mu` in one block, each
/// consecutive pair linked through a witness with nonvanishing n-values.
pub fn chain_between(h: &Hecke, lambda: &[i64], mu: &[i64], ell: i64) -> Result<ChainResult> {
    let aw = &h.aw;
    let rs = &aw.rs;
    if rs.factors.len() != 1 {
        return Err(Error::Usage("chains need an irreducible root system".into()));
    }
    for x in [lambda, mu] {
        if x.len() != rs.rank || !rs.is_dominant(x) {
            return Err(Error::Usage(format!("{x:?} is not a dominant weight of {rs}")));
        }
    }
    check_ell(rs, ell, Mode::Modular, false)?;
    if !in_same_block(rs, lambda, mu, ell, Mode::Modular)? {
        let rep = |x: &[i64]| {
            let r = r_of(&plus_rho(x), ell).unwrap();
            let m = ell.pow(r + 1);
            let p = aw.orbit_representative(&QPoint::new(plus_rho(x), m)).0;
            format!("r = {r}, representative {:?} of lambda + rho", p.scale(m, 1).num)
        };
        return Err(Error::DifferentBlocks(format!(
            "{lambda:?} has {}; {mu:?} has {}",
            rep(lambda),
            rep(mu)
        )));
    }
    let r = r_of(&plus_rho(lambda), ell)?;
    if lambda == mu {
        return Ok(ChainResult {
            chain: vec![lambda.to_vec()],
            witnesses: Vec::new(),
            bound: 0,
            length: 0,
            r,
            certified: true,
        });
    }
    let scale = ell.pow(r);
    let reduce = |x: &[i64]| -> Vec<i64> { x.iter().map(|v| (v + 1) / scale - 1).collect() };
    let lift = |x: Vec<i64>| -> Vec<i64> { x.into_iter().map(|v| (v + 1) * scale - 1).collect() };
    let ca = FacetContext::new(aw, &reduce(lambda), ell)?;
    let cb = FacetContext::new(aw, &reduce(mu), ell)?;
    if ca.rep != cb.rep {
        return Err(Error::Invariant("reduced weights lie in different orbits".into()));
    }
    let (nodes, steps, bound) = facet_chain(h, &ca.w, &cb.w, &ca.g)?;
    let chain = nodes.iter().map(|n| lift(ca.weight(aw, n))).collect();
    let witnesses = steps
        .iter()
        .map(|s| ChainWitness {
            weight: lift(ca.weight(aw, &s.witness)),
            n_from: s.n_from,
            n_to: s.n_to,
        })
        .collect();
    let length = steps.len();
    Ok(ChainResult {
        chain,
        witnesses,
        bound,
        length,
        r,
        certified: length as i64 <= bound,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partition of `0..n` from a union-find, classes sorted by first member.
fn classes_of(uf: &mut UnionFind, n: usize) -> Vec<Vec<usize>> {
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
    out.sort();
    out
}

/// Closure of the n-relation on `members ⊂ fW^g`, over the set saturated by
/// every member's path to the base element. Returns (classes, saturated size,
/// certified).
pub fn n_closure(h: &Hecke, g: &UnitFacet, members: &[Alcove]) -> (Vec<Vec<usize>>, usize, bool) {
    let mut nodes: Vec<Alcove> = members.to_vec();
    let mut certified = true;
    for w in members {
        match path_to_base(h, w, g) {
            Ok(p) => {
                nodes.extend(p.nodes);
                nodes.extend(p.steps.into_iter().map(|s| s.witness));
            }
            Err(_) => certified = false,
        }
    }
    let set: BTreeSet<Alcove> = nodes.into_iter().collect();
    let mut order: Vec<Alcove> = members.to_vec();
    order.extend(set.into_iter().filter(|a| !members.contains(a)));
    let index: HashMap<&Alcove, usize> = order.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut uf = UnionFind::new(order.len());
    for (j, y) in order.iter().enumerate() {
        for (x, p) in h.canonical_n(y).iter() {
            if let Some(&i) = index.get(x) {
                if p.eval_one() != 0 {
                    uf.union(i, j);
                }
            }
        }
    }
    let all = classes_of(&mut uf, order.len());
    let classes = all
        .into_iter()
        .map(|c| c.into_iter().filter(|&i| i < members.len()).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    (classes, order.len(), certified)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub members: Vec<Alcove>,
    pub closure: Vec<Vec<usize>>,
    pub formula: Vec<Vec<usize>>,
    pub saturated: usize,
    pub special: bool,
    pub certified: bool,
}

impl ClosureReport {
    pub fn agrees(&self) -> bool {
        self.closure == self.formula
    }
}

/// Partition of `fW^g` (length at most `radius`) under the relation, next to
/// the coset-formula partition. With `ell = None` a special facet is treated
/// in characteristic zero, where classes are singletons.
pub fn closure_oracle(h: &Hecke, g: &UnitFacet, radius: i64, ell: Option<i64>) -> Result<ClosureReport> {
    let aw = &h.aw;
    if aw.rs.factors.len() != 1 {
        return Err(Error::Usage("closure needs an irreducible root system".into()));
    }
    let members = aw.fwg_within(g, radius);
    let n = members.len();
    if !aw.is_special(g) {
        let (closure, saturated, certified) = n_closure(h, g, &members);
        return Ok(ClosureReport {
            formula: if n == 0 { Vec::new() } else { vec![(0..n).collect()] },
            members,
            closure,
            saturated,
            special: false,
            certified,
        });
    }
    let nu = aw.facet_sample(g).as_integral().expect("special point");
    let points: Vec<Vec<i64>> = members.iter().map(|w| aw.element_of(w).act(&nu, 1)).collect();
    let Some(ell) = ell else {
        let index: HashMap<&Alcove, usize> = members.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut uf = UnionFind::new(n);
        for (j, y) in members.iter().enumerate() {
            for (x, p) in h.canonical_n(y).iter() {
                if let Some(&i) = index.get(x) {
                    if p.eval_one() != 0 {
                        uf.union(i, j);
                    }
                }
            }
        }
        return Ok(ClosureReport {
            closure: classes_of(&mut uf, n),
            formula: (0..n).map(|i| vec![i]).collect(),
            members,
            saturated: n,
            special: true,
            certified: true,
        });
    };

    // Formula: w ~ w' iff w' nu ∈ W_0 (w nu) + l^{r+1} ZR^vee.
    let rs = &aw.rs;
    let mut uf = UnionFind::new(n);
    let rvals: Vec<u32> = points.iter().map(|p| r_of(p, ell)).collect::<Result<_>>()?;
    let finite: Vec<_> = aw.finite_group().iter().map(|z| aw.element_of(z)).collect();
    for i in 0..n {
        let m = ell.pow(rvals[i] + 1);
        for j in i + 1..n {
            let linked = finite.iter().any(|z| {
                let zi = z.apply_linear(&points[i]);
                let d: Vec<i64> = points[j].iter().zip(&zi).map(|(a, b)| a - b).collect();
                d.iter().all(|x| x % m == 0)
                    && rs.in_coroot_lattice(&d.iter().map(|x| x / m).collect::<Vec<_>>())
            });
            if linked {
                uf.union(i, j);
            }
        }
    }
    let formula = classes_of(&mut uf, n);

    // Closure: divide by l^r, then n-closure on the non-special facet of the
    // reduced weight, grouped by orbit.
    let mut groups: BTreeMap<(u32, QPoint), Vec<usize>> = BTreeMap::new();
    let mut reduced: Vec<Option<FacetContext>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let s = ell.pow(rvals[i]);
        let lam: Vec<i64> = p.iter().map(|x| x / s - 1).collect();
        let ctx = FacetContext::new(aw, &lam, ell)?;
        groups.entry((rvals[i], ctx.rep.clone())).or_default().push(i);
        reduced.push(Some(ctx));
    }
    let mut uf = UnionFind::new(n);
    let mut saturated = 0;
    let mut certified = true;
    for idx in groups.values() {
        let ctx = reduced[idx[0]].as_ref().unwrap();
        let elems: Vec<Alcove> = idx.iter().map(|&i| reduced[i].as_ref().unwrap().w.clone()).collect();
        let mut distinct: Vec<Alcove> = elems.clone();
        distinct.sort();
        distinct.dedup();
        let (cls, sat, cert) = n_closure(h, &ctx.g, &distinct);
        saturated += sat;
        certified &= cert;
        for c in cls {
            let set: BTreeSet<&Alcove> = c.iter().map(|&k| &distinct[k]).collect();
            let mine: Vec<usize> = idx
                .iter()
                .zip(&elems)
                .filter(|(_, e)| set.contains(e))
                .map(|(&i, _)| i)
                .collect();
            for w in mine.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    Ok(ClosureReport {
        closure: classes_of(&mut uf, n),
        formula,
        members,
        saturated,
        special: true,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(r_of(&[3], 3).unwrap(), 1);
        assert_eq!(r_of(&[1], 3).unwrap(), 0);
        assert_eq!(delta_of(&[1], 3).unwrap(), 1);
        assert_eq!(r_of(&[5, 10], 5).unwrap(), 1);
        assert!(r_of(&[0, 0], 5).is_err());
    }

    #[test]
    fn a1_blocks() {
        let rs = RootSystem::parse("A1").unwrap();
        let b = block_of(&rs, &[0], 3, 20, Mode::Modular).unwrap();
        let flat: Vec<i64> = b.block.iter().map(|v| v[0]).collect();
        assert_eq!(flat, vec![0, 4, 6, 10, 12, 16, 18]);
        let b = block_of(&rs, &[2], 3, 20, Mode::Modular).unwrap();
        let flat: Vec<i64> = b.block.iter().map(|v| v[0]).collect();
        assert_eq!(flat, vec![2, 14, 20]);
        let b = block_of(&rs, &[2], 3, 20, Mode::Quantum).unwrap();
        assert_eq!(b.block, vec![vec![2]]);
    }

    #[test]
    fn a1_contexts() {
        let aw = AffineWeyl::parse("A1").unwrap();
        let c = FacetContext::new(&aw, &[0], 3).unwrap();
        assert!(c.g.gens.is_empty());
        assert_eq!(c.stabilizer_order, 1);
        let c = FacetContext::new(&aw, &[2], 3).unwrap();
        assert_eq!(c.g.gens, vec![1]);
        assert!(c.special);
        assert!(same_orbit(&aw, &[0], &[4], 3));
        assert!(!same_orbit(&aw, &[0], &[1], 3));
    }

    #[test]
    fn a1_chain() {
        let h = Hecke::parse("A1").unwrap();
        let c = chain_between(&h, &[0], &[6], 3).unwrap();
        assert_eq!(c.bound, 4);
        assert!(c.length <= 4);
        assert_eq!(c.chain.first().unwrap(), &vec![0]);
        assert_eq!(c.chain.last().unwrap(), &vec![6]);
        let c = chain_between(&h, &[2], &[14], 3).unwrap();
        assert_eq!(c.r, 1);
        assert_eq!(c.chain.last().unwrap(), &vec![14]);
        assert!(matches!(chain_between(&h, &[0], &[1], 3), Err(Error::DifferentBlocks(_))));
        assert_eq!(chain_between(&h, &[4], &[4], 3).unwrap().length, 0);
    }

    #[test]
    fn a1_closure() {
        let h = Hecke::parse("A1").unwrap();
        let rep = closure_oracle(&h, &h.aw.fundamental_facet(), 6, None).unwrap();
        assert_eq!(rep.closure.len(), 1);
        for ell in [2, 3, 5] {
            for g in h.aw.unit_facets() {
                let rep = closure_oracle(&h, &g, 8, Some(ell)).unwrap();
                assert!(rep.agrees(), "{g:?} {ell} {rep:?}");
                assert!(rep.certified);
            }
        }
    }
}
