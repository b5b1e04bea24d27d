//! Acceptance suite: nine criteria, exact equality throughout. Prints one
//! line per criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use linkage::blocks::{self, FacetContext, Mode};
use linkage::cache::CacheFile;
use linkage::verify::{self, Report, Suite};
use linkage::{Hecke, RootSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Job = (&'static str, Suite, i64, Option<i64>);

fn suite_jobs(criterion: u32) -> Vec<Job> {
    match criterion {
        1 => vec![
            ("A1", Suite::Hat, 12, None),
            ("A2", Suite::Hat, 6, None),
            ("C2", Suite::Hat, 6, None),
            ("G2", Suite::Hat, 6, None),
        ],
        2 => vec![("A1", Suite::Soergel, 5, None), ("A2", Suite::Soergel, 5, None)],
        3 => vec![("C2", Suite::Coset, 5, None)],
        4 => vec![("A1", Suite::PeriodicInv, 5, None), ("A2", Suite::PeriodicInv, 5, None)],
        5 => vec![
            ("A1", Suite::Closure, 10, Some(2)),
            ("A1", Suite::Closure, 10, Some(3)),
            ("A1", Suite::Closure, 10, Some(5)),
            ("A2", Suite::Closure, 10, Some(2)),
            ("A2", Suite::Closure, 10, Some(3)),
            ("C2", Suite::Closure, 10, Some(2)),
        ],
        7 => vec![
            ("A1", Suite::Chain, 12, Some(3)),
            ("A2", Suite::Chain, 8, Some(2)),
            ("C2", Suite::Chain, 8, Some(2)),
        ],
        8 => ["A2", "C2", "G2", "A1xA1"]
            .into_iter()
            .flat_map(|t| [(t, Suite::ReverseOrder, 5, None), (t, Suite::HVsN, 5, None)])
            .collect(),
        _ => Vec::new(),
    }
}

struct Engines(BTreeMap<&'static str, Hecke>);

impl Engines {
    fn new() -> Self {
        Engines(BTreeMap::new())
    }

    fn get(&mut self, t: &'static str) -> &Hecke {
        self.0.entry(t).or_insert_with(|| Hecke::parse(t).unwrap())
    }
}

fn run_jobs(engines: &mut Engines, jobs: &[Job]) -> (Vec<Report>, String) {
    let mut reports = Vec::new();
    let mut text = String::new();
    for &(t, suite, radius, ell) in jobs {
        let r = verify::run(engines.get(t), suite, radius, ell).expect("suite runs");
        text.push_str(&serde_json::to_string(&r).unwrap());
        text.push('\n');
        reports.push(r);
    }
    (reports, text)
}

fn summarize(reports: &[Report]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in reports {
        ok &= r.pass && r.instances > 0;
        parts.push(format!("{} {}{}: {}/{}", r.root_type, r.suite, r.ell.map(|l| format!(" l={l}")).unwrap_or_default(), r.instances - r.failures, r.instances));
        for f in r.results.iter().filter(|f| !f.pass).take(2) {
            parts.push(format!("  counterexample {}: {}", f.id, serde_json::to_string(&f.counterexample).unwrap()));
        }
    }
    (ok, parts.join("; "))
}

fn suite_criterion(engines: &mut Engines, n: u32) -> (bool, String) {
    let (reports, _) = run_jobs(engines, &suite_jobs(n));
    summarize(&reports)
}

/// Closure against formula, plus an explicit single-class check on non-special facets.
fn criterion5(engines: &mut Engines) -> (bool, String) {
    let (reports, _) = run_jobs(engines, &suite_jobs(5));
    let (mut ok, detail) = summarize(&reports);
    for &(t, _, radius, ell) in &suite_jobs(5) {
        let h = engines.get(t);
        for g in h.aw.unit_facets() {
            if h.aw.is_special(&g) {
                continue;
            }
            let rep = blocks::closure_oracle(h, &g, radius, ell).unwrap();
            ok &= rep.certified && rep.closure.len() == 1 && !rep.members.is_empty();
        }
    }
    (ok, detail)
}

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(0..=max)).collect()
}

fn criterion6() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let types: [(&str, &[i64], &[i64]); 4] = [
        ("A1", &[2, 3, 5], &[3, 5]),
        ("A2", &[2, 3, 5], &[5]),
        ("C2", &[2, 3, 5], &[5]),
        ("A1xA1", &[2, 3, 5], &[3, 5]),
    ];
    let mut failures = Vec::new();
    let mut sizes = 0;
    for q in 0..50 {
        let (t, ells, qells) = types[q % 4];
        let rs = RootSystem::parse(t).unwrap();
        let quantum = rng.gen_bool(0.3);
        let (mode, ell) = if quantum {
            (Mode::Quantum, *qells.choose(&mut rng).unwrap())
        } else {
            (Mode::Modular, *ells.choose(&mut rng).unwrap())
        };
        let mut lambda = random_dominant(&mut rng, rs.rank, 6);
        if rng.gen_bool(0.3) {
            lambda = lambda.iter().map(|x| (x + 1) * ell - 1).collect();
        }
        let radius = lambda.iter().sum::<i64>() + rng.gen_range(4..=16);
        let got = blocks::block_of(&rs, &lambda, ell, radius, mode).unwrap();
        let want = common::block_oracle(&rs, &lambda, ell, radius, mode);
        let got_set: std::collections::BTreeSet<Vec<i64>> = got.block.iter().cloned().collect();
        sizes += got.block.len();
        if got_set != want || got_set.len() != got.block.len() {
            failures.push(format!("{t} {mode:?} l={ell} {lambda:?} R={radius}"));
        }
    }
    (failures.is_empty(), format!("50 queries, {sizes} weights total, mismatches: {failures:?}"))
}

/// Reduces a weight of a chain by `l^r` and returns its facet context.
fn reduced_context(h: &Hecke, x: &[i64], ell: i64, r: u32) -> FacetContext {
    let s = ell.pow(r);
    let y: Vec<i64> = x.iter().map(|v| (v + 1) / s - 1).collect();
    FacetContext::new(&h.aw, &y, ell).unwrap()
}

fn independent_bound(h: &Hecke, ctx: &FacetContext) -> i64 {
    let aw = &h.aw;
    let a = aw.mul_alcoves(&ctx.w, &aw.longest_in_stabilizer(&ctx.g));
    let neg: Vec<i64> = aw.rs.rho_check().iter().map(|x| -x).collect();
    common::hyperplane_distance(&aw.translate(&aw.hat(&a), &neg).0)
}

fn criterion7(engines: &mut Engines) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let types: [(&'static str, &[i64]); 3] = [("A1", &[2, 3, 5]), ("A2", &[2, 3]), ("C2", &[2, 3])];
    let mut done = 0;
    let mut dilated = 0;
    let mut max_len = 0;
    let mut failures = Vec::new();
    while done < 30 {
        let (t, ells) = types[done % 3];
        let ell = *ells.choose(&mut rng).unwrap();
        let h = engines.get(t);
        let rs = &h.aw.rs;
        let mut lambda = random_dominant(&mut rng, rs.rank, 3);
        if done < 10 {
            lambda = lambda.iter().map(|x| (x + 1) * ell - 1).collect();
        }
        let radius = lambda.iter().sum::<i64>() + 3 * ell;
        let block = blocks::block_of(rs, &lambda, ell, radius, Mode::Modular).unwrap().block;
        let others: Vec<&Vec<i64>> = block.iter().filter(|m| **m != lambda).collect();
        let Some(mu) = others.choose(&mut rng).map(|m| (*m).clone()) else { continue };
        done += 1;
        let id = format!("{t} l={ell} {lambda:?} -> {mu:?}");
        let c = match blocks::chain_between(h, &lambda, &mu, ell) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("{id}: {e}"));
                continue;
            }
        };
        let r = common::valuation(&lambda.iter().map(|x| x + 1).collect::<Vec<_>>(), ell);
        if r > 0 {
            dilated += 1;
        }
        let oracle = common::block_oracle(rs, &lambda, ell, radius.max(mu.iter().sum()), Mode::Modular);
        let mut ok = c.chain.first() == Some(&lambda) && c.chain.last() == Some(&mu) && oracle.contains(&mu);
        ok &= c.witnesses.len() + 1 == c.chain.len() && c.length == c.witnesses.len();
        for (i, w) in c.witnesses.iter().enumerate() {
            let a = reduced_context(h, &c.chain[i], ell, r);
            let b = reduced_context(h, &c.chain[i + 1], ell, r);
            let u = reduced_context(h, &w.weight, ell, r);
            ok &= a.rep == u.rep && b.rep == u.rep;
            ok &= h.n_at_one(&a.w, &u.w) != 0 && h.n_at_one(&b.w, &u.w) != 0;
        }
        let bound = 2
            + independent_bound(h, &reduced_context(h, &lambda, ell, r))
            + independent_bound(h, &reduced_context(h, &mu, ell, r));
        ok &= c.bound == bound && (c.length as i64) <= bound && c.certified;
        max_len = max_len.max(c.length);
        if !ok {
            failures.push(id);
        }
    }
    let (reports, _) = run_jobs(engines, &suite_jobs(7));
    let (suites_ok, detail) = summarize(&reports);
    (
        failures.is_empty() && suites_ok && dilated >= 10,
        format!("30 random pairs ({dilated} with r >= 1, longest chain {max_len}), failures: {failures:?}; {detail}"),
    )
}

fn criterion9() -> (bool, String) {
    let jobs: Vec<Job> = [1, 2, 3, 4, 5, 7, 8].into_iter().flat_map(suite_jobs).collect();
    let mut cold = Engines::new();
    let (_, cold_text) = run_jobs(&mut cold, &jobs);

    let mut file = CacheFile::default();
    for h in cold.0.values() {
        file.absorb(h);
    }
    let exported = file.render();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    file.save(&path).unwrap();
    let on_disk = std::fs::read_to_string(&path).unwrap();

    let loaded = CacheFile::load(&path).unwrap();
    let mut warm = Engines::new();
    let mut imported = 0;
    for &(t, ..) in &jobs {
        if !warm.0.contains_key(t) {
            imported += loaded.import_into(warm.get(t)).unwrap();
        }
    }
    let mut again = CacheFile::default();
    for h in warm.0.values() {
        again.absorb(h);
    }
    let round_trip = again.render() == exported && on_disk == exported;

    let (_, warm_text) = run_jobs(&mut warm, &jobs);
    let identical = warm_text == cold_text;
    (
        round_trip && identical,
        format!(
            "{} reports ({} bytes) identical cold/warm: {identical}; {imported} records, export/import/export bit-exact: {round_trip}",
            jobs.len(),
            cold_text.len()
        ),
    )
}

fn main() {
    let names = [
        "hat identity",
        "Soergel identity",
        "coset invariance",
        "periodic invariance and support",
        "block formula vs closure",
        "block sets vs orbit oracle",
        "chain bound",
        "order reversal and h/n identity",
        "determinism and persistence",
    ];
    let mut engines = Engines::new();
    let mut all = true;
    for n in 1..=9u32 {
        let t0 = Instant::now();
        let (ok, detail) = match n {
            5 => criterion5(&mut engines),
            6 => criterion6(),
            7 => criterion7(&mut engines),
            9 => criterion9(),
            _ => suite_criterion(&mut engines, n),
        };
        all &= ok;
        println!(
            "criterion {n} ({}): {} [{:.2}s] {detail}",
            names[n as usize - 1],
            if ok { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
