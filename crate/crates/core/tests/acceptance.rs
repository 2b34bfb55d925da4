//! Acceptance run: one PASS / FAIL / SKIP line per criterion.
//!
//! Criterion 7 needs the benchmark instances `dbl-20.pup` and `tri-34.pup`
//! in the instance text format, located in the directory named by the
//! `PUP_BENCH_DIR` environment variable. Without them it is skipped.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pup::oracle::{binpack_decide, oracle_decide, oracle_decide_with_guard, oracle_min_units};
use pup::{
    binpack_to_pup_iucap2, double_binpack, lift_iucap0_to_1, parse_instance, solve, verify_solution,
    BinPackingInstance, Instance, SolveConfig, SolveOutcome, SolveResult,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

/// Solutions seen across all suites, checked by criteria 2, 8 and 9.
#[derive(Default)]
struct Ledger {
    /// `(suite, instance, config)` of every solved instance.
    solved: Vec<(&'static str, Instance, SolveConfig)>,
    /// Satisfiable results that failed verification.
    unsound: Vec<String>,
    /// Satisfiable results where minimize grew the unit count.
    grown: Vec<String>,
    sat_count: usize,
}

impl Ledger {
    fn solve(&mut self, suite: &'static str, inst: &Instance, cfg: &SolveConfig) -> SolveOutcome {
        let out = solve(inst, cfg);
        if let SolveResult::Satisfiable(g) = &out.result {
            self.sat_count += 1;
            let v = verify_solution(inst, g);
            if !v.is_empty() {
                self.unsound.push(format!("{suite}: {:?}", v));
            }
            if let (Some(before), Some(after)) = (out.stats.units_before_minimize, out.stats.units) {
                if after > before {
                    self.grown.push(format!("{suite}: {before} -> {after}"));
                }
            }
        }
        self.solved.push((suite, inst.clone(), cfg.clone()));
        out
    }
}

fn oracle_agreement(ledger: &mut Ledger) -> Verdict {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let cfg = SolveConfig::new(10_000, None).unwrap();
    let (mut disagreements, mut timeouts) = (0, 0);
    let n = 2000;
    for _ in 0..n {
        let inst = common::random_instance(&mut rng, 4);
        let out = ledger.solve("random", &inst, &cfg);
        let expected = oracle_decide(&inst, inst.len().max(1)).unwrap().is_sat();
        match out.result {
            SolveResult::Timeout => timeouts += 1,
            ref r if r.is_satisfiable() != expected => disagreements += 1,
            _ => {}
        }
    }
    let elapsed = started.elapsed();
    verdict(
        disagreements == 0 && timeouts == 0 && elapsed < Duration::from_secs(300),
        format!("{n} instances, {disagreements} disagreements, {timeouts} timeouts, {elapsed:.2?}"),
    )
}

fn soundness(ledger: &Ledger) -> Verdict {
    verdict(
        ledger.unsound.is_empty(),
        format!(
            "{} satisfiable results, {} with violations {:?}",
            ledger.sat_count,
            ledger.unsound.len(),
            ledger.unsound.first()
        ),
    )
}

fn railway_example(ledger: &mut Ledger) -> Verdict {
    let inst = pup::fixtures::railway_example();
    let min = oracle_min_units(&inst).unwrap();
    let out = ledger.solve("railway", &inst, &SolveConfig::default());
    let units = out.result.solution().map(|g| g.count_units());
    let time = out.stats.search_time + out.stats.minimize_time;
    verdict(
        min == Some(3) && units == Some(3) && time < Duration::from_millis(100),
        format!("oracle minimum {min:?}, solved with {units:?} units in {time:.2?}"),
    )
}

fn item_lists(max_items: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_items {
        let mut next = Vec::new();
        for items in &frontier {
            for size in 1..=max_size {
                let mut v: Vec<usize> = items.clone();
                v.push(size);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn reduction_equivalence(ledger: &mut Ledger) -> Verdict {
    let started = Instant::now();
    let (mut checked, mut mismatches) = (0, Vec::new());
    for items in item_lists(3, 3) {
        for bin_size in 1..=3 {
            for bins in 1..=2 {
                let b = BinPackingInstance::new(items.clone(), bin_size, bins).unwrap();
                let expected = binpack_decide(&b).unwrap();
                let (inst, units) = binpack_to_pup_iucap2(&b);
                let cfg = SolveConfig::new(10_000, Some(units)).unwrap();
                let out = ledger.solve("reduction", &inst, &cfg);
                checked += 1;
                let got = match out.result {
                    SolveResult::Timeout => None,
                    r => Some(r.is_satisfiable()),
                };
                if got != Some(expected) {
                    mismatches.push(format!("{b}: expected {expected}, got {got:?}"));
                }
            }
        }
    }
    let elapsed = started.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("{checked} instances, {} mismatches {:?}, {elapsed:.2?}", mismatches.len(), mismatches.first()),
    )
}

fn lifting_equivalence() -> Verdict {
    let started = Instant::now();
    let (mut checked, mut mismatches) = (0, Vec::new());
    for ni in 0..=6 {
        for ns in 0..=6 - ni {
            for ucap in 1..=3 {
                for inst in common::all_graphs(ni, ns, ucap, 0) {
                    for k in 1..=3 {
                        let (lifted, units) = lift_iucap0_to_1(&inst, k).unwrap();
                        let base = oracle_decide(&inst, k).unwrap();
                        let up = oracle_decide_with_guard(&lifted, units, 12).unwrap();
                        checked += 1;
                        if base != up {
                            mismatches.push(format!("k={k}\n{inst}"));
                        }
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < Duration::from_secs(300),
        format!("{checked} cases, {} mismatches, {elapsed:.2?}", mismatches.len()),
    )
}

fn doubling_equivalence() -> Verdict {
    let (mut checked, mut mismatches) = (0, 0);
    for items in item_lists(5, 4) {
        let total: usize = items.iter().sum();
        for bin_size in 1..=total.max(1) {
            for bins in 1..=items.len().max(1) {
                let b = BinPackingInstance::new(items.clone(), bin_size, bins).unwrap();
                checked += 1;
                if binpack_decide(&b).unwrap() != binpack_decide(&double_binpack(&b)).unwrap() {
                    mismatches += 1;
                }
            }
        }
    }
    verdict(mismatches == 0, format!("{checked} instances, {mismatches} mismatches"))
}

fn benchmark_tables() -> Verdict {
    let Some(dir) = std::env::var_os("PUP_BENCH_DIR").map(PathBuf::from) else {
        return Verdict::Skip("PUP_BENCH_DIR not set; benchmark archive not available".into());
    };
    let load = |name: &str| -> Result<Instance, String> {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
    };
    let (dbl, tri) = match (load("dbl-20.pup"), load("tri-34.pup")) {
        (Ok(d), Ok(t)) => (d, t),
        (Err(e), _) | (_, Err(e)) => return Verdict::Skip(format!("benchmark file missing: {e}")),
    };
    let cfg = SolveConfig::default();
    let limit = Duration::from_secs(600);
    let run = |inst: &Instance, iucap| {
        let inst = inst.with_capacities(2, iucap).unwrap();
        let t = Instant::now();
        let out = solve(&inst, &cfg);
        let ok = match &out.result {
            SolveResult::Satisfiable(g) => verify_solution(&inst, g).is_empty(),
            _ => true,
        };
        (out.result, t.elapsed(), ok)
    };
    let (r1, t1, v1) = run(&dbl, 2);
    let (r2, t2, v2) = run(&tri, 2);
    let (r3, t3, v3) = run(&tri, 4);
    let units = |r: &SolveResult| r.solution().map(|g| g.count_units());
    let ok = units(&r1) == Some(14)
        && r2.is_unsatisfiable()
        && units(&r3).is_some_and(|u| u <= 21)
        && v1
        && v2
        && v3
        && [t1, t2, t3].iter().all(|t| *t < limit);
    verdict(
        ok,
        format!("dbl-20/2: {r1} in {t1:.2?}; tri-34/2: {r2} in {t2:.2?}; tri-34/4: {r3} in {t3:.2?}"),
    )
}

fn determinism(ledger: &Ledger) -> Verdict {
    let render = |out: SolveOutcome| match out.result {
        SolveResult::Satisfiable(g) => g.to_text(),
        r => r.to_string(),
    };
    let mut differing = Vec::new();
    for (suite, inst, cfg) in &ledger.solved {
        let cfg = cfg.clone().with_parallel(false);
        let first = render(solve(inst, &cfg));
        for _ in 0..2 {
            if render(solve(inst, &cfg)) != first {
                differing.push(*suite);
                break;
            }
        }
    }
    verdict(
        differing.is_empty(),
        format!("{} instances x 3 runs, {} differing {:?}", ledger.solved.len(), differing.len(), differing.first()),
    )
}

fn minimize_safety(ledger: &Ledger) -> Verdict {
    verdict(
        ledger.grown.is_empty() && ledger.unsound.is_empty(),
        format!(
            "{} satisfiable results, {} grew, {} failed verification",
            ledger.sat_count,
            ledger.grown.len(),
            ledger.unsound.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    // the suites feeding criteria 2, 8 and 9 run first
    let mut results: Vec<(u32, &str, Verdict)> = vec![
        (1, "oracle agreement", oracle_agreement(&mut ledger)),
        (3, "railway example", railway_example(&mut ledger)),
        (4, "bin packing reduction", reduction_equivalence(&mut ledger)),
        (5, "iucap lifting", lifting_equivalence()),
        (6, "bin packing doubling", doubling_equivalence()),
        (7, "benchmark tables", benchmark_tables()),
        (2, "soundness", soundness(&ledger)),
        (8, "determinism", determinism(&ledger)),
        (9, "minimize safety", minimize_safety(&ledger)),
    ];
    results.sort_by_key(|r| r.0);

    let mut failed = false;
    for (n, name, v) in &results {
        let (tag, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed = true;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {n} {tag}: {name}: {detail}");
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
