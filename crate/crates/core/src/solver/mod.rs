//! Heuristic backtracking search for partner units problems.
//!
//! [`solve`] restarts the search from every indicator in turn. Each entry
//! point gets its own breadth-first element order; the search places
//! elements on a fresh unit first and then on the existing units in
//! creation order. An exhausted entry point proves that no solution exists
//! within the unit budget, so only timeouts move on to the next entry point.
//! A satisfiable result is optionally compacted by greedy unit merging.

mod minimize;
mod model;
mod order;
mod search;

use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

pub use minimize::minimize;
pub use model::{PartialModel, UnitId};
pub use order::{breadth_first_order, ElementOrder};
pub use search::{assign, twin_predecessors, AssignStatus, Branch, SearchCounters, Searcher};

use crate::error::ConfigError;
use crate::instance::{ElemId, Instance};
use crate::solution::SolutionGraph;

/// Default time budget, ten minutes.
pub const DEFAULT_MAX_TIME_MS: u64 = 600_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    max_time_ms: u64,
    max_units: Option<usize>,
    pub minimize: bool,
    /// Race one search per entry point on a thread pool instead of
    /// time-slicing them sequentially.
    pub parallel: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_time_ms: DEFAULT_MAX_TIME_MS,
            max_units: None,
            minimize: true,
            parallel: false,
        }
    }
}

impl SolveConfig {
    pub fn new(max_time_ms: u64, max_units: Option<usize>) -> Result<Self, ConfigError> {
        if max_time_ms == 0 {
            return Err(ConfigError::ZeroTime);
        }
        if max_units == Some(0) {
            return Err(ConfigError::ZeroUnits);
        }
        Ok(SolveConfig {
            max_time_ms,
            max_units,
            ..Default::default()
        })
    }

    pub fn max_time_ms(&self) -> u64 {
        self.max_time_ms
    }

    pub fn max_units(&self) -> Option<usize> {
        self.max_units
    }

    pub fn with_minimize(mut self, on: bool) -> Self {
        self.minimize = on;
        self
    }

    pub fn with_parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    /// Unit budget for `inst`: the configured value, or one unit per
    /// element, which is enough for any satisfiable instance.
    pub fn unit_budget(&self, inst: &Instance) -> usize {
        self.max_units.unwrap_or(inst.len().max(1))
    }
}

/// Why an instance was found unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnsatReason {
    /// Some elements have more neighbours than `(iucap + 1) * ucap`.
    DegreeBound(Vec<ElemId>),
    /// More indicators or sensors than `max_units * ucap`.
    UnitCapacity,
    /// An entry point's search was exhausted.
    Exhausted { entry: ElemId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Satisfiable(SolutionGraph),
    /// No solution with at most `max_units` units. When `global` is set the
    /// budget covered every possible solution, so none exists at all.
    Unsatisfiable {
        reason: UnsatReason,
        max_units: usize,
        global: bool,
    },
    Timeout,
}

impl SolveResult {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, SolveResult::Satisfiable(_))
    }

    pub fn is_unsatisfiable(&self) -> bool {
        matches!(self, SolveResult::Unsatisfiable { .. })
    }

    pub fn solution(&self) -> Option<&SolutionGraph> {
        match self {
            SolveResult::Satisfiable(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryStats {
    pub start: ElemId,
    pub status: AssignStatus,
    pub elapsed: Duration,
    pub counters: SearchCounters,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// One record per entry point that was searched, in start order.
    pub entries: Vec<EntryStats>,
    pub search_time: Duration,
    pub minimize_time: Duration,
    pub units_before_minimize: Option<usize>,
    pub units: Option<usize>,
    pub max_units: usize,
}

impl SolveStats {
    pub fn total_nodes(&self) -> u64 {
        self.entries.iter().map(|e| e.counters.nodes).sum()
    }

    pub fn total_backtracks(&self) -> u64 {
        self.entries.iter().map(|e| e.counters.backtracks).sum()
    }

    /// `key=value` lines.
    pub fn to_kv(&self, inst: &Instance) -> String {
        let mut out = String::new();
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        writeln!(out, "entry_points={}", self.entries.len()).unwrap();
        writeln!(out, "nodes={}", self.total_nodes()).unwrap();
        writeln!(out, "backtracks={}", self.total_backtracks()).unwrap();
        writeln!(out, "max_units={}", self.max_units).unwrap();
        if let Some(u) = self.units_before_minimize {
            writeln!(out, "units_before_minimize={u}").unwrap();
        }
        if let Some(u) = self.units {
            writeln!(out, "units={u}").unwrap();
        }
        writeln!(out, "search_ms={:.3}", ms(self.search_time)).unwrap();
        writeln!(out, "minimize_ms={:.3}", ms(self.minimize_time)).unwrap();
        for e in &self.entries {
            writeln!(
                out,
                "entry.{}={:?} elapsed_ms={:.3} nodes={} backtracks={}",
                inst.name(e.start),
                e.status,
                ms(e.elapsed),
                e.counters.nodes,
                e.counters.backtracks
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub result: SolveResult,
    pub stats: SolveStats,
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveResult::Satisfiable(g) => write!(f, "SATISFIABLE ({} units)", g.count_units()),
            SolveResult::Unsatisfiable {
                global: true, ..
            } => f.write_str("UNSATISFIABLE"),
            SolveResult::Unsatisfiable { max_units, .. } => {
                write!(f, "UNSATISFIABLE (within {max_units} units)")
            }
            SolveResult::Timeout => f.write_str("TIMEOUT"),
        }
    }
}

/// Entry points: every indicator in index order, or the first sensor when
/// the instance has no indicators.
fn entry_points(inst: &Instance) -> Vec<ElemId> {
    if inst.indicators().is_empty() {
        inst.sensors().iter().take(1).copied().collect()
    } else {
        inst.indicators().to_vec()
    }
}

/// Decides `inst` and, if satisfiable, returns a solution graph.
pub fn solve(inst: &Instance, cfg: &SolveConfig) -> SolveOutcome {
    let max_units = cfg.unit_budget(inst);
    let global = max_units >= inst.len();
    let mut stats = SolveStats {
        max_units,
        ..Default::default()
    };
    let unsat = |reason| SolveResult::Unsatisfiable {
        reason,
        max_units,
        global,
    };

    if inst.is_empty() {
        stats.units = Some(0);
        return SolveOutcome {
            result: SolveResult::Satisfiable(SolutionGraph::new()),
            stats,
        };
    }
    let over = inst.degree_precheck();
    if !over.is_empty() {
        return SolveOutcome {
            result: SolveResult::Unsatisfiable {
                reason: UnsatReason::DegreeBound(over),
                max_units,
                global: true,
            },
            stats,
        };
    }
    let slots = max_units.saturating_mul(inst.ucap());
    if inst.indicators().len() > slots || inst.sensors().len() > slots {
        return SolveOutcome {
            result: unsat(UnsatReason::UnitCapacity),
            stats,
        };
    }

    let started = Instant::now();
    let found = if cfg.parallel {
        search_parallel(inst, cfg, max_units, &mut stats)
    } else {
        search_sequential(inst, cfg, max_units, &mut stats)
    };
    stats.search_time = started.elapsed();

    let result = match found {
        Found::Model(assignment) => {
            let model = PartialModel::from_assignment(inst, &assignment);
            stats.units_before_minimize = Some(model.num_nonempty_units());
            let model = if cfg.minimize {
                let t = Instant::now();
                let m = minimize(&model);
                stats.minimize_time = t.elapsed();
                m
            } else {
                model
            };
            stats.units = Some(model.num_nonempty_units());
            SolveResult::Satisfiable(model.to_solution_graph())
        }
        Found::Exhausted(entry) => unsat(UnsatReason::Exhausted { entry }),
        Found::Timeout => SolveResult::Timeout,
    };
    SolveOutcome { result, stats }
}

enum Found {
    Model(Vec<UnitId>),
    Exhausted(ElemId),
    Timeout,
}

fn run_entry(
    inst: &Instance,
    start: ElemId,
    max_units: usize,
    deadline: Instant,
    cancel: Option<&AtomicBool>,
) -> (EntryStats, Option<Vec<UnitId>>) {
    let t = Instant::now();
    let order = breadth_first_order(inst, start);
    let mut model = PartialModel::new(inst);
    let mut searcher = Searcher::new(max_units)
        .with_deadline(deadline)
        .with_twin_pruning(inst, &order);
    searcher.cancel = cancel;
    let status = searcher.assign(&order, 0, &mut model);
    let assignment = match status {
        AssignStatus::Found => model.assignment(),
        _ => None,
    };
    let entry = EntryStats {
        start,
        status,
        elapsed: t.elapsed(),
        counters: searcher.counters,
    };
    (entry, assignment)
}

fn search_sequential(
    inst: &Instance,
    cfg: &SolveConfig,
    max_units: usize,
    stats: &mut SolveStats,
) -> Found {
    let entries = entry_points(inst);
    let slice = Duration::from_millis((cfg.max_time_ms / entries.len() as u64).max(1));
    for start in entries {
        let deadline = Instant::now() + slice;
        let (entry, assignment) = run_entry(inst, start, max_units, deadline, None);
        let status = entry.status;
        stats.entries.push(entry);
        match status {
            AssignStatus::Found => return Found::Model(assignment.expect("complete model")),
            AssignStatus::Exhausted => return Found::Exhausted(start),
            AssignStatus::Timeout => continue,
        }
    }
    Found::Timeout
}

/// Runs the entry points on a pool of worker threads under one global
/// deadline. The first definitive answer is kept and cancels the rest.
fn search_parallel(
    inst: &Instance,
    cfg: &SolveConfig,
    max_units: usize,
    stats: &mut SolveStats,
) -> Found {
    let entries = entry_points(inst);
    let deadline = Instant::now() + Duration::from_millis(cfg.max_time_ms);
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(entries.len());
    let next = AtomicUsize::new(0);
    let cancel = AtomicBool::new(false);
    let winner: Mutex<Option<Found>> = Mutex::new(None);
    let records: Mutex<Vec<EntryStats>> = Mutex::new(Vec::new());

    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if cancel.load(Ordering::Relaxed) {
                    return;
                }
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&start) = entries.get(k) else {
                    return;
                };
                let (entry, assignment) = run_entry(inst, start, max_units, deadline, Some(&cancel));
                let outcome = match entry.status {
                    AssignStatus::Found => Some(Found::Model(assignment.expect("complete model"))),
                    AssignStatus::Exhausted => Some(Found::Exhausted(start)),
                    AssignStatus::Timeout => None,
                };
                records.lock().unwrap().push(entry);
                if let Some(found) = outcome {
                    let mut slot = winner.lock().unwrap();
                    if slot.is_none() {
                        *slot = Some(found);
                        cancel.store(true, Ordering::Relaxed);
                    }
                    return;
                }
            });
        }
    });

    let mut entries_run = records.into_inner().unwrap();
    entries_run.sort_by_key(|e| e.start);
    stats.entries = entries_run;
    winner.into_inner().unwrap().unwrap_or(Found::Timeout)
}
