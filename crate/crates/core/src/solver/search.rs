//! Depth-first assignment of elements in a fixed order.
//!
//! For each element the search first tries a fresh unit (while the unit
//! budget allows one), then every existing unit in creation order. The
//! recursion is unrolled onto an explicit stack so that instances with
//! thousands of elements do not exhaust the thread stack.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use super::model::{PartialModel, UnitId};
use super::order::ElementOrder;
use crate::instance::{ElemId, Instance, Side};

/// Result of [`assign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignStatus {
    /// Every element is placed; the model is a complete solution.
    Found,
    /// No completion of the model exists within the unit budget.
    Exhausted,
    /// The deadline passed or the search was cancelled.
    Timeout,
}

/// A candidate unit tried for one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Fresh,
    Existing(UnitId),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchCounters {
    /// Calls into the assignment step (one per visited search node).
    pub nodes: u64,
    /// Placements undone after their subtree failed.
    pub backtracks: u64,
    pub fresh_attempts: u64,
    pub existing_attempts: u64,
}

/// Search limits and instrumentation.
#[derive(Debug, Default)]
pub struct Searcher<'c> {
    pub max_units: usize,
    pub deadline: Option<Instant>,
    pub cancel: Option<&'c AtomicBool>,
    pub counters: SearchCounters,
    /// When set, every attempted placement is recorded as
    /// `(order position, branch)`.
    pub trace: Option<Vec<(usize, Branch)>>,
    /// Per order position, the position of the previous interchangeable
    /// element (see [`twin_predecessors`]). When set, an element never goes
    /// to an existing unit created before its predecessor's unit.
    pub twins: Option<Vec<Option<usize>>>,
}

struct Frame {
    /// 0 = fresh unit, k = existing unit k - 1
    cursor: usize,
    /// units present when the frame was entered
    existing: usize,
    fresh_allowed: bool,
    placed: Option<(UnitId, bool)>,
}

impl<'c> Searcher<'c> {
    pub fn new(max_units: usize) -> Self {
        Searcher {
            max_units,
            ..Default::default()
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn with_cancel(mut self, flag: &'c AtomicBool) -> Self {
        self.cancel = Some(flag);
        self
    }

    /// Enables interchangeable-element pruning for `order`.
    pub fn with_twin_pruning(mut self, inst: &Instance, order: &ElementOrder) -> Self {
        self.twins = Some(twin_predecessors(inst, order));
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    fn out_of_time(&self) -> bool {
        if let Some(flag) = self.cancel {
            if flag.load(Ordering::Relaxed) {
                return true;
            }
        }
        matches!(self.deadline, Some(d) if Instant::now() > d)
    }

    fn record(&mut self, pos: usize, b: Branch) {
        match b {
            Branch::Fresh => self.counters.fresh_attempts += 1,
            Branch::Existing(_) => self.counters.existing_attempts += 1,
        }
        if let Some(t) = &mut self.trace {
            t.push((pos, b));
        }
    }

    /// Extends `model` by placing `order[start..]`; elements before `start`
    /// must already be placed.
    ///
    /// On [`AssignStatus::Found`] the model is complete. On
    /// [`AssignStatus::Exhausted`] the model is back in its initial state.
    /// On [`AssignStatus::Timeout`] the model holds the partial state at the
    /// interruption; use [`PartialModel::rollback`] to restore it.
    pub fn assign(
        &mut self,
        order: &ElementOrder,
        start: usize,
        model: &mut PartialModel<'_>,
    ) -> AssignStatus {
        let elems = order.elements();
        let mut frames: Vec<Frame> = Vec::new();
        let mut pos = start;

        // entering position `pos`
        'enter: loop {
            self.counters.nodes += 1;
            if pos >= elems.len() {
                return AssignStatus::Found;
            }
            if self.out_of_time() {
                return AssignStatus::Timeout;
            }
            frames.push(Frame {
                cursor: 0,
                existing: model.num_units(),
                fresh_allowed: model.num_units() < self.max_units,
                placed: None,
            });

            // try the next candidate of the top frame, backtracking as needed
            loop {
                let Some(frame) = frames.last_mut() else {
                    return AssignStatus::Exhausted;
                };
                let elem = elems[pos];
                if let Some((u, fresh)) = frame.placed.take() {
                    model.undo_assign_and_connect(elem, u);
                    if fresh {
                        model.remove_unit(u);
                    }
                    self.counters.backtracks += 1;
                }
                let twin_floor = self
                    .twins
                    .as_ref()
                    .and_then(|t| t[pos])
                    .and_then(|q| model.unit_of(elems[q]));
                let mut placed = None;
                while placed.is_none() && frame.cursor <= frame.existing {
                    let c = frame.cursor;
                    frame.cursor += 1;
                    if c == 0 {
                        if !frame.fresh_allowed {
                            continue;
                        }
                        let u = model.create_unit();
                        self.record(pos, Branch::Fresh);
                        if model.assign_and_connect(elem, u) {
                            placed = Some((u, true));
                        } else {
                            model.remove_unit(u);
                        }
                    } else {
                        let u = UnitId((c - 1) as u32);
                        if let Some(floor) = twin_floor {
                            if u < floor {
                                continue;
                            }
                        }
                        self.record(pos, Branch::Existing(u));
                        if model.assign_and_connect(elem, u) {
                            placed = Some((u, false));
                        }
                    }
                }
                match placed {
                    Some(p) => {
                        frame.placed = Some(p);
                        pos += 1;
                        continue 'enter;
                    }
                    None => {
                        frames.pop();
                        if frames.is_empty() {
                            return AssignStatus::Exhausted;
                        }
                        pos -= 1;
                    }
                }
            }
        }
    }
}

/// For every position of `order`, the latest earlier position holding an
/// element of the same side with the same neighbours.
///
/// Such elements can swap units in any solution, and the lexicographically
/// least assignment in each swap class places them on non-decreasing unit
/// numbers. Restricting the search to that case therefore loses no
/// satisfiable instance.
pub fn twin_predecessors(inst: &Instance, order: &ElementOrder) -> Vec<Option<usize>> {
    let mut last: HashMap<(Side, &[ElemId]), usize> = HashMap::new();
    order
        .elements()
        .iter()
        .enumerate()
        .map(|(pos, &e)| last.insert((inst.side(e), inst.neighbors(e)), pos))
        .collect()
}

/// Runs [`Searcher::assign`] with the given budget and deadline.
pub fn assign(
    order: &ElementOrder,
    start: usize,
    model: &mut PartialModel<'_>,
    deadline: Option<Instant>,
    max_units: usize,
) -> AssignStatus {
    let mut s = Searcher::new(max_units);
    s.deadline = deadline;
    s.assign(order, start, model)
}
