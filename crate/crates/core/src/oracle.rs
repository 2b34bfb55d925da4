//! Exhaustive deciders for desk-scale instances.
//!
//! These enumerate assignments directly from the problem definition and
//! serve as ground truth for the heuristic solver and the reductions.

use crate::binpack::BinPackingInstance;
use crate::error::GuardExceeded;
use crate::instance::{ElemId, Instance, Side};

/// Largest instance (in elements) the PUP oracle accepts by default.
pub const DEFAULT_ELEMENT_GUARD: usize = 12;
/// Largest bin packing instance (in items) [`binpack_decide`] accepts.
pub const DEFAULT_ITEM_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Satisfiable,
    Unsatisfiable,
}

impl Decision {
    pub fn from_bool(sat: bool) -> Self {
        if sat {
            Decision::Satisfiable
        } else {
            Decision::Unsatisfiable
        }
    }

    pub fn is_sat(self) -> bool {
        self == Decision::Satisfiable
    }
}

struct Enumerator<'a> {
    inst: &'a Instance,
    max_units: usize,
    unit_of: Vec<usize>,
    load: Vec<[usize; 2]>,
    /// partner bitmask per unit
    links: Vec<u64>,
    used: usize,
}

impl Enumerator<'_> {
    /// Places elements `k..` in index order. Each element goes to an
    /// occupied unit or to the single next fresh unit.
    fn place(&mut self, k: usize) -> bool {
        if k == self.inst.len() {
            return true;
        }
        let e = ElemId(k as u32);
        let side = match self.inst.side(e) {
            Side::Indicator => 0,
            Side::Sensor => 1,
        };
        let iucap = self.inst.iucap() as u32;
        let limit = if self.used < self.max_units { self.used + 1 } else { self.used };
        for u in 0..limit {
            if self.load[u][side] == self.inst.ucap() {
                continue;
            }
            // partner units forced by already placed neighbours
            let mut need = 0u64;
            for &nb in self.inst.neighbors(e) {
                if nb.index() < k && self.unit_of[nb.index()] != u {
                    need |= 1 << self.unit_of[nb.index()];
                }
            }
            let new_u = self.links[u] | need;
            if new_u.count_ones() > iucap {
                continue;
            }
            let added = need & !self.links[u];
            let mut ok = true;
            let mut bits = added;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if (self.links[v] | 1 << u).count_ones() > iucap {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }

            let saved_used = self.used;
            if u == self.used {
                self.used += 1;
            }
            self.unit_of[k] = u;
            self.load[u][side] += 1;
            self.links[u] = new_u;
            let mut bits = added;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.links[v] |= 1 << u;
            }

            if self.place(k + 1) {
                return true;
            }

            let mut bits = added;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.links[v] &= !(1 << u);
            }
            self.links[u] &= !added;
            self.load[u][side] -= 1;
            self.used = saved_used;
        }
        false
    }
}

fn guard(inst: &Instance, limit: usize) -> Result<(), GuardExceeded> {
    if inst.len() > limit.min(64) {
        return Err(GuardExceeded {
            size: inst.len(),
            limit: limit.min(64),
            what: "elements",
        });
    }
    Ok(())
}

/// Exact decision: does `inst` have a solution with at most `max_units`
/// units? Refuses instances above [`DEFAULT_ELEMENT_GUARD`] elements.
pub fn oracle_decide(inst: &Instance, max_units: usize) -> Result<Decision, GuardExceeded> {
    oracle_decide_with_guard(inst, max_units, DEFAULT_ELEMENT_GUARD)
}

/// [`oracle_decide`] with an explicit element guard (at most 64).
pub fn oracle_decide_with_guard(
    inst: &Instance,
    max_units: usize,
    element_guard: usize,
) -> Result<Decision, GuardExceeded> {
    guard(inst, element_guard)?;
    let n = inst.len();
    let mut en = Enumerator {
        inst,
        max_units: max_units.min(n),
        unit_of: vec![usize::MAX; n],
        load: vec![[0, 0]; n],
        links: vec![0; n],
        used: 0,
    };
    Ok(Decision::from_bool(en.place(0)))
}

/// Least unit count admitting a solution, `None` if there is none at all.
/// An empty instance needs zero units.
pub fn oracle_min_units(inst: &Instance) -> Result<Option<usize>, GuardExceeded> {
    oracle_min_units_with_guard(inst, DEFAULT_ELEMENT_GUARD)
}

pub fn oracle_min_units_with_guard(
    inst: &Instance,
    element_guard: usize,
) -> Result<Option<usize>, GuardExceeded> {
    guard(inst, element_guard)?;
    if inst.is_empty() {
        return Ok(Some(0));
    }
    for k in 1..=inst.len() {
        if oracle_decide_with_guard(inst, k, element_guard)?.is_sat() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exact bin packing decision by enumeration.
pub fn binpack_decide(b: &BinPackingInstance) -> Result<bool, GuardExceeded> {
    binpack_decide_with_guard(b, DEFAULT_ITEM_GUARD)
}

pub fn binpack_decide_with_guard(b: &BinPackingInstance, item_guard: usize) -> Result<bool, GuardExceeded> {
    if b.items().len() > item_guard {
        return Err(GuardExceeded {
            size: b.items().len(),
            limit: item_guard,
            what: "items",
        });
    }
    let mut items = b.items().to_vec();
    items.sort_unstable_by(|x, y| y.cmp(x));
    let bins = b.bins().min(items.len().max(1));
    let mut loads = vec![0usize; bins];
    Ok(pack(&items, 0, &mut loads, b.bin_size()))
}

fn pack(items: &[usize], k: usize, loads: &mut [usize], cap: usize) -> bool {
    if k == items.len() {
        return true;
    }
    for j in 0..loads.len() {
        // bins with equal load are interchangeable
        if loads[..j].contains(&loads[j]) {
            continue;
        }
        if loads[j] + items[k] <= cap {
            loads[j] += items[k];
            if pack(items, k + 1, loads, cap) {
                return true;
            }
            loads[j] -= items[k];
        }
    }
    false
}
