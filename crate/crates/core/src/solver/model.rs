//! The mutable solution graph used during search.
//!
//! Every mutation is recorded in an undo journal so that backtracking
//! restores the exact prior state.

use std::fmt;

use crate::instance::{ElemId, Instance, Side};
use crate::solution::SolutionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitId(pub u32);

impl UnitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct UnitState {
    members: Vec<ElemId>,
    indicators: usize,
    sensors: usize,
    partners: Vec<UnitId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Action {
    CreateUnit(UnitId),
    Place(ElemId, UnitId),
    Connect(UnitId, UnitId),
}

/// A partial assignment of elements to units with the partner connections
/// it requires.
#[derive(Clone)]
pub struct PartialModel<'a> {
    inst: &'a Instance,
    unit_of: Vec<Option<UnitId>>,
    units: Vec<UnitState>,
    journal: Vec<Action>,
    placed: usize,
    scratch: Vec<UnitId>,
}

impl PartialEq for PartialModel<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.inst, other.inst)
            && self.unit_of == other.unit_of
            && self.units == other.units
            && self.journal == other.journal
            && self.placed == other.placed
    }
}

impl fmt::Debug for PartialModel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialModel")
            .field("unit_of", &self.unit_of)
            .field("units", &self.units)
            .field("journal_len", &self.journal.len())
            .finish()
    }
}

impl<'a> PartialModel<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        PartialModel {
            inst,
            unit_of: vec![None; inst.len()],
            units: Vec::new(),
            journal: Vec::new(),
            placed: 0,
            scratch: Vec::new(),
        }
    }

    /// Rebuilds a model from a unit per element. Partner connections are
    /// derived from the input edges. The journal starts empty.
    ///
    /// # Panics
    ///
    /// If `assignment` does not have one entry per element.
    pub fn from_assignment(inst: &'a Instance, assignment: &[UnitId]) -> Self {
        assert_eq!(assignment.len(), inst.len());
        let mut m = PartialModel::new(inst);
        let n_units = assignment.iter().map(|u| u.index() + 1).max().unwrap_or(0);
        m.units = vec![UnitState::default(); n_units];
        for (e, &u) in inst.elements().zip(assignment) {
            m.put(e, u);
        }
        for &(i, s) in inst.edges() {
            let (a, b) = (assignment[i.index()], assignment[s.index()]);
            if a != b && !m.units[a.index()].partners.contains(&b) {
                m.units[a.index()].partners.push(b);
                m.units[b.index()].partners.push(a);
            }
        }
        m
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn num_units(&self) -> usize {
        self.units.len()
    }

    /// Units hosting at least one element.
    pub fn num_nonempty_units(&self) -> usize {
        self.units.iter().filter(|u| !u.members.is_empty()).count()
    }

    pub fn unit_of(&self, e: ElemId) -> Option<UnitId> {
        self.unit_of[e.index()]
    }

    pub fn members(&self, u: UnitId) -> &[ElemId] {
        &self.units[u.index()].members
    }

    pub fn partners(&self, u: UnitId) -> &[UnitId] {
        &self.units[u.index()].partners
    }

    pub fn indicator_count(&self, u: UnitId) -> usize {
        self.units[u.index()].indicators
    }

    pub fn sensor_count(&self, u: UnitId) -> usize {
        self.units[u.index()].sensors
    }

    pub fn is_complete(&self) -> bool {
        self.placed == self.inst.len()
    }

    /// Journal position, for [`rollback`](Self::rollback).
    pub fn mark(&self) -> usize {
        self.journal.len()
    }

    /// Appends a fresh, empty unit.
    pub fn create_unit(&mut self) -> UnitId {
        let u = UnitId(self.units.len() as u32);
        self.units.push(UnitState::default());
        self.journal.push(Action::CreateUnit(u));
        u
    }

    /// Removes the most recently created unit, which must be empty and
    /// have no pending journal entries after its creation.
    pub fn remove_unit(&mut self, u: UnitId) {
        match self.journal.pop() {
            Some(Action::CreateUnit(v)) if v == u && u.index() + 1 == self.units.len() => {
                let st = self.units.pop().expect("unit exists");
                debug_assert!(st.members.is_empty() && st.partners.is_empty());
            }
            other => panic!("undo journal mismatch: removing {u:?}, journal top {other:?}"),
        }
    }

    fn put(&mut self, e: ElemId, u: UnitId) {
        let st = &mut self.units[u.index()];
        st.members.push(e);
        match self.inst.side(e) {
            Side::Indicator => st.indicators += 1,
            Side::Sensor => st.sensors += 1,
        }
        self.unit_of[e.index()] = Some(u);
        self.placed += 1;
    }

    fn has_free_place(&self, e: ElemId, u: UnitId) -> bool {
        let st = &self.units[u.index()];
        let used = match self.inst.side(e) {
            Side::Indicator => st.indicators,
            Side::Sensor => st.sensors,
        };
        used < self.inst.ucap()
    }

    /// Places `e` on `u` if the unit has room for `e`'s side and every
    /// partner connection required by `e`'s already placed neighbours can
    /// be added within `iucap` on both ends. Only the missing connections
    /// are created. Leaves the model untouched and returns `false`
    /// otherwise.
    pub fn assign_and_connect(&mut self, e: ElemId, u: UnitId) -> bool {
        debug_assert!(self.unit_of[e.index()].is_none(), "element already placed");
        if !self.has_free_place(e, u) {
            return false;
        }
        let iucap = self.inst.iucap();
        let mut needed = std::mem::take(&mut self.scratch);
        needed.clear();
        let own = &self.units[u.index()].partners;
        for &nb in self.inst.neighbors(e) {
            if let Some(v) = self.unit_of[nb.index()] {
                if v != u && !own.contains(&v) && !needed.contains(&v) {
                    needed.push(v);
                }
            }
        }
        let feasible = own.len() + needed.len() <= iucap
            && needed
                .iter()
                .all(|v| self.units[v.index()].partners.len() < iucap);
        if feasible {
            self.put(e, u);
            self.journal.push(Action::Place(e, u));
            for &v in &needed {
                self.units[u.index()].partners.push(v);
                self.units[v.index()].partners.push(u);
                self.journal.push(Action::Connect(u, v));
            }
        }
        self.scratch = needed;
        feasible
    }

    /// Reverts the most recent successful `assign_and_connect(e, u)`.
    ///
    /// # Panics
    ///
    /// If the journal does not end with that placement and its connections.
    pub fn undo_assign_and_connect(&mut self, e: ElemId, u: UnitId) {
        loop {
            match self.journal.pop() {
                Some(Action::Connect(a, b)) => {
                    let pa = self.units[a.index()].partners.pop();
                    let pb = self.units[b.index()].partners.pop();
                    assert!(
                        pa == Some(b) && pb == Some(a),
                        "undo journal mismatch: connection {a:?}-{b:?}"
                    );
                }
                Some(Action::Place(pe, pu)) if pe == e && pu == u => {
                    let st = &mut self.units[u.index()];
                    let popped = st.members.pop();
                    assert_eq!(popped, Some(e), "undo journal mismatch: member order");
                    match self.inst.side(e) {
                        Side::Indicator => st.indicators -= 1,
                        Side::Sensor => st.sensors -= 1,
                    }
                    self.unit_of[e.index()] = None;
                    self.placed -= 1;
                    return;
                }
                other => panic!("undo journal mismatch: undoing {e:?} on {u:?}, found {other:?}"),
            }
        }
    }

    /// Undoes every action recorded after `mark`.
    pub fn rollback(&mut self, mark: usize) {
        while self.journal.len() > mark {
            match *self.journal.last().unwrap() {
                Action::CreateUnit(u) => self.remove_unit(u),
                Action::Place(e, u) => self.undo_assign_and_connect(e, u),
                Action::Connect(..) => {
                    // a connection is always preceded by its placement
                    let place = self.journal[..self.journal.len() - 1]
                        .iter()
                        .rev()
                        .find_map(|a| match *a {
                            Action::Place(e, u) => Some((e, u)),
                            _ => None,
                        })
                        .expect("connection without placement");
                    self.undo_assign_and_connect(place.0, place.1);
                }
            }
        }
    }

    /// Unit per element, for complete models.
    pub fn assignment(&self) -> Option<Vec<UnitId>> {
        self.unit_of.iter().copied().collect()
    }

    /// Recomputes every counter and relation from scratch and compares with
    /// the maintained state. Returns a description of the first mismatch.
    pub fn check_invariants(&self) -> Result<(), String> {
        let inst = self.inst;
        let mut placed = 0;
        for (k, st) in self.units.iter().enumerate() {
            let u = UnitId(k as u32);
            let ni = st
                .members
                .iter()
                .filter(|&&e| inst.side(e) == Side::Indicator)
                .count();
            let ns = st.members.len() - ni;
            if ni != st.indicators || ns != st.sensors {
                return Err(format!("{u:?}: counters out of date"));
            }
            if ni > inst.ucap() || ns > inst.ucap() {
                return Err(format!("{u:?}: over capacity"));
            }
            if st.partners.len() > inst.iucap() {
                return Err(format!("{u:?}: too many partners"));
            }
            for &v in &st.partners {
                if v == u {
                    return Err(format!("{u:?}: partnered with itself"));
                }
                if !self.units[v.index()].partners.contains(&u) {
                    return Err(format!("{u:?}-{v:?}: asymmetric"));
                }
                if st.partners.iter().filter(|&&w| w == v).count() > 1 {
                    return Err(format!("{u:?}-{v:?}: duplicate connection"));
                }
            }
            for &e in &st.members {
                if self.unit_of[e.index()] != Some(u) {
                    return Err(format!("{e:?}: unit_of disagrees with {u:?}"));
                }
            }
            placed += st.members.len();
        }
        if placed != self.placed || self.unit_of.iter().flatten().count() != placed {
            return Err("placement count out of date".into());
        }
        for &(i, s) in inst.edges() {
            if let (Some(a), Some(b)) = (self.unit_of[i.index()], self.unit_of[s.index()]) {
                if a != b && !self.units[a.index()].partners.contains(&b) {
                    return Err(format!("edge {i:?}-{s:?} not connected"));
                }
            }
        }
        Ok(())
    }

    /// Converts to the interchange form. Non-empty units are named `u1`,
    /// `u2`, ... in creation order; elements are listed in index order.
    pub fn to_solution_graph(&self) -> SolutionGraph {
        let mut names = vec![None; self.units.len()];
        let mut g = SolutionGraph::new();
        let mut next = 1;
        for (k, st) in self.units.iter().enumerate() {
            if st.members.is_empty() {
                continue;
            }
            let name = format!("u{next}");
            next += 1;
            g.add_unit(&name).expect("fresh unit name");
            let mut members = st.members.clone();
            members.sort_unstable();
            for e in members {
                g.assign(self.inst.name(e), &name).expect("element placed once");
            }
            names[k] = Some(name);
        }
        for (k, st) in self.units.iter().enumerate() {
            for &v in &st.partners {
                if k < v.index() {
                    if let (Some(a), Some(b)) = (&names[k], &names[v.index()]) {
                        g.add_partner(a, b).expect("connection listed once");
                    }
                }
            }
        }
        g
    }
}
