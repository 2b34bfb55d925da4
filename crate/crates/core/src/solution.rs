//! Solution graphs: units, the element-to-unit assignment and the partner
//! relation between units.
//!
//! A [`SolutionGraph`] is a name-based interchange form. It is not tied to an
//! [`Instance`] and does not know the capacities, so it can hold graphs that
//! are invalid for a given instance; [`verify_solution`](crate::verify_solution)
//! reports those. The partner relation is stored as directed links. Links
//! added through [`SolutionGraph::add_partner`] are always symmetric.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use indexmap::{IndexMap, IndexSet};

use crate::error::{InduceError, SolutionError};
use crate::instance::{escape_dot, strip_comment, Instance, InstanceBuilder, Side};

#[derive(Debug, Clone, Default)]
pub struct SolutionGraph {
    units: IndexSet<String>,
    /// element -> unit, in insertion order
    assignment: IndexMap<String, String>,
    /// directed partner links
    links: BTreeSet<(String, String)>,
}

impl PartialEq for SolutionGraph {
    fn eq(&self, other: &Self) -> bool {
        self.units.iter().eq(other.units.iter())
            && self.assignment == other.assignment
            && self.links == other.links
    }
}

impl Eq for SolutionGraph {}

impl SolutionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_unit(&mut self, unit: &str) -> Result<(), SolutionError> {
        if !self.units.insert(unit.to_owned()) {
            return Err(SolutionError::DuplicateUnit {
                line: 0,
                unit: unit.to_owned(),
            });
        }
        Ok(())
    }

    /// Places `element` on `unit`. The unit does not have to be declared.
    pub fn assign(&mut self, element: &str, unit: &str) -> Result<(), SolutionError> {
        if let Some(first) = self.assignment.get(element) {
            return Err(SolutionError::DuplicateAssignment {
                line: 0,
                element: element.to_owned(),
                first: first.clone(),
                second: unit.to_owned(),
            });
        }
        self.assignment.insert(element.to_owned(), unit.to_owned());
        Ok(())
    }

    /// Connects two distinct units in both directions.
    pub fn add_partner(&mut self, a: &str, b: &str) -> Result<(), SolutionError> {
        if a == b {
            return Err(SolutionError::SelfPartner {
                line: 0,
                unit: a.to_owned(),
            });
        }
        if self.are_partners(a, b) {
            return Err(SolutionError::DuplicatePartner {
                line: 0,
                a: a.to_owned(),
                b: b.to_owned(),
            });
        }
        self.links.insert((a.to_owned(), b.to_owned()));
        self.links.insert((b.to_owned(), a.to_owned()));
        Ok(())
    }

    /// Inserts a single directed link. Only useful for building broken
    /// graphs in tests and tooling.
    pub fn add_directed_link(&mut self, from: &str, to: &str) {
        self.links.insert((from.to_owned(), to.to_owned()));
    }

    /// Removes the link in both directions; returns whether anything was removed.
    pub fn remove_partner(&mut self, a: &str, b: &str) -> bool {
        let x = self.links.remove(&(a.to_owned(), b.to_owned()));
        let y = self.links.remove(&(b.to_owned(), a.to_owned()));
        x || y
    }

    /// Moves or removes an element assignment; returns the previous unit.
    pub fn reassign(&mut self, element: &str, unit: Option<&str>) -> Option<String> {
        match unit {
            Some(u) => self.assignment.insert(element.to_owned(), u.to_owned()),
            None => self.assignment.shift_remove(element),
        }
    }

    pub fn units(&self) -> impl Iterator<Item = &str> {
        self.units.iter().map(String::as_str)
    }

    pub fn has_unit(&self, unit: &str) -> bool {
        self.units.contains(unit)
    }

    pub fn unit_of(&self, element: &str) -> Option<&str> {
        self.assignment.get(element).map(String::as_str)
    }

    /// `(element, unit)` pairs in insertion order.
    pub fn assignments(&self) -> impl Iterator<Item = (&str, &str)> {
        self.assignment.iter().map(|(e, u)| (e.as_str(), u.as_str()))
    }

    /// Directed partner links.
    pub fn links(&self) -> impl Iterator<Item = (&str, &str)> {
        self.links.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn are_partners(&self, a: &str, b: &str) -> bool {
        self.links.contains(&(a.to_owned(), b.to_owned()))
    }

    fn members(&self) -> HashMap<&str, Vec<&str>> {
        let mut m: HashMap<&str, Vec<&str>> = HashMap::new();
        for (e, u) in &self.assignment {
            m.entry(u.as_str()).or_default().push(e.as_str());
        }
        m
    }

    /// Number of declared units hosting at least one element.
    pub fn count_units(&self) -> usize {
        let members = self.members();
        self.units.iter().filter(|u| members.contains_key(u.as_str())).count()
    }

    /// Partner pairs listed once, ordered by unit declaration position.
    /// Pairs touching undeclared units are ordered after, by name.
    fn canonical_pairs(&self) -> Vec<(&str, &str)> {
        let pos = |u: &str| self.units.get_index_of(u).unwrap_or(usize::MAX);
        let mut pairs: BTreeSet<(usize, usize, &str, &str)> = BTreeSet::new();
        for (a, b) in &self.links {
            let (x, y) = if (pos(a), a) <= (pos(b), b) { (a, b) } else { (b, a) };
            pairs.insert((pos(x), pos(y), x.as_str(), y.as_str()));
        }
        pairs.into_iter().map(|(_, _, a, b)| (a, b)).collect()
    }

    /// Line-based solution text.
    ///
    /// Each non-empty unit is written as a `unit` line followed by its
    /// `assign` lines; `partner` pairs follow, once each in canonical order.
    /// Partner pairs touching an empty unit are dropped with it.
    pub fn to_text(&self) -> String {
        let members = self.members();
        let mut out = String::new();
        for u in &self.units {
            if let Some(elems) = members.get(u.as_str()) {
                writeln!(out, "unit {u}").unwrap();
                for e in elems {
                    writeln!(out, "assign {e} {u}").unwrap();
                }
            }
        }
        let emitted = |u: &str| self.units.contains(u) && members.contains_key(u);
        for (a, b) in self.canonical_pairs() {
            if emitted(a) && emitted(b) {
                writeln!(out, "partner {a} {b}").unwrap();
            }
        }
        out
    }

    /// Graphviz description: one cluster per unit, partner links between
    /// clusters drawn as dashed edges between unit nodes.
    pub fn to_dot(&self) -> String {
        let members = self.members();
        let mut out = String::from("graph solution {\n  compound=true;\n");
        for u in &self.units {
            let Some(elems) = members.get(u.as_str()) else {
                continue;
            };
            let eu = escape_dot(u);
            writeln!(out, "  subgraph \"cluster_{eu}\" {{\n    label=\"{eu}\";").unwrap();
            writeln!(out, "    \"unit:{eu}\" [shape=point];").unwrap();
            for e in elems {
                writeln!(out, "    \"{}\";", escape_dot(e)).unwrap();
            }
            out.push_str("  }\n");
        }
        for (a, b) in self.canonical_pairs() {
            writeln!(
                out,
                "  \"unit:{}\" -- \"unit:{}\" [style=dashed];",
                escape_dot(a),
                escape_dot(b)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl SolutionError {
    fn at_line(self, n: usize) -> Self {
        use SolutionError::*;
        match self {
            Syntax { message, .. } => Syntax { line: n, message },
            DuplicateUnit { unit, .. } => DuplicateUnit { line: n, unit },
            UndeclaredUnit { unit, .. } => UndeclaredUnit { line: n, unit },
            DuplicateAssignment {
                element,
                first,
                second,
                ..
            } => DuplicateAssignment {
                line: n,
                element,
                first,
                second,
            },
            SelfPartner { unit, .. } => SelfPartner { line: n, unit },
            DuplicatePartner { a, b, .. } => DuplicatePartner { line: n, a, b },
        }
    }
}

/// Parses the solution format written by [`SolutionGraph::to_text`].
///
/// Units must be declared by a `unit` line before `assign` or `partner`
/// lines refer to them.
pub fn parse_solution(text: &str) -> Result<SolutionGraph, SolutionError> {
    let mut g = SolutionGraph::new();
    for (k, raw) in text.lines().enumerate() {
        let n = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let declared = |g: &SolutionGraph, u: &str| {
            if g.has_unit(u) {
                Ok(())
            } else {
                Err(SolutionError::UndeclaredUnit {
                    line: n,
                    unit: u.to_owned(),
                })
            }
        };
        match fields.as_slice() {
            ["unit", u] => g.add_unit(u).map_err(|e| e.at_line(n))?,
            ["assign", e, u] => {
                declared(&g, u)?;
                g.assign(e, u).map_err(|e| e.at_line(n))?;
            }
            ["partner", a, b] => {
                declared(&g, a)?;
                declared(&g, b)?;
                g.add_partner(a, b).map_err(|e| e.at_line(n))?;
            }
            [kw, ..] if matches!(*kw, "unit" | "assign" | "partner") => {
                return Err(SolutionError::Syntax {
                    line: n,
                    message: format!("wrong number of arguments for `{kw}`"),
                })
            }
            [kw, ..] => {
                return Err(SolutionError::Syntax {
                    line: n,
                    message: format!("unknown directive `{kw}`"),
                })
            }
            [] => unreachable!(),
        }
    }
    Ok(g)
}

/// Builds the input graph induced by a solution graph: an indicator and a
/// sensor are joined iff they sit on the same unit or on partner units.
///
/// Element sides are taken from `sides`, which must cover every assigned
/// element; the resulting element order follows `sides`. The graph must
/// respect `ucap` and `iucap` and have a symmetric partner relation.
pub fn induce_input_graph(
    g: &SolutionGraph,
    sides: &[(String, Side)],
    ucap: usize,
    iucap: usize,
) -> Result<Instance, InduceError> {
    let mut b = InstanceBuilder::new(ucap, iucap);
    let mut load: HashMap<&str, (usize, usize)> = HashMap::new();
    for (name, side) in sides {
        let unit = g
            .unit_of(name)
            .ok_or_else(|| InduceError::Unassigned(name.clone()))?;
        let slot = load.entry(unit).or_default();
        match side {
            Side::Indicator => {
                b.indicator(name)?;
                slot.0 += 1;
            }
            Side::Sensor => {
                b.sensor(name)?;
                slot.1 += 1;
            }
        }
    }
    for (unit, &(ni, ns)) in &load {
        for (count, what) in [(ni, "indicators"), (ns, "sensors")] {
            if count > ucap {
                return Err(InduceError::OverCapacity {
                    unit: unit.to_string(),
                    what,
                    count,
                    cap: ucap,
                });
            }
        }
    }
    let mut partner_count: HashMap<&str, usize> = HashMap::new();
    for (a, b) in g.links() {
        if !g.are_partners(b, a) {
            return Err(InduceError::Asymmetric(a.to_owned(), b.to_owned()));
        }
        *partner_count.entry(a).or_default() += 1;
    }
    for (unit, &count) in &partner_count {
        if count > iucap {
            return Err(InduceError::OverCapacity {
                unit: unit.to_string(),
                what: "partner units",
                count,
                cap: iucap,
            });
        }
    }

    for (i, si) in sides {
        if *si != Side::Indicator {
            continue;
        }
        let ui = g.unit_of(i).unwrap_or_default();
        for (s, ss) in sides {
            if *ss != Side::Sensor {
                continue;
            }
            let us = g.unit_of(s).unwrap_or_default();
            if ui == us || g.are_partners(ui, us) {
                b.edge(i, s)?;
            }
        }
    }
    Ok(b.build()?)
}

/// [`induce_input_graph`] using the element sides of `inst`.
pub fn induce_from_instance(g: &SolutionGraph, inst: &Instance) -> Result<Instance, InduceError> {
    let sides: Vec<(String, Side)> = inst
        .elements()
        .map(|e| (inst.name(e).to_owned(), inst.side(e)))
        .collect();
    induce_input_graph(g, &sides, inst.ucap(), inst.iucap())
}
