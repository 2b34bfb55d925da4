//! Partner units problem instances.
//!
//! An instance is a bipartite input graph between indicators and sensors,
//! plus the two capacities: `ucap` bounds the indicators and, separately,
//! the sensors hosted by a single unit; `iucap` bounds the number of
//! partner units a unit may be connected to.
//!
//! Every element gets a dense [`ElemId`] in declaration order. All
//! downstream tie-breaking (traversal order, entry points, emission order)
//! uses this index.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::error::InstanceError;

/// Dense element index, assigned in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub u32);

impl ElemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Indicator,
    Sensor,
}

impl Side {
    pub fn keyword(self) -> &'static str {
        match self {
            Side::Indicator => "indicator",
            Side::Sensor => "sensor",
        }
    }
}

/// A validated, immutable partner units problem instance.
#[derive(Debug, Clone)]
pub struct Instance {
    names: Vec<String>,
    sides: Vec<Side>,
    index: HashMap<String, ElemId>,
    indicators: Vec<ElemId>,
    sensors: Vec<ElemId>,
    /// Edges as (indicator, sensor) in declaration order.
    edges: Vec<(ElemId, ElemId)>,
    /// Neighbours of each element, sorted by index.
    adjacency: Vec<Vec<ElemId>>,
    ucap: usize,
    iucap: usize,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        if self.ucap != other.ucap || self.iucap != other.iucap {
            return false;
        }
        let names = |ids: &[ElemId], inst: &Instance| -> Vec<String> {
            let mut v: Vec<String> = ids.iter().map(|&e| inst.name(e).to_owned()).collect();
            v.sort();
            v
        };
        let edge_names = |inst: &Instance| -> Vec<(String, String)> {
            let mut v: Vec<_> = inst
                .edges
                .iter()
                .map(|&(i, s)| (inst.name(i).to_owned(), inst.name(s).to_owned()))
                .collect();
            v.sort();
            v
        };
        names(&self.indicators, self) == names(&other.indicators, other)
            && names(&self.sensors, self) == names(&other.sensors, other)
            && edge_names(self) == edge_names(other)
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn builder(ucap: usize, iucap: usize) -> InstanceBuilder {
        InstanceBuilder::new(ucap, iucap)
    }

    pub fn ucap(&self) -> usize {
        self.ucap
    }

    pub fn iucap(&self) -> usize {
        self.iucap
    }

    /// Total number of elements (indicators and sensors).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElemId> + '_ {
        (0..self.names.len() as u32).map(ElemId)
    }

    pub fn indicators(&self) -> &[ElemId] {
        &self.indicators
    }

    pub fn sensors(&self) -> &[ElemId] {
        &self.sensors
    }

    pub fn edges(&self) -> &[(ElemId, ElemId)] {
        &self.edges
    }

    pub fn neighbors(&self, e: ElemId) -> &[ElemId] {
        &self.adjacency[e.index()]
    }

    pub fn degree(&self, e: ElemId) -> usize {
        self.adjacency[e.index()].len()
    }

    pub fn side(&self, e: ElemId) -> Side {
        self.sides[e.index()]
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.names[e.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<ElemId> {
        self.index.get(name).copied()
    }

    pub fn has_edge(&self, a: ElemId, b: ElemId) -> bool {
        self.adjacency[a.index()].binary_search(&b).is_ok()
    }

    /// Same graph with different capacities.
    pub fn with_capacities(&self, ucap: usize, iucap: usize) -> Result<Instance, InstanceError> {
        if ucap == 0 {
            return Err(InstanceError::ZeroUcap);
        }
        let mut out = self.clone();
        out.ucap = ucap;
        out.iucap = iucap;
        Ok(out)
    }

    /// Elements whose degree exceeds `(iucap + 1) * ucap`.
    ///
    /// An element can only communicate with the elements of its own unit and
    /// of at most `iucap` partner units, so a non-empty result means the
    /// instance has no solution for any number of units.
    pub fn degree_precheck(&self) -> Vec<ElemId> {
        let bound = (self.iucap + 1).saturating_mul(self.ucap);
        self.elements().filter(|&e| self.degree(e) > bound).collect()
    }

    /// Serialises the instance in the line-based instance format.
    ///
    /// Declarations are written in index order so that re-parsing assigns
    /// the same element ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ucap {}", self.ucap).unwrap();
        writeln!(out, "iucap {}", self.iucap).unwrap();
        for e in self.elements() {
            writeln!(out, "{} {}", self.side(e).keyword(), self.name(e)).unwrap();
        }
        for &(i, s) in &self.edges {
            writeln!(out, "edge {} {}", self.name(i), self.name(s)).unwrap();
        }
        out
    }

    /// Graphviz description of the bipartite input graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph input {\n");
        for e in self.elements() {
            let shape = match self.side(e) {
                Side::Indicator => "box",
                Side::Sensor => "ellipse",
            };
            writeln!(out, "  \"{}\" [shape={shape}];", escape_dot(self.name(e))).unwrap();
        }
        for &(i, s) in &self.edges {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape_dot(self.name(i)),
                escape_dot(self.name(s))
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Incremental, validating constructor for [`Instance`].
#[derive(Debug, Clone)]
pub struct InstanceBuilder {
    names: Vec<String>,
    sides: Vec<Side>,
    index: HashMap<String, ElemId>,
    edges: Vec<(ElemId, ElemId)>,
    adjacency: Vec<Vec<ElemId>>,
    ucap: usize,
    iucap: usize,
}

impl InstanceBuilder {
    pub fn new(ucap: usize, iucap: usize) -> Self {
        InstanceBuilder {
            names: Vec::new(),
            sides: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
            ucap,
            iucap,
        }
    }

    fn declare(&mut self, name: &str, side: Side) -> Result<ElemId, InstanceError> {
        if self.index.contains_key(name) {
            return Err(InstanceError::DuplicateId {
                line: 0,
                id: name.to_owned(),
            });
        }
        let id = ElemId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.sides.push(side);
        self.adjacency.push(Vec::new());
        self.index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn indicator(&mut self, name: &str) -> Result<ElemId, InstanceError> {
        self.declare(name, Side::Indicator)
    }

    pub fn sensor(&mut self, name: &str) -> Result<ElemId, InstanceError> {
        self.declare(name, Side::Sensor)
    }

    pub fn lookup(&self, name: &str) -> Option<ElemId> {
        self.index.get(name).copied()
    }

    /// Adds an edge given by element names.
    pub fn edge(&mut self, a: &str, b: &str) -> Result<(), InstanceError> {
        let undeclared = |id: &str| InstanceError::UndeclaredId {
            line: 0,
            id: id.to_owned(),
        };
        let ea = self.lookup(a).ok_or_else(|| undeclared(a))?;
        let eb = self.lookup(b).ok_or_else(|| undeclared(b))?;
        self.edge_ids(ea, eb)
    }

    /// Adds an edge between two declared ids. Either endpoint order is accepted.
    pub fn edge_ids(&mut self, a: ElemId, b: ElemId) -> Result<(), InstanceError> {
        let (i, s) = match (self.sides[a.index()], self.sides[b.index()]) {
            (Side::Indicator, Side::Sensor) => (a, b),
            (Side::Sensor, Side::Indicator) => (b, a),
            _ => {
                return Err(InstanceError::NotBipartite {
                    line: 0,
                    a: self.names[a.index()].clone(),
                    b: self.names[b.index()].clone(),
                })
            }
        };
        let adj = &mut self.adjacency[i.index()];
        match adj.binary_search(&s) {
            Ok(_) => {
                return Err(InstanceError::DuplicateEdge {
                    line: 0,
                    indicator: self.names[i.index()].clone(),
                    sensor: self.names[s.index()].clone(),
                })
            }
            Err(pos) => adj.insert(pos, s),
        }
        let adj = &mut self.adjacency[s.index()];
        let pos = adj.binary_search(&i).unwrap_err();
        adj.insert(pos, i);
        self.edges.push((i, s));
        Ok(())
    }

    pub fn build(self) -> Result<Instance, InstanceError> {
        if self.ucap == 0 {
            return Err(InstanceError::ZeroUcap);
        }
        let mut indicators = Vec::new();
        let mut sensors = Vec::new();
        for (k, side) in self.sides.iter().enumerate() {
            match side {
                Side::Indicator => indicators.push(ElemId(k as u32)),
                Side::Sensor => sensors.push(ElemId(k as u32)),
            }
        }
        Ok(Instance {
            names: self.names,
            sides: self.sides,
            index: self.index,
            indicators,
            sensors,
            edges: self.edges,
            adjacency: self.adjacency,
            ucap: self.ucap,
            iucap: self.iucap,
        })
    }
}

impl InstanceError {
    fn at_line(self, n: usize) -> Self {
        use InstanceError::*;
        match self {
            Syntax { message, .. } => Syntax { line: n, message },
            DuplicateId { id, .. } => DuplicateId { line: n, id },
            UndeclaredId { id, .. } => UndeclaredId { line: n, id },
            NotBipartite { a, b, .. } => NotBipartite { line: n, a, b },
            DuplicateEdge {
                indicator, sensor, ..
            } => DuplicateEdge {
                line: n,
                indicator,
                sensor,
            },
            DuplicateDirective { directive, .. } => DuplicateDirective { line: n, directive },
            other => other,
        }
    }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// Parses the instance file format.
///
/// ```text
/// ucap 2
/// iucap 2
/// indicator i1
/// sensor s1
/// edge i1 s1   # comment
/// ```
///
/// `ucap` and `iucap` may appear anywhere but exactly once each. Elements
/// must be declared before edges reference them.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut ucap: Option<usize> = None;
    let mut iucap: Option<usize> = None;
    let mut builder = InstanceBuilder::new(1, 0);

    for (k, raw) in text.lines().enumerate() {
        let n = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let syntax = |message: String| InstanceError::Syntax { line: n, message };
        match fields.as_slice() {
            ["ucap", v] | ["iucap", v] => {
                let value: usize = v
                    .parse()
                    .map_err(|_| syntax(format!("expected a non-negative integer, got `{v}`")))?;
                let (slot, name) = if fields[0] == "ucap" {
                    (&mut ucap, "ucap")
                } else {
                    (&mut iucap, "iucap")
                };
                if slot.is_some() {
                    return Err(InstanceError::DuplicateDirective {
                        line: n,
                        directive: name,
                    });
                }
                *slot = Some(value);
            }
            ["indicator", id] => {
                builder.indicator(id).map_err(|e| e.at_line(n))?;
            }
            ["sensor", id] => {
                builder.sensor(id).map_err(|e| e.at_line(n))?;
            }
            ["edge", a, b] => builder.edge(a, b).map_err(|e| e.at_line(n))?,
            [kw, ..] if matches!(*kw, "ucap" | "iucap" | "indicator" | "sensor" | "edge") => {
                return Err(syntax(format!("wrong number of arguments for `{kw}`")));
            }
            [kw, ..] => return Err(syntax(format!("unknown directive `{kw}`"))),
            [] => unreachable!(),
        }
    }

    builder.ucap = ucap.ok_or(InstanceError::MissingDirective("ucap"))?;
    builder.iucap = iucap.ok_or(InstanceError::MissingDirective("iucap"))?;
    builder.build()
}
