//! Independent solution checker.
//!
//! Works directly on element and unit names and re-derives every quantity
//! from the instance and the solution graph. It shares no code with the
//! search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::instance::{Instance, Side};
use crate::solution::SolutionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    IndicatorCapacity,
    SensorCapacity,
    PartnerCapacity,
    MissingConnection,
    AsymmetricPartner,
    UnassignedElement,
    UnknownReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReferenceKind {
    /// An element assigned in the solution but not declared in the instance.
    Element,
    /// A unit used by an assignment or link but not declared in the solution.
    Unit,
}

/// One broken condition of a candidate solution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    IndicatorCapacity {
        unit: String,
        count: usize,
        cap: usize,
    },
    SensorCapacity {
        unit: String,
        count: usize,
        cap: usize,
    },
    PartnerCapacity {
        unit: String,
        count: usize,
        cap: usize,
    },
    /// The endpoints of an input edge sit on distinct, unconnected units.
    MissingConnection {
        indicator: String,
        sensor: String,
        indicator_unit: String,
        sensor_unit: String,
    },
    AsymmetricPartner {
        from: String,
        to: String,
    },
    UnassignedElement {
        element: String,
    },
    UnknownReference {
        kind: ReferenceKind,
        name: String,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::IndicatorCapacity { .. } => ViolationKind::IndicatorCapacity,
            Violation::SensorCapacity { .. } => ViolationKind::SensorCapacity,
            Violation::PartnerCapacity { .. } => ViolationKind::PartnerCapacity,
            Violation::MissingConnection { .. } => ViolationKind::MissingConnection,
            Violation::AsymmetricPartner { .. } => ViolationKind::AsymmetricPartner,
            Violation::UnassignedElement { .. } => ViolationKind::UnassignedElement,
            Violation::UnknownReference { .. } => ViolationKind::UnknownReference,
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind())?;
        match self {
            Violation::IndicatorCapacity { unit, count, cap } => {
                write!(f, "unit {unit} hosts {count} indicators (ucap {cap})")
            }
            Violation::SensorCapacity { unit, count, cap } => {
                write!(f, "unit {unit} hosts {count} sensors (ucap {cap})")
            }
            Violation::PartnerCapacity { unit, count, cap } => {
                write!(f, "unit {unit} has {count} partner units (iucap {cap})")
            }
            Violation::MissingConnection {
                indicator,
                sensor,
                indicator_unit,
                sensor_unit,
            } => write!(
                f,
                "edge {indicator}-{sensor} crosses unconnected units {indicator_unit} and {sensor_unit}"
            ),
            Violation::AsymmetricPartner { from, to } => {
                write!(f, "{from} lists {to} as partner but not vice versa")
            }
            Violation::UnassignedElement { element } => write!(f, "element {element} has no unit"),
            Violation::UnknownReference { kind, name } => match kind {
                ReferenceKind::Element => write!(f, "element {name} is not part of the instance"),
                ReferenceKind::Unit => write!(f, "unit {name} is not declared"),
            },
        }
    }
}

/// Checks `g` against every solution condition for `inst` and returns all
/// violations found, in a deterministic order. An empty result means `g` is
/// a solution.
pub fn verify_solution(inst: &Instance, g: &SolutionGraph) -> Vec<Violation> {
    let mut out = BTreeSet::new();
    let declared: BTreeSet<&str> = g.units().collect();

    for (element, unit) in g.assignments() {
        if inst.lookup(element).is_none() {
            out.insert(Violation::UnknownReference {
                kind: ReferenceKind::Element,
                name: element.to_owned(),
            });
        }
        if !declared.contains(unit) {
            out.insert(Violation::UnknownReference {
                kind: ReferenceKind::Unit,
                name: unit.to_owned(),
            });
        }
    }

    // per-unit indicator and sensor loads
    let mut load: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for e in inst.elements() {
        let name = inst.name(e);
        match g.unit_of(name) {
            None => {
                out.insert(Violation::UnassignedElement {
                    element: name.to_owned(),
                });
            }
            Some(unit) => {
                let slot = load.entry(unit).or_default();
                match inst.side(e) {
                    Side::Indicator => slot.0 += 1,
                    Side::Sensor => slot.1 += 1,
                }
            }
        }
    }
    let cap = inst.ucap();
    for (unit, (ni, ns)) in load {
        if ni > cap {
            out.insert(Violation::IndicatorCapacity {
                unit: unit.to_owned(),
                count: ni,
                cap,
            });
        }
        if ns > cap {
            out.insert(Violation::SensorCapacity {
                unit: unit.to_owned(),
                count: ns,
                cap,
            });
        }
    }

    let links: BTreeSet<(&str, &str)> = g.links().collect();
    let mut partners: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for &(a, b) in &links {
        for u in [a, b] {
            if !declared.contains(u) {
                out.insert(Violation::UnknownReference {
                    kind: ReferenceKind::Unit,
                    name: u.to_owned(),
                });
            }
        }
        if !links.contains(&(b, a)) {
            out.insert(Violation::AsymmetricPartner {
                from: a.to_owned(),
                to: b.to_owned(),
            });
        }
        if a != b {
            partners.entry(a).or_default().insert(b);
        }
    }
    for (unit, set) in &partners {
        if set.len() > inst.iucap() {
            out.insert(Violation::PartnerCapacity {
                unit: (*unit).to_owned(),
                count: set.len(),
                cap: inst.iucap(),
            });
        }
    }

    for &(i, s) in inst.edges() {
        let (iname, sname) = (inst.name(i), inst.name(s));
        let (Some(ui), Some(us)) = (g.unit_of(iname), g.unit_of(sname)) else {
            continue;
        };
        if ui != us && !links.contains(&(ui, us)) && !links.contains(&(us, ui)) {
            out.insert(Violation::MissingConnection {
                indicator: iname.to_owned(),
                sensor: sname.to_owned(),
                indicator_unit: ui.to_owned(),
                sensor_unit: us.to_owned(),
            });
        }
    }

    out.into_iter().collect()
}

/// Number of non-empty units.
pub fn count_units(g: &SolutionGraph) -> usize {
    g.count_units()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures::railway_example, parse_solution};

    /// A hand-made three-unit solution of the railway example: a chain
    /// u2 - u1 - u3 where I1 sits in the middle.
    const RAILWAY_SOLUTION: &str = "\
unit u1
assign I1 u1
assign S2 u1
assign S5 u1
unit u2
assign S1 u2
assign S6 u2
unit u3
assign I2 u3
assign I3 u3
assign S3 u3
assign S4 u3
partner u1 u2
partner u1 u3
";

    #[test]
    fn accepts_valid_solution() {
        let inst = railway_example();
        let g = parse_solution(RAILWAY_SOLUTION).unwrap();
        assert_eq!(verify_solution(&inst, &g), vec![]);
        assert_eq!(count_units(&g), 3);
    }

    #[test]
    fn deleted_partner_edge() {
        let inst = railway_example();
        let mut g = parse_solution(RAILWAY_SOLUTION).unwrap();
        assert!(g.remove_partner("u1", "u3"));
        let v = verify_solution(&inst, &g);
        // I2 on u3 needs S2 and S5 on u1
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.kind() == ViolationKind::MissingConnection));
        let pairs: Vec<_> = v
            .iter()
            .map(|x| match x {
                Violation::MissingConnection {
                    indicator, sensor, ..
                } => (indicator.as_str(), sensor.as_str()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(pairs, vec![("I2", "S2"), ("I2", "S5")]);
    }

    #[test]
    fn sensor_overflow() {
        let inst = railway_example();
        let mut g = parse_solution(RAILWAY_SOLUTION).unwrap();
        // u2 holds S1 S6; moving S2 there makes ucap + 1 sensors
        g.reassign("S2", Some("u2"));
        let v = verify_solution(&inst, &g);
        let over: Vec<_> = v
            .iter()
            .filter(|x| x.kind() == ViolationKind::SensorCapacity)
            .collect();
        assert_eq!(
            over,
            vec![&Violation::SensorCapacity {
                unit: "u2".into(),
                count: 3,
                cap: 2
            }]
        );
        // I2 on u3 lost S2; u3 and u2 are not partners
        assert!(v.iter().any(|x| x.kind() == ViolationKind::MissingConnection));
    }

    #[test]
    fn unassigned_and_unknown() {
        let inst = railway_example();
        let mut g = parse_solution(RAILWAY_SOLUTION).unwrap();
        g.reassign("S6", None);
        g.assign("X9", "u1").unwrap();
        g.assign("S6", "u7").unwrap();
        let kinds: Vec<_> = verify_solution(&inst, &g).iter().map(Violation::kind).collect();
        assert!(kinds.contains(&ViolationKind::UnknownReference));
        assert_eq!(
            kinds.iter().filter(|k| **k == ViolationKind::UnknownReference).count(),
            2
        );
        g.reassign("S6", None);
        let v = verify_solution(&inst, &g);
        assert!(v.contains(&Violation::UnassignedElement {
            element: "S6".into()
        }));
    }

    #[test]
    fn asymmetric_and_partner_capacity() {
        let inst = railway_example().with_capacities(2, 1).unwrap();
        let mut g = parse_solution(RAILWAY_SOLUTION).unwrap();
        g.add_unit("u4").unwrap();
        g.add_directed_link("u4", "u2");
        let v = verify_solution(&inst, &g);
        assert!(v.contains(&Violation::AsymmetricPartner {
            from: "u4".into(),
            to: "u2".into()
        }));
        assert!(v.contains(&Violation::PartnerCapacity {
            unit: "u1".into(),
            count: 2,
            cap: 1
        }));
        for x in &v {
            assert!(!x.to_string().is_empty());
        }
    }
}
