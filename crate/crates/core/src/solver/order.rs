use crate::instance::{ElemId, Instance, Side};

/// A static element ordering for the search, produced by breadth-first
/// traversal from a start element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementOrder {
    elements: Vec<ElemId>,
}

impl ElementOrder {
    pub fn start(&self) -> ElemId {
        self.elements[0]
    }

    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn names<'a>(&self, inst: &'a Instance) -> Vec<&'a str> {
        self.elements.iter().map(|&e| inst.name(e)).collect()
    }
}

/// Level-by-level breadth-first order from `start`.
///
/// Each new level is the set of unvisited neighbours of the previous level,
/// emitted in increasing element index. When the component of `start` is
/// exhausted while unvisited elements remain, traversal restarts from the
/// lowest-index unvisited indicator, or the lowest-index unvisited sensor if
/// no indicator is left.
///
/// # Panics
///
/// If `start` is not an element of `inst`.
pub fn breadth_first_order(inst: &Instance, start: ElemId) -> ElementOrder {
    assert!(start.index() < inst.len(), "start element out of range");
    let n = inst.len();
    let mut visited = vec![false; n];
    let mut elements = Vec::with_capacity(n);
    let mut level = vec![start];
    visited[start.index()] = true;
    elements.push(start);

    loop {
        let mut next = Vec::new();
        for &e in &level {
            for &nb in inst.neighbors(e) {
                if !visited[nb.index()] {
                    visited[nb.index()] = true;
                    next.push(nb);
                }
            }
        }
        if next.is_empty() {
            if elements.len() == n {
                break;
            }
            let fresh = |side: Side| {
                inst.elements()
                    .find(|&e| !visited[e.index()] && inst.side(e) == side)
            };
            let restart = fresh(Side::Indicator)
                .or_else(|| fresh(Side::Sensor))
                .expect("unvisited element exists");
            visited[restart.index()] = true;
            next.push(restart);
        }
        next.sort_unstable();
        elements.extend_from_slice(&next);
        level = next;
    }
    ElementOrder { elements }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::railway_example;
    use crate::parse_instance;

    /// Independent oracle: distances by repeated relaxation over the edge
    /// list, then sort by (distance, index). Only valid for connected graphs.
    fn relaxation_order(inst: &Instance, start: ElemId) -> Vec<ElemId> {
        let mut dist = vec![usize::MAX; inst.len()];
        dist[start.index()] = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, s) in inst.edges() {
                for (a, b) in [(i, s), (s, i)] {
                    if dist[a.index()] != usize::MAX && dist[a.index()] + 1 < dist[b.index()] {
                        dist[b.index()] = dist[a.index()] + 1;
                        changed = true;
                    }
                }
            }
        }
        let mut all: Vec<ElemId> = inst.elements().collect();
        all.sort_by_key(|e| (dist[e.index()], *e));
        all
    }

    #[test]
    fn single_edge() {
        let inst = parse_instance("ucap 1\niucap 0\nindicator i1\nsensor s1\nedge i1 s1").unwrap();
        let o = breadth_first_order(&inst, inst.lookup("i1").unwrap());
        assert_eq!(o.names(&inst), ["i1", "s1"]);
    }

    #[test]
    fn star() {
        let inst = parse_instance(
            "ucap 1\niucap 0\nindicator i1\nsensor s2\nsensor s1\nedge i1 s1\nedge i1 s2",
        )
        .unwrap();
        // s2 declared first, so it has the lower index
        let o = breadth_first_order(&inst, inst.lookup("i1").unwrap());
        assert_eq!(o.names(&inst), ["i1", "s2", "s1"]);
    }

    #[test]
    fn railway_from_i3() {
        let inst = railway_example();
        let start = inst.lookup("I3").unwrap();
        let o = breadth_first_order(&inst, start);
        let expected = ["I3", "S3", "S4", "I2", "S2", "S5", "I1", "S1", "S6"];
        assert_eq!(o.names(&inst), expected);
        assert_eq!(o.elements(), relaxation_order(&inst, start).as_slice());
        assert_eq!(o.start(), start);
    }

    #[test]
    fn matches_relaxation_from_every_start() {
        let inst = railway_example();
        for start in inst.elements() {
            let o = breadth_first_order(&inst, start);
            assert_eq!(o.elements(), relaxation_order(&inst, start).as_slice());
        }
    }

    #[test]
    fn disconnected_components_are_appended() {
        let inst = parse_instance(
            "ucap 1\niucap 0\nsensor t\nindicator a\nsensor x\nindicator b\nsensor y\nsensor z\nedge a x\nedge b y\n",
        )
        .unwrap();
        let o = breadth_first_order(&inst, inst.lookup("b").unwrap());
        // b's component, then a's (lowest unvisited indicator), then the
        // isolated sensors by index
        assert_eq!(o.names(&inst), ["b", "y", "a", "x", "t", "z"]);
    }
}
