//! Instance transformations between problem classes.
//!
//! - [`lift_iucap0_to_1`]: inter-unit capacity 0 to inter-unit capacity 1,
//!   doubling elements and units.
//! - [`double_binpack`]: bin packing with even item and bin sizes.
//! - [`binpack_to_pup_iucap2`]: bin packing to partner units with
//!   inter-unit capacity 2, where every bin becomes a ring of three full
//!   units.

use std::collections::HashSet;

use crate::binpack::BinPackingInstance;
use crate::error::ReductionError;
use crate::instance::{Instance, InstanceBuilder, Side};

/// Maps an instance with `iucap = 0` solved with `units` units to an
/// equisatisfiable instance with `iucap = 1` and `2 * units` units.
///
/// Every element `x` gets a dummy twin `d_x` of the same side. For every
/// edge `(i, s)` the edges `(d_i, d_s)`, `(i, d_s)` and `(d_i, s)` are
/// added next to the original one. Twins whose default name is taken get
/// additional `d_` prefixes.
pub fn lift_iucap0_to_1(inst: &Instance, units: usize) -> Result<(Instance, usize), ReductionError> {
    if inst.iucap() != 0 {
        return Err(ReductionError::NonZeroIucap(inst.iucap()));
    }
    let mut taken: HashSet<String> = inst.elements().map(|e| inst.name(e).to_owned()).collect();
    let twins: Vec<String> = inst
        .elements()
        .map(|e| {
            let mut name = format!("d_{}", inst.name(e));
            while taken.contains(&name) {
                name.insert_str(0, "d_");
            }
            taken.insert(name.clone());
            name
        })
        .collect();

    let mut b = InstanceBuilder::new(inst.ucap(), 1);
    let declare = |b: &mut InstanceBuilder, name: &str, side: Side| {
        match side {
            Side::Indicator => b.indicator(name),
            Side::Sensor => b.sensor(name),
        }
        .expect("names are unique")
    };
    let originals: Vec<_> = inst
        .elements()
        .map(|e| declare(&mut b, inst.name(e), inst.side(e)))
        .collect();
    let dummies: Vec<_> = inst
        .elements()
        .map(|e| declare(&mut b, &twins[e.index()], inst.side(e)))
        .collect();
    for &(i, s) in inst.edges() {
        let (oi, os) = (originals[i.index()], originals[s.index()]);
        let (di, ds) = (dummies[i.index()], dummies[s.index()]);
        for (x, y) in [(oi, os), (di, ds), (oi, ds), (di, os)] {
            b.edge_ids(x, y).expect("fresh edge");
        }
    }
    Ok((b.build().expect("ucap carried over"), 2 * units))
}

/// Multiplies every item size and the bin size by two.
pub fn double_binpack(b: &BinPackingInstance) -> BinPackingInstance {
    BinPackingInstance::new(
        b.items().iter().map(|n| 2 * n).collect(),
        2 * b.bin_size(),
        b.bins(),
    )
    .expect("doubling keeps sizes positive")
}

/// Builds a partner units instance with `ucap = bin_size + 1` and
/// `iucap = 2` that has a solution with `3 * bins` units iff the items fit
/// into `bins` bins. Returns the instance and that unit count.
///
/// Each bin becomes a complete biclique of `2 * ucap + 1` indicators and as
/// many sensors (`bin{m}_i{k}`, `bin{m}_s{k}`); spread over three mutually
/// partnered units it leaves `bin_size` free slots per side. Each item of
/// size `n` becomes an indicator `item{m}_i` joined to `n` sensors
/// `item{m}_s{k}`. Bins are declared before items.
pub fn binpack_to_pup_iucap2(b: &BinPackingInstance) -> (Instance, usize) {
    let ucap = b.bin_size() + 1;
    let width = 2 * ucap + 1;
    let mut out = InstanceBuilder::new(ucap, 2);
    for m in 1..=b.bins() {
        let inds: Vec<_> = (1..=width)
            .map(|k| out.indicator(&format!("bin{m}_i{k}")).unwrap())
            .collect();
        let sens: Vec<_> = (1..=width)
            .map(|k| out.sensor(&format!("bin{m}_s{k}")).unwrap())
            .collect();
        for &i in &inds {
            for &s in &sens {
                out.edge_ids(i, s).unwrap();
            }
        }
    }
    for (m, &size) in b.items().iter().enumerate() {
        let m = m + 1;
        let i = out.indicator(&format!("item{m}_i")).unwrap();
        for k in 1..=size {
            let s = out.sensor(&format!("item{m}_s{k}")).unwrap();
            out.edge_ids(i, s).unwrap();
        }
    }
    (out.build().expect("ucap >= 2"), 3 * b.bins())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_instance;

    #[test]
    fn lift_single_edge() {
        let inst = parse_instance("ucap 1\niucap 0\nindicator i1\nsensor s1\nedge i1 s1\n").unwrap();
        let (lifted, units) = lift_iucap0_to_1(&inst, 3).unwrap();
        assert_eq!(units, 6);
        assert_eq!(lifted.len(), 4);
        assert_eq!(lifted.iucap(), 1);
        let id = |n| lifted.lookup(n).unwrap();
        let mut edges: Vec<_> = lifted
            .edges()
            .iter()
            .map(|&(i, s)| (lifted.name(i), lifted.name(s)))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            [("d_i1", "d_s1"), ("d_i1", "s1"), ("i1", "d_s1"), ("i1", "s1")]
        );
        assert_eq!(lifted.side(id("d_i1")), Side::Indicator);
    }

    #[test]
    fn lift_isolated_elements() {
        let inst = parse_instance("ucap 1\niucap 0\nindicator a\nsensor b\n").unwrap();
        let (lifted, units) = lift_iucap0_to_1(&inst, 1).unwrap();
        assert_eq!((lifted.len(), lifted.edges().len(), units), (4, 0, 2));
    }

    #[test]
    fn lift_avoids_name_clash() {
        let inst = parse_instance("ucap 1\niucap 0\nindicator a\nindicator d_a\n").unwrap();
        let (lifted, _) = lift_iucap0_to_1(&inst, 1).unwrap();
        let names: Vec<_> = lifted.elements().map(|e| lifted.name(e)).collect();
        assert_eq!(names, ["a", "d_a", "d_d_a", "d_d_d_a"]);
    }

    #[test]
    fn lift_requires_iucap0() {
        let inst = parse_instance("ucap 1\niucap 1\n").unwrap();
        assert_eq!(lift_iucap0_to_1(&inst, 1).unwrap_err(), ReductionError::NonZeroIucap(1));
    }

    #[test]
    fn doubling() {
        let b = BinPackingInstance::new(vec![1, 2], 3, 2).unwrap();
        assert_eq!(double_binpack(&b), BinPackingInstance::new(vec![2, 4], 6, 2).unwrap());
        let e = BinPackingInstance::new(vec![], 1, 1).unwrap();
        assert_eq!(double_binpack(&e), BinPackingInstance::new(vec![], 2, 1).unwrap());
    }

    #[test]
    fn single_bin_gadget() {
        let b = BinPackingInstance::new(vec![2], 2, 1).unwrap();
        let (inst, units) = binpack_to_pup_iucap2(&b);
        assert_eq!((inst.ucap(), inst.iucap(), units), (3, 2, 3));
        assert_eq!(inst.indicators().len(), 1 + 7);
        assert_eq!(inst.sensors().len(), 2 + 7);
        assert_eq!(inst.edges().len(), 2 + 49);
        assert!(inst.lookup("bin1_i7").is_some());
        assert!(inst.lookup("item1_s2").is_some());
    }

    fn decide_at(b: &BinPackingInstance) -> bool {
        let (inst, units) = binpack_to_pup_iucap2(b);
        let cfg = crate::SolveConfig::new(10_000, Some(units)).unwrap();
        let out = crate::solve(&inst, &cfg);
        assert!(!matches!(out.result, crate::SolveResult::Timeout));
        if let Some(g) = out.result.solution() {
            assert!(crate::verify_solution(&inst, g).is_empty());
        }
        out.result.is_satisfiable()
    }

    #[test]
    fn reduction_examples() {
        let bp = |items: Vec<usize>, size, bins| BinPackingInstance::new(items, size, bins).unwrap();
        assert!(decide_at(&bp(vec![2], 2, 1)));
        assert!(!decide_at(&bp(vec![2, 2], 2, 1)));
        assert!(!decide_at(&bp(vec![4], 2, 2)));
        assert!(decide_at(&bp(vec![1, 1], 2, 1)));
    }

    #[test]
    fn gadget_needs_exactly_three_units() {
        for bin_size in 1..=2 {
            let (inst, units) = binpack_to_pup_iucap2(&BinPackingInstance::new(vec![], bin_size, 1).unwrap());
            assert_eq!(units, 3);
            let decide = |k| crate::oracle::oracle_decide_with_guard(&inst, k, 14).unwrap().is_sat();
            assert!(!decide(2));
            assert!(decide(3));
        }
    }

    /// All ways to spread `total` elements over `m` units of capacity `cap`,
    /// as per-unit counts.
    fn spreads(m: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=cap.min(total) {
            for mut rest in spreads(m - 1, total - first, cap) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn gadget_layouts_are_rigid_rings() {
        // the gadget is a complete biclique, so a solution is fixed by the
        // indicator and sensor counts per unit; indicator units must reach
        // every sensor unit within one hop, so at most 3 of each exist
        for bin_size in 1..=3 {
            let ucap = bin_size + 1;
            let width = 2 * ucap + 1;
            let mut valid = 0;
            for m in 1..=6 {
                for a in spreads(m, width, ucap) {
                    for b in spreads(m, width, ucap) {
                        if (0..m).any(|x| a[x] + b[x] == 0) {
                            continue;
                        }
                        let mut partners = vec![HashSet::new(); m];
                        for x in 0..m {
                            for y in 0..m {
                                if x != y && a[x] > 0 && b[y] > 0 {
                                    partners[x].insert(y);
                                    partners[y].insert(x);
                                }
                            }
                        }
                        if partners.iter().any(|p| p.len() > 2) {
                            continue;
                        }
                        valid += 1;
                        assert_eq!(m, 3, "{a:?} {b:?}");
                        assert!(partners.iter().all(|p| p.len() == 2));
                        assert_eq!(3 * ucap - a.iter().sum::<usize>(), bin_size);
                        assert_eq!(3 * ucap - b.iter().sum::<usize>(), bin_size);
                    }
                }
            }
            assert!(valid > 0);
        }
    }

    #[test]
    fn lift_quadruples_edges() {
        let inst = crate::fixtures::railway_example().with_capacities(2, 0).unwrap();
        let (lifted, units) = lift_iucap0_to_1(&inst, 5).unwrap();
        assert_eq!(lifted.len(), 2 * inst.len());
        assert_eq!(lifted.edges().len(), 4 * inst.edges().len());
        assert_eq!(units, 10);
    }
}
