use std::collections::BTreeSet;

use super::model::{PartialModel, UnitId};

struct Group {
    members: Vec<UnitId>,
    indicators: usize,
    sensors: usize,
    partners: BTreeSet<usize>,
}

/// Greedy unit merging.
///
/// Visits every ordered pair `(a, b)` of live units in creation order and
/// merges `b` into `a` when the merged unit stays within `ucap` on both
/// sides and within `iucap` partners (links between `a` and `b` vanish).
/// Partners of `b` are redirected to `a`. The result is rebuilt with a
/// fresh journal and units renumbered in creation order of the survivors.
///
/// # Panics
///
/// If `model` is not complete.
pub fn minimize<'a>(model: &PartialModel<'a>) -> PartialModel<'a> {
    let inst = model.instance();
    assert!(model.is_complete(), "minimize needs a complete model");
    let (ucap, iucap) = (inst.ucap(), inst.iucap());

    let n = model.num_units();
    let mut groups: Vec<Option<Group>> = (0..n)
        .map(|k| {
            let u = UnitId(k as u32);
            Some(Group {
                members: vec![u],
                indicators: model.indicator_count(u),
                sensors: model.sensor_count(u),
                partners: model.partners(u).iter().map(|v| v.index()).collect(),
            })
        })
        .collect();

    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (Some(ga), Some(gb)) = (&groups[a], &groups[b]) else {
                continue;
            };
            if ga.indicators + gb.indicators > ucap || ga.sensors + gb.sensors > ucap {
                continue;
            }
            let mut union: BTreeSet<usize> = ga.partners.union(&gb.partners).copied().collect();
            union.remove(&a);
            union.remove(&b);
            if union.len() > iucap {
                continue;
            }
            let gb = groups[b].take().unwrap();
            for &c in &gb.partners {
                if c == a {
                    continue;
                }
                let gc = groups[c].as_mut().expect("partner is live");
                gc.partners.remove(&b);
                gc.partners.insert(a);
            }
            let ga = groups[a].as_mut().unwrap();
            ga.members.extend(gb.members);
            ga.indicators += gb.indicators;
            ga.sensors += gb.sensors;
            ga.partners = union;
        }
    }

    // old unit -> new unit
    let mut remap = vec![UnitId(0); n];
    for (new, g) in groups.iter().flatten().enumerate() {
        for &old in &g.members {
            remap[old.index()] = UnitId(new as u32);
        }
    }
    let assignment: Vec<UnitId> = inst
        .elements()
        .map(|e| remap[model.unit_of(e).expect("complete model").index()])
        .collect();
    PartialModel::from_assignment(inst, &assignment)
}
