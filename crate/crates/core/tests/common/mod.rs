#![allow(dead_code)]

use pup::{Instance, InstanceBuilder};
use rand::rngs::StdRng;
use rand::Rng;

/// Builds an instance with indicators `i1..` and sensors `s1..`; `edges`
/// holds `(indicator, sensor)` index pairs.
pub fn build(ni: usize, ns: usize, edges: &[(usize, usize)], ucap: usize, iucap: usize) -> Instance {
    let mut b = InstanceBuilder::new(ucap, iucap);
    let inds: Vec<_> = (1..=ni).map(|k| b.indicator(&format!("i{k}")).unwrap()).collect();
    let sens: Vec<_> = (1..=ns).map(|k| b.sensor(&format!("s{k}")).unwrap()).collect();
    for &(i, s) in edges {
        b.edge_ids(inds[i], sens[s]).unwrap();
    }
    b.build().unwrap()
}

/// Random instance with up to `max_side` elements per side, ucap in {1, 2}
/// and iucap in {0, 1, 2, 3}.
pub fn random_instance(rng: &mut StdRng, max_side: usize) -> Instance {
    let ni = rng.gen_range(0..=max_side);
    let ns = rng.gen_range(0..=max_side);
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut edges = Vec::new();
    for i in 0..ni {
        for s in 0..ns {
            if rng.gen_bool(density) {
                edges.push((i, s));
            }
        }
    }
    build(ni, ns, &edges, rng.gen_range(1..=2), rng.gen_range(0..=3))
}

/// Every labelled bipartite graph with `ni` indicators and `ns` sensors.
pub fn all_graphs(ni: usize, ns: usize, ucap: usize, iucap: usize) -> impl Iterator<Item = Instance> {
    let pairs: Vec<(usize, usize)> = (0..ni).flat_map(|i| (0..ns).map(move |s| (i, s))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        build(ni, ns, &edges, ucap, iucap)
    })
}
