//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use gapred::graph::ColoredGraph;
use gapred::monotone::SetSystem;
use gapred::{Circuit, CircuitBuilder, GateKind};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random monotone circuit with `n` inputs and `gates` AND/OR gates of
/// fan-in 2..=4; the output is the last gate. Needs `n >= 2`.
pub fn random_monotone(rng: &mut impl Rng, n: usize, gates: usize) -> Circuit {
    let mut b = CircuitBuilder::new();
    for i in 0..n {
        b.add_input(&format!("x{i}")).unwrap();
    }
    let mut last = 0;
    for g in 0..gates {
        let available = n + g;
        let fan_in = rng.gen_range(2..=4.min(available));
        let operands = sample(rng, available, fan_in).into_vec();
        let kind = if rng.gen_bool(0.5) { GateKind::And } else { GateKind::Or };
        last = b.add_gate(&format!("g{g}"), kind, operands).unwrap();
    }
    b.build(last).unwrap()
}

/// Truth-table minimum weight of a satisfying assignment.
pub fn truth_table_min_weight(c: &Circuit) -> Option<usize> {
    let n = c.num_inputs();
    (0u32..1 << n)
        .filter(|&mask| c.evaluate_bits(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Truth-table maximum weight of a satisfying assignment.
pub fn truth_table_max_weight(c: &Circuit) -> Option<usize> {
    let n = c.num_inputs();
    (0u32..1 << n)
        .filter(|&mask| c.evaluate_bits(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .map(|mask| mask.count_ones() as usize)
        .max()
}

/// Random graph with each edge present with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Graph on 4 vertices whose edges are the bits of `mask` over the pairs in
/// lexicographic order.
pub fn graph_from_mask(n: usize, mask: u32) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Whether some triple of pairwise adjacent vertices exists.
pub fn has_triangle(g: &ColoredGraph) -> bool {
    let n = g.num_vertices();
    (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))))
}

/// Whether a triangle with one vertex in each of three color classes exists.
pub fn has_multicolored_triangle(g: &ColoredGraph, class_of: &[usize]) -> bool {
    let n = g.num_vertices();
    let mut found = false;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let colors = [class_of[a], class_of[b], class_of[c]];
                if colors == [0, 1, 2] && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    found = true;
                }
            }
        }
    }
    found
}

/// Random set system with nonempty sets.
pub fn random_set_system(rng: &mut impl Rng, max_universe: usize, max_sets: usize) -> SetSystem {
    let universe = rng.gen_range(1..=max_universe);
    let count = rng.gen_range(1..=max_sets);
    let sets = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=universe.min(4));
            let mut s = sample(rng, universe, size).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    SetSystem::new(universe, sets).unwrap()
}

/// Minimum hitting set size by enumerating all element subsets.
pub fn min_hitting_set(system: &SetSystem) -> usize {
    let masks: Vec<u32> = system.sets.iter().map(|s| s.iter().fold(0, |m, &e| m | 1 << e)).collect();
    (0u32..1 << system.universe)
        .filter(|&t| masks.iter().all(|&s| s & t != 0))
        .map(|t| t.count_ones() as usize)
        .min()
        .expect("the whole universe hits every nonempty set")
}

/// Random circuit that may contain NOT gates.
pub fn random_general(rng: &mut impl Rng, n: usize, gates: usize) -> Circuit {
    let mut b = CircuitBuilder::new();
    for i in 0..n {
        b.add_input(&format!("x{i}")).unwrap();
    }
    let mut last = 0;
    for g in 0..gates {
        let available = n + g;
        let name = format!("g{g}");
        last = if available < 2 || rng.gen_bool(0.2) {
            b.add_gate(&name, GateKind::Not, vec![rng.gen_range(0..available)]).unwrap()
        } else {
            let fan_in = rng.gen_range(2..=4.min(available));
            let kind = if rng.gen_bool(0.5) { GateKind::And } else { GateKind::Or };
            b.add_gate(&name, kind, sample(rng, available, fan_in).into_vec()).unwrap()
        };
    }
    b.build(last).unwrap()
}

/// All input vectors of length `n`, as bit masks and bool vectors.
pub fn all_inputs(n: usize) -> impl Iterator<Item = (u32, Vec<bool>)> {
    (0u32..1 << n).map(move |mask| (mask, (0..n).map(|i| mask >> i & 1 == 1).collect()))
}
