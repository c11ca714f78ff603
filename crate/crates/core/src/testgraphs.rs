//! Small named graphs shared by unit tests.

use crate::graph::WeightedGraph;

/// Two vertices joined by three parallel edges, weight zero.
pub(crate) fn theta() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![(0, 1), (0, 1), (0, 1)], vec![]).unwrap()
}

/// Two loop-vertices joined by a bridge, weight zero.
pub(crate) fn dumbbell() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![(0, 0), (0, 1), (1, 1)], vec![]).unwrap()
}

/// Two vertices with `m` parallel edges and the given weights.
pub(crate) fn banana(m: usize, w0: u64, w1: u64) -> WeightedGraph {
    WeightedGraph::new(vec![w0, w1], vec![(0, 1); m], vec![]).unwrap()
}

/// One-edge genus-0 graph with four legs split across the two vertices.
pub(crate) fn four_leg_split(left: &[u32], right: &[u32]) -> WeightedGraph {
    let mut legs: Vec<(u32, usize)> = left.iter().map(|&l| (l, 0)).collect();
    legs.extend(right.iter().map(|&l| (l, 1)));
    WeightedGraph::new(vec![0, 0], vec![(0, 1)], legs).unwrap()
}

/// Loop plus one leg at a single trivalent vertex (the maximal (1,1) type).
pub(crate) fn loop_with_leg() -> WeightedGraph {
    WeightedGraph::new(vec![0], vec![(0, 0)], vec![(1, 0)]).unwrap()
}

/// Single vertex of the given weight with `n` legs and no edges.
pub(crate) fn star(w: u64, n: u32) -> WeightedGraph {
    WeightedGraph::new(vec![w], vec![], (1..=n).map(|l| (l, 0)).collect()).unwrap()
}
