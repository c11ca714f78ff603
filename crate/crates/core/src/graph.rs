//! Weighted combinatorial graphs with labeled legs in the half-edge model.
//!
//! A graph is a vertex set with nonnegative integer weights, a set of
//! half-edges with an involution pairing them into edges, and an endpoint
//! map. Fixed points of the involution are the legs; each leg carries a
//! distinct label in `1..=n`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense index of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of an edge (a 2-cycle of the involution).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(u32);

impl EdgeId {
    pub fn new(index: usize) -> Self {
        EdgeId(index as u32)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a half-edge. Edge `e` owns half-edges `2e` and `2e+1`;
/// legs follow, in label-sorted storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdgeId(u32);

impl HalfEdgeId {
    pub fn new(index: usize) -> Self {
        HalfEdgeId(index as u32)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One half-edge as seen through the involution/endpoint maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub id: HalfEdgeId,
    pub endpoint: VertexId,
    pub partner: HalfEdgeId,
    /// Present exactly when this half-edge is a fixed point of the involution.
    pub leg_label: Option<u32>,
}

/// Outcome of the stability check: a vertex offends when 2w(v) - 2 + val(v) <= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub offending_vertices: Vec<(VertexId, u64, usize)>,
}

/// A connected weighted graph with labeled legs.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    weights: Vec<u64>,
    /// Endpoint of each half-edge; edge `e` owns half-edges `2e` and `2e+1`,
    /// legs occupy `2|E|..2|E|+n` in storage order.
    endpoints: Vec<u32>,
    num_edges: usize,
    /// Label of each leg, parallel to the leg half-edges.
    leg_labels: Vec<u32>,
}

impl WeightedGraph {
    /// Builds and validates a graph from index-based parts. Edge endpoints
    /// and leg positions refer to indices into `weights`; loops and parallel
    /// edges are allowed, legs may share a vertex.
    pub fn new(
        weights: Vec<u64>,
        edges: Vec<(usize, usize)>,
        legs: Vec<(u32, usize)>,
    ) -> Result<Self> {
        let g = Self::from_parts(weights, edges, legs, false)?;
        Ok(g)
    }

    /// As [`WeightedGraph::new`] but optionally skipping the connectivity
    /// check; disconnected values never escape the crate's public surface.
    pub(crate) fn from_parts(
        weights: Vec<u64>,
        edges: Vec<(usize, usize)>,
        legs: Vec<(u32, usize)>,
        allow_disconnected: bool,
    ) -> Result<Self> {
        let nv = weights.len();
        if nv == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut endpoints = Vec::with_capacity(2 * edges.len() + legs.len());
        for &(a, b) in &edges {
            if a >= nv {
                return Err(Error::DanglingEndpoint(format!("#{a}")));
            }
            if b >= nv {
                return Err(Error::DanglingEndpoint(format!("#{b}")));
            }
            endpoints.push(a as u32);
            endpoints.push(b as u32);
        }
        let mut seen = BTreeSet::new();
        for &(label, v) in &legs {
            if v >= nv {
                return Err(Error::DanglingEndpoint(format!("#{v}")));
            }
            if !seen.insert(label) {
                return Err(Error::DuplicateLegLabel(label));
            }
            endpoints.push(v as u32);
        }
        let n = legs.len() as u32;
        let expected: BTreeSet<u32> = (1..=n).collect();
        if seen != expected {
            return Err(Error::BadLegLabels(seen.into_iter().collect()));
        }
        let graph = WeightedGraph {
            weights,
            endpoints,
            num_edges: edges.len(),
            leg_labels: legs.iter().map(|&(l, _)| l).collect(),
        };
        if !allow_disconnected && !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_legs(&self) -> usize {
        self.leg_labels.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.weights.len()).map(VertexId::new)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.num_edges).map(EdgeId::new)
    }

    pub fn weight(&self, v: VertexId) -> Result<u64> {
        self.weights
            .get(v.index())
            .copied()
            .ok_or(Error::UnknownVertex(v.0))
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Endpoints of an edge, in half-edge storage order.
    pub fn edge_endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        if e.index() >= self.num_edges {
            return Err(Error::UnknownEdge(e.0));
        }
        Ok((
            VertexId(self.endpoints[2 * e.index()]),
            VertexId(self.endpoints[2 * e.index() + 1]),
        ))
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool> {
        let (a, b) = self.edge_endpoints(e)?;
        Ok(a == b)
    }

    /// Legs as `(label, endpoint)` in storage order.
    pub fn legs(&self) -> impl Iterator<Item = (u32, VertexId)> + '_ {
        self.leg_labels
            .iter()
            .enumerate()
            .map(move |(i, &l)| (l, VertexId(self.endpoints[2 * self.num_edges + i])))
    }

    pub fn leg_vertex(&self, label: u32) -> Option<VertexId> {
        self.legs().find(|&(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.endpoints.len()).map(move |h| self.half_edge(HalfEdgeId::new(h)))
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> HalfEdge {
        let i = h.index();
        assert!(i < self.endpoints.len(), "half-edge out of range");
        let (partner, leg_label) = if i < 2 * self.num_edges {
            (HalfEdgeId::new(i ^ 1), None)
        } else {
            (h, Some(self.leg_labels[i - 2 * self.num_edges]))
        };
        HalfEdge {
            id: h,
            endpoint: VertexId(self.endpoints[i]),
            partner,
            leg_label,
        }
    }

    /// Number of half-edges at `v`; loops count twice, legs count once.
    pub fn valence(&self, v: VertexId) -> Result<usize> {
        if v.index() >= self.weights.len() {
            return Err(Error::UnknownVertex(v.0));
        }
        Ok(self.endpoints.iter().filter(|&&u| u == v.0).count())
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.endpoints.iter().filter(|&&u| u as usize == v).count()
    }

    /// Number of connected components (legs are irrelevant).
    pub fn components(&self) -> usize {
        let mut dsu = Dsu::new(self.weights.len());
        for e in 0..self.num_edges {
            dsu.union(
                self.endpoints[2 * e] as usize,
                self.endpoints[2 * e + 1] as usize,
            );
        }
        dsu.count()
    }

    pub fn is_connected(&self) -> bool {
        self.weights.is_empty() || self.components() == 1
    }

    /// First Betti number |E| - |V| + c.
    pub fn first_betti(&self) -> usize {
        self.num_edges + self.components() - self.weights.len()
    }

    /// Genus b1 + total weight.
    pub fn genus(&self) -> u64 {
        self.first_betti() as u64 + self.total_weight()
    }

    /// The per-vertex stability degree 2w(v) - 2 + val(v).
    pub fn stability_degree(&self, v: VertexId) -> Result<i64> {
        let w = self.weight(v)?;
        Ok(2 * w as i64 - 2 + self.valence(v)? as i64)
    }

    /// Stable iff every vertex has positive stability degree; equivalently
    /// weight-0 vertices have valence >= 3 and weight-1 vertices valence >= 1.
    pub fn check_stable(&self) -> StabilityReport {
        let mut offending = Vec::new();
        for v in self.vertices() {
            let w = self.weights[v.index()];
            let val = self.degree(v.index());
            if 2 * w as i64 - 2 + val as i64 <= 0 {
                offending.push((v, w, val));
            }
        }
        StabilityReport {
            stable: offending.is_empty(),
            offending_vertices: offending,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.check_stable().stable
    }

    pub fn is_trivalent_weightless(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
            && self.vertices().all(|v| self.degree(v.index()) == 3)
    }

    /// Edges as index pairs, and legs as `(label, vertex index)`, for rebuilding.
    pub(crate) fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.num_edges)
            .map(|e| {
                (
                    self.endpoints[2 * e] as usize,
                    self.endpoints[2 * e + 1] as usize,
                )
            })
            .collect()
    }

    pub(crate) fn leg_list(&self) -> Vec<(u32, usize)> {
        self.leg_labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, self.endpoints[2 * self.num_edges + i] as usize))
            .collect()
    }

    /// Sorted multiset of leg labels at each vertex.
    pub(crate) fn leg_labels_at(&self, v: usize) -> Vec<u32> {
        let mut labels: Vec<u32> = self
            .leg_labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.endpoints[2 * self.num_edges + i] as usize == v)
            .map(|(_, &l)| l)
            .collect();
        labels.sort_unstable();
        labels
    }

    pub(crate) fn loops_at(&self, v: usize) -> usize {
        (0..self.num_edges)
            .filter(|&e| {
                self.endpoints[2 * e] as usize == v && self.endpoints[2 * e + 1] as usize == v
            })
            .count()
    }

    /// Non-loop adjacency as (neighbor, multiplicity), sorted by neighbor.
    pub(crate) fn neighbor_multiplicities(&self, v: usize) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for e in 0..self.num_edges {
            let a = self.endpoints[2 * e] as usize;
            let b = self.endpoints[2 * e + 1] as usize;
            if a == b {
                continue;
            }
            if a == v {
                *counts.entry(b).or_insert(0usize) += 1;
            } else if b == v {
                *counts.entry(a).or_insert(0usize) += 1;
            }
        }
        counts.into_iter().collect()
    }

}

/// Union-find over dense vertex indices.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so fibers inherit their least id
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
