//! Canonical forms, isomorphism testing, and automorphism groups of
//! weighted graphs with labeled legs.
//!
//! The canonical key is the lexicographically least serialization of the
//! graph over all vertex orderings compatible with an equitable partition
//! refinement; two graphs get equal keys exactly when they are isomorphic
//! as weighted legged graphs (legs fixed pointwise by label).

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{EdgeId, HalfEdgeId, VertexId, WeightedGraph};

/// Canonical relabeling plus a total-order key for the isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    key: Vec<u8>,
    vertex_relabel: Vec<u32>,
    edge_relabel: Vec<u32>,
}

impl CanonicalForm {
    pub fn key(&self) -> &[u8] {
        &self.key
    }

    /// Canonical id of an original vertex.
    pub fn vertex_map(&self, v: VertexId) -> VertexId {
        VertexId::new(self.vertex_relabel[v.index()] as usize)
    }

    /// Canonical id of an original edge.
    pub fn edge_map(&self, e: EdgeId) -> EdgeId {
        EdgeId::new(self.edge_relabel[e.index()] as usize)
    }

    /// Canonical id of an original half-edge.
    pub fn half_edge_map(&self, g: &WeightedGraph, h: HalfEdgeId) -> HalfEdgeId {
        let ne = g.num_edges();
        let i = h.index();
        if i < 2 * ne {
            let e = i / 2;
            let side = i % 2;
            let (a, b) = g.edge_endpoints(EdgeId::new(e)).unwrap();
            let (ca, cb) = (self.vertex_relabel[a.index()], self.vertex_relabel[b.index()]);
            let r = self.edge_relabel[e] as usize;
            // orient the canonical edge with its smaller endpoint first
            let flipped = ca > cb;
            let new_side = if flipped { 1 - side } else { side };
            HalfEdgeId::new(2 * r + new_side)
        } else {
            // legs are stored label-sorted in the canonical graph
            let label = g.half_edge(h).leg_label.expect("leg half-edge");
            HalfEdgeId::new(2 * ne + (label as usize - 1))
        }
    }

    /// The canonical representative: `g` relabeled so that re-canonicalizing
    /// is the identity.
    pub fn apply(&self, g: &WeightedGraph) -> WeightedGraph {
        let nv = g.num_vertices();
        let mut weights = vec![0u64; nv];
        for v in g.vertices() {
            weights[self.vertex_relabel[v.index()] as usize] = g.weight(v).unwrap();
        }
        let mut edges: Vec<(usize, (usize, usize))> = g
            .edges()
            .map(|e| {
                let (a, b) = g.edge_endpoints(e).unwrap();
                let ca = self.vertex_relabel[a.index()] as usize;
                let cb = self.vertex_relabel[b.index()] as usize;
                (
                    self.edge_relabel[e.index()] as usize,
                    (ca.min(cb), ca.max(cb)),
                )
            })
            .collect();
        edges.sort_unstable();
        let edge_list: Vec<(usize, usize)> = edges.into_iter().map(|(_, ab)| ab).collect();
        let mut legs: Vec<(u32, usize)> = g
            .legs()
            .map(|(l, v)| (l, self.vertex_relabel[v.index()] as usize))
            .collect();
        legs.sort_unstable();
        WeightedGraph::new(weights, edge_list, legs).expect("relabeling preserves validity")
    }
}

/// Static, refinement-independent invariant of a vertex.
type StaticKey = (u64, usize, usize, Vec<u32>);

fn static_key(g: &WeightedGraph, v: usize) -> StaticKey {
    (
        g.weights()[v],
        g.degree(v),
        g.loops_at(v),
        g.leg_labels_at(v),
    )
}

struct Search<'g> {
    g: &'g WeightedGraph,
    nv: usize,
    /// Non-loop adjacency (neighbor, multiplicity) per vertex.
    adj: Vec<Vec<(usize, usize)>>,
    best: Option<Vec<u64>>,
    /// Orderings pos -> original vertex realizing the best serialization.
    /// The lexicographically least one is the canonical relabeling.
    best_orderings: BTreeSet<Vec<usize>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g WeightedGraph) -> Self {
        let nv = g.num_vertices();
        Search {
            g,
            nv,
            adj: (0..nv).map(|v| g.neighbor_multiplicities(v)).collect(),
            best: None,
            best_orderings: BTreeSet::new(),
        }
    }

    fn initial_cells(&self) -> Vec<Vec<usize>> {
        let mut by_key: BTreeMap<StaticKey, Vec<usize>> = BTreeMap::new();
        for v in 0..self.nv {
            by_key.entry(static_key(self.g, v)).or_default().push(v);
        }
        by_key.into_values().collect()
    }

    /// Split cells by the multiset of (neighbor cell, multiplicity) until stable.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0usize; self.nv];
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci;
                }
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut by_sig: BTreeMap<Vec<(usize, usize)>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    let mut sig: Vec<(usize, usize)> = self.adj[v]
                        .iter()
                        .map(|&(u, m)| (cell_of[u], m))
                        .collect();
                    sig.sort_unstable();
                    by_sig.entry(sig).or_default().push(v);
                }
                if by_sig.len() > 1 {
                    split = true;
                }
                next.extend(by_sig.into_values());
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    fn serialize(&self, ordering: &[usize]) -> Vec<u64> {
        let g = self.g;
        let mut pos = vec![0usize; self.nv];
        for (p, &v) in ordering.iter().enumerate() {
            pos[v] = p;
        }
        let mut out = Vec::with_capacity(3 + self.nv + g.num_legs() + 2 * g.num_edges());
        out.push(self.nv as u64);
        out.push(g.num_edges() as u64);
        out.push(g.num_legs() as u64);
        for &v in ordering {
            out.push(g.weights()[v]);
        }
        let mut legs: Vec<(u32, usize)> = g.legs().map(|(l, v)| (l, pos[v.index()])).collect();
        legs.sort_unstable();
        for (_, p) in legs {
            out.push(p as u64);
        }
        let mut pairs: Vec<(usize, usize)> = g
            .edges()
            .map(|e| {
                let (a, b) = g.edge_endpoints(e).unwrap();
                let (pa, pb) = (pos[a.index()], pos[b.index()]);
                (pa.min(pb), pa.max(pb))
            })
            .collect();
        pairs.sort_unstable();
        for (a, b) in pairs {
            out.push(a as u64);
            out.push(b as u64);
        }
        out
    }

    fn run(&mut self) {
        let cells = self.refine(self.initial_cells());
        self.descend(cells);
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        if let Some(ci) = cells.iter().position(|c| c.len() > 1) {
            let members = cells[ci].clone();
            for v in members {
                let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
                for (i, cell) in cells.iter().enumerate() {
                    if i == ci {
                        next.push(vec![v]);
                        next.push(cell.iter().copied().filter(|&u| u != v).collect());
                    } else {
                        next.push(cell.clone());
                    }
                }
                let refined = self.refine(next);
                self.descend(refined);
            }
        } else {
            let ordering: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let ser = self.serialize(&ordering);
            match &self.best {
                Some(best) if *best < ser => {}
                Some(best) if *best == ser => {
                    self.best_orderings.insert(ordering);
                }
                _ => {
                    self.best = Some(ser);
                    self.best_orderings = BTreeSet::from([ordering]);
                }
            }
        }
    }
}

fn key_bytes(words: &[u64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 * words.len());
    for w in words {
        out.extend_from_slice(&w.to_be_bytes());
    }
    out
}

/// Computes the canonical form of a weighted legged graph.
pub fn canonical_form(g: &WeightedGraph) -> CanonicalForm {
    let mut search = Search::new(g);
    search.run();
    let ser = search.best.expect("graph has at least one vertex");
    let ordering = search.best_orderings.iter().next().unwrap().clone();
    let mut vertex_relabel = vec![0u32; g.num_vertices()];
    for (p, &v) in ordering.iter().enumerate() {
        vertex_relabel[v] = p as u32;
    }
    // canonical edge order: sort by canonical endpoint pair, ties by edge id
    let mut edges: Vec<((usize, usize), usize)> = g
        .edges()
        .map(|e| {
            let (a, b) = g.edge_endpoints(e).unwrap();
            let (pa, pb) = (
                vertex_relabel[a.index()] as usize,
                vertex_relabel[b.index()] as usize,
            );
            ((pa.min(pb), pa.max(pb)), e.index())
        })
        .collect();
    edges.sort_unstable();
    let mut edge_relabel = vec![0u32; g.num_edges()];
    for (rank, &(_, e)) in edges.iter().enumerate() {
        edge_relabel[e] = rank as u32;
    }
    CanonicalForm {
        key: key_bytes(&ser),
        vertex_relabel,
        edge_relabel,
    }
}

/// True iff the two graphs are isomorphic as weighted legged graphs.
pub fn is_isomorphic(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    canonical_form(a).key == canonical_form(b).key
}

/// An automorphism, recorded on vertices and half-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAut {
    pub vertex_map: Vec<u32>,
    pub half_edge_map: Vec<u32>,
}

impl GraphAut {
    fn identity(g: &WeightedGraph) -> Self {
        GraphAut {
            vertex_map: (0..g.num_vertices() as u32).collect(),
            half_edge_map: (0..g.num_half_edges() as u32).collect(),
        }
    }

    fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i as u32 == v)
            && self
                .half_edge_map
                .iter()
                .enumerate()
                .all(|(i, &h)| i as u32 == h)
    }

    /// Induced permutation of edges.
    pub fn edge_perm(&self, g: &WeightedGraph) -> Vec<u32> {
        (0..g.num_edges())
            .map(|e| self.half_edge_map[2 * e] / 2)
            .collect()
    }
}

/// Generators and order of Aut(Γ, w), with the induced action on edges.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub order: u128,
    pub generators: Vec<GraphAut>,
    pub edge_action_order: u128,
    pub edge_action_generators: Vec<Vec<u32>>,
}

impl AutGroup {
    /// All edge permutations realized by the group, sorted; computed by
    /// closure over the generators.
    pub fn edge_action_elements(&self, num_edges: usize) -> Vec<Vec<u32>> {
        close_perm_group(num_edges, &self.edge_action_generators)
    }
}

fn close_perm_group(n: usize, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for gen in gens {
            let q: Vec<u32> = (0..n).map(|i| gen[p[i] as usize]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Extends a vertex automorphism to half-edges: parallel classes map
/// rank-to-rank by edge id, loops map orientation-preserving.
fn extend_vertex_aut(g: &WeightedGraph, vmap: &[u32]) -> GraphAut {
    let ne = g.num_edges();
    // class key -> sorted edge ids
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        let (a, b) = g.edge_endpoints(e).unwrap();
        let (a, b) = (a.index(), b.index());
        classes
            .entry((a.min(b), a.max(b)))
            .or_default()
            .push(e.index());
    }
    let mut half_edge_map = vec![0u32; g.num_half_edges()];
    for ((a, b), edges) in &classes {
        let (ia, ib) = (vmap[*a] as usize, vmap[*b] as usize);
        let target = &classes[&(ia.min(ib), ia.max(ib))];
        debug_assert_eq!(edges.len(), target.len());
        for (rank, &e) in edges.iter().enumerate() {
            let te = target[rank];
            // match half-edge sides through the endpoint map
            let ea = g.edge_endpoints(EdgeId::new(e)).unwrap();
            let ta = g.edge_endpoints(EdgeId::new(te)).unwrap();
            if *a == *b {
                // loop: orientation-preserving
                half_edge_map[2 * e] = (2 * te) as u32;
                half_edge_map[2 * e + 1] = (2 * te + 1) as u32;
            } else {
                let side0_target = if vmap[ea.0.index()] as usize == ta.0.index() {
                    (2 * te, 2 * te + 1)
                } else {
                    (2 * te + 1, 2 * te)
                };
                half_edge_map[2 * e] = side0_target.0 as u32;
                half_edge_map[2 * e + 1] = side0_target.1 as u32;
            }
        }
    }
    // legs are fixed pointwise
    for i in 0..g.num_legs() {
        half_edge_map[2 * ne + i] = (2 * ne + i) as u32;
    }
    GraphAut {
        vertex_map: vmap.to_vec(),
        half_edge_map,
    }
}

/// Swaps edges at ranks `r` and `r+1` of a parallel (or loop) class.
fn class_transposition(g: &WeightedGraph, class: &[usize], r: usize) -> GraphAut {
    let mut aut = GraphAut::identity(g);
    let (e, f) = (class[r], class[r + 1]);
    let (ea, _) = g.edge_endpoints(EdgeId::new(e)).unwrap();
    let (fa, _) = g.edge_endpoints(EdgeId::new(f)).unwrap();
    // orient so matching endpoints correspond
    let (f0, f1) = if ea == fa {
        (2 * f, 2 * f + 1)
    } else {
        (2 * f + 1, 2 * f)
    };
    aut.half_edge_map[2 * e] = f0 as u32;
    aut.half_edge_map[2 * e + 1] = f1 as u32;
    aut.half_edge_map[f0] = (2 * e) as u32;
    aut.half_edge_map[f1] = (2 * e + 1) as u32;
    aut
}

fn loop_inversion(g: &WeightedGraph, e: usize) -> GraphAut {
    let mut aut = GraphAut::identity(g);
    aut.half_edge_map[2 * e] = (2 * e + 1) as u32;
    aut.half_edge_map[2 * e + 1] = (2 * e) as u32;
    aut
}

/// Computes Aut(Γ, w): exact order, generators on V ∪ H, and the induced
/// edge action.
pub fn automorphism_group(g: &WeightedGraph) -> AutGroup {
    // vertex-level group from the canonical search leaf coincidences
    let mut search = Search::new(g);
    search.run();
    let orderings = &search.best_orderings;
    let base = orderings.iter().next().unwrap();
    let mut base_inv = vec![0usize; g.num_vertices()];
    for (p, &v) in base.iter().enumerate() {
        base_inv[v] = p;
    }
    let mut vertex_auts: Vec<Vec<u32>> = Vec::new();
    for other in orderings {
        // alpha = other ∘ base⁻¹
        let vmap: Vec<u32> = (0..g.num_vertices())
            .map(|v| other[base_inv[v]] as u32)
            .collect();
        vertex_auts.push(vmap);
    }
    let vertex_order = vertex_auts.len() as u128;

    // multiplicity classes
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        let (a, b) = g.edge_endpoints(e).unwrap();
        let (a, b) = (a.index(), b.index());
        classes
            .entry((a.min(b), a.max(b)))
            .or_default()
            .push(e.index());
    }
    let mut order: u128 = vertex_order;
    for ((a, b), edges) in &classes {
        let k = edges.len() as u128;
        order *= (1..=k).product::<u128>();
        if a == b {
            order *= 1u128 << edges.len();
        }
    }

    let mut generators: Vec<GraphAut> = Vec::new();
    for vmap in &vertex_auts {
        let aut = extend_vertex_aut(g, vmap);
        if !aut.is_identity() {
            generators.push(aut);
        }
    }
    for ((a, b), edges) in &classes {
        for r in 0..edges.len().saturating_sub(1) {
            generators.push(class_transposition(g, edges, r));
        }
        if a == b {
            for &e in edges {
                generators.push(loop_inversion(g, e));
            }
        }
    }

    let mut edge_action_generators: Vec<Vec<u32>> = Vec::new();
    let mut seen = BTreeSet::new();
    let identity: Vec<u32> = (0..g.num_edges() as u32).collect();
    for aut in &generators {
        let p = aut.edge_perm(g);
        if p != identity && seen.insert(p.clone()) {
            edge_action_generators.push(p);
        }
    }
    let edge_action_order =
        close_perm_group(g.num_edges(), &edge_action_generators).len() as u128;

    AutGroup {
        order,
        generators,
        edge_action_order,
        edge_action_generators,
    }
}
