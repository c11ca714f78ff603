//! Weighted edge-set contraction, the contraction partial order, covering
//! relations, and 3-regular resolutions.

use std::collections::BTreeSet;

use crate::canonical::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Dsu, EdgeId, VertexId, WeightedGraph};

/// The contraction Γ_/S with the maps relating it to Γ.
#[derive(Debug, Clone)]
pub struct ContractionResult {
    pub graph: WeightedGraph,
    /// σ_V: original vertex index -> contracted vertex.
    pub vertex_map: Vec<VertexId>,
    /// Embedding E(Γ_/S) ↪ E(Γ): contracted edge index -> original edge.
    pub edge_embedding: Vec<EdgeId>,
}

impl ContractionResult {
    /// Legs correspond by label; this returns the label-preserving map as
    /// storage-index pairs (original leg index, contracted leg index).
    pub fn leg_map(&self, original: &WeightedGraph) -> Vec<(usize, usize)> {
        let target: Vec<u32> = self.graph.legs().map(|(l, _)| l).collect();
        original
            .legs()
            .enumerate()
            .map(|(i, (l, _))| {
                let j = target.iter().position(|&t| t == l).expect("legs preserved");
                (i, j)
            })
            .collect()
    }
}

/// Contracts the edge set `S`: each connected component of Γ - T (T = E \ S)
/// collapses to one vertex whose weight absorbs the component's first Betti
/// number plus its weights. Genus is preserved.
pub fn contract(g: &WeightedGraph, s: &BTreeSet<EdgeId>) -> Result<ContractionResult> {
    for &e in s {
        if e.index() >= g.num_edges() {
            return Err(Error::UnknownEdge(e.index() as u32));
        }
    }
    let nv = g.num_vertices();
    let mut dsu = Dsu::new(nv);
    for &e in s {
        let (a, b) = g.edge_endpoints(e)?;
        dsu.union(a.index(), b.index());
    }
    // components keyed by their least vertex id; new ids in that order
    let mut roots: Vec<usize> = (0..nv).map(|v| dsu.find(v)).collect();
    let mut keys: Vec<usize> = roots.clone();
    keys.sort_unstable();
    keys.dedup();
    let new_index = |root: usize, keys: &[usize]| keys.binary_search(&root).unwrap();
    let vertex_map: Vec<VertexId> = (0..nv)
        .map(|v| VertexId::new(new_index(roots[v], &keys)))
        .collect();
    roots.clear();

    // weight of each component: b1 of the collapsed piece plus its weights
    let mut sizes = vec![0usize; keys.len()];
    let mut weights = vec![0u64; keys.len()];
    for v in 0..nv {
        let c = vertex_map[v].index();
        sizes[c] += 1;
        weights[c] += g.weights()[v];
    }
    let mut internal_edges = vec![0usize; keys.len()];
    for &e in s {
        let (a, _) = g.edge_endpoints(e)?;
        internal_edges[vertex_map[a.index()].index()] += 1;
    }
    for c in 0..keys.len() {
        // component is connected, so b1 = |S_c| - |V_c| + 1
        weights[c] += (internal_edges[c] + 1 - sizes[c]) as u64;
    }

    let mut edges = Vec::with_capacity(g.num_edges() - s.len());
    let mut edge_embedding = Vec::with_capacity(g.num_edges() - s.len());
    for e in g.edges() {
        if s.contains(&e) {
            continue;
        }
        let (a, b) = g.edge_endpoints(e)?;
        edges.push((vertex_map[a.index()].index(), vertex_map[b.index()].index()));
        edge_embedding.push(e);
    }
    let legs: Vec<(u32, usize)> = g
        .legs()
        .map(|(l, v)| (l, vertex_map[v.index()].index()))
        .collect();

    let graph = WeightedGraph::from_parts(weights, edges, legs, true)?;
    debug_assert!(graph.is_connected() || !g.is_connected());
    Ok(ContractionResult {
        graph,
        vertex_map,
        edge_embedding,
    })
}

/// Contracts a single edge.
pub fn contract_edge(g: &WeightedGraph, e: EdgeId) -> Result<ContractionResult> {
    contract(g, &BTreeSet::from([e]))
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether `small` is a weighted contraction of `big`; returns the
/// lexicographically first witness edge set, or `None`.
pub fn leq(small: &WeightedGraph, big: &WeightedGraph) -> Option<BTreeSet<EdgeId>> {
    if small.genus() != big.genus() || small.num_legs() != big.num_legs() {
        return None;
    }
    if small.num_edges() > big.num_edges() || small.num_vertices() > big.num_vertices() {
        return None;
    }
    let k = big.num_edges() - small.num_edges();
    let target = canonical_form(small);
    let candidates = subsets_of_size(big.num_edges(), k);
    let hit = crate::par::find_first(&candidates, |subset| {
        let s: BTreeSet<EdgeId> = subset.iter().map(|&i| EdgeId::new(i)).collect();
        let res = contract(big, &s).expect("subset of E");
        canonical_form(&res.graph).key() == target.key()
    });
    hit.map(|subset| subset.iter().map(|&i| EdgeId::new(i)).collect())
}

/// One isomorphism type arising from single-edge contractions of a graph.
#[derive(Debug, Clone)]
pub struct Cover {
    /// Least edge id realizing this type.
    pub witness_edge: EdgeId,
    /// How many single-edge contractions land on this type.
    pub multiplicity: usize,
    pub form: CanonicalForm,
    /// Canonical representative of the contracted type.
    pub graph: WeightedGraph,
}

/// The distinct types of single-edge contractions with multiplicities,
/// sorted by canonical key.
pub fn covers(g: &WeightedGraph) -> Vec<Cover> {
    let mut by_key: std::collections::BTreeMap<Vec<u8>, Cover> = std::collections::BTreeMap::new();
    for e in g.edges() {
        let res = contract_edge(g, e).expect("edge of G");
        let form = canonical_form(&res.graph);
        by_key
            .entry(form.key().to_vec())
            .and_modify(|c| c.multiplicity += 1)
            .or_insert_with(|| Cover {
                witness_edge: e,
                multiplicity: 1,
                graph: form.apply(&res.graph),
                form,
            });
    }
    by_key.into_values().collect()
}

/// Mutable edge/leg lists used while growing a resolution.
struct Builder {
    weights: Vec<u64>,
    edges: Vec<(usize, usize)>,
    legs: Vec<(u32, usize)>,
}

impl Builder {
    fn from_graph(g: &WeightedGraph) -> Self {
        Builder {
            weights: g.weights().to_vec(),
            edges: g.edge_list(),
            legs: g.leg_list(),
        }
    }

    fn to_graph(&self) -> WeightedGraph {
        WeightedGraph::new(self.weights.clone(), self.edges.clone(), self.legs.clone())
            .expect("resolution steps preserve validity")
    }

    /// Half-edges at `v` in id order: edge sides, then legs.
    fn half_edges_at(&self, v: usize) -> Vec<usize> {
        let ne = self.edges.len();
        let mut out = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(2 * e);
            }
            if b == v {
                out.push(2 * e + 1);
            }
        }
        for (i, &(_, u)) in self.legs.iter().enumerate() {
            if u == v {
                out.push(2 * ne + i);
            }
        }
        out.sort_unstable();
        out
    }

    fn reattach(&mut self, h: usize, to: usize) {
        let ne = self.edges.len();
        if h < 2 * ne {
            let e = h / 2;
            if h % 2 == 0 {
                self.edges[e].0 = to;
            } else {
                self.edges[e].1 = to;
            }
        } else {
            self.legs[h - 2 * ne].1 = to;
        }
    }
}

/// Produces a 3-regular weight-0 graph Γ₀ and an edge set S with
/// contract(Γ₀, S) isomorphic to the input: each weight unit becomes a loop,
/// then vertices of valence > 3 are split by pulling their two lowest-id
/// half-edges onto a new vertex joined by a new edge.
pub fn resolve_to_trivalent(g: &WeightedGraph) -> Result<(WeightedGraph, BTreeSet<EdgeId>)> {
    let sig = 2 * g.genus() as i64 - 2 + g.num_legs() as i64;
    if sig < 1 {
        return Err(Error::DegenerateSignature(sig));
    }
    if !g.is_stable() {
        return Err(Error::NotStable);
    }
    let mut b = Builder::from_graph(g);
    let mut inserted: BTreeSet<usize> = BTreeSet::new();
    for v in 0..b.weights.len() {
        while b.weights[v] > 0 {
            b.weights[v] -= 1;
            b.edges.push((v, v));
            inserted.insert(b.edges.len() - 1);
        }
    }
    loop {
        let current = b.to_graph();
        let Some(v) = (0..b.weights.len()).find(|&v| current.degree(v) > 3) else {
            break;
        };
        let halves = b.half_edges_at(v);
        let u = b.weights.len();
        b.weights.push(0);
        b.reattach(halves[0], u);
        b.reattach(halves[1], u);
        b.edges.push((u, v));
        inserted.insert(b.edges.len() - 1);
    }
    let resolved = b.to_graph();
    debug_assert!(resolved.is_trivalent_weightless());
    Ok((
        resolved,
        inserted.into_iter().map(EdgeId::new).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::testgraphs::*;

    #[test]
    fn loop_contraction_bumps_weight() {
        let g = WeightedGraph::new(vec![3], vec![(0, 0)], vec![]).unwrap();
        let res = contract_edge(&g, EdgeId::new(0)).unwrap();
        assert_eq!(res.graph.num_edges(), 0);
        assert_eq!(res.graph.weights(), &[4]);
        assert_eq!(res.graph.genus(), g.genus());
    }

    #[test]
    fn chain_contraction_example() {
        // genus-3 chain: loop - two parallel edges - loop, all weights zero
        let g = WeightedGraph::new(
            vec![0, 0],
            vec![(0, 0), (0, 1), (0, 1), (1, 1)],
            vec![],
        )
        .unwrap();
        assert_eq!(g.genus(), 3);
        // contracting a non-loop edge keeps all weights zero
        let step1 = contract_edge(&g, EdgeId::new(1)).unwrap();
        assert!(step1.graph.weights().iter().all(|&w| w == 0));
        assert_eq!(step1.graph.num_vertices(), 1);
        assert_eq!(step1.graph.num_edges(), 3);
        // then contracting a loop yields a weight-1 vertex with two loops
        let loop_edge = step1
            .graph
            .edges()
            .find(|&e| step1.graph.is_loop(e).unwrap())
            .unwrap();
        let step2 = contract_edge(&step1.graph, loop_edge).unwrap();
        assert_eq!(step2.graph.weights(), &[1]);
        assert_eq!(step2.graph.num_edges(), 2);
        assert!(step2.graph.edges().all(|e| step2.graph.is_loop(e).unwrap()));
        assert_eq!(step2.graph.genus(), 3);
    }

    #[test]
    fn empty_contraction_is_identity() {
        let g = dumbbell();
        let res = contract(&g, &BTreeSet::new()).unwrap();
        assert_eq!(res.graph, g);
        for v in g.vertices() {
            assert_eq!(res.vertex_map[v.index()], v);
        }
    }

    #[test]
    fn unknown_edge_rejected() {
        let g = theta();
        let err = contract(&g, &BTreeSet::from([EdgeId::new(9)])).unwrap_err();
        assert_eq!(err, Error::UnknownEdge(9));
    }

    #[test]
    fn leg_map_preserves_labels() {
        let g = four_leg_split(&[1, 2], &[3, 4]);
        let res = contract_edge(&g, EdgeId::new(0)).unwrap();
        assert_eq!(res.graph.num_legs(), 4);
        let map = res.leg_map(&g);
        assert_eq!(map.len(), 4);
    }

    #[test]
    fn leq_reflexive() {
        let g = theta();
        assert_eq!(leq(&g, &g), Some(BTreeSet::new()));
    }

    #[test]
    fn zero_edge_graph_below_everything() {
        let origin = star(2, 0);
        let witness = leq(&origin, &theta()).unwrap();
        assert_eq!(witness.len(), 3);
        let witness = leq(&origin, &dumbbell()).unwrap();
        assert_eq!(witness.len(), 3);
    }

    #[test]
    fn dumbbell_not_below_theta() {
        assert_eq!(leq(&dumbbell(), &theta()), None);
    }

    #[test]
    fn theta_covers_single_type() {
        let cs = covers(&theta());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].multiplicity, 3);
        let two_loops = WeightedGraph::new(vec![0], vec![(0, 0), (0, 0)], vec![]).unwrap();
        assert!(is_isomorphic(&cs[0].graph, &two_loops));
    }

    #[test]
    fn loop_with_leg_covers() {
        let cs = covers(&loop_with_leg());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].multiplicity, 1);
        assert!(is_isomorphic(&cs[0].graph, &star(1, 1)));
    }

    #[test]
    fn zero_edge_graph_covers_nothing() {
        assert!(covers(&star(2, 0)).is_empty());
    }

    #[test]
    fn resolve_weight_two_vertex() {
        let g = star(2, 0);
        let (resolved, s) = resolve_to_trivalent(&g).unwrap();
        assert!(resolved.is_trivalent_weightless());
        assert_eq!(resolved.num_edges(), 3); // 3g - 3 + n
        assert_eq!(s.len(), resolved.num_edges());
        let back = contract(&resolved, &s).unwrap();
        assert!(is_isomorphic(&back.graph, &g));
    }

    #[test]
    fn resolve_weight_one_with_leg() {
        let g = star(1, 1);
        let (resolved, s) = resolve_to_trivalent(&g).unwrap();
        assert!(is_isomorphic(&resolved, &loop_with_leg()));
        assert_eq!(s.len(), 1);
        assert!(resolved.is_loop(*s.iter().next().unwrap()).unwrap());
        let back = contract(&resolved, &s).unwrap();
        assert!(is_isomorphic(&back.graph, &g));
    }

    #[test]
    fn resolve_fixed_point() {
        let g = theta();
        let (resolved, s) = resolve_to_trivalent(&g).unwrap();
        assert_eq!(resolved, g);
        assert!(s.is_empty());
    }

    #[test]
    fn resolve_rejects_unstable_and_degenerate() {
        // genus-2 rational tail: signature fine, stability violated
        let unstable = WeightedGraph::new(vec![0, 2], vec![(0, 1)], vec![]).unwrap();
        assert_eq!(resolve_to_trivalent(&unstable).unwrap_err(), Error::NotStable);
        let w1 = WeightedGraph::new(vec![1], vec![], vec![]).unwrap();
        assert_eq!(
            resolve_to_trivalent(&w1).unwrap_err(),
            Error::DegenerateSignature(0)
        );
    }

    #[test]
    fn contraction_composes() {
        let g = dumbbell();
        let all: BTreeSet<EdgeId> = g.edges().collect();
        let first: BTreeSet<EdgeId> = [EdgeId::new(1)].into();
        let step1 = contract(&g, &first).unwrap();
        // image of the remaining edges in the contracted graph
        let rest: BTreeSet<EdgeId> = step1
            .edge_embedding
            .iter()
            .enumerate()
            .map(|(i, _)| EdgeId::new(i))
            .collect();
        let step2 = contract(&step1.graph, &rest).unwrap();
        let direct = contract(&g, &all).unwrap();
        assert!(is_isomorphic(&step2.graph, &direct.graph));
    }
}
