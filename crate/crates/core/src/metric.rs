//! Tropical curves: metric weighted graphs with exact rational edge lengths,
//! stabilization, isometry, cone faces, and quotient-map fibers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::canonical::{automorphism_group, canonical_form};
use crate::contraction::{contract, subsets_of_size};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};

/// An extended-positive (or, for cone coordinates, extended-nonnegative)
/// rational. Infinity absorbs under addition, equals only itself, and sorts
/// above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(Rational64),
    Infinite,
}

impl Length {
    pub const INF: Length = Length::Infinite;

    pub fn integer(n: i64) -> Length {
        Length::Finite(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Length> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Length::Finite(Rational64::new(num, den)))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Length::Infinite)
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Length::Finite(r) if r.is_zero())
    }

    pub fn is_positive(self) -> bool {
        match self {
            Length::Finite(r) => r.is_positive(),
            Length::Infinite => true,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Length::Finite(r) if r.is_negative())
    }
}

impl std::ops::Add for Length {
    type Output = Length;
    fn add(self, rhs: Length) -> Length {
        match (self, rhs) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinite,
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => a.cmp(b),
            (Length::Finite(_), Length::Infinite) => Ordering::Less,
            (Length::Infinite, Length::Finite(_)) => Ordering::Greater,
            (Length::Infinite, Length::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Infinite => write!(f, "inf"),
            Length::Finite(r) if r.denom() == &1 => write!(f, "{}", r.numer()),
            Length::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Length {
    type Err = Error;
    fn from_str(s: &str) -> Result<Length> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Length::Infinite);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            return Length::ratio(num, den);
        }
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad length `{s}`")))?;
        Ok(Length::integer(n))
    }
}

/// A weighted graph with an extended-positive length per edge. Legs are
/// implicitly infinite and carry no stored length. Unless `extended`,
/// infinity is required exactly on edges adjacent to a 1-valent weight-0
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    graph: WeightedGraph,
    lengths: Vec<Length>,
    extended: bool,
}

impl TropicalCurve {
    pub fn new(graph: WeightedGraph, lengths: Vec<Length>, extended: bool) -> Result<Self> {
        if lengths.len() != graph.num_edges() {
            return Err(Error::WrongLengthCount {
                expected: graph.num_edges(),
                got: lengths.len(),
            });
        }
        for (i, &l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(Error::NonPositiveLength);
            }
            if !extended {
                let e = EdgeId::new(i);
                let (a, b) = graph.edge_endpoints(e)?;
                let leafy = [a, b].into_iter().any(|v| {
                    graph.weights()[v.index()] == 0 && graph.degree(v.index()) == 1
                });
                match (l.is_infinite(), leafy) {
                    (true, false) => return Err(Error::UnexpectedInfiniteLength),
                    (false, true) => return Err(Error::ExpectedInfiniteLength),
                    _ => {}
                }
            }
        }
        Ok(TropicalCurve {
            graph,
            lengths,
            extended,
        })
    }

    pub(crate) fn from_raw(graph: WeightedGraph, lengths: Vec<Length>, extended: bool) -> Self {
        debug_assert_eq!(lengths.len(), graph.num_edges());
        TropicalCurve {
            graph,
            lengths,
            extended,
        }
    }

    /// Pure curve with every free length 1 and infinity where forced.
    pub fn unit(graph: WeightedGraph) -> Self {
        let lengths = graph
            .edges()
            .map(|e| {
                let (a, b) = graph.edge_endpoints(e).unwrap();
                let leafy = [a, b].into_iter().any(|v| {
                    graph.weights()[v.index()] == 0 && graph.degree(v.index()) == 1
                });
                if leafy {
                    Length::Infinite
                } else {
                    Length::integer(1)
                }
            })
            .collect();
        TropicalCurve {
            graph,
            lengths,
            extended: false,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[Length] {
        &self.lengths
    }

    pub fn length(&self, e: EdgeId) -> Length {
        self.lengths[e.index()]
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn genus(&self) -> u64 {
        self.graph.genus()
    }

    pub fn is_stable(&self) -> bool {
        self.graph.is_stable()
    }

    fn signature(&self) -> i64 {
        2 * self.genus() as i64 - 2 + self.graph.num_legs() as i64
    }
}

/// Mutable scratch representation used by the stabilization rewrite.
struct Rewriter {
    weights: Vec<u64>,
    edges: Vec<(usize, usize)>,
    lengths: Vec<Length>,
    legs: Vec<(u32, usize)>,
}

impl Rewriter {
    fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum::<usize>()
            + self.legs.iter().filter(|&&(_, u)| u == v).count()
    }

    fn legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&(_, u)| u == v).count()
    }

    fn edges_at(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v || b == v {
                out.push(e);
                if a == b {
                    out.push(e);
                }
            }
        }
        out
    }

    fn remove_vertex_and_edges(&mut self, v: usize, dead_edges: &[usize]) {
        let mut dead: Vec<usize> = dead_edges.to_vec();
        dead.sort_unstable();
        dead.dedup();
        for &e in dead.iter().rev() {
            self.edges.remove(e);
            self.lengths.remove(e);
        }
        self.weights.remove(v);
        let shift = |u: usize| if u > v { u - 1 } else { u };
        for (a, b) in self.edges.iter_mut() {
            *a = shift(*a);
            *b = shift(*b);
        }
        for (_, u) in self.legs.iter_mut() {
            *u = shift(*u);
        }
    }
}

/// Reduces a curve to the unique stable representative of its tropical
/// equivalence class: weight-0 1-valent vertices vanish with their edge,
/// edge pairs at weight-0 2-valent vertices merge (lengths add, infinity
/// absorbs), and an edge meeting a leg at a weight-0 2-valent vertex merges
/// into the leg.
pub fn stabilize(c: &TropicalCurve) -> Result<TropicalCurve> {
    let sig = c.signature();
    if sig < 1 {
        return Err(Error::DegenerateSignature(sig));
    }
    let mut r = Rewriter {
        weights: c.graph.weights().to_vec(),
        edges: c.graph.edge_list(),
        lengths: c.lengths.clone(),
        legs: c.graph.leg_list(),
    };
    loop {
        let nv = r.weights.len();
        // weight-0 1-valent vertex: drop it with its leaf edge
        if let Some(v) =
            (0..nv).find(|&v| r.weights[v] == 0 && r.degree(v) == 1 && r.legs_at(v) == 0)
        {
            let e = r.edges_at(v)[0];
            r.remove_vertex_and_edges(v, &[e]);
            continue;
        }
        // weight-0 2-valent vertex without legs: merge the two edges
        if let Some(v) =
            (0..nv).find(|&v| r.weights[v] == 0 && r.degree(v) == 2 && r.legs_at(v) == 0)
        {
            let at = r.edges_at(v);
            let (e1, e2) = (at[0], at[1]);
            debug_assert_ne!(e1, e2, "lone loop vertex is a degenerate class");
            let other = |e: usize| {
                let (a, b) = r.edges[e];
                if a == v {
                    b
                } else {
                    a
                }
            };
            let (a, b) = (other(e1), other(e2));
            let merged = r.lengths[e1] + r.lengths[e2];
            r.edges[e1] = (a, b);
            r.lengths[e1] = merged;
            r.remove_vertex_and_edges(v, &[e2]);
            continue;
        }
        // weight-0 2-valent vertex carrying a leg: fold the edge into the leg
        if let Some(v) =
            (0..nv).find(|&v| r.weights[v] == 0 && r.degree(v) == 2 && r.legs_at(v) == 1)
        {
            let e = r.edges_at(v)[0];
            let (a, b) = r.edges[e];
            let u = if a == v { b } else { a };
            for (_, lv) in r.legs.iter_mut() {
                if *lv == v {
                    *lv = u;
                }
            }
            r.remove_vertex_and_edges(v, &[e]);
            continue;
        }
        break;
    }
    let graph = WeightedGraph::new(r.weights, r.edges, r.legs)?;
    debug_assert!(graph.is_stable());
    debug_assert_eq!(graph.genus(), c.genus());
    Ok(TropicalCurve::from_raw(graph, r.lengths, c.extended))
}

/// Tropically equivalent curve whose leg endpoints are all distinct, built
/// by sliding extra legs onto inserted weight-0 2-valent vertices.
pub fn separate_legs(c: &TropicalCurve) -> TropicalCurve {
    separate_legs_with_length(c, Length::integer(1)).expect("unit length is positive")
}

pub fn separate_legs_with_length(c: &TropicalCurve, split: Length) -> Result<TropicalCurve> {
    if !split.is_positive() || split.is_infinite() {
        return Err(Error::NonPositiveLength);
    }
    let mut weights = c.graph.weights().to_vec();
    let mut edges = c.graph.edge_list();
    let mut lengths = c.lengths.clone();
    let mut legs = c.graph.leg_list();
    let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(_, v)) in legs.iter().enumerate() {
        by_vertex.entry(v).or_default().push(i);
    }
    for (v, leg_indices) in by_vertex {
        // keep the lowest-label leg in place, move the rest outward
        let mut sorted = leg_indices;
        sorted.sort_by_key(|&i| legs[i].0);
        for &i in &sorted[1..] {
            let u = weights.len();
            weights.push(0);
            edges.push((v, u));
            lengths.push(split);
            legs[i].1 = u;
        }
    }
    let graph = WeightedGraph::new(weights, edges, legs).expect("insertion keeps validity");
    Ok(TropicalCurve::from_raw(graph, lengths, c.extended))
}

/// Lengths in canonical edge order, minimized over the automorphism edge
/// action; equal vectors mean isometric curves.
fn orbit_minimal_lengths(c: &TropicalCurve) -> (Vec<u8>, Vec<Length>) {
    let cf = canonical_form(&c.graph);
    let canon = cf.apply(&c.graph);
    let ne = c.graph.num_edges();
    let mut canon_lengths = vec![Length::integer(0); ne];
    for e in c.graph.edges() {
        canon_lengths[cf.edge_map(e).index()] = c.lengths[e.index()];
    }
    let aut = automorphism_group(&canon);
    let mut best = canon_lengths.clone();
    for perm in aut.edge_action_elements(ne) {
        let mut permuted = vec![Length::integer(0); ne];
        for i in 0..ne {
            permuted[perm[i] as usize] = canon_lengths[i];
        }
        if permuted < best {
            best = permuted;
        }
    }
    (cf.key().to_vec(), best)
}

/// True iff some isomorphism of the underlying weighted legged graphs
/// matches the length functions. Non-stable inputs are stabilized first.
pub fn is_isometric(a: &TropicalCurve, b: &TropicalCurve) -> Result<bool> {
    let a = if a.is_stable() {
        a.clone()
    } else {
        stabilize(a)?
    };
    let b = if b.is_stable() {
        b.clone()
    } else {
        stabilize(b)?
    };
    Ok(orbit_minimal_lengths(&a) == orbit_minimal_lengths(&b))
}

/// A point of the closed cone over a base graph: one nonnegative coordinate
/// per edge, zeros allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePoint {
    base: WeightedGraph,
    coords: Vec<Length>,
}

impl ConePoint {
    pub fn new(base: WeightedGraph, coords: Vec<Length>) -> Result<Self> {
        if coords.len() != base.num_edges() {
            return Err(Error::WrongLengthCount {
                expected: base.num_edges(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|l| l.is_negative()) {
            return Err(Error::NegativeCoordinate);
        }
        Ok(ConePoint { base, coords })
    }

    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn coords(&self) -> &[Length] {
        &self.coords
    }

    fn zero_edges(&self) -> BTreeSet<EdgeId> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_zero())
            .map(|(i, _)| EdgeId::new(i))
            .collect()
    }
}

/// The unique tropical curve at a cone point: zero-coordinate edges are
/// contracted, the rest keep their coordinates as lengths.
pub fn face_contract(p: &ConePoint) -> TropicalCurve {
    let s = p.zero_edges();
    let res = contract(&p.base, &s).expect("zero set is a subset of E");
    let lengths: Vec<Length> = res
        .edge_embedding
        .iter()
        .map(|&e| p.coords[e.index()])
        .collect();
    let extended = lengths.iter().any(|l| l.is_infinite());
    TropicalCurve::from_raw(res.graph, lengths, extended)
}

/// All points of the closed cone parametrizing a curve isometric to the one
/// at `p`: faces with isomorphic contraction type receive the transported
/// point, closed under each face's automorphism edge action. The result is
/// finite, contains `p`, and is an equivalence class.
pub fn fiber(p: &ConePoint) -> Result<Vec<ConePoint>> {
    if !p.base.is_stable() {
        return Err(Error::NotStable);
    }
    let ne = p.base.num_edges();
    let zero: Vec<usize> = p.zero_edges().iter().map(|e| e.index()).collect();
    let k = zero.len();
    let res_i = contract(&p.base, &zero.iter().map(|&i| EdgeId::new(i)).collect())?;
    let form_i = canonical_form(&res_i.graph);

    let subsets = subsets_of_size(ne, k);
    let per_face: Vec<Vec<Vec<Length>>> = crate::par::map_collect(&subsets, |subset| {
        let s: BTreeSet<EdgeId> = subset.iter().map(|&i| EdgeId::new(i)).collect();
        let res_j = contract(&p.base, &s).expect("subset of E");
        let form_j = canonical_form(&res_j.graph);
        if form_j.key() != form_i.key() {
            return Vec::new();
        }
        // transport p through the fixed isomorphism C_I -> C_J induced by
        // the two canonical relabelings
        let m = res_j.edge_embedding.len();
        let mut canon_to_j = vec![0usize; m];
        for je in 0..m {
            canon_to_j[form_j.edge_map(EdgeId::new(je)).index()] = je;
        }
        let mut base_point = vec![Length::integer(0); ne];
        for ie in 0..m {
            let orig_i = res_i.edge_embedding[ie];
            let je = canon_to_j[form_i.edge_map(EdgeId::new(ie)).index()];
            let orig_j = res_j.edge_embedding[je];
            base_point[orig_j.index()] = p.coords[orig_i.index()];
        }
        // close under the face automorphism group G_J
        let aut = automorphism_group(&res_j.graph);
        let mut points = Vec::new();
        for perm in aut.edge_action_elements(m) {
            let mut q = vec![Length::integer(0); ne];
            for je in 0..m {
                let target = res_j.edge_embedding[perm[je] as usize];
                q[target.index()] = base_point[res_j.edge_embedding[je].index()];
            }
            points.push(q);
        }
        points
    });

    let mut set: BTreeSet<Vec<Length>> = BTreeSet::new();
    for face_points in per_face {
        set.extend(face_points);
    }
    debug_assert!(set.contains(&p.coords));
    Ok(set
        .into_iter()
        .map(|coords| ConePoint {
            base: p.base.clone(),
            coords,
        })
        .collect())
}
