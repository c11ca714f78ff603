//! Shared helpers for integration tests: named graphs, seeded random
//! instances, and brute-force oracles kept independent of the library's
//! canonical-form machinery.

#![allow(dead_code)]

use rand::Rng;

use tropmod::{WeightedGraph, VertexId};

pub fn theta() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![(0, 1), (0, 1), (0, 1)], vec![]).unwrap()
}

pub fn dumbbell() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![(0, 0), (0, 1), (1, 1)], vec![]).unwrap()
}

pub fn banana(m: usize, w0: u64, w1: u64) -> WeightedGraph {
    WeightedGraph::new(vec![w0, w1], vec![(0, 1); m], vec![]).unwrap()
}

pub fn four_leg_split(left: &[u32], right: &[u32]) -> WeightedGraph {
    let mut legs: Vec<(u32, usize)> = left.iter().map(|&l| (l, 0)).collect();
    legs.extend(right.iter().map(|&l| (l, 1)));
    WeightedGraph::new(vec![0, 0], vec![(0, 1)], legs).unwrap()
}

pub fn loop_with_leg() -> WeightedGraph {
    WeightedGraph::new(vec![0], vec![(0, 0)], vec![(1, 0)]).unwrap()
}

pub fn star(w: u64, n: u32) -> WeightedGraph {
    WeightedGraph::new(vec![w], vec![], (1..=n).map(|l| (l, 0)).collect()).unwrap()
}

/// Unordered multiplicity matrix entry lookup, loops on the diagonal.
fn multiplicity(g: &WeightedGraph, u: usize, v: usize) -> usize {
    g.edges()
        .filter(|&e| {
            let (a, b) = g.edge_endpoints(e).unwrap();
            let (a, b) = (a.index(), b.index());
            (a, b) == (u, v) || (a, b) == (v, u)
        })
        .count()
}

fn leg_labels_at(g: &WeightedGraph, v: usize) -> Vec<u32> {
    let mut out: Vec<u32> = g
        .legs()
        .filter(|&(_, u)| u.index() == v)
        .map(|(l, _)| l)
        .collect();
    out.sort_unstable();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Isomorphism test by exhausting vertex bijections: weights, per-vertex leg
/// labels, and the full multiplicity matrix must match. Deliberately
/// independent of the canonical-form code path.
pub fn brute_iso(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    if a.num_vertices() != b.num_vertices()
        || a.num_edges() != b.num_edges()
        || a.num_legs() != b.num_legs()
    {
        return false;
    }
    let n = a.num_vertices();
    'outer: for perm in permutations(n) {
        for v in 0..n {
            if a.weights()[v] != b.weights()[perm[v]] {
                continue 'outer;
            }
            if leg_labels_at(a, v) != leg_labels_at(b, perm[v]) {
                continue 'outer;
            }
        }
        for u in 0..n {
            for v in u..n {
                if multiplicity(a, u, v) != multiplicity(b, perm[u], perm[v]) {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}

/// |Aut(Γ, w)| by brute force over bijections of V ∪ H: vertex permutations
/// combined with all per-vertex half-edge bijections, keeping the maps that
/// commute with the involution and endpoint maps and fix every leg.
pub fn brute_aut_order(g: &WeightedGraph) -> u128 {
    let nv = g.num_vertices();
    let nh = g.num_half_edges();
    let partner: Vec<usize> = g.half_edges().map(|h| h.partner.index()).collect();
    let endpoint: Vec<usize> = g.half_edges().map(|h| h.endpoint.index()).collect();
    let is_leg: Vec<bool> = g.half_edges().map(|h| h.leg_label.is_some()).collect();
    let at_vertex: Vec<Vec<usize>> = (0..nv)
        .map(|v| (0..nh).filter(|&h| endpoint[h] == v).collect())
        .collect();

    let mut count: u128 = 0;
    for vperm in permutations(nv) {
        if (0..nv).any(|v| g.weights()[v] != g.weights()[vperm[v]]) {
            continue;
        }
        if (0..nv).any(|v| at_vertex[v].len() != at_vertex[vperm[v]].len()) {
            continue;
        }
        // assign half-edge images vertex by vertex
        fn assign(
            vi: usize,
            nv: usize,
            vperm: &[usize],
            at_vertex: &[Vec<usize>],
            hmap: &mut Vec<Option<usize>>,
            partner: &[usize],
            is_leg: &[bool],
            count: &mut u128,
        ) {
            if vi == nv {
                // commutation with the involution and pointwise leg fixing
                let ok = hmap.iter().enumerate().all(|(h, img)| {
                    let img = img.unwrap();
                    if is_leg[h] {
                        h == img
                    } else {
                        hmap[partner[h]] == Some(partner[img])
                    }
                });
                if ok {
                    *count += 1;
                }
                return;
            }
            let src = &at_vertex[vi];
            let dst = &at_vertex[vperm[vi]];
            for p in permutations(src.len()) {
                for (i, &h) in src.iter().enumerate() {
                    hmap[h] = Some(dst[p[i]]);
                }
                assign(vi + 1, nv, vperm, at_vertex, hmap, partner, is_leg, count);
            }
            for &h in src {
                hmap[h] = None;
            }
        }
        let mut hmap: Vec<Option<usize>> = vec![None; nh];
        assign(
            0,
            nv,
            &vperm,
            &at_vertex,
            &mut hmap,
            &partner,
            &is_leg,
            &mut count,
        );
    }
    count
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn multisets(pool: &[(usize, usize)], count: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        pool: &[(usize, usize)],
        idx: usize,
        count: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        if idx == pool.len() {
            return;
        }
        // may take the pair at `idx` any number of times
        rec(pool, idx + 1, count, cur, out);
        cur.push(pool[idx]);
        rec(pool, idx, count - 1, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(pool, 0, count, &mut Vec::new(), &mut out);
    out
}

fn assignments(n_labels: u32, slots: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n_labels {
        let mut next = Vec::new();
        for partial in &out {
            for s in 0..slots {
                let mut p = partial.clone();
                p.push(s);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Exhaustively generates all stable weighted graph types for (g, n) from
/// scratch: every vertex count, weight vector, edge multiset, and leg
/// assignment, filtered by connectivity, genus, and stability, deduplicated
/// by [`brute_iso`]. Independent of the enumeration module.
pub fn oracle_stable_types(genus: u64, num_legs: u32) -> Vec<WeightedGraph> {
    let mut reps: Vec<WeightedGraph> = Vec::new();
    let max_vertices = (3 * genus as i64 - 2 + num_legs as i64).max(1) as usize;
    for nv in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..nv)
            .flat_map(|u| (u..nv).map(move |v| (u, v)))
            .collect();
        for total_weight in 0..=genus {
          for weights in compositions(total_weight, nv) {
            let b1 = genus - total_weight;
            let ne = b1 as i64 + nv as i64 - 1;
            if ne > 3 * genus as i64 - 3 + num_legs as i64 {
                continue;
            }
            for edges in multisets(&pairs, ne as usize) {
                for legs in assignments(num_legs, nv) {
                    let leg_list: Vec<(u32, usize)> = legs
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (i as u32 + 1, v))
                        .collect();
                    let Ok(g) =
                        WeightedGraph::new(weights.clone(), edges.clone(), leg_list)
                    else {
                        continue;
                    };
                    if g.genus() != genus || !g.is_stable() {
                        continue;
                    }
                    if !reps.iter().any(|r| brute_iso(r, &g)) {
                        reps.push(g);
                    }
                }
            }
          }
        }
    }
    reps
}

/// Random connected weighted graph: a random tree plus extra edges and
/// loops, random weights, and legs placed anywhere.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_extra_edges: usize,
    max_weight: u64,
    num_legs: u32,
) -> WeightedGraph {
    let nv = rng.random_range(1..=max_vertices);
    let mut edges: Vec<(usize, usize)> = (1..nv)
        .map(|v| (rng.random_range(0..v), v))
        .collect();
    for _ in 0..rng.random_range(0..=max_extra_edges) {
        let a = rng.random_range(0..nv);
        let b = rng.random_range(0..nv);
        edges.push((a.min(b), a.max(b)));
    }
    let weights: Vec<u64> = (0..nv).map(|_| rng.random_range(0..=max_weight)).collect();
    let legs: Vec<(u32, usize)> = (1..=num_legs)
        .map(|l| (l, rng.random_range(0..nv)))
        .collect();
    WeightedGraph::new(weights, edges, legs).expect("construction is connected")
}

/// Stability check straight from the two-case condition.
pub fn casewise_stable(g: &WeightedGraph) -> bool {
    g.vertices().all(|v| {
        let w = g.weights()[v.index()];
        let val = g.valence(v).unwrap();
        match w {
            0 => val >= 3,
            1 => val >= 1,
            _ => true,
        }
    })
}

pub fn vertex_ids(g: &WeightedGraph) -> Vec<VertexId> {
    g.vertices().collect()
}
