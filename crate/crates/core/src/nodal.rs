//! Dual graphs of pointed nodal curves, stability of curves at the
//! combinatorial level, and the dimension correspondence between the two
//! stratifications.

use crate::error::{Error, Result};
use crate::graph::{StabilityReport, WeightedGraph};

/// Combinatorial shadow of an n-pointed nodal curve: components with their
/// geometric genus, nodes as unordered component pairs (an equal pair is a
/// self-node), and marked points placed on components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalCurveDesc {
    genera: Vec<u64>,
    nodes: Vec<(usize, usize)>,
    /// (label, component index), sorted by label.
    markings: Vec<(u32, usize)>,
}

impl NodalCurveDesc {
    pub fn new(
        genera: Vec<u64>,
        nodes: Vec<(usize, usize)>,
        markings: Vec<(u32, usize)>,
    ) -> Result<Self> {
        let nc = genera.len();
        for &(a, b) in &nodes {
            if a >= nc || b >= nc {
                return Err(Error::DanglingEndpoint(format!("#{}", a.max(b))));
            }
        }
        for &(label, c) in &markings {
            if c >= nc {
                return Err(Error::BadMarking {
                    label,
                    component: format!("#{c}"),
                });
            }
        }
        let mut markings = markings;
        markings.sort_unstable();
        Ok(NodalCurveDesc {
            genera,
            nodes,
            markings,
        })
    }

    /// Builds the description whose dual graph is `g` (components from
    /// vertices, nodes from edges, points from legs).
    pub fn from_dual(g: &WeightedGraph) -> Self {
        NodalCurveDesc {
            genera: g.weights().to_vec(),
            nodes: g.edge_list(),
            markings: {
                let mut m = g.leg_list();
                m.sort_unstable();
                m
            },
        }
    }

    pub fn num_components(&self) -> usize {
        self.genera.len()
    }

    /// Vertex per component weighted by geometric genus, edge per node, leg
    /// per marked point. The dual graph's genus is the arithmetic genus.
    pub fn dual_graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(
            self.genera.clone(),
            self.nodes.clone(),
            self.markings.clone(),
        )
    }

    /// Arithmetic genus b1 + sum of geometric genera.
    pub fn arithmetic_genus(&self) -> Result<u64> {
        Ok(self.dual_graph()?.genus())
    }
}

/// Deligne–Mumford stability through the dual graph; the per-vertex
/// stability degree equals the degree of the twisted dualizing sheaf on the
/// corresponding component.
pub fn is_stable_curve(x: &NodalCurveDesc) -> Result<StabilityReport> {
    Ok(x.dual_graph()?.check_stable())
}

/// Dual graph of the stable model: unpointed rational tails are removed,
/// exceptional components contract to a node (their two nodes fuse into
/// one edge), and uni-pointed rational tails fold into a marked point on
/// the attachment component.
pub fn stabilize_curve(x: &NodalCurveDesc) -> Result<WeightedGraph> {
    let dual = x.dual_graph()?;
    let sig = 2 * dual.genus() as i64 - 2 + dual.num_legs() as i64;
    if sig < 1 {
        return Err(Error::DegenerateSignature(sig));
    }
    let mut genera = x.genera.clone();
    let mut nodes = x.nodes.clone();
    let mut markings = x.markings.clone();

    let degree = |nodes: &[(usize, usize)], markings: &[(u32, usize)], v: usize| {
        nodes
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum::<usize>()
            + markings.iter().filter(|&&(_, c)| c == v).count()
    };
    let points_on = |markings: &[(u32, usize)], v: usize| {
        markings.iter().filter(|&&(_, c)| c == v).count()
    };

    loop {
        let nc = genera.len();
        // Step 1: unpointed rational tail (genus 0, one node, no points)
        if let Some(v) = (0..nc).find(|&v| {
            genera[v] == 0
                && points_on(&markings, v) == 0
                && degree(&nodes, &markings, v) == 1
        }) {
            let e = nodes
                .iter()
                .position(|&(a, b)| a == v || b == v)
                .expect("tail has a node");
            nodes.remove(e);
            remove_component(&mut genera, &mut nodes, &mut markings, v);
            continue;
        }
        // Step 2.a: exceptional component (genus 0, two nodes, no points);
        // contracting it fuses its two nodes into one
        if let Some(v) = (0..nc).find(|&v| {
            genera[v] == 0
                && points_on(&markings, v) == 0
                && degree(&nodes, &markings, v) == 2
        }) {
            let incident: Vec<usize> = nodes
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect();
            debug_assert_eq!(incident.len(), 2, "self-noded component has degree >= 2 twice");
            let (e1, e2) = (incident[0], incident[1]);
            let other = |e: usize, nodes: &[(usize, usize)]| {
                let (a, b) = nodes[e];
                if a == v {
                    b
                } else {
                    a
                }
            };
            let (a, b) = (other(e1, &nodes), other(e2, &nodes));
            nodes[e1] = (a, b);
            nodes.remove(e2);
            remove_component(&mut genera, &mut nodes, &mut markings, v);
            continue;
        }
        // Step 2.b: uni-pointed rational tail; the attachment point inherits
        // the marked point
        if let Some(v) = (0..nc).find(|&v| {
            genera[v] == 0
                && points_on(&markings, v) == 1
                && degree(&nodes, &markings, v) == 2
        }) {
            let e = nodes
                .iter()
                .position(|&(a, b)| a == v || b == v)
                .expect("tail has a node");
            let (a, b) = nodes[e];
            let u = if a == v { b } else { a };
            for (_, c) in markings.iter_mut() {
                if *c == v {
                    *c = u;
                }
            }
            nodes.remove(e);
            remove_component(&mut genera, &mut nodes, &mut markings, v);
            continue;
        }
        break;
    }
    let stable = WeightedGraph::new(genera, nodes, markings)?;
    debug_assert!(stable.is_stable());
    Ok(stable)
}

fn remove_component(
    genera: &mut Vec<u64>,
    nodes: &mut [(usize, usize)],
    markings: &mut [(u32, usize)],
    v: usize,
) {
    genera.remove(v);
    for (a, b) in nodes.iter_mut() {
        if *a > v {
            *a -= 1;
        }
        if *b > v {
            *b -= 1;
        }
    }
    for (_, c) in markings.iter_mut() {
        if *c > v {
            *c -= 1;
        }
    }
}

/// Dimensions of the two strata attached to a stable graph: the algebraic
/// stratum has dimension 3g-3+n-|E|, equal to the tropical codimension; the
/// tropical stratum has dimension |E|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratumDims {
    pub dim_alg: u64,
    pub codim_trop: u64,
    pub dim_trop: u64,
}

pub fn stratum_dims(g: &WeightedGraph) -> Result<StratumDims> {
    if !g.is_stable() {
        return Err(Error::NotStable);
    }
    let total = 3 * g.genus() as i64 - 3 + g.num_legs() as i64;
    let e = g.num_edges() as i64;
    debug_assert!(total >= e);
    Ok(StratumDims {
        dim_alg: (total - e) as u64,
        codim_trop: (total - e) as u64,
        dim_trop: e as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::testgraphs::*;

    #[test]
    fn four_pointed_singular_curve_dual() {
        // X = C1 ∪ C2, one node, points 1,2 on C1 and 3,4 on C2
        let x = NodalCurveDesc::new(
            vec![0, 0],
            vec![(0, 1)],
            vec![(1, 0), (2, 0), (3, 1), (4, 1)],
        )
        .unwrap();
        let dual = x.dual_graph().unwrap();
        assert!(is_isomorphic(&dual, &four_leg_split(&[1, 2], &[3, 4])));
        assert!(is_stable_curve(&x).unwrap().stable);
    }

    #[test]
    fn irreducible_one_node_genus_one() {
        // geometric genus 0 with a self-node: arithmetic genus 1
        let x = NodalCurveDesc::new(vec![0], vec![(0, 0)], vec![(1, 0)]).unwrap();
        let dual = x.dual_graph().unwrap();
        assert!(is_isomorphic(&dual, &loop_with_leg()));
        assert_eq!(x.arithmetic_genus().unwrap(), 1);
    }

    #[test]
    fn smooth_curve_dual_is_star() {
        let x = NodalCurveDesc::new(vec![3], vec![], vec![(1, 0), (2, 0)]).unwrap();
        let dual = x.dual_graph().unwrap();
        assert!(is_isomorphic(&dual, &star(3, 2)));
    }

    #[test]
    fn unpointed_rational_tail_is_unstable() {
        // genus-2 component with a rational tail hanging off it
        let x = NodalCurveDesc::new(vec![2, 0], vec![(0, 1)], vec![]).unwrap();
        let report = is_stable_curve(&x).unwrap();
        assert!(!report.stable);
        let (v, w, val) = report.offending_vertices[0];
        assert_eq!((w, val), (0, 1));
        let dual = x.dual_graph().unwrap();
        assert_eq!(dual.stability_degree(v).unwrap(), -1);
    }

    #[test]
    fn exceptional_component_has_degree_zero() {
        let x = NodalCurveDesc::new(vec![2, 0, 1], vec![(0, 1), (1, 2)], vec![]).unwrap();
        let dual = x.dual_graph().unwrap();
        assert_eq!(
            dual.stability_degree(crate::graph::VertexId::new(1)).unwrap(),
            0
        );
        assert!(!is_stable_curve(&x).unwrap().stable);
    }

    #[test]
    fn stabilize_contracts_exceptional_bridge() {
        let x = NodalCurveDesc::new(vec![2, 0, 1], vec![(0, 1), (1, 2)], vec![]).unwrap();
        let stable = stabilize_curve(&x).unwrap();
        let expected = WeightedGraph::new(vec![2, 1], vec![(0, 1)], vec![]).unwrap();
        assert!(is_isomorphic(&stable, &expected));
    }

    #[test]
    fn stabilize_removes_tail_from_one_node_curve() {
        // genus-1 one-node curve plus an unpointed rational tail
        let x = NodalCurveDesc::new(vec![0, 0], vec![(0, 0), (0, 1)], vec![(1, 0)]).unwrap();
        let stable = stabilize_curve(&x).unwrap();
        assert!(is_isomorphic(&stable, &loop_with_leg()));
    }

    #[test]
    fn stabilize_fixes_stable_curves() {
        let x = NodalCurveDesc::new(
            vec![0, 0],
            vec![(0, 1)],
            vec![(1, 0), (2, 0), (3, 1), (4, 1)],
        )
        .unwrap();
        let stable = stabilize_curve(&x).unwrap();
        assert!(is_isomorphic(&stable, &x.dual_graph().unwrap()));
    }

    #[test]
    fn dims_examples() {
        let d = stratum_dims(&theta()).unwrap();
        assert_eq!((d.dim_alg, d.dim_trop), (0, 3));
        let d = stratum_dims(&star(2, 1)).unwrap();
        assert_eq!((d.dim_alg, d.dim_trop), (3 * 2 - 3 + 1, 0));
        let d = stratum_dims(&four_leg_split(&[1, 2], &[3, 4])).unwrap();
        assert_eq!((d.dim_alg, d.dim_trop), (0, 1));
        assert_eq!(
            stratum_dims(&WeightedGraph::new(vec![0, 0], vec![(0, 1)], vec![]).unwrap())
                .unwrap_err(),
            Error::NotStable
        );
    }
}
