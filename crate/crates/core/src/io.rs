//! JSON interchange formats: the graph format shared by the whole artifact
//! (optionally carrying edge lengths) and the nodal-curve description.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{ConePoint, Length, TropicalCurve};
use crate::nodal::NodalCurveDesc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    pub weight: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LegSpec {
    pub label: u32,
    pub vertex: String,
}

/// Raw graph description mirroring the JSON schema. Ids are free-form
/// strings; dense indices are assigned in input order on validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDescription {
    #[serde(default)]
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub legs: Vec<LegSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, serde_json::Value>>,
}

fn length_to_value(l: Length) -> serde_json::Value {
    match l {
        Length::Infinite => serde_json::Value::String("inf".into()),
        Length::Finite(r) if *r.denom() == 1 => serde_json::json!(*r.numer()),
        Length::Finite(r) => serde_json::Value::String(format!("{}/{}", r.numer(), r.denom())),
    }
}

fn length_from_value(v: &serde_json::Value) -> Result<Length> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Length::integer(i))
            } else if let Some(f) = n.as_f64() {
                num_rational::Ratio::<i64>::approximate_float(f)
                    .map(Length::Finite)
                    .ok_or_else(|| Error::Parse(format!("cannot represent {f} exactly")))
            } else {
                Err(Error::Parse(format!("bad length {n}")))
            }
        }
        serde_json::Value::String(s) => s.parse(),
        other => Err(Error::Parse(format!("bad length {other}"))),
    }
}

impl GraphDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Checks all invariants and produces a graph; half-edge ids follow
    /// input order.
    pub fn validate(&self) -> Result<WeightedGraph> {
        let mut weights = Vec::with_capacity(self.vertices.len());
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.weight < 0 {
                return Err(Error::NegativeWeight {
                    vertex: v.id.clone(),
                    weight: v.weight,
                });
            }
            if index.insert(&v.id, i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id `{}`", v.id)));
            }
            weights.push(v.weight as u64);
        }
        let resolve = |name: &str| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::DanglingEndpoint(name.to_string()))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push((resolve(&e.ends[0])?, resolve(&e.ends[1])?));
        }
        let mut legs = Vec::with_capacity(self.legs.len());
        for l in &self.legs {
            legs.push((l.label, resolve(&l.vertex)?));
        }
        WeightedGraph::new(weights, edges, legs)
    }

    /// Edge lengths in edge input order; every edge must have one.
    fn resolve_lengths(&self) -> Result<Vec<Length>> {
        let table = self.lengths.as_ref().ok_or(Error::WrongLengthCount {
            expected: self.edges.len(),
            got: 0,
        })?;
        let mut out = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let v = table.get(&e.id).ok_or(Error::WrongLengthCount {
                expected: self.edges.len(),
                got: table.len(),
            })?;
            out.push(length_from_value(v)?);
        }
        Ok(out)
    }

    /// Interprets the description as a tropical curve; `extended` allows
    /// infinite length on any edge.
    pub fn validate_curve(&self, extended: bool) -> Result<TropicalCurve> {
        let graph = self.validate()?;
        let lengths = self.resolve_lengths()?;
        TropicalCurve::new(graph, lengths, extended)
    }

    /// Interprets the description as a point of the closed cone over its
    /// graph (zero coordinates allowed).
    pub fn validate_cone_point(&self) -> Result<ConePoint> {
        let graph = self.validate()?;
        let coords = self.resolve_lengths()?;
        ConePoint::new(graph, coords)
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphDescription {
            vertices: g
                .vertices()
                .map(|v| VertexSpec {
                    id: format!("v{}", v.index()),
                    weight: g.weight(v).unwrap() as i64,
                })
                .collect(),
            edges: g
                .edges()
                .map(|e| {
                    let (a, b) = g.edge_endpoints(e).unwrap();
                    EdgeSpec {
                        id: format!("e{}", e.index()),
                        ends: [format!("v{}", a.index()), format!("v{}", b.index())],
                    }
                })
                .collect(),
            legs: g
                .legs()
                .map(|(label, v)| LegSpec {
                    label,
                    vertex: format!("v{}", v.index()),
                })
                .collect(),
            lengths: None,
        }
    }

    pub fn from_curve(c: &TropicalCurve) -> Self {
        let mut desc = Self::from_graph(c.graph());
        desc.lengths = Some(
            c.graph()
                .edges()
                .map(|e| (format!("e{}", e.index()), length_to_value(c.length(e))))
                .collect(),
        );
        desc
    }

    pub fn from_cone_point(p: &ConePoint) -> Self {
        let mut desc = Self::from_graph(p.base());
        desc.lengths = Some(
            p.coords()
                .iter()
                .enumerate()
                .map(|(i, &l)| (format!("e{i}"), length_to_value(l)))
                .collect(),
        );
        desc
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub id: String,
    pub genus: i64,
}

/// Raw nodal-curve description mirroring the curve JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDescription {
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub nodes: Vec<[String; 2]>,
    #[serde(default)]
    pub points: BTreeMap<String, String>,
}

impl CurveDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn validate(&self) -> Result<NodalCurveDesc> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        let mut genera = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            if c.genus < 0 {
                return Err(Error::NegativeWeight {
                    vertex: c.id.clone(),
                    weight: c.genus,
                });
            }
            if index.insert(&c.id, i).is_some() {
                return Err(Error::Parse(format!("duplicate component id `{}`", c.id)));
            }
            genera.push(c.genus as u64);
        }
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for [a, b] in &self.nodes {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| Error::DanglingEndpoint(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| Error::DanglingEndpoint(b.clone()))?;
            nodes.push((ia, ib));
        }
        let mut markings = Vec::with_capacity(self.points.len());
        for (label, comp) in &self.points {
            let label: u32 = label
                .parse()
                .map_err(|_| Error::Parse(format!("bad point label `{label}`")))?;
            let ci = *index.get(comp.as_str()).ok_or_else(|| Error::BadMarking {
                label,
                component: comp.clone(),
            })?;
            markings.push((label, ci));
        }
        markings.sort_unstable();
        NodalCurveDesc::new(genera, nodes, markings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"vertices":[{"id":"a","weight":1},{"id":"b","weight":0}],
                       "edges":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["b","b"]}],
                       "legs":[{"label":1,"vertex":"a"}]}"#;
        let g = GraphDescription::from_json(text).unwrap().validate().unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 2);
        let emitted = GraphDescription::from_graph(&g);
        let g2 = emitted.validate().unwrap();
        assert_eq!(canonical_form(&g).key(), canonical_form(&g2).key());
        // byte stability
        assert_eq!(emitted.to_json(), GraphDescription::from_graph(&g2).to_json());
    }

    #[test]
    fn negative_weight_rejected() {
        let text = r#"{"vertices":[{"id":"a","weight":-2}]}"#;
        let err = GraphDescription::from_json(text).unwrap().validate().unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { .. }));
    }

    #[test]
    fn lengths_parse_all_forms() {
        let text = r#"{"vertices":[{"id":"a","weight":1},{"id":"b","weight":1}],
                       "edges":[{"id":"e0","ends":["a","b"]},{"id":"e1","ends":["a","b"]},{"id":"e2","ends":["a","b"]}],
                       "lengths":{"e0":2,"e1":"3/4","e2":1.5}}"#;
        let c = GraphDescription::from_json(text).unwrap().validate_curve(false).unwrap();
        assert_eq!(c.lengths()[0], Length::integer(2));
        assert_eq!(c.lengths()[1], Length::ratio(3, 4).unwrap());
        assert_eq!(c.lengths()[2], Length::ratio(3, 2).unwrap());
    }

    #[test]
    fn curve_round_trip() {
        let text = r#"{"components":[{"id":"C1","genus":0},{"id":"C2","genus":0}],
                       "nodes":[["C1","C2"]],
                       "points":{"1":"C1","2":"C1","3":"C2","4":"C2"}}"#;
        let x = CurveDescription::from_json(text).unwrap().validate().unwrap();
        let dual = x.dual_graph().unwrap();
        assert_eq!(dual.num_vertices(), 2);
        assert_eq!(dual.num_edges(), 1);
        assert_eq!(dual.num_legs(), 4);
    }

    #[test]
    fn bad_marking_reported() {
        let text = r#"{"components":[{"id":"C1","genus":1}],"points":{"1":"missing"}}"#;
        let err = CurveDescription::from_json(text).unwrap().validate().unwrap_err();
        assert!(matches!(err, Error::BadMarking { .. }));
    }
}
