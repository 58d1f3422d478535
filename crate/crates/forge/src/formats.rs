//! JSON documents for graphs, maps, covers, polygons, matrices and surfaces,
//! plus Graphviz DOT output.
//!
//! Serialization is bit-stable: keys appear in a fixed order, lists are in
//! index order and floats use the shortest decimal form that reads back to
//! the same double.

use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use forge_core::analysis::{IntMatrix, IntersectionData};
use forge_core::assembly::{self, AssembledSurface, CurveSystem, Gluing};
use forge_core::covers::{ColoredGluingGraph, CoveringMap};
use forge_core::graph::HalfEdgeGraph;
use forge_core::hyperbolic::PolygonMetric;
use forge_core::maps::RotationMap;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer labels keyed by index, written as a JSON object `{"0": v, "1": v, ...}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels(pub Vec<i64>);

impl Serialize for Labels {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, v) in self.0.iter().enumerate() {
            map.serialize_entry(&i.to_string(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Labels {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, i64>::deserialize(d)?;
        let mut out = vec![None; raw.len()];
        for (k, v) in raw {
            let i: usize = k.parse().map_err(|_| D::Error::custom(format!("label key `{k}` is not an index")))?;
            let slot = out.get_mut(i).ok_or_else(|| D::Error::custom(format!("label index {i} out of range")))?;
            *slot = Some(v);
        }
        out.into_iter()
            .collect::<Option<Vec<i64>>>()
            .map(Labels)
            .ok_or_else(|| D::Error::custom("label indices are not contiguous"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: usize,
    /// `[dart, vertex]` for every dart.
    pub darts: Vec<[usize; 2]>,
    /// `[dart, partner]` once per edge, smaller dart first.
    pub theta: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_labels: Option<Labels>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_labels: Option<Labels>,
}

impl GraphDoc {
    pub fn from_graph(g: &HalfEdgeGraph) -> Self {
        Self {
            vertices: g.num_vertices(),
            darts: (0..g.num_darts()).map(|d| [d, g.vertex_of(d)]).collect(),
            theta: (0..g.num_edges()).map(|e| g.edge_darts(e)).collect(),
            vertex_labels: g.vertex_labels().map(|l| Labels(l.to_vec())),
            edge_labels: g.edge_labels().map(|l| Labels(l.to_vec())),
        }
    }

    pub fn to_graph(&self) -> Result<HalfEdgeGraph> {
        let n = self.darts.len();
        let mut vertex_of = vec![usize::MAX; n];
        for &[d, v] in &self.darts {
            ensure!(d < n && vertex_of[d] == usize::MAX, "dart {d} listed twice or out of range");
            vertex_of[d] = v;
        }
        let mut theta = vec![usize::MAX; n];
        for &[a, b] in &self.theta {
            ensure!(a < n && b < n, "theta pair [{a}, {b}] out of range");
            ensure!(theta[a] == usize::MAX && theta[b] == usize::MAX, "dart in two theta pairs");
            theta[a] = b;
            theta[b] = a;
        }
        ensure!(theta.iter().all(|&t| t != usize::MAX), "some dart has no theta partner");
        let mut g = HalfEdgeGraph::new(self.vertices, vertex_of, theta)?;
        if let Some(l) = &self.vertex_labels {
            g = g.with_vertex_labels(l.0.clone())?;
        }
        if let Some(l) = &self.edge_labels {
            g = g.with_edge_labels(l.0.clone())?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    #[serde(flatten)]
    pub graph: GraphDoc,
    /// `[dart, next dart counterclockwise]`.
    pub rotation: Vec<[usize; 2]>,
}

impl MapDoc {
    pub fn from_map(m: &RotationMap) -> Self {
        Self {
            graph: GraphDoc::from_graph(m.graph()),
            rotation: (0..m.graph().num_darts()).map(|d| [d, m.next(d)]).collect(),
        }
    }

    pub fn to_map(&self) -> Result<RotationMap> {
        let g = self.graph.to_graph()?;
        let mut next = vec![usize::MAX; g.num_darts()];
        for &[d, e] in &self.rotation {
            ensure!(d < next.len(), "rotation dart {d} out of range");
            next[d] = e;
        }
        ensure!(next.iter().all(|&e| e != usize::MAX), "rotation misses a dart");
        Ok(RotationMap::new(g, next)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub base: GraphDoc,
    pub total: GraphDoc,
    /// `[total dart, base dart]`.
    pub dart_map: Vec<[usize; 2]>,
}

impl CoverDoc {
    pub fn from_cover(c: &CoveringMap) -> Self {
        Self {
            base: GraphDoc::from_graph(c.base()),
            total: GraphDoc::from_graph(c.total()),
            dart_map: c.dart_map().iter().enumerate().map(|(t, &b)| [t, b]).collect(),
        }
    }

    pub fn to_cover(&self) -> Result<CoveringMap> {
        let total = self.total.to_graph()?;
        let mut map = vec![usize::MAX; total.num_darts()];
        for &[t, b] in &self.dart_map {
            ensure!(t < map.len(), "dart map entry {t} out of range");
            map[t] = b;
        }
        ensure!(map.iter().all(|&b| b != usize::MAX), "dart map misses a dart");
        Ok(CoveringMap::new(total, self.base.to_graph()?, map)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonDoc {
    pub q: usize,
    pub theta: f64,
    pub side_length: f64,
    /// Hyperboloid coordinates `(t, x, y)` of the vertices.
    pub vertices: Vec<[f64; 3]>,
}

impl PolygonDoc {
    pub fn from_polygon(p: &PolygonMetric) -> Self {
        Self { q: p.q, theta: p.theta, side_length: p.side_length, vertices: p.vertices.clone() }
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::to_value(m.to_rows()).expect("integers serialize")
}

pub fn matrix_from_json(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).context("matrix must be an array of integer arrays")?;
    Ok(IntMatrix::from_rows(&rows)?)
}

/// Gluing graph with signs, the boundary attached along each dart and per-edge shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDoc {
    #[serde(flatten)]
    pub graph: GraphDoc,
    pub signs: Vec<i8>,
    /// `[dart, boundary index]`.
    pub boundary_of_dart: Vec<[usize; 2]>,
    pub shifts: Vec<usize>,
}

impl GluingDoc {
    pub fn from_gluing(g: &Gluing) -> Self {
        Self {
            graph: GraphDoc::from_graph(g.graph()),
            signs: g.signs().to_vec(),
            boundary_of_dart: g.face_labels().iter().enumerate().map(|(d, &f)| [d, f]).collect(),
            shifts: g.shifts().to_vec(),
        }
    }

    /// Colored gluing graphs carry signs as vertex labels and colors as edge labels.
    pub fn from_colored(c: &ColoredGluingGraph) -> Self {
        let mut doc = Self::from_gluing(&Gluing::from_colored(c));
        doc.graph.vertex_labels = Some(Labels(c.vertex_signs().iter().map(|&s| s as i64).collect()));
        doc.graph.edge_labels = Some(Labels(c.edge_colors().iter().map(|&c| c as i64).collect()));
        doc
    }

    pub fn to_gluing(&self) -> Result<Gluing> {
        let mut plain = self.graph.clone();
        plain.vertex_labels = None;
        plain.edge_labels = None;
        let g = plain.to_graph()?;
        let mut faces = vec![usize::MAX; g.num_darts()];
        for &[d, f] in &self.boundary_of_dart {
            ensure!(d < faces.len(), "boundary entry for dart {d} out of range");
            faces[d] = f;
        }
        ensure!(faces.iter().all(|&f| f != usize::MAX), "some dart has no boundary");
        Ok(Gluing::new(g, self.signs.clone(), faces, self.shifts.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvesDoc {
    pub red: Vec<Vec<usize>>,
    pub blue: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub block: MapDoc,
    pub gluing: GluingDoc,
    pub curves: CurvesDoc,
    pub genus: i64,
    pub tiles: usize,
    pub systoles: usize,
}

impl SurfaceDoc {
    pub fn new(x: &AssembledSurface, curves: &CurveSystem) -> Self {
        Self {
            block: MapDoc::from_map(x.block().map()),
            gluing: GluingDoc::from_gluing(x.gluing()),
            curves: CurvesDoc {
                red: curves.red().iter().map(|c| c.slots.clone()).collect(),
                blue: curves.blue().iter().map(|c| c.slots.clone()).collect(),
            },
            genus: x.genus(),
            tiles: x.num_tiles(),
            systoles: curves.len(),
        }
    }

    /// Rebuilds the surface and checks the stored curves and genus against it.
    pub fn load(&self) -> Result<(AssembledSurface, CurveSystem)> {
        let block = assembly::build_block(&self.block.to_map()?)?;
        let x = assembly::assemble(&block, &self.gluing.to_gluing()?)?;
        let curves = x.trace_curves()?;
        let fresh = Self::new(&x, &curves);
        if fresh.curves != self.curves || fresh.genus != self.genus {
            bail!("stored curves or genus do not match the rebuilt surface");
        }
        Ok((x, curves))
    }
}

/// Writes a document as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Undirected multigraph in DOT; edge labels become `label` attributes.
pub fn graph_to_dot(g: &HalfEdgeGraph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n  node [shape=circle];\n");
    for v in 0..g.num_vertices() {
        let label = g.vertex_labels().map_or(String::new(), |l| format!(" [xlabel=\"{}\"]", l[v]));
        let _ = writeln!(out, "  {v}{label};");
    }
    for (e, (u, w)) in g.edge_list().into_iter().enumerate() {
        let label = g.edge_labels().map_or(String::new(), |l| format!(" [label=\"{}\"]", l[e]));
        let _ = writeln!(out, "  {u} -- {w}{label};");
    }
    out.push_str("}\n");
    out
}

/// Intersection graph in DOT: red curves `r0…`, blue curves `b0…`.
pub fn intersection_to_dot(d: &IntersectionData, name: &str) -> String {
    let node = |v: usize| if v < d.red_count { format!("r{v}") } else { format!("b{}", v - d.red_count) };
    let mut out = format!("graph {name} {{\n  node [shape=circle, style=filled, fontcolor=white];\n");
    for v in 0..d.num_curves() {
        let color = if v < d.red_count { "red" } else { "blue" };
        let _ = writeln!(out, "  {} [fillcolor={color}];", node(v));
    }
    for (u, w) in d.graph.edge_list() {
        let _ = writeln!(out, "  {} -- {};", node(u), node(w));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use forge_core::graph::catalog as graphs;
    use forge_core::maps::catalog as maps;

    #[test]
    fn graph_round_trip_with_labels() {
        let g = graphs::theta(3).with_vertex_labels(vec![1, -1]).unwrap().with_edge_labels(vec![1, 2, 3]).unwrap();
        let text = to_json_string(&GraphDoc::from_graph(&g));
        let back: GraphDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
        assert!(text.find("\"vertices\"").unwrap() < text.find("\"darts\"").unwrap());
    }

    #[test]
    fn labels_must_be_contiguous() {
        let text = r#"{"vertices":2,"darts":[[0,0],[1,1]],"theta":[[0,1]],"vertex_labels":{"0":1,"5":2}}"#;
        assert!(serde_json::from_str::<GraphDoc>(text).is_err());
    }

    #[test]
    fn map_round_trip() {
        let m = maps::cube();
        let back: MapDoc = serde_json::from_str(&to_json_string(&MapDoc::from_map(&m))).unwrap();
        assert_eq!(back.to_map().unwrap(), m);
    }

    #[test]
    fn rejects_broken_theta() {
        let doc = GraphDoc { vertices: 1, darts: vec![[0, 0], [1, 0]], theta: vec![[0, 0]], vertex_labels: None, edge_labels: None };
        assert!(doc.to_graph().is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = graph_to_dot(&graphs::complete(4), "k4");
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.starts_with("graph k4 {"));
    }
}
