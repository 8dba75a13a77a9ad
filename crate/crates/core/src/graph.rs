//! Edge-labeled graphs `(G, A)`.
//!
//! Vertices are ordered by declaration; every flow-up notion downstream
//! refers to this order. Vertex indices in this API are 0-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{CoeffRing, ParseError};
use crate::ring::{Ring, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph document: {0}")]
    Json(String),
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge}: unknown vertex `{name}`")]
    UnknownVertex { edge: usize, name: String },
    #[error("vertex index {index} out of range for {len} vertices")]
    BadIndex { index: usize, len: usize },
    #[error("edge {edge}: self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge}: label is zero")]
    ZeroLabel { edge: usize },
    #[error("edge {edge}: label `{text}`: {source}")]
    LabelParse {
        edge: usize,
        text: String,
        source: ParseError,
    },
    #[error("edge {edge}: label is not in {ring}")]
    LabelRing { edge: usize, ring: Ring },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid vertex permutation")]
    BadPermutation,
}

impl GraphError {
    /// Stable identifier for reports.
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::Json(_) => "BAD_DOCUMENT",
            GraphError::NoVertices => "NO_VERTICES",
            GraphError::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            GraphError::UnknownVertex { .. } | GraphError::BadIndex { .. } => "BAD_INDEX",
            GraphError::SelfLoop { .. } => "SELF_LOOP",
            GraphError::ZeroLabel { .. } => "ZERO_LABEL",
            GraphError::LabelParse { .. } => "PARSE_FAILURE",
            GraphError::LabelRing { .. } => "RING_MISMATCH",
            GraphError::Disconnected => "DISCONNECTED",
            GraphError::BadPermutation => "BAD_PERMUTATION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: RingElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    ring: Ring,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RingSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coefficients: Option<CoeffRing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    variables: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeSpec {
    u: String,
    v: String,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDocument {
    ring: RingSpec,
    vertices: Vec<String>,
    edges: Vec<EdgeSpec>,
}

impl LabeledGraph {
    /// Builds and validates a graph. Edges are `(u, v, label)` with 0-based
    /// vertex indices. Parallel edges are allowed.
    pub fn new(
        ring: Ring,
        vertices: Vec<String>,
        edges: Vec<(usize, usize, RingElement)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        for (i, name) in vertices.iter().enumerate() {
            if vertices[..i].contains(name) {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let n = vertices.len();
        let mut checked = Vec::with_capacity(edges.len());
        for (k, (u, v, label)) in edges.into_iter().enumerate() {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::BadIndex { index, len: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { edge: k, vertex: u });
            }
            if label.ring() != ring {
                return Err(GraphError::LabelRing { edge: k, ring });
            }
            if label.is_zero() {
                return Err(GraphError::ZeroLabel { edge: k });
            }
            checked.push(Edge { u, v, label });
        }
        let g = LabeledGraph {
            ring,
            vertices,
            edges: checked,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Loads a graph from its JSON document.
    pub fn from_json(document: &str) -> Result<Self, GraphError> {
        let doc: GraphDocument =
            serde_json::from_str(document).map_err(|e| GraphError::Json(e.to_string()))?;
        let ring = match doc.ring.kind.as_str() {
            "int" => Ring::Integer,
            "poly" => Ring::Polynomial {
                coeffs: doc.ring.coefficients.unwrap_or(CoeffRing::Rat),
                vars: Arc::from(doc.ring.variables),
            },
            other => return Err(GraphError::Json(format!("unknown ring kind `{other}`"))),
        };
        let index = |edge: usize, name: &str| {
            doc.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| GraphError::UnknownVertex {
                    edge,
                    name: name.to_string(),
                })
        };
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (k, e) in doc.edges.iter().enumerate() {
            let u = index(k, &e.u)?;
            let v = index(k, &e.v)?;
            let label = ring.parse(&e.label).map_err(|source| GraphError::LabelParse {
                edge: k,
                text: e.label.clone(),
                source,
            })?;
            edges.push((u, v, label));
        }
        LabeledGraph::new(ring, doc.vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let ring = match &self.ring {
            Ring::Integer | Ring::Rational => RingSpec {
                kind: "int".into(),
                coefficients: None,
                variables: Vec::new(),
            },
            Ring::Polynomial { coeffs, vars } => RingSpec {
                kind: "poly".into(),
                coefficients: Some(*coeffs),
                variables: vars.to_vec(),
            },
        };
        let doc = GraphDocument {
            ring,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    u: self.vertices[e.u].clone(),
                    v: self.vertices[e.v].clone(),
                    label: e.label.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }

    /// Cycle `v1 - v2 - ... - vn - v1`; `labels[k]` sits on the edge leaving `v(k+1)`.
    pub fn cycle(ring: Ring, labels: Vec<RingElement>) -> Result<Self, GraphError> {
        let n = labels.len();
        let edges = labels
            .into_iter()
            .enumerate()
            .map(|(k, a)| (k, (k + 1) % n, a))
            .collect();
        LabeledGraph::new(ring, default_names(n), edges)
    }

    /// Path `v1 - v2 - ... - v(m+1)` with `m` labels.
    pub fn path(ring: Ring, labels: Vec<RingElement>) -> Result<Self, GraphError> {
        let n = labels.len() + 1;
        let edges = labels
            .into_iter()
            .enumerate()
            .map(|(k, a)| (k, k + 1, a))
            .collect();
        LabeledGraph::new(ring, default_names(n), edges)
    }

    /// Complete graph on `n` vertices; labels are consumed in the order
    /// `(1,2), (1,3), ..., (1,n), (2,3), ...`.
    pub fn complete(ring: Ring, n: usize, labels: Vec<RingElement>) -> Result<Self, GraphError> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        if pairs.len() != labels.len() {
            return Err(GraphError::Json(format!(
                "complete graph on {n} vertices needs {} labels, got {}",
                pairs.len(),
                labels.len()
            )));
        }
        let edges = pairs
            .into_iter()
            .zip(labels)
            .map(|((i, j), a)| (i, j, a))
            .collect();
        LabeledGraph::new(ring, default_names(n), edges)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> impl Iterator<Item = &RingElement> {
        self.edges.iter().map(|e| &e.label)
    }

    /// Labels of all edges touching `vertex`, in edge-declaration order.
    pub fn incident_labels(&self, vertex: usize) -> Result<Vec<&RingElement>, GraphError> {
        if vertex >= self.vertex_count() {
            return Err(GraphError::BadIndex {
                index: vertex,
                len: self.vertex_count(),
            });
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.u == vertex || e.v == vertex)
            .map(|e| &e.label)
            .collect())
    }

    /// Whether every pair of edge labels has a unit gcd.
    pub fn pairwise_coprime_labels(&self) -> bool {
        let labels: Vec<&RingElement> = self.labels().collect();
        labels.iter().enumerate().all(|(i, a)| {
            labels[i + 1..]
                .iter()
                .all(|b| a.gcd(b).map(|g| g.is_unit()).unwrap_or(false))
        })
    }

    /// The same graph with vertices listed in a new order: position `k` of the
    /// result is old vertex `order[k]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self, GraphError> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(GraphError::BadPermutation);
        }
        for &o in order {
            if o >= n || seen[o] {
                return Err(GraphError::BadPermutation);
            }
            seen[o] = true;
        }
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        LabeledGraph::new(
            self.ring.clone(),
            order.iter().map(|&o| self.vertices[o].clone()).collect(),
            self.edges
                .iter()
                .map(|e| (position[e.u], position[e.v], e.label.clone()))
                .collect(),
        )
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}
