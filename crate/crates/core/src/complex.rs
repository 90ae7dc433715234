//! The 2-skeleton of a graph's clique complex: the graph plus every 3-clique
//! as an oriented triangle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// A 3-clique stored as vertex indices `a < b < c`, oriented `a -> b -> c -> a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    vertices: [usize; 3],
}

impl Triangle {
    /// Canonical triangle on three distinct vertex indices, in any order.
    pub fn new(mut vertices: [usize; 3]) -> Triangle {
        vertices.sort_unstable();
        debug_assert!(vertices[0] < vertices[1] && vertices[1] < vertices[2]);
        Triangle { vertices }
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.vertices
    }

    /// The three arcs of the cyclic orientation: `(a,b)`, `(b,c)`, `(c,a)`.
    pub fn arcs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (c, a)]
    }

    /// `+1` if `edge` runs along the triangle's orientation, `-1` if against
    /// it, `None` if it is not one of the triangle's edges.
    pub fn orientation_of(&self, edge: Edge) -> Option<i64> {
        self.arcs().iter().find_map(|&(x, y)| {
            if (edge.tail, edge.head) == (x, y) {
                Some(1)
            } else if (edge.tail, edge.head) == (y, x) {
                Some(-1)
            } else {
                None
            }
        })
    }
}

/// All 3-cliques of `g`, in lexicographic order of their sorted vertex triples.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.is_adjacent(a, c) {
                    out.push(Triangle { vertices: [a, b, c] });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComplex {
    graph: Graph,
    triangles: Vec<Triangle>,
    // edges of each triangle, in arc order
    triangle_edges: Vec<[usize; 3]>,
    triangle_degree: Vec<usize>,
}

impl OrientedComplex {
    pub fn new(graph: Graph) -> OrientedComplex {
        let triangles = enumerate_triangles(&graph);
        let mut triangle_degree = vec![0; graph.edge_count()];
        let triangle_edges = triangles
            .iter()
            .map(|t| {
                t.arcs().map(|(x, y)| {
                    let e = graph.edge_between(x, y).expect("triangle edge exists");
                    triangle_degree[e] += 1;
                    e
                })
            })
            .collect();
        OrientedComplex { graph, triangles, triangle_edges, triangle_degree }
    }

    pub fn from_edge_list(text: &str) -> Result<OrientedComplex> {
        Graph::from_edge_list(text).map(OrientedComplex::new)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Edge indices of triangle `t` in arc order `(ab, bc, ca)`.
    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        self.triangle_edges[t]
    }

    /// Number of triangles containing edge `e`.
    pub fn triangle_degree(&self, e: usize) -> Result<usize> {
        self.triangle_degree
            .get(e)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: e, len: self.triangle_degree.len() })
    }

    pub fn triangle_degrees(&self) -> &[usize] {
        &self.triangle_degree
    }

    /// Triangle vertex triples as ids.
    pub fn triangle_ids(&self) -> Vec<[VertexId; 3]> {
        self.triangles.iter().map(|t| t.vertices().map(|v| self.graph.vertex_id(v))).collect()
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.graph.vertex_ids().to_vec(),
            edges: (0..self.edge_count())
                .map(|e| {
                    let (u, v) = self.graph.edge_ids(e).expect("edge in range");
                    [u, v]
                })
                .collect(),
            triangles: self.triangle_ids(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("document serializes")
    }

    /// Parses the canonical JSON document. The triangle list must match the
    /// 3-cliques of the described graph exactly.
    pub fn from_json(text: &str) -> Result<OrientedComplex> {
        let doc: ComplexDocument = serde_json::from_str(text)?;
        let graph = Graph::new(doc.vertices, doc.edges.into_iter().map(|[u, v]| (u, v)))?;
        let complex = OrientedComplex::new(graph);
        if complex.triangle_ids() != doc.triangles {
            return Err(Error::Json("triangle list does not match the graph's 3-cliques".into()));
        }
        Ok(complex)
    }
}

/// Canonical serialized form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    pub triangles: Vec<[VertexId; 3]>,
}
