//! Simple undirected graphs carrying an explicit orientation on every edge.
//!
//! Vertices are identified externally by arbitrary non-negative integers and
//! internally by their position in the ascending list of ids. Matrix columns
//! indexed by vertices follow that same order.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type VertexId = u64;

/// An oriented edge `tail -> head`, stored as vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn reversed(self) -> Edge {
        Edge { tail: self.head, head: self.tail }
    }

    pub fn has_endpoint(self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    fn key(self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a graph from declared vertices plus oriented edges given as id
    /// pairs. The vertex set is the union of the declared ids and all
    /// endpoints. Errors carry the 1-based position of the offending edge.
    pub fn new<V, E>(declared: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let pairs: Vec<_> = edges.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect();
        Self::from_numbered(declared.into_iter().collect(), pairs)
    }

    /// Builds a graph from unordered pairs, orienting each edge from the
    /// smaller id to the larger one.
    pub fn with_default_orientation<V, E>(declared: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::new(declared, edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))))
    }

    /// Parses the edge-list text format: one record per line, `u v` for an
    /// oriented edge `u -> v`, `v k` declaring vertex `k`, `#` starting a
    /// comment. Blank lines are ignored. Record numbers in errors are line
    /// numbers.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        Self::from_records(text.lines())
    }

    pub fn from_records<I, S>(records: I) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut declared = BTreeSet::new();
        let mut pairs = Vec::new();
        for (i, rec) in records.into_iter().enumerate() {
            let record = i + 1;
            let line = rec.as_ref().trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse = |tok: &str| {
                tok.parse::<VertexId>().map_err(|_| Error::Parse {
                    record,
                    message: format!("expected a non-negative integer, found {tok:?}"),
                })
            };
            match tokens.as_slice() {
                ["v", id] => {
                    declared.insert(parse(id)?);
                }
                [u, v] => pairs.push((record, (parse(u)?, parse(v)?))),
                _ => {
                    return Err(Error::Parse {
                        record,
                        message: format!("expected `u v` or `v k`, found {line:?}"),
                    })
                }
            }
        }
        Self::from_numbered(declared, pairs)
    }

    fn from_numbered(
        declared: BTreeSet<VertexId>,
        pairs: Vec<(usize, (VertexId, VertexId))>,
    ) -> Result<Graph> {
        let mut ids = declared;
        for &(record, (u, v)) in &pairs {
            if u == v {
                return Err(Error::SelfLoop { record });
            }
            ids.insert(u);
            ids.insert(v);
        }
        let vertices: Vec<VertexId> = ids.into_iter().collect();
        let index: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut edges = Vec::with_capacity(pairs.len());
        let mut edge_lookup = HashMap::with_capacity(pairs.len());
        for (record, (u, v)) in pairs {
            let edge = Edge { tail: index[&u], head: index[&v] };
            if edge_lookup.insert(edge.key(), edges.len()).is_some() {
                return Err(Error::DuplicateEdge { record });
            }
            edges.push(edge);
        }
        Ok(Self::assemble(vertices, edges, edge_lookup))
    }

    fn assemble(
        vertices: Vec<VertexId>,
        edges: Vec<Edge>,
        edge_lookup: HashMap<(usize, usize), usize>,
    ) -> Graph {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            adjacency[e.tail].push(e.head);
            adjacency[e.head].push(e.tail);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { vertices, edges, adjacency, edge_lookup }
    }

    /// Rebuilds from index-level data; `edges` must already be simple.
    fn from_parts(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Graph {
        let edge_lookup = edges.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        Self::assemble(vertices, edges, edge_lookup)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in ascending order; position = vertex index.
    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> VertexId {
        self.vertices[v]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search(&id).ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<Edge> {
        self.edges
            .get(e)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: e, len: self.edges.len() })
    }

    /// Edge `e` as a `(tail id, head id)` pair.
    pub fn edge_ids(&self, e: usize) -> Result<(VertexId, VertexId)> {
        let edge = self.edge(e)?;
        Ok((self.vertices[edge.tail], self.vertices[edge.head]))
    }

    /// Sorted neighbor indices of vertex index `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Index of the edge joining `u` and `v` (either orientation).
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&(u.min(v), u.max(v))).copied()
    }

    /// Component label per vertex index; labels are numbered in order of the
    /// smallest vertex index they contain.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        let mut label_of_root = HashMap::new();
        (0..self.vertex_count())
            .map(|v| {
                let root = uf.find(v);
                let next = label_of_root.len();
                *label_of_root.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |l| l + 1)
    }

    /// Splits into one graph per connected component, in label order.
    /// Edge order within each component follows the parent graph.
    pub fn components(&self) -> Vec<Graph> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |l| l + 1);
        let mut local = vec![0usize; self.vertex_count()];
        let mut vertices = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            local[v] = vertices[l].len();
            vertices[l].push(self.vertices[v]);
        }
        let mut edges = vec![Vec::new(); count];
        for e in &self.edges {
            edges[labels[e.tail]].push(Edge { tail: local[e.tail], head: local[e.head] });
        }
        vertices
            .into_iter()
            .zip(edges)
            .map(|(vs, es)| Graph::from_parts(vs, es))
            .collect()
    }

    /// Whether removing edge `e` increases the number of components.
    pub fn is_cut_edge(&self, e: usize) -> Result<bool> {
        let edge = self.edge(e)?;
        let mut uf = UnionFind::new(self.vertex_count());
        for (i, other) in self.edges.iter().enumerate() {
            if i != e {
                uf.union(other.tail, other.head);
            }
        }
        Ok(uf.find(edge.tail) != uf.find(edge.head))
    }

    pub fn cut_edges(&self) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.is_cut_edge(e).unwrap_or(false)).collect()
    }

    /// Vertex ids of degree one, ascending.
    pub fn pendant_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .map(|v| self.vertices[v])
            .collect()
    }

    /// Removes a degree-one vertex and its edge. Remaining edges keep their
    /// relative order and orientation.
    pub fn delete_pendant(&self, id: VertexId) -> Result<Graph> {
        let v = self.index_of(id).ok_or(Error::UnknownVertex(id))?;
        if self.degree(v) != 1 {
            return Err(Error::NotPendant(id));
        }
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let vertices = self.vertices.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, &x)| x).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.has_endpoint(v))
            .map(|e| Edge { tail: shift(e.tail), head: shift(e.head) })
            .collect();
        Ok(Graph::from_parts(vertices, edges))
    }

    /// Contracts edge `e = uv`, which requires `N(u) ∩ N(v) = ∅`. The merged
    /// vertex keeps the smaller of the two ids; edges incident to the other
    /// endpoint are rewired with their orientation preserved.
    pub fn contract_edge(&self, e: usize) -> Result<Graph> {
        let edge = self.edge(e)?;
        let (u, v) = (edge.tail, edge.head);
        if self.adjacency[u].iter().any(|&w| self.is_adjacent(v, w)) {
            return Err(Error::CommonNeighbor(e));
        }
        let keep = u.min(v);
        let drop = u.max(v);
        let remap = |w: usize| {
            let w = if w == drop { keep } else { w };
            if w > drop {
                w - 1
            } else {
                w
            }
        };
        let vertices = self.vertices.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| Edge { tail: remap(x.tail), head: remap(x.head) })
            .collect();
        Ok(Graph::from_parts(vertices, edges))
    }

    /// Replaces edge `e` by the directed path `tail -> w -> head` through a
    /// fresh vertex `w` (id one greater than the current maximum). The two
    /// new edges take the place of `e` in the edge order.
    pub fn subdivide_edge(&self, e: usize) -> Result<Graph> {
        let edge = self.edge(e)?;
        let fresh_id = self.vertices.last().map_or(0, |&m| m + 1);
        let mut vertices = self.vertices.clone();
        vertices.push(fresh_id);
        let w = vertices.len() - 1;
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        for (i, &x) in self.edges.iter().enumerate() {
            if i == e {
                edges.push(Edge { tail: edge.tail, head: w });
                edges.push(Edge { tail: w, head: edge.head });
            } else {
                edges.push(x);
            }
        }
        Ok(Graph::from_parts(vertices, edges))
    }

    /// Same graph with the listed edges reversed.
    pub fn with_flipped_edges(&self, flip: &[usize]) -> Result<Graph> {
        let mut edges = self.edges.clone();
        for &e in flip {
            let edge = self.edge(e)?;
            edges[e] = edge.reversed();
        }
        Ok(Graph::from_parts(self.vertices.clone(), edges))
    }

    /// Canonical edge-list text: isolated vertices declared first, then one
    /// line per edge in edge order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            if self.degree(v) == 0 {
                let _ = writeln!(out, "v {}", self.vertices[v]);
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", self.vertices[e.tail], self.vertices[e.head]);
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
