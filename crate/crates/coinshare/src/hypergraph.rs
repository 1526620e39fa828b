//! Hypergraphs on vertices `1..=n` and the connectivity notions the
//! protocol synthesizers depend on.
//!
//! Two different connectivity notions coexist here and must not be confused:
//!
//! * *topological* connectivity of a k-uniform hypergraph: the rows of its
//!   edge-vs-(k-1)-tuple incidence matrix span the row space of the complete
//!   hypergraph's matrix, which happens exactly when the rank reaches
//!   `C(n-1, k-1)`;
//! * *path* connectivity of an arbitrary hypergraph: every pair of vertices
//!   is linked through a chain of edges.
//!
//! Tuples and edges are enumerated in colexicographic order everywhere; that
//! order is the tie-breaker for every greedy choice made downstream.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf2::{Basis, BitMatrix, BitVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<usize>),
    #[error("empty vertex set")]
    EmptyEdge,
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("expected {k} vertices per edge, edge {edge} has {found}")]
    NotUniform { k: usize, edge: Edge, found: usize },
    #[error("operation requires uniformity k >= {needs}, graph has k = {k}")]
    UniformityTooLow { k: usize, needs: usize },
    #[error("hypergraph is not topologically connected")]
    NotConnected,
    #[error("cluster component graph is not path-connected")]
    NotPathConnected,
    #[error("cluster component graph contains a cycle")]
    HasCycle,
    #[error("restriction to component {component} is not topologically connected")]
    ComponentNotConnected { component: Edge },
    #[error("edge {edge} lies outside every component")]
    EdgeOutsideComponents { edge: Edge },
}

/// `C(n, k)` in `u64`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// A sorted set of vertices. Doubles as a hyperedge and as a cluster
/// component, which are the same kind of object at different layers.
///
/// The `Ord` impl is colexicographic: sets are compared from their largest
/// element downwards, so e.g. `{2,3} < {1,4}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn new(mut vertices: Vec<usize>) -> Result<Edge, HypergraphError> {
        if vertices.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(HypergraphError::RepeatedVertex(vertices));
        }
        if vertices[0] == 0 {
            return Err(HypergraphError::VertexOutOfRange { vertex: 0, n: 0 });
        }
        Ok(Edge(vertices))
    }

    /// Shorthand for edges written out in source code.
    ///
    /// # Panics
    ///
    /// Panics on repeated or zero vertices.
    pub fn of(vertices: &[usize]) -> Edge {
        Edge::new(vertices.to_vec()).expect("invalid edge literal")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_vertex(&self) -> usize {
        *self.0.last().expect("edges are non-empty")
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The edge with `v` removed.
    ///
    /// # Panics
    ///
    /// Panics if `v` is not in the edge.
    pub fn without(&self, v: usize) -> Edge {
        assert!(self.contains(v), "vertex {v} not in edge {self}");
        Edge(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// The edge with `v` inserted.
    ///
    /// # Panics
    ///
    /// Panics if `v` is already in the edge.
    pub fn with(&self, v: usize) -> Edge {
        assert!(!self.contains(v), "vertex {v} already in edge {self}");
        let mut vs = self.0.clone();
        let at = vs.partition_point(|&u| u < v);
        vs.insert(at, v);
        Edge(vs)
    }

    /// All subsets of this edge with one vertex dropped, in colex order.
    pub fn facets(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.0.iter().map(|&v| self.without(v)).collect();
        out.sort();
        out
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => {
                    if x != y {
                        return x.cmp(y);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All k-subsets of `1..=n` in colex order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Edge> {
    fn rec(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(Vec::new());
            return;
        }
        for top in k..=n {
            let mut inner = Vec::new();
            rec(top - 1, k - 1, &mut inner);
            for mut s in inner {
                s.push(top);
                out.push(s);
            }
        }
    }
    if k == 0 || k > n {
        return Vec::new();
    }
    let mut raw = Vec::with_capacity(binomial(n, k) as usize);
    rec(n, k, &mut raw);
    raw.into_iter().map(Edge).collect()
}

/// A hypergraph on vertices `1..=n` with an ordered edge list.
///
/// `k > 0` pins the graph to k-uniform edges; `k == 0` admits mixed edge
/// sizes (used for cluster component graphs).
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<Edge>) -> Result<Hypergraph, HypergraphError> {
        if n == 0 {
            return Err(HypergraphError::VertexOutOfRange { vertex: 0, n: 0 });
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.max_vertex() > n {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: e.max_vertex(),
                    n,
                });
            }
            if k > 0 && e.len() != k {
                return Err(HypergraphError::NotUniform {
                    k,
                    edge: e.clone(),
                    found: e.len(),
                });
            }
            if !seen.insert(e.clone()) {
                return Err(HypergraphError::DuplicateEdge(e.clone()));
            }
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// The complete k-uniform hypergraph on `1..=n`, edges in colex order.
    pub fn complete(n: usize, k: usize) -> Hypergraph {
        Hypergraph {
            n,
            k,
            edges: colex_subsets(n, k),
        }
    }

    /// The star: every k-edge through vertex 1, in colex order.
    pub fn star(n: usize, k: usize) -> Hypergraph {
        Hypergraph {
            n,
            k,
            edges: colex_subsets(n, k)
                .into_iter()
                .filter(|e| e.contains(1))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn edges_containing(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.contains(v))
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.iter().any(|f| f == e)
    }

    /// Whether every possible k-edge is present.
    pub fn is_complete(&self) -> bool {
        self.k > 0 && self.edges.len() as u64 == binomial(self.n, self.k)
    }

    fn require_uniformity(&self, needs: usize) -> Result<(), HypergraphError> {
        if self.k < needs {
            return Err(HypergraphError::UniformityTooLow { k: self.k, needs });
        }
        Ok(())
    }

    /// Edge-vs-(k-1)-tuple incidence matrix over GF(2); requires `k >= 2`.
    pub fn incidence_matrix(&self) -> Result<IncidenceMatrix, HypergraphError> {
        self.require_uniformity(2)?;
        let tuples = colex_subsets(self.n, self.k - 1);
        let mut matrix = BitMatrix::zeros(self.edges.len(), tuples.len());
        let index = IncidenceMatrix {
            matrix: BitMatrix::zeros(0, 0),
            tuples,
        };
        for (r, e) in self.edges.iter().enumerate() {
            for t in e.facets() {
                let c = index
                    .tuple_index(&t)
                    .expect("facet of a valid edge is a valid tuple");
                matrix.set(r, c, true);
            }
        }
        Ok(IncidenceMatrix {
            matrix,
            tuples: index.tuples,
        })
    }

    /// Rank test for topological connectivity: the incidence rows must span
    /// a space of dimension `C(n-1, k-1)`.
    pub fn is_topologically_connected(&self) -> Result<bool, HypergraphError> {
        let inc = self.incidence_matrix()?;
        Ok(inc.matrix.rank() as u64 == binomial(self.n - 1, self.k - 1))
    }

    /// Greedy minimal topologically connected subgraph, scanning edges in
    /// this graph's stored order and keeping each edge that grows the row
    /// space. The result always has exactly `C(n-1, k-1)` edges.
    pub fn minimal_connected_subgraph(&self) -> Result<Hypergraph, HypergraphError> {
        if !self.is_topologically_connected()? {
            return Err(HypergraphError::NotConnected);
        }
        let inc = self.incidence_matrix()?;
        let mut basis = Basis::new(inc.matrix.cols());
        let mut kept = Vec::new();
        for (r, e) in self.edges.iter().enumerate() {
            if basis.insert(&inc.matrix.row(r)) {
                kept.push(e.clone());
            }
        }
        assert_eq!(
            kept.len() as u64,
            binomial(self.n - 1, self.k - 1),
            "connected graph must reduce to exactly C(n-1, k-1) edges"
        );
        Ok(Hypergraph {
            n: self.n,
            k: self.k,
            edges: kept,
        })
    }

    /// The (k-1)-uniform graph seen by `center`: edges `e \ {center}` for
    /// every edge through `center`, with the remaining vertices relabeled
    /// densely to `1..=n-1` in ascending order.
    pub fn induced(&self, center: usize) -> Result<InducedHypergraph, HypergraphError> {
        self.require_uniformity(3)?;
        if center == 0 || center > self.n {
            return Err(HypergraphError::VertexOutOfRange {
                vertex: center,
                n: self.n,
            });
        }
        let to_parent: Vec<usize> = (1..=self.n).filter(|&v| v != center).collect();
        let map = VertexMap { to_parent };
        let edges: Vec<Edge> = self
            .edges_containing(center)
            .map(|e| {
                map.to_local(&e.without(center))
                    .expect("edge vertices other than the center survive the relabeling")
            })
            .collect();
        let graph = Hypergraph::new(self.n - 1, self.k - 1, edges)
            .expect("relabeled induced edges are valid");
        Ok(InducedHypergraph { graph, center, map })
    }

    /// Path connectivity through shared vertices: true when every pair of
    /// vertices is joined by a chain of edges. Isolated vertices make an
    /// `n >= 2` graph disconnected.
    pub fn is_path_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            let vs = e.vertices();
            for w in vs.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        let root = uf.find(0);
        (1..self.n).all(|v| uf.find(v) == root)
    }

    /// True when the hypergraph has no simple cycle: no two edges share two
    /// or more vertices, and the bipartite vertex-edge incidence graph is
    /// acyclic.
    pub fn is_cycle_free(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                let shared = a.vertices().iter().filter(|v| b.contains(**v)).count();
                if shared >= 2 {
                    return false;
                }
            }
        }
        // Nodes 0..n are vertices, n..n+m are edges; joining an incidence
        // pair that is already connected closes a cycle.
        let mut uf = UnionFind::new(self.n + self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e.vertices() {
                if !uf.union(v - 1, self.n + j) {
                    return false;
                }
            }
        }
        true
    }

    /// The subgraph on the vertices of `within`, keeping the given edges and
    /// relabeling vertices densely.
    fn restriction(&self, within: &Edge, edges: &[Edge]) -> Restriction {
        let map = VertexMap {
            to_parent: within.vertices().to_vec(),
        };
        let local: Vec<Edge> = edges
            .iter()
            .map(|e| map.to_local(e).expect("edge lies inside the component"))
            .collect();
        let graph = Hypergraph::new(within.len(), self.k, local)
            .expect("relabeled restriction edges are valid");
        Restriction { graph, map }
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, k={}, edges=[", self.n, self.k)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Incidence matrix of a k-uniform hypergraph: one row per edge, one column
/// per (k-1)-subset of the vertices, columns in colex order.
pub struct IncidenceMatrix {
    pub matrix: BitMatrix,
    tuples: Vec<Edge>,
}

impl IncidenceMatrix {
    pub fn tuples(&self) -> &[Edge] {
        &self.tuples
    }

    /// Column of a (k-1)-tuple; the inverse of indexing into `tuples()`.
    pub fn tuple_index(&self, t: &Edge) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    /// Incidence row of an arbitrary k-edge over the same columns, whether
    /// or not the edge belongs to the graph.
    pub fn row_for_edge(&self, e: &Edge) -> BitVec {
        let mut row = BitVec::zeros(self.tuples.len());
        for t in e.facets() {
            let c = self
                .tuple_index(&t)
                .expect("facet of an in-range edge is a valid tuple");
            row.set(c, true);
        }
        row
    }
}

/// Dense relabeling between a subgraph and its parent graph.
/// Local vertices are `1..=m`; `to_parent[i-1]` is the parent vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    to_parent: Vec<usize>,
}

impl VertexMap {
    pub fn parent_of(&self, local: usize) -> usize {
        self.to_parent[local - 1]
    }

    pub fn local_of(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok().map(|i| i + 1)
    }

    pub fn to_parent(&self, local: &Edge) -> Edge {
        Edge(local.vertices().iter().map(|&v| self.parent_of(v)).collect())
    }

    pub fn to_local(&self, parent: &Edge) -> Option<Edge> {
        let vs: Option<Vec<usize>> = parent.vertices().iter().map(|&v| self.local_of(v)).collect();
        vs.map(Edge)
    }
}

/// Result of [`Hypergraph::induced`].
pub struct InducedHypergraph {
    pub graph: Hypergraph,
    pub center: usize,
    pub map: VertexMap,
}

impl InducedHypergraph {
    /// Maps a local (k-1)-edge back to the parent k-edge through the center.
    pub fn parent_edge(&self, local: &Edge) -> Edge {
        self.map.to_parent(local).with(self.center)
    }
}

/// A relabeled component subgraph.
pub struct Restriction {
    pub graph: Hypergraph,
    pub map: VertexMap,
}

/// A validated cluster: a path-connected, cycle-free component graph whose
/// per-component restrictions are each topologically connected.
/// Construct via [`validate_cluster`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSpec {
    base: Hypergraph,
    components: Vec<Edge>,
    edge_component: Vec<usize>,
}

/// Checks the cluster conditions in order: the component graph must be
/// path-connected, then cycle-free, then every component's restriction must
/// be topologically connected, and finally every base edge must lie inside a
/// component (ties broken by the first containing component).
pub fn validate_cluster(
    base: &Hypergraph,
    components: &[Edge],
) -> Result<ClusterSpec, HypergraphError> {
    base.require_uniformity(2)?;
    let component_graph = Hypergraph::new(base.n, 0, components.to_vec())?;
    if !component_graph.is_path_connected() {
        return Err(HypergraphError::NotPathConnected);
    }
    if !component_graph.is_cycle_free() {
        return Err(HypergraphError::HasCycle);
    }
    for comp in components {
        if comp.len() < base.k {
            return Err(HypergraphError::ComponentNotConnected {
                component: comp.clone(),
            });
        }
        let inside: Vec<Edge> = base
            .edges
            .iter()
            .filter(|e| e.is_subset_of(comp))
            .cloned()
            .collect();
        let restriction = base.restriction(comp, &inside);
        if !restriction
            .graph
            .is_topologically_connected()
            .expect("restriction inherits uniformity k >= 2")
        {
            return Err(HypergraphError::ComponentNotConnected {
                component: comp.clone(),
            });
        }
    }
    let mut edge_component = Vec::with_capacity(base.edges.len());
    for e in &base.edges {
        let Some(i) = components.iter().position(|c| e.is_subset_of(c)) else {
            return Err(HypergraphError::EdgeOutsideComponents { edge: e.clone() });
        };
        edge_component.push(i);
    }
    let spec = ClusterSpec {
        base: base.clone(),
        components: components.to_vec(),
        edge_component,
    };
    let (vertex_lhs, vertex_rhs) = spec.vertex_identity();
    assert_eq!(
        vertex_lhs, vertex_rhs,
        "path-connected cycle-free components must satisfy sum(|A|-1) = n-1"
    );
    let (deg_lhs, deg_rhs) = spec.degree_identity();
    assert_eq!(
        deg_lhs, deg_rhs,
        "path-connected cycle-free components must satisfy sum(deg-1) = m-1"
    );
    Ok(spec)
}

impl ClusterSpec {
    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn components(&self) -> &[Edge] {
        &self.components
    }

    /// Component index each base edge was assigned to.
    pub fn edge_component(&self) -> &[usize] {
        &self.edge_component
    }

    /// Base edges assigned to component `i`, in base edge order.
    pub fn component_edges(&self, i: usize) -> Vec<Edge> {
        self.base
            .edges
            .iter()
            .zip(&self.edge_component)
            .filter(|(_, &c)| c == i)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// The relabeled subgraph of component `i`.
    pub fn restriction(&self, i: usize) -> Restriction {
        self.base
            .restriction(&self.components[i], &self.component_edges(i))
    }

    /// The component graph `(V, {A_1..A_m})` itself, as a non-uniform
    /// hypergraph.
    pub fn component_graph(&self) -> Hypergraph {
        Hypergraph::new(self.base.n, 0, self.components.clone())
            .expect("validated components form a hypergraph")
    }

    /// Number of components a vertex belongs to.
    pub fn cluster_degree(&self, v: usize) -> usize {
        self.components.iter().filter(|c| c.contains(v)).count()
    }

    /// `(sum(|A_i| - 1), n - 1)`: equal for every valid cluster.
    pub fn vertex_identity(&self) -> (usize, usize) {
        (
            self.components.iter().map(|c| c.len() - 1).sum(),
            self.base.n - 1,
        )
    }

    /// `(sum over vertices of (cluster degree - 1), m - 1)`: equal for every
    /// valid cluster.
    pub fn degree_identity(&self) -> (usize, usize) {
        (
            (1..=self.base.n)
                .map(|v| self.cluster_degree(v).saturating_sub(1))
                .sum(),
            self.components.len() - 1,
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn colex_order_of_pairs() {
        let pairs: Vec<String> = colex_subsets(5, 2).iter().map(|e| e.to_string()).collect();
        assert_eq!(
            pairs,
            ["1-2", "1-3", "2-3", "1-4", "2-4", "3-4", "1-5", "2-5", "3-5", "4-5"]
        );
    }

    #[test]
    fn edge_ordering_is_colex() {
        assert!(Edge::of(&[2, 3]) < Edge::of(&[1, 4]));
        assert!(Edge::of(&[1, 2, 3]) < Edge::of(&[1, 2, 4]));
        assert!(Edge::of(&[1, 4, 5]) < Edge::of(&[1, 4, 6]));
        assert!(Edge::of(&[1, 4, 6]) < Edge::of(&[4, 5, 6]));
        let mut edges = vec![Edge::of(&[4, 5]), Edge::of(&[2, 3]), Edge::of(&[1, 4])];
        edges.sort();
        assert_eq!(edges, vec![Edge::of(&[2, 3]), Edge::of(&[1, 4]), Edge::of(&[4, 5])]);
    }

    #[test]
    fn binomial_table() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(8, 4), 70);
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert_eq!(
            Edge::new(vec![1, 1, 2]),
            Err(HypergraphError::RepeatedVertex(vec![1, 1, 2]))
        );
        assert!(matches!(
            Hypergraph::new(3, 2, vec![Edge::of(&[1, 4])]),
            Err(HypergraphError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, vec![Edge::of(&[1, 2])]),
            Err(HypergraphError::NotUniform { .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 2, vec![Edge::of(&[1, 2]), Edge::of(&[2, 1])]),
            Err(HypergraphError::DuplicateEdge(_))
        ));
    }

    #[test]
    fn incidence_of_single_pair_edge() {
        let g = Hypergraph::new(2, 2, vec![Edge::of(&[1, 2])]).unwrap();
        let inc = g.incidence_matrix().unwrap();
        assert_eq!((inc.matrix.rows(), inc.matrix.cols()), (1, 2));
        assert!(inc.matrix.get(0, 0) && inc.matrix.get(0, 1));
    }

    #[test]
    fn incidence_of_minimal_network_matches_hand_transcription() {
        let g = fixtures::fig3();
        let inc = g.incidence_matrix().unwrap();
        assert_eq!((inc.matrix.rows(), inc.matrix.cols()), (6, 10));
        let expected: [&[usize]; 6] = [
            &[0, 1, 2], // {1,2,3} covers (12),(13),(23)
            &[0, 3, 4], // {1,2,4} covers (12),(14),(24)
            &[1, 3, 5], // {1,3,4} covers (13),(14),(34)
            &[0, 6, 7], // {1,2,5} covers (12),(15),(25)
            &[2, 7, 8], // {2,3,5} covers (23),(25),(35)
            &[4, 7, 9], // {2,4,5} covers (24),(25),(45)
        ];
        for (r, cols) in expected.iter().enumerate() {
            assert_eq!(
                inc.matrix.row(r),
                BitVec::from_ones(10, cols),
                "row {r} ({})",
                g.edges()[r]
            );
        }
        assert_eq!(inc.matrix.rank(), 6);
    }

    #[test]
    fn tuple_index_inverts_tuple_list() {
        let inc = Hypergraph::complete(6, 3).incidence_matrix().unwrap();
        for (i, t) in inc.tuples().iter().enumerate() {
            assert_eq!(inc.tuple_index(t), Some(i));
        }
        assert_eq!(inc.tuple_index(&Edge::of(&[1, 2, 3])), None);
    }

    #[test]
    fn complete_graph_incidence_has_uniform_row_weight() {
        let inc = Hypergraph::complete(4, 3).incidence_matrix().unwrap();
        assert_eq!((inc.matrix.rows(), inc.matrix.cols()), (4, 6));
        for r in 0..4 {
            assert_eq!(inc.matrix.row(r).count_ones(), 3);
        }
    }

    #[test]
    fn minimal_network_is_topologically_connected() {
        assert!(fixtures::fig3().is_topologically_connected().unwrap());
    }

    #[test]
    fn dropping_an_edge_of_a_minimal_network_disconnects_it() {
        let g = fixtures::fig3();
        for skip in 0..g.edge_count() {
            let edges: Vec<Edge> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, e)| e.clone())
                .collect();
            let sub = Hypergraph::new(5, 3, edges).unwrap();
            assert!(
                !sub.is_topologically_connected().unwrap(),
                "removing edge {} must disconnect a minimal network",
                g.edges()[skip]
            );
        }
    }

    #[test]
    fn stars_are_topologically_connected() {
        for (n, k) in [(4, 3), (5, 3), (6, 4), (7, 3)] {
            assert!(
                Hypergraph::star(n, k).is_topologically_connected().unwrap(),
                "star({n},{k})"
            );
        }
    }

    #[test]
    fn edgeless_graph_is_disconnected() {
        let g = Hypergraph::new(3, 2, vec![]).unwrap();
        assert!(!g.is_topologically_connected().unwrap());
        assert_eq!(
            g.minimal_connected_subgraph(),
            Err(HypergraphError::NotConnected)
        );
    }

    #[test]
    fn uniformity_guard_on_rank_operations() {
        let g = Hypergraph::new(3, 0, vec![Edge::of(&[1, 2]), Edge::of(&[1, 2, 3])]).unwrap();
        assert_eq!(
            g.incidence_matrix().err(),
            Some(HypergraphError::UniformityTooLow { k: 0, needs: 2 })
        );
    }

    #[test]
    fn minimal_subgraph_of_complete_graphs() {
        // Greedy over colex order keeps the star through vertex 1 first.
        let tree = Hypergraph::complete(4, 2).minimal_connected_subgraph().unwrap();
        assert_eq!(
            tree.edges(),
            &[Edge::of(&[1, 2]), Edge::of(&[1, 3]), Edge::of(&[1, 4])]
        );

        let g = Hypergraph::complete(4, 3).minimal_connected_subgraph().unwrap();
        assert_eq!(
            g.edges(),
            &[Edge::of(&[1, 2, 3]), Edge::of(&[1, 2, 4]), Edge::of(&[1, 3, 4])]
        );
    }

    #[test]
    fn minimal_subgraph_of_minimal_network_is_itself() {
        let g = fixtures::fig3();
        assert_eq!(g.minimal_connected_subgraph().unwrap(), g);
    }

    #[test]
    fn minimal_subgraph_edge_count_matches_binomial() {
        for (n, k) in [(5, 3), (6, 3), (6, 4), (7, 3)] {
            let min = Hypergraph::complete(n, k).minimal_connected_subgraph().unwrap();
            assert_eq!(min.edge_count() as u64, binomial(n - 1, k - 1), "complete({n},{k})");
            assert!(min.is_topologically_connected().unwrap());
        }
    }

    #[test]
    fn induced_graph_of_minimal_network() {
        let g = fixtures::fig3();

        let ind = g.induced(1).unwrap();
        assert_eq!((ind.graph.n(), ind.graph.k()), (4, 2));
        let parent_edges: Vec<Edge> = ind
            .graph
            .edges()
            .iter()
            .map(|e| ind.map.to_parent(e))
            .collect();
        assert_eq!(
            parent_edges,
            vec![Edge::of(&[2, 3]), Edge::of(&[2, 4]), Edge::of(&[3, 4]), Edge::of(&[2, 5])]
        );

        let ind = g.induced(2).unwrap();
        let parent_edges: Vec<Edge> = ind
            .graph
            .edges()
            .iter()
            .map(|e| ind.map.to_parent(e))
            .collect();
        assert_eq!(
            parent_edges,
            vec![
                Edge::of(&[1, 3]),
                Edge::of(&[1, 4]),
                Edge::of(&[1, 5]),
                Edge::of(&[3, 5]),
                Edge::of(&[4, 5])
            ]
        );
        // Either way the induced graph is topologically connected.
        assert!(ind.graph.is_topologically_connected().unwrap());
    }

    #[test]
    fn induced_star_is_complete() {
        let ind = Hypergraph::star(4, 3).induced(1).unwrap();
        assert_eq!(ind.graph, Hypergraph::complete(3, 2));
        assert_eq!(ind.parent_edge(&Edge::of(&[1, 2])), Edge::of(&[1, 2, 3]));
    }

    #[test]
    fn path_connectivity_cases() {
        let single = Hypergraph::new(4, 4, vec![Edge::of(&[1, 2, 3, 4])]).unwrap();
        assert!(single.is_path_connected());

        let disjoint =
            Hypergraph::new(4, 2, vec![Edge::of(&[1, 2]), Edge::of(&[3, 4])]).unwrap();
        assert!(!disjoint.is_path_connected());

        let isolated = Hypergraph::new(3, 2, vec![Edge::of(&[1, 2])]).unwrap();
        assert!(!isolated.is_path_connected());

        let lone = Hypergraph::new(1, 0, vec![]).unwrap();
        assert!(lone.is_path_connected());
    }

    #[test]
    fn cycle_freeness_cases() {
        let (base, comps) = fixtures::fig9_cluster();
        let gc = Hypergraph::new(base.n(), 0, comps).unwrap();
        assert!(gc.is_path_connected());
        assert!(gc.is_cycle_free());

        let shared_pair =
            Hypergraph::new(4, 3, vec![Edge::of(&[1, 2, 3]), Edge::of(&[1, 2, 4])]).unwrap();
        assert!(!shared_pair.is_cycle_free());

        // Three components chained through single vertices close a loop.
        let (_, comps) = fixtures::g2_nonexample();
        let gc = Hypergraph::new(6, 0, comps).unwrap();
        assert!(!gc.is_cycle_free());

        let path = Hypergraph::new(
            5,
            0,
            vec![Edge::of(&[1, 2, 3]), Edge::of(&[3, 4]), Edge::of(&[4, 5])],
        )
        .unwrap();
        assert!(path.is_cycle_free());
    }

    #[test]
    fn cluster_validation_accepts_two_component_network() {
        let (base, comps) = fixtures::fig9_cluster();
        let spec = validate_cluster(&base, &comps).unwrap();
        assert_eq!(spec.edge_component(), &[0, 1, 1, 1]);
        assert_eq!(spec.vertex_identity(), (5, 5));
        assert_eq!(spec.degree_identity(), (1, 1));
        assert_eq!(spec.cluster_degree(1), 2);
        assert_eq!(spec.cluster_degree(5), 1);
        let r = spec.restriction(1);
        assert_eq!(r.graph.n(), 4);
        assert_eq!(r.map.to_parent(&Edge::of(&[1, 2, 3])), Edge::of(&[1, 4, 5]));
    }

    #[test]
    fn cluster_validation_rejects_disconnected_component() {
        let (base, comps) = fixtures::g1_nonexample();
        assert_eq!(
            validate_cluster(&base, &comps).err(),
            Some(HypergraphError::ComponentNotConnected {
                component: Edge::of(&[1, 4, 5, 6])
            })
        );
    }

    #[test]
    fn cluster_validation_rejects_component_cycle() {
        let (base, comps) = fixtures::g2_nonexample();
        assert_eq!(
            validate_cluster(&base, &comps).err(),
            Some(HypergraphError::HasCycle)
        );
    }

    #[test]
    fn cluster_validation_rejects_uncovered_edge() {
        let base = Hypergraph::new(
            5,
            3,
            vec![Edge::of(&[1, 2, 3]), Edge::of(&[3, 4, 5]), Edge::of(&[2, 3, 4])],
        )
        .unwrap();
        let comps = vec![Edge::of(&[1, 2, 3]), Edge::of(&[3, 4, 5])];
        assert_eq!(
            validate_cluster(&base, &comps).err(),
            Some(HypergraphError::EdgeOutsideComponents {
                edge: Edge::of(&[2, 3, 4])
            })
        );
    }

    #[test]
    fn cluster_validation_rejects_undersized_component() {
        let base = Hypergraph::new(4, 3, vec![Edge::of(&[2, 3, 4])]).unwrap();
        let comps = vec![Edge::of(&[1, 2]), Edge::of(&[2, 3, 4])];
        assert_eq!(
            validate_cluster(&base, &comps).err(),
            Some(HypergraphError::ComponentNotConnected {
                component: Edge::of(&[1, 2])
            })
        );
    }

    #[test]
    fn cluster_validation_rejects_disconnected_component_graph() {
        let base = Hypergraph::new(
            6,
            3,
            vec![Edge::of(&[1, 2, 3]), Edge::of(&[4, 5, 6])],
        )
        .unwrap();
        let comps = vec![Edge::of(&[1, 2, 3]), Edge::of(&[4, 5, 6])];
        assert_eq!(
            validate_cluster(&base, &comps).err(),
            Some(HypergraphError::NotPathConnected)
        );
    }

    #[test]
    fn single_component_cluster_covers_whole_graph() {
        let base = fixtures::fig3();
        let comps = vec![Edge::of(&[1, 2, 3, 4, 5])];
        let spec = validate_cluster(&base, &comps).unwrap();
        assert_eq!(spec.edge_component(), &[0; 6]);
        assert_eq!(spec.vertex_identity(), (4, 4));
        assert_eq!(spec.degree_identity(), (0, 0));
    }
}
