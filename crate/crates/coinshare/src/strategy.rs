//! Broadcast strategy synthesis.
//!
//! A strategy fixes a list of shared coins (one bit per hyperedge and
//! repetition index) and an ordered list of parity broadcasts, each written
//! by a user who holds every coin in the parity. Synthesizers exist for four
//! network shapes:
//!
//! * `synthesize_tree`: 2-uniform path-connected graphs, via a spanning tree;
//! * `synthesize_topological`: k-uniform topologically connected graphs,
//!   k >= 3, via the induced-graph construction;
//! * `synthesize_forehead`: the complete (n-1)-uniform graph, one broadcast;
//! * `synthesize_cluster`: validated clusters of connected components, with
//!   per-component repetition counts balancing the cross-component messages.
//!
//! All choices (spanning tree, minimal subgraphs, symbol order) are greedy
//! over the canonical orders, so synthesis is deterministic: the same input
//! always yields byte-identical serialized output.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::hypergraph::{
    binomial, validate_cluster, ClusterSpec, Edge, Hypergraph, HypergraphError,
};
use crate::ratio::{lcm, Ratio};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error("spanning-tree scheme needs a 2-uniform graph, got k = {0}")]
    NotPairwise(usize),
    #[error("scheme needs at least two vertices")]
    TooSmall,
    #[error("forehead scheme needs the complete {expected}-uniform graph on {n} vertices")]
    NotForehead { n: usize, expected: usize },
    #[error("invalid strategy: {0}")]
    Invalid(String),
}

/// One shared coin: the hyperedge whose users see it, plus a repetition
/// index for strategies that consume several coins per edge.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoinSymbol {
    pub edge: Edge,
    pub repetition: usize,
}

impl CoinSymbol {
    pub fn new(edge: Edge, repetition: usize) -> CoinSymbol {
        CoinSymbol { edge, repetition }
    }

    pub fn once(edge: Edge) -> CoinSymbol {
        CoinSymbol::new(edge, 0)
    }
}

impl fmt::Display for CoinSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.edge, self.repetition)
    }
}

impl fmt::Debug for CoinSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One blackboard bit: the XOR of the named coins, written by `speaker`.
/// Every coin in the parity set must be visible to the speaker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Broadcast {
    pub speaker: usize,
    pub parity: BTreeSet<CoinSymbol>,
}

impl Broadcast {
    pub fn new(speaker: usize, symbols: impl IntoIterator<Item = CoinSymbol>) -> Broadcast {
        Broadcast {
            speaker,
            parity: symbols.into_iter().collect(),
        }
    }
}

/// Cluster bookkeeping attached to strategies built by
/// [`synthesize_cluster`]: how often each component's scheme repeats and the
/// common cross-component width those repetitions equalize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPlan {
    pub spec: ClusterSpec,
    pub repetitions: Vec<usize>,
    pub common_bits: usize,
}

/// A complete broadcast strategy over a coin network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    /// The network carrying the coins. For reduced schemes this is the
    /// reduced graph, not the caller's input.
    pub graph: Hypergraph,
    pub cluster: Option<ClusterPlan>,
    pub coins: Vec<CoinSymbol>,
    pub broadcasts: Vec<Broadcast>,
    /// Minimal generating subgraph chosen per (user, component); edges are
    /// the (k-1)-sets of the user's induced graph, in original labels.
    pub chosen_subgraphs: BTreeMap<(usize, usize), Vec<Edge>>,
}

impl Strategy {
    /// Blackboard bits per coin bit, reduced.
    ///
    /// # Panics
    ///
    /// Panics on a coinless strategy.
    pub fn rate(&self) -> Ratio {
        Ratio::new(self.broadcasts.len() as u64, self.coins.len() as u64)
    }

    /// Rate floor `(n-k)/(n-1)` for this strategy's network.
    ///
    /// # Panics
    ///
    /// Panics when the graph has fewer than two vertices.
    pub fn bound(&self) -> Ratio {
        let (n, k) = (self.graph.n(), self.graph.k());
        assert!(n >= 2, "rate bound needs at least two vertices");
        assert!(k <= n, "uniformity cannot exceed the vertex count");
        Ratio::new((n - k) as u64, (n - 1) as u64)
    }

    pub fn coin_index(&self, symbol: &CoinSymbol) -> Option<usize> {
        self.coins.iter().position(|c| c == symbol)
    }

    /// Structural sanity: coins are distinct and fit the graph, parities are
    /// non-empty sets of known coins, and every speaker holds every coin
    /// they broadcast.
    pub fn validate(&self) -> Result<(), StrategyError> {
        if self.coins.is_empty() {
            return Err(StrategyError::Invalid("strategy has no coins".into()));
        }
        let mut seen = BTreeSet::new();
        for c in &self.coins {
            if c.edge.max_vertex() > self.graph.n() {
                return Err(StrategyError::Invalid(format!(
                    "coin {c} mentions a vertex beyond n = {}",
                    self.graph.n()
                )));
            }
            if self.graph.k() > 0 && c.edge.len() != self.graph.k() {
                return Err(StrategyError::Invalid(format!(
                    "coin {c} is not {}-uniform",
                    self.graph.k()
                )));
            }
            if !seen.insert(c.clone()) {
                return Err(StrategyError::Invalid(format!("duplicate coin {c}")));
            }
        }
        for (i, b) in self.broadcasts.iter().enumerate() {
            if b.parity.is_empty() {
                return Err(StrategyError::Invalid(format!("broadcast {i} is empty")));
            }
            if b.speaker == 0 || b.speaker > self.graph.n() {
                return Err(StrategyError::Invalid(format!(
                    "broadcast {i} has speaker {} outside 1..={}",
                    b.speaker,
                    self.graph.n()
                )));
            }
            for sym in &b.parity {
                if !seen.contains(sym) {
                    return Err(StrategyError::Invalid(format!(
                        "broadcast {i} names unknown coin {sym}"
                    )));
                }
                if !sym.edge.contains(b.speaker) {
                    return Err(StrategyError::Invalid(format!(
                        "broadcast {i}: speaker {} cannot see coin {sym}",
                        b.speaker
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Spanning-tree scheme for 2-uniform path-connected graphs.
///
/// Coins live on a greedy spanning tree (non-tree edges carry no coins).
/// Each user with tree degree d >= 2 broadcasts the XOR of their first tree
/// edge with each other incident tree edge, n-2 bits in total.
pub fn synthesize_tree(g: &Hypergraph) -> Result<Strategy, StrategyError> {
    if g.k() != 2 {
        return Err(StrategyError::NotPairwise(g.k()));
    }
    if g.n() < 2 {
        return Err(StrategyError::TooSmall);
    }
    if !g.is_path_connected() {
        return Err(HypergraphError::NotConnected.into());
    }
    let mut uf = UnionFindByVertex::new(g.n());
    let mut tree = Vec::with_capacity(g.n() - 1);
    for e in g.edges() {
        let vs = e.vertices();
        if uf.union(vs[0], vs[1]) {
            tree.push(e.clone());
        }
    }
    debug_assert_eq!(tree.len(), g.n() - 1);
    let tree_graph = Hypergraph::new(g.n(), 2, tree.clone()).expect("spanning tree is valid");
    let coins: Vec<CoinSymbol> = tree.iter().cloned().map(CoinSymbol::once).collect();
    let mut broadcasts = Vec::new();
    for v in 1..=g.n() {
        let incident: Vec<&Edge> = tree.iter().filter(|e| e.contains(v)).collect();
        for other in incident.iter().skip(1) {
            broadcasts.push(Broadcast::new(
                v,
                [
                    CoinSymbol::once(incident[0].clone()),
                    CoinSymbol::once((*other).clone()),
                ],
            ));
        }
    }
    Ok(Strategy {
        graph: tree_graph,
        cluster: None,
        coins,
        broadcasts,
        chosen_subgraphs: BTreeMap::new(),
    })
}

/// Induced-graph scheme for topologically connected k-uniform graphs.
/// The input is first reduced to a minimal connected subgraph; each user
/// then broadcasts one bit per induced edge outside their chosen minimal
/// generating subgraph, `C(n-2, k-1)` bits in total.
///
/// For k = 2 the construction degenerates to the spanning-tree scheme
/// (topological and path connectivity coincide, and the reduced graph is a
/// spanning tree), so such inputs are routed to [`synthesize_tree`].
pub fn synthesize_topological(g: &Hypergraph) -> Result<Strategy, StrategyError> {
    if g.k() == 2 {
        return synthesize_tree(g);
    }
    if g.k() < 2 {
        return Err(HypergraphError::UniformityTooLow { k: g.k(), needs: 2 }.into());
    }
    let gmin = g.minimal_connected_subgraph()?;
    let schemes = schemes_per_user(&gmin);
    let coins: Vec<CoinSymbol> = gmin.edges().iter().cloned().map(CoinSymbol::once).collect();
    let mut broadcasts = Vec::new();
    let mut chosen = BTreeMap::new();
    for (user, scheme) in schemes.into_iter().enumerate() {
        let user = user + 1;
        for parity in &scheme.parities {
            broadcasts.push(Broadcast::new(
                user,
                parity.iter().cloned().map(CoinSymbol::once),
            ));
        }
        chosen.insert((user, 0), scheme.generating);
    }
    Ok(Strategy {
        graph: gmin,
        cluster: None,
        coins,
        broadcasts,
        chosen_subgraphs: chosen,
    })
}

/// One-broadcast scheme for the complete (n-1)-uniform graph: user 1 writes
/// the XOR of the coins on everyone else's forehead. For n = 2 there is one
/// coin and nothing useful to write, so the broadcast list is empty.
pub fn synthesize_forehead(n: usize) -> Result<Strategy, StrategyError> {
    if n < 2 {
        return Err(StrategyError::TooSmall);
    }
    let graph = Hypergraph::complete(n, n - 1);
    let coins: Vec<CoinSymbol> = (2..=n)
        .map(|i| {
            let edge = Edge::new((1..=n).filter(|&v| v != i).collect())
                .expect("forehead edge is valid");
            CoinSymbol::once(edge)
        })
        .collect();
    let broadcasts = if n >= 3 {
        vec![Broadcast::new(1, coins.iter().cloned())]
    } else {
        Vec::new()
    };
    Ok(Strategy {
        graph,
        cluster: None,
        coins,
        broadcasts,
        chosen_subgraphs: BTreeMap::new(),
    })
}

/// Cluster scheme: repeat each component's topological scheme often enough
/// that all components produce the same number of coin bits per generating
/// subgraph (`common_bits`), then stitch components together with pairwise
/// XOR vectors at every shared vertex.
pub fn synthesize_cluster(spec: &ClusterSpec) -> Result<Strategy, StrategyError> {
    let base = spec.base();
    let k = base.k();
    if k < 3 {
        return Err(HypergraphError::UniformityTooLow { k, needs: 3 }.into());
    }
    let m = spec.components().len();

    struct Component {
        gmin: Hypergraph,            // minimal restriction, local labels
        map: crate::hypergraph::VertexMap,
        schemes: Vec<UserScheme>,    // per local user
        reps: usize,
    }

    let mut widths = Vec::with_capacity(m);
    let mut parts: Vec<Component> = Vec::with_capacity(m);
    for i in 0..m {
        let restriction = spec.restriction(i);
        let gmin = restriction
            .graph
            .minimal_connected_subgraph()
            .expect("validated component restrictions are connected");
        let width = binomial(spec.components()[i].len() - 2, k - 2) as usize;
        debug_assert!(width >= 1);
        widths.push(width);
        let schemes = schemes_per_user(&gmin);
        parts.push(Component {
            gmin,
            map: restriction.map,
            schemes,
            reps: 0,
        });
    }
    let common_bits = widths.iter().fold(1u64, |acc, &w| lcm(acc, w as u64)) as usize;
    for (part, &width) in parts.iter_mut().zip(&widths) {
        part.reps = common_bits / width;
    }

    let mut coins = Vec::new();
    for part in &parts {
        for e in part.gmin.edges() {
            let parent = part.map.to_parent(e);
            for rep in 0..part.reps {
                coins.push(CoinSymbol::new(parent.clone(), rep));
            }
        }
    }

    let mut broadcasts = Vec::new();
    let mut chosen: BTreeMap<(usize, usize), Vec<Edge>> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        for (local_user, scheme) in part.schemes.iter().enumerate() {
            let speaker = part.map.parent_of(local_user + 1);
            chosen.insert(
                (speaker, i),
                scheme.generating.iter().map(|e| part.map.to_parent(e)).collect(),
            );
        }
        for rep in 0..part.reps {
            for (local_user, scheme) in part.schemes.iter().enumerate() {
                let speaker = part.map.parent_of(local_user + 1);
                for parity in &scheme.parities {
                    broadcasts.push(Broadcast::new(
                        speaker,
                        parity
                            .iter()
                            .map(|e| CoinSymbol::new(part.map.to_parent(e), rep)),
                    ));
                }
            }
        }
    }

    // Cross-component messages: at every vertex shared by l >= 2 components,
    // XOR the first component's coin vector with each of the others.
    for v in 1..=base.n() {
        let shared: Vec<usize> = (0..m)
            .filter(|&i| spec.components()[i].contains(v))
            .collect();
        if shared.len() < 2 {
            continue;
        }
        let vectors: Vec<Vec<CoinSymbol>> = shared
            .iter()
            .map(|&i| {
                let generating = &chosen[&(v, i)];
                let mut vec = Vec::with_capacity(common_bits);
                for e in generating {
                    for rep in 0..parts[i].reps {
                        vec.push(CoinSymbol::new(e.with(v), rep));
                    }
                }
                assert_eq!(
                    vec.len(),
                    common_bits,
                    "repetitions equalize every component's vector width"
                );
                vec
            })
            .collect();
        for j in 1..vectors.len() {
            for b in 0..common_bits {
                broadcasts.push(Broadcast::new(
                    v,
                    [vectors[0][b].clone(), vectors[j][b].clone()],
                ));
            }
        }
    }

    let mut union_edges = Vec::new();
    for part in &parts {
        union_edges.extend(part.gmin.edges().iter().map(|e| part.map.to_parent(e)));
    }
    let graph = Hypergraph::new(base.n(), k, union_edges)
        .expect("component edges are distinct across a valid cluster");
    let repetitions = parts.iter().map(|p| p.reps).collect();
    Ok(Strategy {
        graph,
        cluster: Some(ClusterPlan {
            spec: spec.clone(),
            repetitions,
            common_bits,
        }),
        coins,
        broadcasts,
        chosen_subgraphs: chosen,
    })
}

/// The two hand-built schemes for networks that are not clusters of
/// connected components yet still beat the cluster rate bound. Both share
/// three coins with two broadcast bits, rate 2/3.
pub fn handcrafted_nonexample_schemes() -> (Strategy, Strategy) {
    let g1 = crate::fixtures::g1_nonexample().0;
    let c123 = CoinSymbol::once(Edge::of(&[1, 2, 3]));
    let c134 = CoinSymbol::once(Edge::of(&[1, 3, 4]));
    let c156 = CoinSymbol::once(Edge::of(&[1, 5, 6]));
    let s1 = Strategy {
        graph: g1,
        cluster: None,
        coins: vec![c123.clone(), c134.clone(), c156.clone()],
        broadcasts: vec![
            Broadcast::new(1, [c123, c134.clone()]),
            Broadcast::new(1, [c134, c156]),
        ],
        chosen_subgraphs: BTreeMap::new(),
    };

    let g2 = crate::fixtures::g2_nonexample().0;
    let c124 = CoinSymbol::once(Edge::of(&[1, 2, 4]));
    let c135 = CoinSymbol::once(Edge::of(&[1, 3, 5]));
    let c236 = CoinSymbol::once(Edge::of(&[2, 3, 6]));
    let s2 = Strategy {
        graph: g2,
        cluster: None,
        coins: vec![c124.clone(), c135.clone(), c236.clone()],
        broadcasts: vec![
            Broadcast::new(1, [c124.clone(), c135]),
            Broadcast::new(2, [c124, c236]),
        ],
        chosen_subgraphs: BTreeMap::new(),
    };
    (s1, s2)
}

/// Builds a validated cluster and synthesizes its strategy in one step.
pub fn synthesize_cluster_from_parts(
    base: &Hypergraph,
    components: &[Edge],
) -> Result<Strategy, StrategyError> {
    let spec = validate_cluster(base, components)?;
    synthesize_cluster(&spec)
}

/// Per-user recipe inside one minimal connected graph.
struct UserScheme {
    /// Chosen minimal generating subgraph of the user's induced graph,
    /// (k-1)-edges in the graph's own labels, colex order.
    generating: Vec<Edge>,
    /// One entry per remaining induced edge: the k-edges whose coins XOR to
    /// zero knowledge for everyone else, i.e. one broadcast parity.
    parities: Vec<Vec<Edge>>,
}

/// For each user of a minimal topologically connected graph (k >= 3),
/// choose the minimal generating subgraph of their induced graph greedily
/// in colex order and derive the parity of every remaining induced edge.
fn schemes_per_user(gmin: &Hypergraph) -> Vec<UserScheme> {
    let mut out = Vec::with_capacity(gmin.n());
    for center in 1..=gmin.n() {
        let induced = gmin
            .induced(center)
            .expect("k >= 3 graphs always admit induced graphs");
        let mut local_edges = induced.graph.edges().to_vec();
        local_edges.sort();
        let sorted = Hypergraph::new(induced.graph.n(), induced.graph.k(), local_edges)
            .expect("sorting preserves validity");
        let generating_local = sorted
            .minimal_connected_subgraph()
            .expect("induced graphs of connected graphs are connected");
        let inc = sorted
            .incidence_matrix()
            .expect("induced graphs keep k >= 2");
        let star_rows: Vec<BitVec> = generating_local
            .edges()
            .iter()
            .map(|e| inc.row_for_edge(e))
            .collect();
        let star = BitMatrix::from_rows(inc.tuples().len(), &star_rows);
        let mut parities = Vec::new();
        for e in sorted.edges() {
            if generating_local.contains_edge(e) {
                continue;
            }
            let witness = star
                .in_row_space(&inc.row_for_edge(e))
                .expect("generating subgraph spans every induced edge");
            let mut parity = vec![induced.parent_edge(e)];
            parity.extend(
                witness
                    .into_iter()
                    .map(|r| induced.parent_edge(&generating_local.edges()[r])),
            );
            parities.push(parity);
        }
        out.push(UserScheme {
            generating: generating_local
                .edges()
                .iter()
                .map(|e| induced.map.to_parent(e))
                .collect(),
            parities,
        });
    }
    out
}

/// Union-find on 1-based vertices.
struct UnionFindByVertex {
    parent: Vec<usize>,
}

impl UnionFindByVertex {
    fn new(n: usize) -> Self {
        UnionFindByVertex {
            parent: (0..=n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
