//! Bundled example networks used by tests and the `fixtures` CLI verb.
//!
//! Names are stable identifiers: tests, docs and the CLI all refer to them.

use crate::hypergraph::{Edge, Hypergraph};

/// Minimal topologically 3-connected network on five vertices.
pub fn fig3() -> Hypergraph {
    Hypergraph::new(
        5,
        3,
        vec![
            Edge::of(&[1, 2, 3]),
            Edge::of(&[1, 2, 4]),
            Edge::of(&[1, 3, 4]),
            Edge::of(&[1, 2, 5]),
            Edge::of(&[2, 3, 5]),
            Edge::of(&[2, 4, 5]),
        ],
    )
    .expect("fixture is valid")
}

/// Seven-vertex tree for the pairwise-coin scheme.
pub fn fig2_tree() -> Hypergraph {
    Hypergraph::new(
        7,
        2,
        vec![
            Edge::of(&[1, 3]),
            Edge::of(&[2, 3]),
            Edge::of(&[3, 4]),
            Edge::of(&[4, 5]),
            Edge::of(&[5, 6]),
            Edge::of(&[5, 7]),
        ],
    )
    .expect("fixture is valid")
}

/// Two-component cluster on six vertices: a lone triple glued through
/// vertex 1 to a four-vertex component.
pub fn fig9_cluster() -> (Hypergraph, Vec<Edge>) {
    let base = Hypergraph::new(
        6,
        3,
        vec![
            Edge::of(&[1, 2, 3]),
            Edge::of(&[1, 4, 5]),
            Edge::of(&[1, 4, 6]),
            Edge::of(&[4, 5, 6]),
        ],
    )
    .expect("fixture is valid");
    let components = vec![Edge::of(&[1, 2, 3]), Edge::of(&[1, 4, 5, 6])];
    (base, components)
}

/// Non-example: a chain of triples that is not a valid cluster because the
/// restriction to `{1,4,5,6}` is not topologically connected.
pub fn g1_nonexample() -> (Hypergraph, Vec<Edge>) {
    let base = Hypergraph::new(
        6,
        3,
        vec![
            Edge::of(&[1, 2, 3]),
            Edge::of(&[1, 3, 4]),
            Edge::of(&[1, 4, 5]),
            Edge::of(&[1, 5, 6]),
        ],
    )
    .expect("fixture is valid");
    let components = vec![Edge::of(&[1, 2, 3]), Edge::of(&[1, 4, 5, 6])];
    (base, components)
}

/// Non-example: three triples whose single-edge components close a cycle.
pub fn g2_nonexample() -> (Hypergraph, Vec<Edge>) {
    let base = Hypergraph::new(
        6,
        3,
        vec![
            Edge::of(&[1, 2, 4]),
            Edge::of(&[1, 3, 5]),
            Edge::of(&[2, 3, 6]),
        ],
    )
    .expect("fixture is valid");
    let components = vec![
        Edge::of(&[1, 2, 4]),
        Edge::of(&[1, 3, 5]),
        Edge::of(&[2, 3, 6]),
    ];
    (base, components)
}

/// Two users sharing single coins with a common hub, the smallest
/// interesting pairwise network.
pub fn star_n3_k2() -> Hypergraph {
    Hypergraph::new(3, 2, vec![Edge::of(&[1, 3]), Edge::of(&[2, 3])])
        .expect("fixture is valid")
}

/// Complete (n-1)-uniform network on `n` vertices: every coin sits on one
/// user's forehead, visible to everyone else.
pub fn forehead_graph(n: usize) -> Hypergraph {
    assert!(n >= 2, "forehead network needs at least two users");
    Hypergraph::complete(n, n - 1)
}

/// Looks up a fixture by CLI name. Parameterized names are `forehead_<n>`
/// and `complete_<n>_<k>`. Returns the graph and, for cluster fixtures, its
/// component list.
pub fn by_name(name: &str) -> Option<(Hypergraph, Option<Vec<Edge>>)> {
    match name {
        "fig3" => Some((fig3(), None)),
        "fig2_tree" => Some((fig2_tree(), None)),
        "fig9_cluster" => {
            let (g, c) = fig9_cluster();
            Some((g, Some(c)))
        }
        "g1_nonexample" => {
            let (g, c) = g1_nonexample();
            Some((g, Some(c)))
        }
        "g2_nonexample" => {
            let (g, c) = g2_nonexample();
            Some((g, Some(c)))
        }
        "star_n3_k2" => Some((star_n3_k2(), None)),
        _ => {
            if let Some(n) = name.strip_prefix("forehead_") {
                let n: usize = n.parse().ok()?;
                if n < 2 {
                    return None;
                }
                return Some((forehead_graph(n), None));
            }
            if let Some(rest) = name.strip_prefix("complete_") {
                let (n, k) = rest.split_once('_')?;
                let (n, k): (usize, usize) = (n.parse().ok()?, k.parse().ok()?);
                if n == 0 || k == 0 || k > n {
                    return None;
                }
                return Some((Hypergraph::complete(n, k), None));
            }
            None
        }
    }
}

/// Name schemas accepted by [`by_name`], for error messages.
pub const NAME_SCHEMAS: &[&str] = &[
    "fig3",
    "fig2_tree",
    "fig9_cluster",
    "g1_nonexample",
    "g2_nonexample",
    "star_n3_k2",
    "forehead_<n>",
    "complete_<n>_<k>",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        assert_eq!((fig3().n(), fig3().k(), fig3().edge_count()), (5, 3, 6));
        assert_eq!(fig2_tree().edge_count(), 6);
        assert_eq!(fig9_cluster().0.edge_count(), 4);
        assert_eq!(g1_nonexample().0.edge_count(), 4);
        assert_eq!(g2_nonexample().0.edge_count(), 3);
        assert_eq!(star_n3_k2().edge_count(), 2);
        assert_eq!(forehead_graph(4), Hypergraph::complete(4, 3));
    }

    #[test]
    fn lookup_parses_parameterized_names() {
        assert!(by_name("fig3").is_some());
        assert!(by_name("fig9_cluster").unwrap().1.is_some());
        let (g, _) = by_name("forehead_5").unwrap();
        assert_eq!((g.n(), g.k()), (5, 4));
        let (g, _) = by_name("complete_6_3").unwrap();
        assert_eq!((g.n(), g.k(), g.edge_count()), (6, 3, 20));
        assert!(by_name("complete_3_7").is_none());
        assert!(by_name("forehead_1").is_none());
        assert!(by_name("nonsense").is_none());
    }
}
