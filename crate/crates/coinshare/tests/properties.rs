//! Randomized properties over the GF(2) core and the synthesizers.

use proptest::prelude::*;

use coinshare::gf2::{Basis, BitMatrix, BitVec};
use coinshare::hypergraph::{Edge, Hypergraph, HypergraphError};
use coinshare::ratio::Ratio;
use coinshare::simulate::{verify_zero_error, VerifyMode};
use coinshare::strategy::{synthesize_topological, synthesize_tree, StrategyError};

fn arb_matrix(max_side: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_side, 1..=max_side)
        .prop_flat_map(|(rows, cols)| {
            (
                Just(cols),
                proptest::collection::vec(any::<u64>(), rows),
            )
        })
        .prop_map(|(cols, words)| {
            let rows: Vec<BitVec> = words
                .into_iter()
                .map(|w| {
                    let mut v = BitVec::zeros(cols);
                    for c in 0..cols {
                        if w >> c & 1 == 1 {
                            v.set(c, true);
                        }
                    }
                    v
                })
                .collect();
            BitMatrix::from_rows(cols, &rows)
        })
}

/// Random subset of the complete 3-uniform edge set on n vertices.
fn arb_edge_subset(n: usize) -> impl Strategy<Value = Vec<Edge>> {
    let all = Hypergraph::complete(n, 3).edges().to_vec();
    let count = all.len();
    proptest::collection::vec(any::<bool>(), count).prop_map(move |mask| {
        all.iter()
            .zip(&mask)
            .filter(|(_, &keep)| keep)
            .map(|(e, _)| e.clone())
            .collect()
    })
}

fn arb_pair_subset(n: usize) -> impl Strategy<Value = Vec<Edge>> {
    let all = Hypergraph::complete(n, 2).edges().to_vec();
    let count = all.len();
    proptest::collection::vec(any::<bool>(), count).prop_map(move |mask| {
        all.iter()
            .zip(&mask)
            .filter(|(_, &keep)| keep)
            .map(|(e, _)| e.clone())
            .collect()
    })
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in arb_matrix(12)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_a_solution(m in arb_matrix(10), xw in any::<u64>()) {
        let mut x = BitVec::zeros(m.cols());
        for c in 0..m.cols() {
            if xw >> c & 1 == 1 {
                x.set(c, true);
            }
        }
        let y = m.mul_vec(&x);
        let solved = m.solve(&y).expect("constructed system is consistent");
        prop_assert_eq!(m.mul_vec(&solved), y);
    }

    #[test]
    fn nullspace_has_codimension_rank(m in arb_matrix(10)) {
        let basis_vecs = m.nullspace_basis();
        prop_assert_eq!(basis_vecs.len(), m.cols() - m.rank());
        let mut basis = Basis::new(m.cols());
        for v in &basis_vecs {
            prop_assert!(m.mul_vec(v).is_zero(), "kernel membership");
            prop_assert!(basis.insert(v), "independence");
        }
    }

    #[test]
    fn row_space_witnesses_reconstruct_the_row(
        m in arb_matrix(10),
        pick in any::<u64>(),
    ) {
        // XOR a random subset of rows; the witness must rebuild it.
        let mut v = BitVec::zeros(m.cols());
        for r in 0..m.rows() {
            if pick >> r & 1 == 1 {
                v.xor_assign(&m.row(r));
            }
        }
        let witness = m.in_row_space(&v).expect("combination lies in the span");
        let mut rebuilt = BitVec::zeros(m.cols());
        for r in witness {
            rebuilt.xor_assign(&m.row(r));
        }
        prop_assert_eq!(rebuilt, v);
    }

    #[test]
    fn basis_rank_matches_matrix_rank(m in arb_matrix(12)) {
        let mut basis = Basis::new(m.cols());
        for r in 0..m.rows() {
            basis.insert(&m.row(r));
        }
        prop_assert_eq!(basis.rank(), m.rank());
    }

    /// Synthesis on a random 3-uniform network either fails with the
    /// connectivity error (matching the rank test) or yields a strategy
    /// with the exact formula counts that verifies zero-error.
    #[test]
    fn topological_synthesis_matches_connectivity(n in 4..=5usize, edges in arb_edge_subset(5)) {
        let edges: Vec<Edge> = edges.into_iter().filter(|e| e.max_vertex() <= n).collect();
        let g = Hypergraph::new(n, 3, edges).unwrap();
        let connected = g.is_topologically_connected().unwrap();
        match synthesize_topological(&g) {
            Ok(s) => {
                prop_assert!(connected);
                prop_assert_eq!(s.coins.len() as u64, coinshare::hypergraph::binomial(n - 1, 2));
                prop_assert_eq!(s.broadcasts.len() as u64, coinshare::hypergraph::binomial(n - 2, 2));
                prop_assert_eq!(s.rate(), s.bound());
                let r = verify_zero_error(&s, VerifyMode::Exhaustive).unwrap();
                prop_assert!(r.zero_error);
                prop_assert!(r.algebraic_certificate);
            }
            Err(StrategyError::Graph(HypergraphError::NotConnected)) => {
                prop_assert!(!connected);
            }
            Err(other) => return Err(TestCaseError::fail(format!("unexpected error {other}"))),
        }
    }

    /// Same dichotomy for the spanning-tree scheme on random graphs.
    #[test]
    fn tree_synthesis_matches_path_connectivity(n in 2..=7usize, edges in arb_pair_subset(7)) {
        let edges: Vec<Edge> = edges.into_iter().filter(|e| e.max_vertex() <= n).collect();
        let g = Hypergraph::new(n, 2, edges).unwrap();
        match synthesize_tree(&g) {
            Ok(s) => {
                prop_assert!(g.is_path_connected());
                prop_assert_eq!(s.coins.len(), n - 1);
                prop_assert_eq!(s.broadcasts.len(), n - 2);
                if n >= 3 {
                    prop_assert_eq!(s.rate(), Ratio::new((n - 2) as u64, (n - 1) as u64));
                }
                let r = verify_zero_error(&s, VerifyMode::Exhaustive).unwrap();
                prop_assert!(r.zero_error);
            }
            Err(StrategyError::Graph(HypergraphError::NotConnected)) => {
                prop_assert!(!g.is_path_connected());
            }
            Err(other) => return Err(TestCaseError::fail(format!("unexpected error {other}"))),
        }
    }
}
