//! Synthesis, simulation, and verification of zero-error broadcast
//! protocols for sharing hypergraph-distributed coins.
//!
//! The setting: n users, and one shared coin per hyperedge of a k-uniform
//! hypergraph, visible exactly to that edge's users. The users want every
//! one of them to output the same random vector, communicating as little as
//! possible over a public blackboard, with zero probability of error. For
//! the network families handled here the cheapest possible rate is
//! (n-k)/(n-1) blackboard bits per output bit, and the synthesized
//! strategies meet it exactly.
//!
//! The pipeline, module by module:
//!
//! * [`hypergraph`]: networks, their GF(2) incidence matrices, the
//!   rank-based connectivity test, and cluster validation;
//! * [`strategy`]: deterministic synthesis of broadcast strategies for
//!   trees (k = 2), topologically connected graphs (k >= 3), forehead
//!   networks, and clusters of connected components;
//! * [`simulate`]: protocol execution plus zero-error verification, both by
//!   exhaustive enumeration and by checking each user's linear decoder;
//! * [`entropy`]: exact message entropies over the enumerated coin space
//!   and the lower-bound inequalities the strategies are measured against;
//! * [`format`]: the network and strategy text formats;
//! * [`fixtures`]: the bundled example networks used throughout the tests.
//!
//! ```
//! use coinshare::fixtures;
//! use coinshare::simulate::{verify_zero_error, VerifyMode};
//! use coinshare::strategy::synthesize_topological;
//!
//! let strategy = synthesize_topological(&fixtures::fig3()).unwrap();
//! let report = verify_zero_error(&strategy, VerifyMode::Exhaustive).unwrap();
//! assert!(report.zero_error);
//! assert_eq!(report.rate, report.bound);
//! ```

pub mod entropy;
pub mod fixtures;
pub mod format;
pub mod gf2;
pub mod hypergraph;
pub mod ratio;
pub mod simulate;
pub mod strategy;

pub use hypergraph::{Edge, Hypergraph, HypergraphError};
pub use ratio::Ratio;
pub use strategy::{Broadcast, CoinSymbol, Strategy, StrategyError};
