//! Subgraph alignment on Erdős–Rényi graphs.
//!
//! A base graph `G ~ ER(n, p)` hides a uniformly chosen `m`-vertex induced
//! subgraph, which is handed over with anonymised labels as `H_pi`. This
//! crate samples such pairs, recovers `(S, pi)` with an exhaustive pruned
//! search (the brute-force / MAP estimator), evaluates the closed-form
//! recovery thresholds and runs seeded Monte Carlo sweeps around them.
//!
//! * [`graph`]: bit-row graphs, isomorphism, automorphism counting, edge lists
//! * [`model`]: the subgraph pair model and its text bundle
//! * [`solver`]: alignment search, copy counting, posterior oracle, verdicts
//! * [`analysis`]: entropy, margins, regions and bounds
//! * [`experiments`]: per-point trials, sweeps, CSV, statistical validations
//! * [`cli`]: the `subalign` command line

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod model;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Graph, VertexBijection};
pub use model::{ModelParams, SubgraphPair};
