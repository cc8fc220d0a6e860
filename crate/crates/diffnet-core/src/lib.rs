//! Analysis toolkit for diffusively coupled leader-follower networks.
//!
//! The crate measures two competing properties of an undirected network
//! of consensus-type agents:
//!
//! * **Robustness** via the Kirchhoff index `K_f` (sum of reciprocal
//!   Laplacian eigenvalues scaled by `N`), computed through two
//!   independent routes ([`spectral`]), together with closed-form lower
//!   and upper bounds for the dense leader-minimal family.
//! * **Strong structural controllability** via distance-to-leader
//!   machinery: pseudo-monotonically increasing (PMI) sequences as a
//!   certified lower bound, leader-invariant external equitable
//!   partitions (LIEEP) as an upper bound, and a randomized
//!   controllability-matrix rank probe ([`ssc`]).
//!
//! [`construct`] generates the extremal families (clique chains, the
//! `M`/`M̄` graphs and their trimmed versions) and runs the exhaustive
//! optimal clique-chain search. [`leaders`] computes minimum-leader
//! counts and the associated bounds, and [`sim`] validates the
//! noise-dispersion identity `H = K_f / (2 N^2)` by Euler-Maruyama
//! simulation.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the
//! command-line front end live in the companion `diffnet-cli` crate.
//!
//! ## Quick start
//!
//! ```
//! use diffnet_core::construct::{clique_chain, construct_mbar, CliqueChainSpec};
//! use diffnet_core::graph::EdgeWeights;
//! use diffnet_core::spectral::kirchhoff_eigen;
//! use diffnet_core::ssc::{dl_matrix, longest_pmi, PmiMode};
//!
//! // The most robust 7-node graph of diameter 3 is a clique chain...
//! let spec = CliqueChainSpec::new(vec![1, 2, 3, 1]).unwrap();
//! let chain = clique_chain(&spec);
//! let unit = EdgeWeights::uniform(&chain, 1.0).unwrap();
//! let kf = kirchhoff_eigen(&chain, &unit).unwrap().kf;
//! assert!((kf - 10.5).abs() < 1e-9);
//!
//! // ...while the dense leader-minimal family at the same size needs
//! // only 2 leaders: a full PMI sequence certifies strong structural
//! // controllability.
//! let dense = construct_mbar(2, 3).unwrap();
//! let dl = dl_matrix(&dense.graph, &dense.leaders).unwrap();
//! let pmi = longest_pmi(&dl, PmiMode::Exact).unwrap();
//! assert_eq!(pmi.len(), dense.graph.num_nodes());
//! ```

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
// Parameter checks use `!(x > 0.0)` so NaN is rejected along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod construct;
pub mod error;
pub mod graph;
pub mod leaders;
pub mod matrix;
pub mod rng;
pub mod sim;
pub mod spectral;
pub mod ssc;

pub use construct::{CliqueChainSpec, MConstruction, MGraphLabels, NodeRole};
pub use error::{Error, Result};
pub use graph::{EdgeWeights, Graph};
pub use leaders::{Certificate, LeaderSearchResult};
pub use matrix::SquareMatrix;
pub use rng::Rng;
pub use sim::{DispersionEstimate, SimConfig};
pub use spectral::{BoundsReport, KirchhoffMethod, KirchhoffResult};
pub use ssc::{DLMatrix, LeaderSet, PMISequence, Partition, PmiMode};
