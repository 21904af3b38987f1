//! Continuous-time quantum walks of one and two non-interacting particles on
//! tight-binding quantum-dot graphs.
//!
//! The pipeline is: describe a graph ([`GraphSpec`], from JSON or a builtin),
//! assemble its [`HamiltonianMatrix`], diagonalize it once ([`decompose`]),
//! then propagate single-particle states ([`evolve`]) or factorized pair
//! states ([`evolve_pair`]) exactly at any time. Sampled probabilities feed
//! the half-passage-time functional and parameter sweeps.
//!
//! ```
//! use std::collections::BTreeMap;
//! use qgw_core::*;
//!
//! let graph = builtin_braess4(0.01, 0.01, 0.0, 0.0);
//! let dec = decompose(&graph.hamiltonian(&BTreeMap::new())?)?;
//! let t = std::f64::consts::PI / 0.02;
//! let p = transition_probability(&dec, SiteId(0), SiteId(2), t)?;
//! assert!((p - 1.0).abs() < 1e-9);
//! # Ok::<(), qgw_core::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod expm;
pub mod graph;
pub mod hamiltonian;
pub mod metrics;
pub mod pair;
pub mod spectral;
pub mod sweep;

pub use dynamics::{evolve, probability_series, transition_probability, ModalState, WaveFunction};
pub use error::{Error, Result, ValidationKind};
pub use graph::{
    build_hamiltonian, builtin_braess10, builtin_braess4, parse_graph_spec, Braess10Params,
    Coupling, Edge, GraphSpec, Site, SiteId,
};
pub use hamiltonian::HamiltonianMatrix;
pub use metrics::{
    first_peak_time, half_passage_time, log_mean_rate, log_rate, LogRate, ProbabilitySeries,
    TimeGrid,
};
pub use pair::{
    evolve_pair, initial_pair, p_perp, p_perp_series, pair_amplitude, pair_dimension,
    tensor_oracle_p_perp, PairState, SiteSubset, Statistics,
};
pub use spectral::{decompose, SpectralDecomposition};
pub use sweep::{pair_log_rate, sweep, sweep_with_threads, SweepRow, SweepSpec};
