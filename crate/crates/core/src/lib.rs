//! Monitoring arc-geodetic (MAG) sets of oriented graphs.
//!
//! A vertex set `M` of an oriented graph is a MAG-set when every arc lies on
//! all shortest directed paths from `x` to `y` (or from `y` to `x`) for some
//! pair of distinct `x, y ∈ M`. This crate provides the monitoring relation,
//! forced-vertex rules, an exact solver, orientation spectra of undirected
//! graphs, generators for the standard graph families, and the two hardness
//! gadget constructions with brute-force verifiers.

pub mod cover;
pub mod digraph;
pub mod error;
pub mod families;
pub mod io;
pub mod monitoring;
pub mod reductions;
pub mod solver;
pub mod spectrum;

pub use cover::{SearchStats, SolverConfig, Strategy};
pub use digraph::{ArcIndex, Distance, EdgeIndex, OrientedGraph, UndirectedGraph, Vertex};
pub use error::{Error, Result};
pub use monitoring::{
    forced_vertices, is_extremal, is_mag_set, min_meg_set, pair_monitors, ForcedReport,
    MonitorMatrix,
};
pub use solver::{greedy_mag_set, mag, mag_lower_bound, min_mag_set, MagResult};
pub use spectrum::{mag_plus_at_least_n, orient, spectrum, OrientationMask, SpectrumResult};
