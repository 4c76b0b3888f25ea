//! Billiards in hyperbolic polygons on the Poincaré disk and the symbolic
//! dynamics of their codings.
//!
//! The crate is layered bottom-up:
//!
//! * [`hypgeo`]: disk points, boundary angles, geodesics, isometries.
//! * [`polygon`]: polygon specifications, validation and unfolding.
//! * [`billiard`]: the bounce map, trajectories, coding and periodic decoding.
//! * [`symdyn`]: words, forbidden sets, language presentations and enumeration.
//! * [`sftlab`]: vertex-shift graphs, Perron eigenvalues, entropy and
//!   dynamical property checks.
//! * [`shiftspace`]: Hausdorff distances between subshifts and convergence
//!   experiments.

pub mod billiard;
pub mod config;
pub mod hypgeo;
pub mod polygon;
pub mod sftlab;
pub mod shiftspace;
pub mod symdyn;

pub use config::Tolerances;
