//! Numerical toolkit for reading classical optical memories.
//!
//! A memory cell is a binary ensemble of pure-loss bosonic channels
//! `{kappa0, p; kappa1, 1 - p}`. The crate computes how many bits per cell a
//! reader can extract with a given probe (transmitter) at fixed mean signal
//! energy, both through closed-form bounds and through two independent
//! numerical engines:
//!
//! * [`gaussian`]: covariance-matrix engine, exact for Gaussian probes.
//! * [`fock`]: truncated Fock-space engine, used for every probe.
//!
//! The [`reading`] module builds cells, transmitters and output ensembles on
//! top of them and evaluates Holevo and Helstrom quantities.

pub mod entropy;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod reading;

pub use entropy::{Bits, Probability, Spectrum};
pub use error::{Error, Result};
