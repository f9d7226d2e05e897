//! Truncated Fock-space engine.
//!
//! A multimode basis state `|n_0, n_1, ...>` lives at index
//! `Σ n_i dim^(modes-1-i)`, so mode 0 is the most significant digit. Mode 0 is
//! the signal and mode 1 the reference whenever a probe has both.

mod channel;
mod lowrank;
mod metrics;
mod states;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::C64;

pub use channel::{loss_channel, loss_coefficients};
pub use lowrank::{LowRankState, SparseVector};
pub use metrics::{fidelity, fidelity_pure, partial_trace, tensor, trace_distance_norm};
pub use states::{coherent_ket, fock_ket, noon_ket, squeezed_coherent_ket, tmsv_ket};

/// Largest tail mass a constructor may drop at the truncation boundary.
pub const TAIL_LIMIT: f64 = 1e-10;

/// Number of basis states per mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockCutoff(usize);

impl FockCutoff {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::domain("cutoff", dim as f64, "[2, inf)"));
        }
        Ok(FockCutoff(dim))
    }

    /// Starting cutoff for a state whose busiest mode carries `mu` photons:
    /// `ceil(mu + 8 sqrt(mu) + 15)`.
    pub fn heuristic(mu: f64) -> Self {
        let mu = mu.max(0.0);
        FockCutoff((mu + 8.0 * mu.sqrt() + 15.0).ceil() as usize)
    }

    pub fn dim(self) -> usize {
        self.0
    }
}

/// Shape of a truncated multimode space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    pub modes: usize,
    pub cutoff: FockCutoff,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: FockCutoff) -> Self {
        assert!(modes >= 1, "a Fock space needs at least one mode");
        FockSpace { modes, cutoff }
    }

    pub fn total_dim(&self) -> usize {
        self.cutoff.dim().pow(self.modes as u32)
    }

    /// Index step of one photon in `mode`.
    pub fn stride(&self, mode: usize) -> usize {
        self.cutoff.dim().pow((self.modes - 1 - mode) as u32)
    }

    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.stride(mode)) % self.cutoff.dim()
    }

    pub fn index_of(&self, occupations: &[usize]) -> usize {
        occupations
            .iter()
            .fold(0, |acc, &n| acc * self.cutoff.dim() + n)
    }

    pub(crate) fn check_mode(&self, index: usize) -> Result<()> {
        if index >= self.modes {
            return Err(Error::ModeIndex {
                index,
                modes: self.modes,
            });
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &FockSpace) -> Result<()> {
        if self != other {
            return Err(Error::DimensionMismatch(format!(
                "{} modes at cutoff {} vs {} modes at cutoff {}",
                self.modes,
                self.cutoff.dim(),
                other.modes,
                other.cutoff.dim()
            )));
        }
        Ok(())
    }

    /// Total photon number of the listed modes at each basis index.
    pub(crate) fn number_diagonal(&self, modes: &[usize]) -> Result<Vec<f64>> {
        for &m in modes {
            self.check_mode(m)?;
        }
        Ok((0..self.total_dim())
            .map(|i| modes.iter().map(|&m| self.occupation(i, m) as f64).sum())
            .collect())
    }
}

/// A normalized pure state on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockKet {
    space: FockSpace,
    amplitudes: DVector<C64>,
}

impl FockKet {
    /// Normalizes `amplitudes`; fails if they are zero or the wrong length.
    pub fn new(space: FockSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for a space of dimension {}",
                amplitudes.len(),
                space.total_dim()
            )));
        }
        let norm = amplitudes.norm();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::Unphysical("zero ket".into()));
        }
        Ok(FockKet {
            space,
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn to_density_matrix(&self) -> FockDensityMatrix {
        FockDensityMatrix {
            space: self.space,
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    pub fn mean_photon_number(&self, modes: &[usize]) -> Result<f64> {
        let diag = self.space.number_diagonal(modes)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&diag)
            .map(|(a, n)| a.norm_sqr() * n)
            .sum())
    }

    /// `self ⊗ other`, modes of `self` first.
    pub fn tensor(&self, other: &FockKet) -> Result<FockKet> {
        if self.space.cutoff != other.space.cutoff {
            return Err(Error::DimensionMismatch("tensor of different cutoffs".into()));
        }
        Ok(FockKet {
            space: FockSpace::new(self.space.modes + other.space.modes, self.space.cutoff),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }
}

/// A density operator on a truncated Fock space, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    space: FockSpace,
    matrix: DMatrix<C64>,
}

impl FockDensityMatrix {
    /// Checks Hermiticity (1e-10), unit trace (1e-9) and positivity (-1e-8).
    pub fn new(space: FockSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a space of dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > 1e-10 {
            return Err(Error::Unphysical(format!("not Hermitian by {herm:e}")));
        }
        let rho = FockDensityMatrix { space, matrix };
        let trace = rho.trace();
        if (trace - 1.0).abs() > 1e-9 {
            return Err(Error::Unphysical(format!("trace {trace}")));
        }
        crate::entropy::Spectrum::of_hermitian(&rho.matrix)?;
        Ok(rho)
    }

    pub(crate) fn from_parts_unchecked(space: FockSpace, matrix: DMatrix<C64>) -> Self {
        FockDensityMatrix { space, matrix }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn spectrum(&self) -> Result<crate::entropy::Spectrum> {
        crate::entropy::Spectrum::of_hermitian(&self.matrix)
    }

    pub fn entropy(&self) -> Result<f64> {
        crate::entropy::von_neumann_entropy(&self.spectrum()?)
    }

    pub fn mean_photon_number(&self, modes: &[usize]) -> Result<f64> {
        let diag = self.space.number_diagonal(modes)?;
        Ok(diag
            .iter()
            .enumerate()
            .map(|(i, n)| self.matrix[(i, i)].re * n)
            .sum())
    }

    /// Photon-number distribution of one mode.
    pub fn photon_distribution(&self, mode: usize) -> Result<Vec<f64>> {
        self.space.check_mode(mode)?;
        let mut out = vec![0.0; self.space.cutoff.dim()];
        for i in 0..self.space.total_dim() {
            out[self.space.occupation(i, mode)] += self.matrix[(i, i)].re;
        }
        Ok(out)
    }
}
