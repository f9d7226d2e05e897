//! Covariance-matrix description of Gaussian states.
//!
//! Quadratures are interleaved `(x1, p1, x2, p2, ...)` with `x = a + a†`, so
//! the vacuum covariance is the identity and every symplectic eigenvalue of a
//! physical state is at least 1. A pure-loss channel of transmissivity `κ`
//! then acts on one mode as `V -> κ V + (1 - κ) I` on its diagonal block.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::entropy::{thermal_entropy_g, Bits};
use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, C64};

/// Two-mode squeezing magnitude; the signal carries `sinh²(xi)` photons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam(f64);

impl SqueezeParam {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(Error::domain("squeezing", xi, "[0, inf)"));
        }
        Ok(SqueezeParam(xi))
    }

    /// Squeezing that puts `photons` mean photons in each mode.
    pub fn for_photons(photons: f64) -> Result<Self> {
        if !(photons >= 0.0 && photons.is_finite()) {
            return Err(Error::domain("photons", photons, "[0, inf)"));
        }
        Self::new(photons.sqrt().asinh())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn mean_photons(self) -> f64 {
        self.0.sinh().powi(2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    covariance: DMatrix<f64>,
}

fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

impl GaussianState {
    /// Validates symmetry and physicality of the covariance.
    pub fn new(mean: DVector<f64>, covariance: DMatrix<f64>) -> Result<Self> {
        let n = covariance.nrows();
        if n == 0 || !n.is_multiple_of(2) || !covariance.is_square() || mean.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "mean of length {} with a {}x{} covariance",
                mean.len(),
                covariance.nrows(),
                covariance.ncols()
            )));
        }
        let asym = (&covariance - covariance.transpose()).amax();
        if asym > 1e-10 {
            return Err(Error::Unphysical(format!("covariance asymmetric by {asym:e}")));
        }
        let state = GaussianState { mean, covariance };
        state.symplectic_eigenvalues()?;
        Ok(state)
    }

    pub fn vacuum(modes: usize) -> Self {
        GaussianState {
            mean: DVector::zeros(2 * modes),
            covariance: DMatrix::identity(2 * modes, 2 * modes),
        }
    }

    /// Single-mode thermal state with `nbar` mean photons.
    pub fn thermal(nbar: f64) -> Result<Self> {
        if nbar.is_nan() || nbar < 0.0 {
            return Err(Error::domain("nbar", nbar, "[0, inf)"));
        }
        Ok(GaussianState {
            mean: DVector::zeros(2),
            covariance: DMatrix::identity(2, 2) * (2.0 * nbar + 1.0),
        })
    }

    /// Single-mode coherent state with real amplitude `alpha`.
    pub fn coherent(alpha: f64) -> Self {
        GaussianState {
            mean: DVector::from_vec(vec![2.0 * alpha, 0.0]),
            covariance: DMatrix::identity(2, 2),
        }
    }

    pub fn modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    fn check_mode(&self, index: usize) -> Result<()> {
        if index >= self.modes() {
            return Err(Error::ModeIndex {
                index,
                modes: self.modes(),
            });
        }
        Ok(())
    }

    /// Pure-loss channel of transmissivity `kappa` on one mode.
    pub fn apply_pure_loss(&self, mode: usize, kappa: f64) -> Result<Self> {
        self.check_mode(mode)?;
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::domain("kappa", kappa, "[0, 1]"));
        }
        let root = kappa.sqrt();
        let dim = self.covariance.nrows();
        let mut mean = self.mean.clone();
        let mut cov = self.covariance.clone();
        let block = [2 * mode, 2 * mode + 1];
        for &i in &block {
            mean[i] *= root;
            for j in 0..dim {
                if !block.contains(&j) {
                    cov[(i, j)] *= root;
                    cov[(j, i)] *= root;
                }
            }
        }
        for &i in &block {
            for &j in &block {
                let identity = if i == j { 1.0 } else { 0.0 };
                cov[(i, j)] = kappa * cov[(i, j)] + (1.0 - kappa) * identity;
            }
        }
        Ok(GaussianState {
            mean,
            covariance: cov,
        })
    }

    /// The same loss applied to each listed mode.
    pub fn apply_pure_loss_modes(&self, modes: &[usize], kappa: f64) -> Result<Self> {
        modes
            .iter()
            .try_fold(self.clone(), |state, &m| state.apply_pure_loss(m, kappa))
    }

    /// Partial trace onto the listed modes, in the order given.
    pub fn reduced_state(&self, keep: &[usize]) -> Result<Self> {
        for &k in keep {
            self.check_mode(k)?;
        }
        let idx: Vec<usize> = keep.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect();
        let mean = DVector::from_fn(idx.len(), |i, _| self.mean[idx[i]]);
        let cov = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.covariance[(idx[i], idx[j])]);
        Ok(GaussianState {
            mean,
            covariance: cov,
        })
    }

    /// Williamson spectrum, sorted descending.
    ///
    /// The eigenvalues of `i Ω V` are `±ν`. They are computed as the spectrum
    /// of the Hermitian matrix `i V^{1/2} Ω V^{1/2}`, which is similar to it.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let m = self.modes();
        let eig = SymmetricEigen::new(self.covariance.clone());
        if let Some(&low) = eig.eigenvalues.iter().find(|&&l| l <= 0.0) {
            return Err(Error::Unphysical(format!("covariance eigenvalue {low:e}")));
        }
        let root = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
            * eig.eigenvectors.transpose();
        let k = &root * symplectic_form(m) * &root;
        let h = k.map(|x| C64::new(0.0, x));
        let mut nu: Vec<f64> = eigvalsh(&h).into_iter().rev().take(m).collect();
        nu.sort_by(|a, b| b.total_cmp(a));
        if let Some(&bad) = nu.iter().find(|&&v| v < 1.0 - 1e-8) {
            return Err(Error::Unphysical(format!(
                "symplectic eigenvalue {bad} below the vacuum level"
            )));
        }
        Ok(nu)
    }

    /// Von Neumann entropy `Σ g(ν_i)`.
    pub fn entropy(&self) -> Result<Bits> {
        self.symplectic_eigenvalues()?
            .into_iter()
            .map(thermal_entropy_g)
            .sum()
    }

    /// Mean photon number of one mode.
    pub fn mean_photon_number(&self, mode: usize) -> Result<f64> {
        self.check_mode(mode)?;
        let (x, p) = (2 * mode, 2 * mode + 1);
        let trace = self.covariance[(x, x)] + self.covariance[(p, p)];
        let displacement = self.mean[x].powi(2) + self.mean[p].powi(2);
        Ok((trace + displacement) / 4.0 - 0.5)
    }
}

/// Two-mode squeezed vacuum; mode 0 is the signal, mode 1 the reference.
pub fn tmsv(xi: SqueezeParam) -> GaussianState {
    let c = (2.0 * xi.value()).cosh();
    let s = (2.0 * xi.value()).sinh();
    let covariance = DMatrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ],
    );
    GaussianState {
        mean: DVector::zeros(4),
        covariance,
    }
}
