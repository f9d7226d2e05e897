//! Output ensembles of a binary cell and their Holevo and Helstrom figures.
//!
//! Every branch is a pure-loss image of the same probe, kept in factored form.
//! For `c` copies the branch state is the c-fold tensor power, whose factors
//! are Kronecker products; only Gram matrices of factors are ever formed, and
//! the Gram matrix of a tensor power is the Kronecker power of the single-copy
//! Gram matrix.

use nalgebra::DMatrix;

use super::transmitter::{probe, Cutoff, Transmitter};
use super::PureLossCell;
use crate::entropy::{gram_entropy, von_neumann_entropy, Bits, Probability, Spectrum};
use crate::error::{Error, Result};
use crate::fock::{FockCutoff, FockDensityMatrix, FockSpace, LowRankState};
use crate::linalg::{eigh, eigvalsh, kron_power, trace_norm, trace_norm_hermitian, C64};

/// Readout states `ρ_x^{⊗copies}` with their priors.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputEnsemble {
    entries: Vec<(Probability, LowRankState)>,
    copies: u32,
}

impl OutputEnsemble {
    pub fn new(entries: Vec<(Probability, LowRankState)>, copies: u32) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty ensemble".into()))?;
        let space = first.1.space();
        for (_, s) in &entries {
            space.check_same(&s.space())?;
            if (s.trace() - 1.0).abs() > 1e-9 {
                return Err(Error::Unphysical(format!("branch trace {}", s.trace())));
            }
        }
        let total: f64 = entries.iter().map(|(p, _)| p.value()).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Unphysical(format!("priors sum to {total}")));
        }
        if copies == 0 {
            return Err(Error::DimensionMismatch("at least one copy is required".into()));
        }
        Ok(OutputEnsemble { entries, copies })
    }

    /// Sends `copies` copies of `input` through `cell`; the loss acts on each
    /// of `signal_modes`.
    pub fn from_input(
        cell: &PureLossCell,
        input: &LowRankState,
        signal_modes: &[usize],
        copies: u32,
    ) -> Result<Self> {
        let entries = cell
            .branches()
            .iter()
            .map(|&(p, kappa)| Ok((p, input.apply_loss_modes(signal_modes, kappa)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries, copies)
    }

    pub fn entries(&self) -> &[(Probability, LowRankState)] {
        &self.entries
    }

    pub fn copies(&self) -> u32 {
        self.copies
    }

    pub fn space(&self) -> FockSpace {
        self.entries[0].1.space()
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.space().cutoff
    }

    /// Gram matrix of branch factors `x` and `y` for all copies.
    fn block(&self, x: usize, y: usize) -> Result<DMatrix<C64>> {
        let single = self.entries[x].1.cross_gram(&self.entries[y].1)?;
        Ok(kron_power(&single, self.copies))
    }

    /// Gram matrix of the factors of all branches, with branch `x` scaled by
    /// `weight(x)`.
    fn joint_gram(&self, weight: impl Fn(usize) -> f64) -> Result<DMatrix<C64>> {
        let blocks: Vec<Vec<DMatrix<C64>>> = (0..self.entries.len())
            .map(|x| (0..self.entries.len()).map(|y| self.block(x, y)).collect())
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = blocks.iter().map(|row| row[0].nrows()).collect();
        let total: usize = sizes.iter().sum();
        let mut g = DMatrix::zeros(total, total);
        let mut r0 = 0;
        for (x, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (y, b) in row.iter().enumerate() {
                let w = C64::new(weight(x) * weight(y), 0.0);
                g.view_mut((r0, c0), (sizes[x], sizes[y])).copy_from(&(b * w));
                c0 += sizes[y];
            }
            r0 += sizes[x];
        }
        Ok(g)
    }

    /// Uhlmann fidelity between the two branches (all copies).
    pub fn branch_fidelity(&self) -> Result<f64> {
        if self.entries.len() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "branch fidelity needs 2 branches, got {}",
                self.entries.len()
            )));
        }
        let root = trace_norm(&self.block(0, 1)?);
        Ok((root * root).min(1.0))
    }
}

/// Builds the output ensemble of `cell` read with transmitter `t`.
pub fn output_ensemble(cell: &PureLossCell, t: &Transmitter, cutoff: Cutoff) -> Result<OutputEnsemble> {
    let p = probe(t, cutoff)?;
    let signal = p.state.mean_photon_number(&p.signal_modes)? * p.copies as f64;
    if (signal - t.signal_photons()).abs() > 1e-6 {
        return Err(Error::Unphysical(format!(
            "probe carries {signal} signal photons, expected {}",
            t.signal_photons()
        )));
    }
    OutputEnsemble::from_input(cell, &p.state, &p.signal_modes, p.copies)
}

/// `S(Σ p_x ρ_x) - Σ p_x S(ρ_x)`, clamped to `[0, H(p)]` against rounding.
pub fn holevo_chi(ens: &OutputEnsemble) -> Result<Bits> {
    let priors: Vec<f64> = ens.entries.iter().map(|(p, _)| p.value()).collect();
    let mixed = gram_entropy(&ens.joint_gram(|x| priors[x].sqrt())?)?;
    let mut conditional = 0.0;
    for (p, state) in &ens.entries {
        if p.value() > 0.0 {
            conditional += p.value() * ens.copies as f64 * state.entropy()?;
        }
    }
    let ceiling = -priors
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>();
    clamp_chi(mixed - conditional, ceiling)
}

fn clamp_chi(chi: f64, ceiling: f64) -> Result<Bits> {
    if chi < -1e-8 || chi > ceiling + 1e-8 {
        return Err(Error::Unphysical(format!(
            "Holevo quantity {chi} outside [0, {ceiling}]"
        )));
    }
    Ok(chi.clamp(0.0, ceiling))
}

/// Minimum error of discriminating the two branches,
/// `(1 - ‖p ρ0 - (1-p) ρ1‖₁) / 2`.
pub fn helstrom_error(ens: &OutputEnsemble) -> Result<Probability> {
    if ens.entries.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Helstrom error needs 2 branches, got {}",
            ens.entries.len()
        )));
    }
    let (p0, p1) = (ens.entries[0].0.value(), ens.entries[1].0.value());
    let g = ens.joint_gram(|_| 1.0)?;
    let k0 = ens.block(0, 0)?.nrows();
    // The nonzero spectrum of W D W† equals that of R† D R for any factor
    // G = R R†. Directions of G at round-off level are dropped: their square
    // roots would otherwise add errors of order sqrt(eps).
    let (values, vectors) = eigh(&g);
    let largest = values.iter().copied().fold(0.0, f64::max);
    let floor = 16.0 * f64::EPSILON * g.nrows() as f64 * largest;
    let kept: Vec<usize> = (0..values.len()).filter(|&j| values[j] > floor).collect();
    let factor = DMatrix::from_fn(g.nrows(), kept.len(), |i, c| {
        let j = kept[c];
        vectors[(i, j)] * values[j].sqrt()
    });
    let signs: Vec<f64> = (0..g.nrows()).map(|i| if i < k0 { p0 } else { -p1 }).collect();
    let weighted = DMatrix::from_fn(g.nrows(), kept.len(), |i, c| factor[(i, c)] * signs[i]);
    let norm = trace_norm_hermitian(&(factor.adjoint() * weighted));
    let err = 0.5 * (1.0 - norm);
    Probability::new(err.clamp(0.0, p0.min(p1)))
}

/// Dense Holevo quantity of an explicit ensemble; an oracle for small spaces.
pub fn holevo_chi_dense(entries: &[(Probability, FockDensityMatrix)]) -> Result<Bits> {
    let first = entries
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty ensemble".into()))?;
    let mut mix = DMatrix::<C64>::zeros(first.1.matrix().nrows(), first.1.matrix().ncols());
    let mut conditional = 0.0;
    for (p, rho) in entries {
        first.1.space().check_same(&rho.space())?;
        mix += rho.matrix() * C64::new(p.value(), 0.0);
        if p.value() > 0.0 {
            conditional += p.value() * rho.entropy()?;
        }
    }
    let mixed = von_neumann_entropy(&Spectrum::of_hermitian(&mix)?)?;
    let ceiling = entries
        .iter()
        .map(|(p, _)| p.value())
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    clamp_chi(mixed - conditional, ceiling)
}

/// Dense Helstrom error; an oracle for small spaces.
pub fn helstrom_error_dense(
    prior: Probability,
    rho0: &FockDensityMatrix,
    rho1: &FockDensityMatrix,
) -> Result<Probability> {
    rho0.space().check_same(&rho1.space())?;
    let (p0, p1) = (prior.value(), prior.complement().value());
    let m = rho0.matrix() * C64::new(p0, 0.0) - rho1.matrix() * C64::new(p1, 0.0);
    let norm: f64 = eigvalsh(&m).iter().map(|x| x.abs()).sum();
    Probability::new((0.5 * (1.0 - norm)).clamp(0.0, p0.min(p1)))
}
