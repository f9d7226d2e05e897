use super::bounds::classical_reading_capacity;
use super::ensemble::{holevo_chi, output_ensemble};
use super::transmitter::{Cutoff, Transmitter, TransmitterKind};
use super::PureLossCell;
use crate::entropy::Bits;
use crate::error::{Error, Result};
use crate::gaussian::{tmsv, SqueezeParam};

/// A Holevo quantity and the per-mode Fock cutoff it was computed with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterChi {
    pub bits: Bits,
    pub cutoff: usize,
}

/// Holevo information the reader gets from `cell` with transmitter `t`.
///
/// For a single EPR copy each branch entropy is checked against the
/// symplectic-eigenvalue formula before the value is reported.
pub fn transmitter_chi(cell: &PureLossCell, t: &Transmitter, cutoff: Cutoff) -> Result<TransmitterChi> {
    let ens = output_ensemble(cell, t, cutoff)?;
    if let TransmitterKind::Epr { copies: 1 } = t.kind() {
        let xi = SqueezeParam::for_photons(t.signal_photons())?;
        for ((_, state), (_, kappa)) in ens.entries().iter().zip(cell.branches()) {
            let fock = state.entropy()?;
            let gaussian = tmsv(xi).apply_pure_loss(0, kappa)?.entropy()?;
            if (fock - gaussian).abs() > 1e-6 {
                return Err(Error::CrossCheck { fock, gaussian });
            }
        }
    }
    Ok(TransmitterChi {
        bits: holevo_chi(&ens)?,
        cutoff: ens.cutoff().dim(),
    })
}

/// Best squeezed-coherent probe under `α² + sinh²ξ = n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedOptimum {
    /// Fraction of `n` spent on squeezing.
    pub splitting: f64,
    pub bits: Bits,
    /// Largest cutoff used by any evaluation in the search.
    pub cutoff: usize,
}

const GOLDEN_TOL: f64 = 1e-6;

/// Golden-section search over the squeezing fraction. The interior optimum
/// is compared with both endpoints, so the result is never below either.
pub fn optimize_squeezed_coherent(cell: &PureLossCell, n: f64, cutoff: Cutoff) -> Result<SqueezedOptimum> {
    let mut max_cutoff = 0;
    let mut eval = |splitting: f64| -> Result<f64> {
        let t = Transmitter::squeezed_coherent(n, splitting)?;
        let r = transmitter_chi(cell, &t, cutoff)?;
        max_cutoff = max_cutoff.max(r.cutoff);
        Ok(r.bits)
    };
    let at_zero = eval(0.0)?;
    if n == 0.0 || cell.is_degenerate() {
        return Ok(SqueezedOptimum {
            splitting: 0.0,
            bits: at_zero,
            cutoff: max_cutoff,
        });
    }
    let at_one = eval(1.0)?;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (eval(c)?, eval(d)?);
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    let at_mid = eval(mid)?;
    let best = [(0.0, at_zero), (mid, at_mid), (1.0, at_one)]
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    Ok(SqueezedOptimum {
        splitting: best.0,
        bits: best.1,
        cutoff: max_cutoff,
    })
}

/// `χ_epr(1,1) - C_c`: positive values certify a quantum advantage.
pub fn information_gain(cell: &PureLossCell, n: f64, cutoff: Cutoff) -> Result<TransmitterChi> {
    let epr = transmitter_chi(cell, &Transmitter::epr(1, n)?, cutoff)?;
    Ok(TransmitterChi {
        bits: epr.bits - classical_reading_capacity(cell, n)?,
        cutoff: epr.cutoff,
    })
}
