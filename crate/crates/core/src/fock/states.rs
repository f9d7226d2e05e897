//! Probe-state constructors.

use nalgebra::{DMatrix, DVector};

use super::{FockCutoff, FockKet, FockSpace, TAIL_LIMIT};
use crate::error::{Error, Result};
use crate::gaussian::SqueezeParam;
use crate::linalg::{expm_antihermitian, C64};

/// Extra levels the squeezed-coherent construction works on before projecting
/// back to the requested cutoff.
const PADDING: usize = 10;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Coherent state `|alpha>` on one mode.
pub fn coherent_ket(alpha: C64, cutoff: FockCutoff) -> Result<FockKet> {
    let dim = cutoff.dim();
    let mu = alpha.norm_sqr();
    let mut amps = Vec::with_capacity(dim);
    let mut c = C64::new((-mu / 2.0).exp(), 0.0);
    for k in 0..dim {
        amps.push(c);
        c *= alpha / (k as f64 + 1.0).sqrt();
    }
    // Poisson tail summed term by term rather than as 1 - Σ.
    let mut tail = 0.0;
    let mut term = c.norm_sqr();
    let mut k = dim;
    while term > 0.0 && (k as f64) < mu + 60.0 * (mu.sqrt() + 1.0) {
        tail += term;
        k += 1;
        term *= mu / k as f64;
    }
    if tail >= TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { dim, tail });
    }
    FockKet::new(FockSpace::new(1, cutoff), DVector::from_vec(amps))
}

/// Number state `|n>` on one mode.
pub fn fock_ket(n: usize, cutoff: FockCutoff) -> Result<FockKet> {
    let dim = cutoff.dim();
    if n >= dim {
        return Err(Error::CutoffTooSmall { dim, tail: 1.0 });
    }
    let mut amps = DVector::from_element(dim, zero());
    amps[n] = C64::new(1.0, 0.0);
    FockKet::new(FockSpace::new(1, cutoff), amps)
}

/// `(|N, 0> + |0, N>) / sqrt(2)` on signal and reference.
pub fn noon_ket(photons: usize, cutoff: FockCutoff) -> Result<FockKet> {
    let dim = cutoff.dim();
    if photons == 0 {
        return Err(Error::InvalidTransmitter("a NOON state needs N >= 1".into()));
    }
    if photons >= dim {
        return Err(Error::CutoffTooSmall { dim, tail: 1.0 });
    }
    let space = FockSpace::new(2, cutoff);
    let mut amps = DVector::from_element(space.total_dim(), zero());
    let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[space.index_of(&[photons, 0])] = w;
    amps[space.index_of(&[0, photons])] = w;
    FockKet::new(space, amps)
}

/// Two-mode squeezed vacuum `Σ (tanh ξ)^m / cosh ξ |m, m>`.
pub fn tmsv_ket(xi: SqueezeParam, cutoff: FockCutoff) -> Result<FockKet> {
    let dim = cutoff.dim();
    let t = xi.value().tanh();
    // Σ_{m >= dim} (1 - t²) t^{2m} = t^{2 dim}
    let tail = t.powi(2 * dim as i32);
    if tail >= TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { dim, tail });
    }
    let space = FockSpace::new(2, cutoff);
    let mut amps = DVector::from_element(space.total_dim(), zero());
    let mut c = 1.0 / xi.value().cosh();
    for m in 0..dim {
        amps[space.index_of(&[m, m])] = C64::new(c, 0.0);
        c *= t;
    }
    FockKet::new(space, amps)
}

/// `D(alpha) S(xi) |0>` with real `alpha` and amplitude squeezing: the
/// displacement is along the position quadrature and the squeezing reduces
/// position noise, so the mean photon number is `alpha² + sinh² xi`.
///
/// Built with exponentials of the truncated generators on a space padded by
/// ten levels, then projected back to `cutoff`.
pub fn squeezed_coherent_ket(alpha: f64, xi: f64, cutoff: FockCutoff) -> Result<FockKet> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::domain("alpha", alpha, "[0, inf)"));
    }
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::domain("xi", xi, "[0, inf)"));
    }
    let dim = cutoff.dim();
    let padded = dim + PADDING;
    let lower = DMatrix::from_fn(padded, padded, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            zero()
        }
    });
    let raise = lower.adjoint();
    let mut state = DVector::from_element(padded, zero());
    state[0] = C64::new(1.0, 0.0);
    if xi > 0.0 {
        let gen = (&lower * &lower - &raise * &raise) * C64::new(xi / 2.0, 0.0);
        state = expm_antihermitian(&gen) * state;
    }
    if alpha > 0.0 {
        let gen = (&raise - &lower) * C64::new(alpha, 0.0);
        state = expm_antihermitian(&gen) * state;
    }
    let tail: f64 = state.iter().skip(dim).map(|z| z.norm_sqr()).sum();
    if tail >= TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { dim, tail });
    }
    let kept = DVector::from_fn(dim, |i, _| state[i]);
    let loss = 1.0 - kept.norm_squared();
    if loss.abs() >= 1e-9 {
        return Err(Error::CutoffTooSmall { dim, tail: loss });
    }
    FockKet::new(FockSpace::new(1, cutoff), kept)
}
