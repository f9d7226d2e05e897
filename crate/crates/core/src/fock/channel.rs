//! Pure-loss channel in Kraus form.
//!
//! `A_k = sqrt((1-κ)^k / k!) κ^{n/2} a^k` sends `|m>` to
//! `sqrt(C(m,k) κ^{m-k} (1-κ)^k) |m-k>`. On a truncated space the sum over
//! `k = 0..dim-1` is exact because `a^dim = 0`.

use nalgebra::DMatrix;

use super::FockDensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Table `c[m][k] = sqrt(C(m,k) κ^{m-k} (1-κ)^k)` for `0 <= k <= m < dim`.
pub fn loss_coefficients(kappa: f64, dim: usize) -> Result<Vec<Vec<f64>>> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(Error::domain("kappa", kappa, "[0, 1]"));
    }
    let mut ln_fact = vec![0.0f64; dim + 1];
    for i in 1..=dim {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    let (lk, lk1) = (kappa.ln(), (1.0 - kappa).ln());
    let table = (0..dim)
        .map(|m| {
            (0..=m)
                .map(|k| {
                    // Exact zeros at the endpoints avoid 0 * -inf.
                    if (kappa == 0.0 && k != m) || (kappa == 1.0 && k != 0) {
                        return 0.0;
                    }
                    let mut ln = ln_fact[m] - ln_fact[k] - ln_fact[m - k];
                    if m > k {
                        ln += (m - k) as f64 * lk;
                    }
                    if k > 0 {
                        ln += k as f64 * lk1;
                    }
                    (0.5 * ln).exp()
                })
                .collect()
        })
        .collect();
    Ok(table)
}

/// Pure-loss channel of transmissivity `kappa` on one mode of a dense state.
pub fn loss_channel(
    rho: &FockDensityMatrix,
    mode: usize,
    kappa: f64,
) -> Result<FockDensityMatrix> {
    let space = rho.space();
    space.check_mode(mode)?;
    let dim = space.cutoff.dim();
    let coeff = loss_coefficients(kappa, dim)?;
    let stride = space.stride(mode);
    let total = space.total_dim();
    let src = rho.matrix();
    let mut out = DMatrix::<C64>::zeros(total, total);
    for b in 0..total {
        let mb = space.occupation(b, mode);
        for a in 0..total {
            let v = src[(a, b)];
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            let ma = space.occupation(a, mode);
            for k in 0..=ma.min(mb) {
                let w = coeff[ma][k] * coeff[mb][k];
                if w != 0.0 {
                    out[(a - k * stride, b - k * stride)] += v * w;
                }
            }
        }
    }
    Ok(FockDensityMatrix::from_parts_unchecked(space, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_ket, fidelity_pure, fock_ket, tmsv_ket, FockCutoff, FockKet};
    use crate::gaussian::SqueezeParam;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cut(d: usize) -> FockCutoff {
        FockCutoff::new(d).unwrap()
    }

    fn binomial(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn one_photon_loss() {
        let kappa = 0.3;
        let out = loss_channel(&fock_ket(1, cut(4)).unwrap().to_density_matrix(), 0, kappa).unwrap();
        assert!((out.matrix()[(1, 1)].re - kappa).abs() < 1e-15);
        assert!((out.matrix()[(0, 0)].re - (1.0 - kappa)).abs() < 1e-15);
        assert!((out.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn number_state_becomes_binomial() {
        let (n, kappa) = (6usize, 0.37);
        let out = loss_channel(&fock_ket(n, cut(10)).unwrap().to_density_matrix(), 0, kappa).unwrap();
        for k in 0..10 {
            let expected = if k <= n {
                binomial(n as u64, k as u64) * kappa.powi(k as i32) * (1.0 - kappa).powi((n - k) as i32)
            } else {
                0.0
            };
            assert!((out.matrix()[(k, k)].re - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn coherent_state_stays_coherent() {
        let out = loss_channel(&coherent_ket(C64::new(1.0, 0.0), cut(25)).unwrap().to_density_matrix(), 0, 0.49).unwrap();
        let target = coherent_ket(C64::new(0.7, 0.0), cut(25)).unwrap();
        let f = (target.amplitudes().adjoint() * out.matrix() * target.amplitudes())[(0, 0)].re;
        assert!((f - 1.0).abs() < 1e-8);
        assert!((fidelity_pure(&target, &target).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_and_full_loss() {
        let xi = SqueezeParam::for_photons(0.3).unwrap();
        let rho = tmsv_ket(xi, cut(20)).unwrap().to_density_matrix();
        let same = loss_channel(&rho, 0, 1.0).unwrap();
        assert!((same.matrix() - rho.matrix()).camax() < 1e-15);
        let gone = loss_channel(&rho, 0, 0.0).unwrap();
        let signal = crate::fock::partial_trace(&gone, &[0]).unwrap();
        assert!((signal.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(loss_channel(&rho, 2, 0.5).is_err());
        assert!(loss_channel(&rho, 0, -0.1).is_err());
    }

    fn random_state(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> FockDensityMatrix {
        let space = crate::fock::FockSpace::new(1, cut(dim));
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for _ in 0..rank {
            let v = nalgebra::DVector::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let k = FockKet::new(space, v).unwrap();
            m += k.to_density_matrix().matrix() * C64::new(1.0 / rank as f64, 0.0);
        }
        FockDensityMatrix::new(space, m).unwrap()
    }

    #[test]
    fn trace_and_positivity_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let dim = rng.gen_range(2..=16);
            let rank = rng.gen_range(1..=dim);
            let rho = random_state(&mut rng, dim, rank);
            let kappa = rng.gen_range(0.0..=1.0);
            let out = loss_channel(&rho, 0, kappa).unwrap();
            assert!((out.trace() - 1.0).abs() < 1e-9);
            let floor = out.spectrum().unwrap().eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
            assert!(floor >= -1e-8);
            let n_in = rho.mean_photon_number(&[0]).unwrap();
            let n_out = out.mean_photon_number(&[0]).unwrap();
            assert!((n_out - kappa * n_in).abs() < 1e-8);
        }
    }

    proptest! {
        #[test]
        fn loss_composes(seed in 0u64..10_000, k1 in 0.0f64..=1.0, k2 in 0.0f64..=1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rho = random_state(&mut rng, 8, 3);
            let twice = loss_channel(&loss_channel(&rho, 0, k1).unwrap(), 0, k2).unwrap();
            let once = loss_channel(&rho, 0, k1 * k2).unwrap();
            prop_assert!((twice.matrix() - once.matrix()).camax() < 1e-9);
        }
    }
}
