use nalgebra::DMatrix;

use super::{FockDensityMatrix, FockKet, FockSpace};
use crate::error::{Error, Result};
use crate::linalg::{psd_sqrt, trace_norm_hermitian, C64};

/// `‖ρ - σ‖₁`, in `[0, 2]`.
pub fn trace_distance_norm(rho: &FockDensityMatrix, sigma: &FockDensityMatrix) -> Result<f64> {
    rho.space().check_same(&sigma.space())?;
    Ok(trace_norm_hermitian(&(rho.matrix() - sigma.matrix())))
}

/// `|<ψ|φ>|²`.
pub fn fidelity_pure(psi: &FockKet, phi: &FockKet) -> Result<f64> {
    psi.space().check_same(&phi.space())?;
    Ok(psi.amplitudes().dotc(phi.amplitudes()).norm_sqr().min(1.0))
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(ρ) σ sqrt(ρ)))²`.
pub fn fidelity(rho: &FockDensityMatrix, sigma: &FockDensityMatrix) -> Result<f64> {
    rho.space().check_same(&sigma.space())?;
    let root = psd_sqrt(rho.matrix());
    let inner = &root * sigma.matrix() * &root;
    let t: f64 = crate::linalg::eigvalsh(&inner)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .sum();
    Ok((t * t).min(1.0))
}

/// `a ⊗ b`, modes of `a` first.
pub fn tensor(a: &FockDensityMatrix, b: &FockDensityMatrix) -> Result<FockDensityMatrix> {
    if a.space().cutoff != b.space().cutoff {
        return Err(Error::DimensionMismatch("tensor of different cutoffs".into()));
    }
    let space = FockSpace::new(a.space().modes + b.space().modes, a.space().cutoff);
    Ok(FockDensityMatrix::from_parts_unchecked(
        space,
        a.matrix().kronecker(b.matrix()),
    ))
}

/// Traces out every mode not listed in `keep`. Kept modes retain their
/// relative order.
pub fn partial_trace(rho: &FockDensityMatrix, keep: &[usize]) -> Result<FockDensityMatrix> {
    let space = rho.space();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::DimensionMismatch("partial trace must keep a mode".into()));
    }
    for &k in &keep {
        space.check_mode(k)?;
    }
    let traced: Vec<usize> = (0..space.modes).filter(|m| !keep.contains(m)).collect();
    let out_space = FockSpace::new(keep.len(), space.cutoff);
    let project = |i: usize, modes: &[usize]| -> usize {
        modes
            .iter()
            .fold(0, |acc, &m| acc * space.cutoff.dim() + space.occupation(i, m))
    };
    let total = space.total_dim();
    let kept_idx: Vec<usize> = (0..total).map(|i| project(i, &keep)).collect();
    let traced_idx: Vec<usize> = (0..total).map(|i| project(i, &traced)).collect();
    let src = rho.matrix();
    let mut out = DMatrix::<C64>::zeros(out_space.total_dim(), out_space.total_dim());
    for b in 0..total {
        for a in 0..total {
            if traced_idx[a] == traced_idx[b] {
                out[(kept_idx[a], kept_idx[b])] += src[(a, b)];
            }
        }
    }
    Ok(FockDensityMatrix::from_parts_unchecked(out_space, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_ket, fock_ket, tmsv_ket, FockCutoff};
    use crate::gaussian::{tmsv, SqueezeParam};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cut(d: usize) -> FockCutoff {
        FockCutoff::new(d).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let a = fock_ket(0, cut(3)).unwrap().to_density_matrix();
        let b = fock_ket(1, cut(3)).unwrap().to_density_matrix();
        assert_eq!(trace_distance_norm(&a, &a).unwrap(), 0.0);
        assert!((trace_distance_norm(&a, &b).unwrap() - 2.0).abs() < 1e-14);
        let c = coherent_ket(C64::new(0.8, 0.0), cut(25)).unwrap();
        let d = coherent_ket(C64::new(0.2, 0.0), cut(25)).unwrap();
        let f = fidelity_pure(&c, &d).unwrap();
        let dist = trace_distance_norm(&c.to_density_matrix(), &d.to_density_matrix()).unwrap();
        assert!((dist - 2.0 * (1.0 - f).sqrt()).abs() < 1e-10);
        let other = fock_ket(0, cut(4)).unwrap().to_density_matrix();
        assert!(trace_distance_norm(&a, &other).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let z = fock_ket(0, cut(3)).unwrap();
        let o = fock_ket(1, cut(3)).unwrap();
        assert!((fidelity_pure(&z, &z).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity_pure(&z, &o).unwrap(), 0.0);
        let n: f64 = 2.0;
        let c = coherent_ket(C64::new(n.sqrt(), 0.0), FockCutoff::heuristic(n)).unwrap();
        let v = coherent_ket(C64::new(0.0, 0.0), FockCutoff::heuristic(n)).unwrap();
        assert!((fidelity_pure(&v, &c).unwrap() - (-n).exp()).abs() < 1e-12);
        // Uhlmann on pure inputs reduces to the overlap.
        let u = fidelity(&v.to_density_matrix(), &c.to_density_matrix()).unwrap();
        assert!((u - (-n).exp()).abs() < 1e-8);
    }

    #[test]
    fn tensor_and_partial_trace() {
        let vac = fock_ket(0, cut(3)).unwrap().to_density_matrix();
        let joint = tensor(&vac, &vac).unwrap();
        assert_eq!(joint.matrix()[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(joint.space().modes, 2);
        let space = FockSpace::new(1, cut(3));
        let amps = nalgebra::DVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.5), C64::new(0.3, 0.1)]);
        let rho = FockKet::new(space, amps).unwrap().to_density_matrix();
        let sigma = fock_ket(2, cut(3)).unwrap().to_density_matrix();
        let back = partial_trace(&tensor(&rho, &sigma).unwrap(), &[0]).unwrap();
        assert!((back.matrix() - rho.matrix()).camax() < 1e-15);
        let back = partial_trace(&tensor(&rho, &sigma).unwrap(), &[1]).unwrap();
        assert!((back.matrix() - sigma.matrix()).camax() < 1e-15);
    }

    #[test]
    fn tmsv_partial_trace_is_thermal() {
        let xi = SqueezeParam::new(0.5).unwrap();
        let rho = tmsv_ket(xi, cut(30)).unwrap().to_density_matrix();
        let signal = partial_trace(&rho, &[0]).unwrap();
        let nbar = xi.mean_photons();
        let t = nbar / (nbar + 1.0);
        for k in 0..30 {
            assert!((signal.matrix()[(k, k)].re - (1.0 - t) * t.powi(k as i32)).abs() < 1e-12);
        }
        assert!((signal.mean_photon_number(&[0]).unwrap() - nbar).abs() < 1e-8);
        let gaussian = tmsv(xi).reduced_state(&[0]).unwrap().entropy().unwrap();
        assert!((signal.entropy().unwrap() - gaussian).abs() < 1e-6);
        assert!((partial_trace(&rho, &[0, 1]).unwrap().trace() - 1.0).abs() < 1e-10);
    }

    fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> FockDensityMatrix {
        let space = FockSpace::new(1, cut(dim));
        let g = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let m = &g * g.adjoint();
        let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
        FockDensityMatrix::new(space, m / C64::new(tr, 0.0)).unwrap()
    }

    #[test]
    fn trace_distance_triangle_and_unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let dim = rng.gen_range(2..8);
            let (a, b, c) = (random_density(&mut rng, dim), random_density(&mut rng, dim), random_density(&mut rng, dim));
            let ab = trace_distance_norm(&a, &b).unwrap();
            let bc = trace_distance_norm(&b, &c).unwrap();
            let ac = trace_distance_norm(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-12);
            // Random unitary from the QR factor of a complex Gaussian matrix.
            let g = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let u = g.qr().q();
            let rot = |r: &FockDensityMatrix| {
                FockDensityMatrix::from_parts_unchecked(r.space(), &u * r.matrix() * u.adjoint())
            };
            let rotated = trace_distance_norm(&rot(&a), &rot(&b)).unwrap();
            assert!((rotated - ab).abs() < 1e-10);
        }
    }
}
