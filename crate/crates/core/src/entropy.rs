//! Entropies and the two-pure-state Holevo closed form. All logarithms are
//! base 2, so every information quantity is in bits.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, C64};

/// An information quantity in bits.
pub type Bits = f64;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const HALF: Probability = Probability(0.5);
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    /// Values within 1e-12 outside `[0, 1]` are clamped; anything further out
    /// is a domain error.
    pub fn new(value: f64) -> Result<Self> {
        if !(-1e-12..=1.0 + 1e-12).contains(&value) {
            return Err(Error::domain("probability", value, "[0, 1]"));
        }
        Ok(Probability(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Self {
        Probability(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// `-x log2 x`, with `0 log 0 = 0`.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy of a binary distribution `{x, 1 - x}`.
pub fn binary_entropy(x: Probability) -> Bits {
    let x = x.value();
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    plogp(x) + plogp(1.0 - x)
}

/// Eigenvalues of a density operator after tolerance clamping.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Eigenvalues in `[-1e-8, 0)` are treated as round-off and set to 0;
    /// anything more negative means the operator was not positive.
    pub fn from_eigenvalues(raw: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut eigenvalues = Vec::new();
        for lambda in raw {
            if lambda < -1e-8 || lambda.is_nan() {
                return Err(Error::NotPositive { value: lambda });
            }
            eigenvalues.push(lambda.max(0.0));
        }
        Ok(Spectrum { eigenvalues })
    }

    /// Spectrum of a Hermitian matrix.
    pub fn of_hermitian(m: &DMatrix<C64>) -> Result<Self> {
        Self::from_eigenvalues(eigvalsh(m))
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// `-Σ λ log2 λ` over the positive eigenvalues.
pub fn von_neumann_entropy(spectrum: &Spectrum) -> Result<Bits> {
    let sum = spectrum.sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::SpectrumNotNormalized { sum });
    }
    Ok(spectrum.eigenvalues.iter().map(|&l| plogp(l)).sum())
}

/// Entropy of a Gaussian mode with symplectic eigenvalue `nu` (vacuum = 1).
pub fn thermal_entropy_g(nu: f64) -> Result<Bits> {
    if nu < 1.0 - 1e-9 || nu.is_nan() {
        return Err(Error::domain("symplectic eigenvalue", nu, "[1, inf)"));
    }
    let nu = nu.max(1.0);
    let plus = (nu + 1.0) / 2.0;
    let minus = (nu - 1.0) / 2.0;
    // plogp is -x log x, hence the reversed signs.
    Ok(plogp(minus) - plogp(plus))
}

/// Holevo information of a binary ensemble of pure states with priors
/// `(p, 1 - p)` and pairwise fidelity `|<a|b>|^2 = fidelity`.
///
/// The average state has eigenvalues `1/2 ± 1/2 sqrt(1 - 4p(1-p)(1-F))` and
/// both members are pure, so χ is the binary entropy of the larger one.
pub fn two_pure_state_holevo(p: Probability, fidelity: f64) -> Result<Bits> {
    if !(-1e-12..=1.0 + 1e-12).contains(&fidelity) {
        return Err(Error::domain("fidelity", fidelity, "[0, 1]"));
    }
    let f = fidelity.clamp(0.0, 1.0);
    let p = p.value();
    let disc = (1.0 - 4.0 * p * (1.0 - p) * (1.0 - f)).max(0.0);
    let top = Probability::new(0.5 + 0.5 * disc.sqrt())?;
    Ok(binary_entropy(top))
}

/// Entropy of the positive operator `Σ_j |w_j><w_j|` from its Gram matrix
/// `G_ij = <w_i|w_j>`. `W W†` and `W† W` share their nonzero spectrum.
pub fn gram_entropy(gram: &DMatrix<C64>) -> Result<Bits> {
    von_neumann_entropy(&Spectrum::of_hermitian(gram)?)
}

/// A low-rank positive operator given as its eigendecomposition.
pub type EigenComponent = Vec<(f64, DVector<C64>)>;

/// Entropy of `Σ_c w_c Σ_k λ_ck |v_ck><v_ck|` without forming the operator:
/// the Gram matrix of the vectors `sqrt(w_c λ_ck) v_ck` has the same nonzero
/// spectrum.
pub fn mixture_entropy_low_rank(components: &[(Probability, EigenComponent)]) -> Result<Bits> {
    let mut scaled: Vec<DVector<C64>> = Vec::new();
    let mut dim = None;
    let mut trace = 0.0;
    for (weight, eig) in components {
        for (lambda, v) in eig {
            match dim {
                None => dim = Some(v.len()),
                Some(d) if d != v.len() => {
                    return Err(Error::DimensionMismatch(format!(
                        "vector of length {} in a mixture of dimension {d}",
                        v.len()
                    )))
                }
                _ => {}
            }
            let w = weight.value() * lambda;
            if w < -1e-12 {
                return Err(Error::NotPositive { value: w });
            }
            trace += w * v.norm_squared();
            scaled.push(v * C64::new(w.max(0.0).sqrt(), 0.0));
        }
    }
    if (trace - 1.0).abs() > 1e-9 {
        return Err(Error::SpectrumNotNormalized { sum: trace });
    }
    let k = scaled.len();
    let gram = DMatrix::from_fn(k, k, |i, j| scaled[i].dotc(&scaled[j]));
    gram_entropy(&gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(p(0.5)), 1.0);
        assert_eq!(binary_entropy(p(0.0)), 0.0);
        assert_eq!(binary_entropy(p(1.0)), 0.0);
        // mpmath, 30 digits
        assert!((binary_entropy(p(0.25)) - 0.811_278_124_459_132_9).abs() < 1e-14);
    }

    #[test]
    fn probability_domain() {
        assert!(Probability::new(1.0 + 1e-13).is_ok());
        assert!(Probability::new(-1e-6).is_err());
        assert!(Probability::new(1.5).is_err());
        assert!(Probability::new(f64::NAN).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let s = |v: &[f64]| von_neumann_entropy(&Spectrum::from_eigenvalues(v.to_vec()).unwrap()).unwrap();
        assert_eq!(s(&[1.0, 0.0, 0.0]), 0.0);
        assert!((s(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
        assert!((s(&[0.25, 0.75]) - binary_entropy(p(0.25))).abs() < 1e-15);
    }

    #[test]
    fn spectrum_clamping_rules() {
        let s = Spectrum::from_eigenvalues(vec![1.0, -5e-13]).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 0.0]);
        assert!(matches!(
            Spectrum::from_eigenvalues(vec![1.0, -1e-7]),
            Err(Error::NotPositive { .. })
        ));
        let unnormalized = Spectrum::from_eigenvalues(vec![0.5, 0.4]).unwrap();
        assert!(matches!(
            von_neumann_entropy(&unnormalized),
            Err(Error::SpectrumNotNormalized { .. })
        ));
    }

    #[test]
    fn thermal_entropy_values() {
        assert_eq!(thermal_entropy_g(1.0).unwrap(), 0.0);
        assert!((thermal_entropy_g(3.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(thermal_entropy_g(0.5).is_err());
        // Geometric Fock spectrum of a thermal state with mean 0.5 photons.
        let nbar: f64 = 0.5;
        let t = nbar / (nbar + 1.0);
        let mut spectrum = Vec::new();
        let mut k = 0;
        loop {
            let lambda = (1.0 - t) * t.powi(k);
            spectrum.push(lambda);
            if t.powi(k + 1) < 1e-16 {
                break;
            }
            k += 1;
        }
        let fock = von_neumann_entropy(&Spectrum::from_eigenvalues(spectrum).unwrap()).unwrap();
        assert!((thermal_entropy_g(2.0).unwrap() - fock).abs() < 1e-12);
        // mpmath, 30 digits
        assert!((thermal_entropy_g(2.0).unwrap() - 1.377_443_751_081_734_3).abs() < 1e-13);
    }

    #[test]
    fn two_pure_state_holevo_values() {
        assert_eq!(two_pure_state_holevo(p(0.5), 1.0).unwrap(), 0.0);
        assert!((two_pure_state_holevo(p(0.5), 0.0).unwrap() - 1.0).abs() < 1e-15);
        // mpmath, 30 digits
        let v = two_pure_state_holevo(p(0.5), (-1.0f64).exp()).unwrap();
        assert!((v - 0.715_349_166_710_721_7).abs() < 1e-13);
        assert!(two_pure_state_holevo(p(0.5), 1.5).is_err());
    }

    #[test]
    fn two_pure_state_holevo_monotone_and_peaked() {
        let fs: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let ps: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        for &pp in &ps {
            for w in fs.windows(2) {
                let a = two_pure_state_holevo(p(pp), w[0]).unwrap();
                let b = two_pure_state_holevo(p(pp), w[1]).unwrap();
                assert!(b <= a + 1e-14);
            }
        }
        for &f in &fs {
            let half = two_pure_state_holevo(p(0.5), f).unwrap();
            for &pp in &ps {
                assert!(two_pure_state_holevo(p(pp), f).unwrap() <= half + 1e-14);
            }
        }
    }

    #[test]
    fn low_rank_trivial_cases() {
        let e0 = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let e1 = DVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let pure = vec![(Probability::ONE, vec![(1.0, e0.clone())])];
        assert!(mixture_entropy_low_rank(&pure).unwrap().abs() < 1e-14);
        let mixed = vec![
            (Probability::HALF, vec![(1.0, e0.clone())]),
            (Probability::HALF, vec![(1.0, e1)]),
        ];
        assert!((mixture_entropy_low_rank(&mixed).unwrap() - 1.0).abs() < 1e-14);
        let bad = vec![
            (Probability::HALF, vec![(1.0, e0)]),
            (Probability::HALF, vec![(1.0, DVector::from_element(3, C64::new(0.0, 0.0)))]),
        ];
        assert!(matches!(mixture_entropy_low_rank(&bad), Err(Error::DimensionMismatch(_))));
    }

    fn random_component(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> EigenComponent {
        // Orthonormalize random complex vectors by Gram-Schmidt.
        let mut basis: Vec<DVector<C64>> = Vec::new();
        while basis.len() < rank {
            let mut v = DVector::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
            let n = v.norm();
            if n > 1e-6 {
                basis.push(v / C64::new(n, 0.0));
            }
        }
        let raw: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|l| l / total).zip(basis).collect()
    }

    fn dense_entropy(components: &[(Probability, EigenComponent)], dim: usize) -> f64 {
        let mut rho = DMatrix::<C64>::zeros(dim, dim);
        for (w, eig) in components {
            for (l, v) in eig {
                rho += v * v.adjoint() * C64::new(w.value() * l, 0.0);
            }
        }
        let vals = nalgebra::SymmetricEigen::new(rho).eigenvalues;
        vals.iter().map(|&x| plogp(x.max(0.0))).sum()
    }

    #[test]
    fn low_rank_matches_dense_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let dim = [8, 16, 32, 64][trial % 4];
            let rank = 1 + trial % 8;
            let w = rng.gen_range(0.1..0.9);
            let comps = vec![
                (p(w), random_component(&mut rng, dim, rank)),
                (p(1.0 - w), random_component(&mut rng, dim, 3)),
            ];
            let fast = mixture_entropy_low_rank(&comps).unwrap();
            let dense = dense_entropy(&comps, dim);
            assert!((fast - dense).abs() < 1e-9, "trial {trial}: {fast} vs {dense}");
        }
    }

    proptest! {
        #[test]
        fn binary_entropy_symmetric(x in 0.0f64..=1.0) {
            let a = binary_entropy(p(x));
            let b = binary_entropy(p(1.0 - x));
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn entropy_ignores_order_and_padding(raw in proptest::collection::vec(0.01f64..1.0, 1..10), pad in 0usize..5, seed in 0u64..1000) {
            let total: f64 = raw.iter().sum();
            let norm: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let base = von_neumann_entropy(&Spectrum::from_eigenvalues(norm.clone()).unwrap()).unwrap();
            let mut shuffled = norm.clone();
            shuffled.extend(std::iter::repeat_n(0.0, pad));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let other = von_neumann_entropy(&Spectrum::from_eigenvalues(shuffled).unwrap()).unwrap();
            prop_assert!((base - other).abs() < 1e-12);
        }

        #[test]
        fn thermal_entropy_matches_geometric_spectrum(nbar in 0.0f64..10.0) {
            let t = nbar / (nbar + 1.0);
            let mut spectrum = Vec::new();
            let mut tk = 1.0;
            while tk >= 1e-12 || spectrum.is_empty() {
                spectrum.push((1.0 - t) * tk);
                tk *= t;
                if t == 0.0 { break; }
            }
            let fock: f64 = spectrum.iter().map(|&x| plogp(x)).sum();
            let g = thermal_entropy_g(2.0 * nbar + 1.0).unwrap();
            // Truncation leaves at most ~1e-12 * log2(1e12) of entropy behind.
            prop_assert!((g - fock).abs() < 1e-9);
        }
    }
}
