//! Closed-form discrimination bounds and capacities for binary pure-loss
//! cells.

use super::PureLossCell;
use crate::entropy::{binary_entropy, two_pure_state_holevo, Bits, Probability};
use crate::error::{Error, Result};

fn check_photons(n: f64) -> Result<f64> {
    if !(n >= 0.0 && n.is_finite()) {
        return Err(Error::domain("photons", n, "[0, inf)"));
    }
    Ok(n)
}

fn check_kappa(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::domain("kappa0", k, "[0, 1]"));
    }
    Ok(k)
}

/// Overlap `|<√(κ0 n)|√(κ1 n)>|² = exp(-n (√κ0 - √κ1)²)` of the two coherent
/// outputs.
fn coherent_output_fidelity(cell: &PureLossCell, n: f64) -> f64 {
    let d = cell.kappa0().sqrt() - cell.kappa1().sqrt();
    (-n * d * d).exp()
}

/// Helstrom error of the best classical transmitter on an equiprobable cell:
/// `(1 - sqrt(1 - F)) / 2` with `F` the coherent-output overlap. The cell
/// prior is ignored; this bound is only defined for `p = 1/2`.
pub fn classical_single_cell_error(cell: &PureLossCell, n: f64) -> Result<Probability> {
    let f = coherent_output_fidelity(cell, check_photons(n)?);
    // (1 - sqrt(1 - F)) / 2 rewritten to avoid cancellation when F is tiny.
    Probability::new(f / (2.0 * (1.0 + (1.0 - f).max(0.0).sqrt())))
}

/// `1 - H(P_c)`.
pub fn classical_single_cell_info(cell: &PureLossCell, n: f64) -> Result<Bits> {
    Ok(mutual_info_single_cell(classical_single_cell_error(cell, n)?))
}

/// Holevo information of the coherent transmitter `|√n>`, which is optimal
/// among all classical transmitters at signal energy `n`.
pub fn classical_reading_capacity(cell: &PureLossCell, n: f64) -> Result<Bits> {
    let f = coherent_output_fidelity(cell, check_photons(n)?);
    two_pure_state_holevo(cell.prior(), f)
}

/// Exponent of the Gaussian Bhattacharyya bound for the EPR transmitter.
pub fn bhattacharyya_omega(cell: &PureLossCell) -> f64 {
    let (k0, k1) = (cell.kappa0(), cell.kappa1());
    let w = (k0 + k1 + 2.0) / 2.0 - 2.0 * (k0 * k1).sqrt() - ((1.0 - k0) * (1.0 - k1)).sqrt();
    w.max(0.0)
}

/// `exp(-ω n) / 2`, an upper bound on the EPR transmitter's error.
pub fn epr_bhattacharyya_bound(cell: &PureLossCell, n: f64) -> Result<Probability> {
    Probability::new((-bhattacharyya_omega(cell) * check_photons(n)?).exp() / 2.0)
}

/// Energy above which the Bhattacharyya bound beats the classical bound:
/// `2 ln 2 / (2 - κ0 - κ1 - 2 sqrt((1-κ0)(1-κ1)))`.
pub fn threshold_energy(cell: &PureLossCell) -> Result<f64> {
    let (k0, k1) = (cell.kappa0(), cell.kappa1());
    let den = 2.0 - k0 - k1 - 2.0 * ((1.0 - k0) * (1.0 - k1)).sqrt();
    if den <= 1e-12 {
        return Err(Error::DegenerateCell(format!(
            "threshold denominator {den:e} for kappa0 = {k0}, kappa1 = {k1}"
        )));
    }
    Ok(2.0 * std::f64::consts::LN_2 / den)
}

/// Threshold energy of an ideal memory (one reflectivity equal to 1), for
/// which the improved bound `θ` applies: 1/2.
pub fn ideal_threshold_energy(cell: &PureLossCell) -> Result<f64> {
    let (k0, k1) = (cell.kappa0(), cell.kappa1());
    if (k1 == 1.0 && k0 < 1.0) || (k0 == 1.0 && k1 < 1.0) {
        Ok(0.5)
    } else {
        Err(Error::DegenerateCell(format!(
            "ideal-memory threshold needs exactly one reflectivity equal to 1, got {k0} and {k1}"
        )))
    }
}

/// `θ = exp(-2n(1 - √κ0)) / 2` for an ideal memory `κ1 = 1`.
pub fn epr_theta_ideal(kappa0: f64, n: f64) -> Result<Probability> {
    let k = check_kappa(kappa0)?;
    let n = check_photons(n)?;
    Probability::new((-2.0 * n * (1.0 - k.sqrt())).exp() / 2.0)
}

/// `Θ = [1 + (n/s)(1 - √κ0)]^{-2s} / 2` for `s` TMSV copies on an ideal
/// memory.
pub fn epr_theta_finite(kappa0: f64, copies: u64, n: f64) -> Result<Probability> {
    let k = check_kappa(kappa0)?;
    let n = check_photons(n)?;
    if copies == 0 {
        return Err(Error::domain("copies", 0.0, "[1, inf)"));
    }
    let s = copies as f64;
    let x = n / s * (1.0 - k.sqrt());
    Probability::new((-2.0 * s * x.ln_1p()).exp() / 2.0)
}

/// `Q = 1 - H(Θ)`, a lower bound on the single-cell information of `s` TMSV
/// copies.
pub fn epr_q_rate(kappa0: f64, copies: u64, n: f64) -> Result<Bits> {
    Ok(mutual_info_single_cell(epr_theta_finite(kappa0, copies, n)?))
}

/// `Q` in the limit of infinitely many weak copies, `1 - H(θ)`.
pub fn epr_q_rate_ideal(kappa0: f64, n: f64) -> Result<Bits> {
    Ok(mutual_info_single_cell(epr_theta_ideal(kappa0, n)?))
}

/// Without an energy constraint the outputs become orthogonal and the cell
/// yields its full prior entropy.
pub fn unconstrained_capacity(cell: &PureLossCell) -> Bits {
    binary_entropy(cell.prior())
}

/// `1 - H(p_err)` for an equiprobable binary cell.
pub fn mutual_info_single_cell(p_err: Probability) -> Bits {
    1.0 - binary_entropy(p_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cell(k0: f64, k1: f64) -> PureLossCell {
        PureLossCell::equiprobable(k0, k1).unwrap()
    }

    fn grid() -> Vec<f64> {
        (0..=10).map(|i| i as f64 / 10.0).collect()
    }

    // Expected values below were evaluated with mpmath at 30 digits from the
    // defining formulas.

    #[test]
    fn classical_error_examples() {
        for n in [0.0, 1.0, 10.0] {
            assert_eq!(classical_single_cell_error(&cell(0.4, 0.4), n).unwrap().value(), 0.5);
        }
        assert_eq!(classical_single_cell_error(&cell(0.1, 0.9), 0.0).unwrap().value(), 0.5);
        let v = classical_single_cell_error(&cell(0.25, 1.0), 1.0).unwrap().value();
        assert!((v - 0.264_840_895_919_063_4).abs() < 1e-14);
        assert!(classical_single_cell_error(&cell(0.25, 1.0), -1.0).is_err());
    }

    #[test]
    fn classical_info_examples() {
        assert_eq!(classical_single_cell_info(&cell(0.5, 0.9), 0.0).unwrap(), 0.0);
        let v = classical_single_cell_info(&cell(0.5, 0.9), 5.0).unwrap();
        assert!((v - 0.191_163_658_535_524_7).abs() < 1e-13);
        assert!(classical_single_cell_info(&cell(0.0, 1.0), 200.0).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn capacity_examples() {
        let p0 = PureLossCell::new(0.2, 0.9, 0.0).unwrap();
        for n in [0.0, 1.0, 50.0] {
            assert_eq!(classical_reading_capacity(&p0, n).unwrap(), 0.0);
        }
        assert!((classical_reading_capacity(&cell(0.0, 1.0), 100.0).unwrap() - 1.0).abs() < 1e-12);
        let v = classical_reading_capacity(&cell(0.5, 0.9), 5.0).unwrap();
        assert!((v - 0.357_950_950_626_827_1).abs() < 1e-13);
        assert_eq!(classical_reading_capacity(&cell(0.3, 0.3), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn omega_and_bhattacharyya() {
        for k in grid() {
            assert!(bhattacharyya_omega(&cell(k, k)).abs() < 1e-15);
        }
        assert!((bhattacharyya_omega(&cell(0.0, 1.0)) - 1.5).abs() < 1e-15);
        let w = bhattacharyya_omega(&cell(0.5, 0.9));
        assert!((w - 0.134_752_415_750_147_2).abs() < 1e-14);
        assert_eq!(epr_bhattacharyya_bound(&cell(0.2, 0.7), 0.0).unwrap().value(), 0.5);
        assert_eq!(epr_bhattacharyya_bound(&cell(0.7, 0.7), 3.0).unwrap().value(), 0.5);
        let b = epr_bhattacharyya_bound(&cell(0.0, 1.0), 1.0).unwrap().value();
        assert!((b - 0.111_565_080_074_214_9).abs() < 1e-15);
    }

    #[test]
    fn thresholds() {
        let t = threshold_energy(&cell(0.0, 1.0)).unwrap();
        assert!((t - 1.386_294_361_119_890_6).abs() < 1e-14);
        let t = threshold_energy(&cell(0.5, 1.0)).unwrap();
        assert!((t - 4.0 * std::f64::consts::LN_2).abs() < 1e-14);
        assert!(matches!(threshold_energy(&cell(0.4, 0.4)), Err(Error::DegenerateCell(_))));
        assert_eq!(ideal_threshold_energy(&cell(0.2, 1.0)).unwrap(), 0.5);
        assert!(ideal_threshold_energy(&cell(0.2, 0.9)).is_err());
        assert!(ideal_threshold_energy(&cell(1.0, 1.0)).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(epr_theta_ideal(0.3, 0.0).unwrap().value(), 0.5);
        assert_eq!(epr_theta_ideal(1.0, 7.0).unwrap().value(), 0.5);
        let t = epr_theta_ideal(0.0, 1.0).unwrap().value();
        assert!((t - 0.067_667_641_618_306_35).abs() < 1e-15);
        assert_eq!(epr_theta_finite(0.0, 1, 1.0).unwrap().value(), 0.125);
        for s in [1, 2, 10, 1000] {
            assert_eq!(epr_theta_finite(0.4, s, 0.0).unwrap().value(), 0.5);
        }
        let big = epr_theta_finite(0.0, 1_000_000, 1.0).unwrap().value();
        assert!((big - t).abs() < 1e-5);
        assert!(epr_theta_finite(0.0, 0, 1.0).is_err());
    }

    #[test]
    fn q_rate_examples() {
        assert_eq!(epr_q_rate(0.2, 3, 0.0).unwrap(), 0.0);
        let q = epr_q_rate(0.0, 1, 1.0).unwrap();
        assert!((q - 0.456_435_556_800_403_6).abs() < 1e-14);
        assert!(epr_q_rate_ideal(0.0, 1.0).unwrap() > q);
    }

    #[test]
    fn single_cell_info_examples() {
        assert_eq!(mutual_info_single_cell(Probability::HALF), 0.0);
        assert_eq!(mutual_info_single_cell(Probability::ZERO), 1.0);
        let v = mutual_info_single_cell(Probability::new(0.264845).unwrap());
        assert!((v - 0.166_030_114_669_718_97).abs() < 1e-13);
        assert_eq!(unconstrained_capacity(&PureLossCell::new(0.1, 0.2, 0.5).unwrap()), 1.0);
        assert_eq!(unconstrained_capacity(&PureLossCell::new(0.1, 0.2, 0.0).unwrap()), 0.0);
        let v = unconstrained_capacity(&PureLossCell::new(0.1, 0.2, 0.25).unwrap());
        assert!((v - 0.811_278_124_459_132_9).abs() < 1e-14);
    }

    #[test]
    fn multi_cell_dominates_single_cell() {
        for k0 in grid() {
            for k1 in grid() {
                for n in [0.5, 1.0, 2.0, 5.0] {
                    let c = cell(k0, k1);
                    let cc = classical_reading_capacity(&c, n).unwrap();
                    let ic = classical_single_cell_info(&c, n).unwrap();
                    assert!(cc >= ic - 1e-14, "{k0} {k1} {n}: {cc} < {ic}");
                }
            }
        }
    }

    #[test]
    fn capacity_is_concave_in_energy() {
        let ns: Vec<f64> = (0..=60).map(|i| i as f64 * 0.25).collect();
        for k0 in grid() {
            for k1 in grid() {
                for p in [0.1, 0.5, 0.9] {
                    let c = PureLossCell::new(k0, k1, p).unwrap();
                    for (i, &a) in ns.iter().enumerate() {
                        for &b in ns.iter().skip(i + 1).step_by(7) {
                            let mid = classical_reading_capacity(&c, (a + b) / 2.0).unwrap();
                            let avg = (classical_reading_capacity(&c, a).unwrap()
                                + classical_reading_capacity(&c, b).unwrap())
                                / 2.0;
                            assert!(mid >= avg - 1e-10, "{k0} {k1} {p}: C({}) = {mid} < {avg}", (a + b) / 2.0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn capacity_relabeling_symmetry() {
        for k0 in grid() {
            for k1 in grid() {
                let c = PureLossCell::new(k0, k1, 0.3).unwrap();
                let a = classical_reading_capacity(&c, 2.0).unwrap();
                let b = classical_reading_capacity(&c.relabeled(), 2.0).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn bhattacharyya_beats_classical_above_threshold() {
        for k0 in grid() {
            for k1 in grid() {
                if k0 == k1 {
                    continue;
                }
                let c = cell(k0, k1);
                let n = 1.01 * threshold_energy(&c).unwrap();
                let b = epr_bhattacharyya_bound(&c, n).unwrap();
                let pc = classical_single_cell_error(&c, n).unwrap();
                assert!(b < pc, "{k0} {k1}: B = {b:?}, Pc = {pc:?}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = cell(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let n = 1.01 * threshold_energy(&c).unwrap();
            assert!(epr_bhattacharyya_bound(&c, n).unwrap() < classical_single_cell_error(&c, n).unwrap());
        }
    }

    #[test]
    fn ideal_memory_threshold_is_sufficient() {
        for k0 in [0.0, 0.2, 0.4, 0.6, 0.8] {
            let c = cell(k0, 1.0);
            for n in [0.51, 0.6, 1.0, 2.0] {
                let theta = epr_theta_ideal(k0, n).unwrap();
                assert!(theta < classical_single_cell_error(&c, n).unwrap());
            }
            // Independent check: bisect for the energy where θ and P_c cross.
            // The stated threshold 1/2 must lie at or above it.
            let gap = |n: f64| {
                epr_theta_ideal(k0, n).unwrap().value()
                    - classical_single_cell_error(&c, n).unwrap().value()
            };
            let (mut lo, mut hi) = (1e-6, 0.5);
            if gap(lo) > 0.0 {
                assert!(gap(hi) < 0.0);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if gap(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                assert!(hi <= 0.5);
            }
        }
    }

    #[test]
    fn q_rate_increases_with_copies() {
        for k0 in [0.0, 0.3, 0.6] {
            for n in [1.0, 5.0] {
                let qs: Vec<f64> = (1..=64).map(|s| epr_q_rate(k0, s, n).unwrap()).collect();
                for w in qs.windows(2) {
                    assert!(w[1] >= w[0]);
                }
                assert!(epr_q_rate_ideal(k0, n).unwrap() >= qs[63]);
            }
        }
    }
}
