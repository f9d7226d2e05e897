use crate::entropy::Probability;
use crate::error::{Error, Result};

/// Binary cell `{kappa0, p; kappa1, 1 - p}` of pure-loss channels.
///
/// `kappa0 == kappa1` is allowed: every capacity is then 0 and every error
/// probability `min(p, 1 - p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureLossCell {
    kappa0: f64,
    kappa1: f64,
    prior: Probability,
}

fn check_kappa(name: &'static str, k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::domain(name, k, "[0, 1]"));
    }
    Ok(k)
}

impl PureLossCell {
    /// `prior` is the probability of the `kappa0` channel.
    pub fn new(kappa0: f64, kappa1: f64, prior: f64) -> Result<Self> {
        Ok(PureLossCell {
            kappa0: check_kappa("kappa0", kappa0)?,
            kappa1: check_kappa("kappa1", kappa1)?,
            prior: Probability::new(prior)?,
        })
    }

    pub fn equiprobable(kappa0: f64, kappa1: f64) -> Result<Self> {
        Self::new(kappa0, kappa1, 0.5)
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }

    pub fn prior(&self) -> Probability {
        self.prior
    }

    pub fn is_degenerate(&self) -> bool {
        self.kappa0 == self.kappa1
    }

    /// Both branches as `(prior, kappa)`.
    pub fn branches(&self) -> [(Probability, f64); 2] {
        [
            (self.prior, self.kappa0),
            (self.prior.complement(), self.kappa1),
        ]
    }

    /// Same reflectivities with the channel labels swapped.
    pub fn relabeled(&self) -> Self {
        PureLossCell {
            kappa0: self.kappa1,
            kappa1: self.kappa0,
            prior: self.prior.complement(),
        }
    }
}
