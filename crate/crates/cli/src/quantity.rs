//! Named quantities a table column can hold, and their evaluation at one
//! grid point.

use std::fmt;
use std::str::FromStr;

use qreading::reading::{
    bhattacharyya_omega, classical_reading_capacity, classical_single_cell_error,
    classical_single_cell_info, epr_bhattacharyya_bound, epr_q_rate, epr_q_rate_ideal,
    epr_theta_ideal, ideal_threshold_energy, information_gain, optimize_squeezed_coherent,
    threshold_energy, transmitter_chi, unconstrained_capacity, Cutoff, PureLossCell,
    SqueezedOptimum, Transmitter,
};

/// Parameters a grid point may fix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Kappa0,
    Kappa1,
    Prior,
    Photons,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Kappa0, Param::Kappa1, Param::Prior, Param::Photons];

    pub fn name(self) -> &'static str {
        match self {
            Param::Kappa0 => "kappa0",
            Param::Kappa1 => "kappa1",
            Param::Prior => "prior",
            Param::Photons => "photons",
        }
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter `{s}` (expected kappa0, kappa1, prior or photons)"))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values of the four parameters at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params {
    pub kappa0: Option<f64>,
    pub kappa1: Option<f64>,
    pub prior: Option<f64>,
    pub photons: Option<f64>,
}

impl Params {
    pub fn get(&self, p: Param) -> Option<f64> {
        match p {
            Param::Kappa0 => self.kappa0,
            Param::Kappa1 => self.kappa1,
            Param::Prior => self.prior,
            Param::Photons => self.photons,
        }
    }

    pub fn set(&mut self, p: Param, value: f64) {
        let slot = match p {
            Param::Kappa0 => &mut self.kappa0,
            Param::Kappa1 => &mut self.kappa1,
            Param::Prior => &mut self.prior,
            Param::Photons => &mut self.photons,
        };
        *slot = Some(value);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Classical reading capacity `C_c`.
    Cc,
    /// Single-cell classical information `1 - H(P_c)`.
    Ic,
    /// Single-cell classical error `P_c`.
    Pc,
    /// Bhattacharyya exponent `ω`.
    Omega,
    /// EPR Bhattacharyya bound `exp(-ωn)/2`.
    Bhatt,
    /// Threshold energy `n_th`.
    Nth,
    /// Threshold energy of an ideal memory, 1/2.
    NthIdeal,
    /// `θ` for an ideal memory.
    ThetaIdeal,
    /// `Q(1, n)`.
    Q1,
    /// `Q(∞, n)`.
    Qinf,
    /// `Q(1, n/2)`.
    Q1Half,
    /// `Q(∞, n/2)`.
    QinfHalf,
    /// Unconstrained capacity `H(p)`.
    HPrior,
    ChiCoh,
    ChiEpr1,
    ChiEpr2,
    ChiNoon,
    ChiFock,
    /// Optimized squeezed-coherent χ.
    ChiSqz,
    /// Squeezing fraction of the optimized squeezed-coherent probe.
    SqzSplit,
    /// `χ_epr(1,1) - C_c`.
    Gain,
}

impl Quantity {
    pub const ALL: [Quantity; 21] = [
        Quantity::Cc,
        Quantity::Ic,
        Quantity::Pc,
        Quantity::Omega,
        Quantity::Bhatt,
        Quantity::Nth,
        Quantity::NthIdeal,
        Quantity::ThetaIdeal,
        Quantity::Q1,
        Quantity::Qinf,
        Quantity::Q1Half,
        Quantity::QinfHalf,
        Quantity::HPrior,
        Quantity::ChiCoh,
        Quantity::ChiEpr1,
        Quantity::ChiEpr2,
        Quantity::ChiNoon,
        Quantity::ChiFock,
        Quantity::ChiSqz,
        Quantity::SqzSplit,
        Quantity::Gain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Cc => "cc",
            Quantity::Ic => "ic",
            Quantity::Pc => "pc",
            Quantity::Omega => "omega",
            Quantity::Bhatt => "bhatt",
            Quantity::Nth => "nth",
            Quantity::NthIdeal => "nth-ideal",
            Quantity::ThetaIdeal => "theta-ideal",
            Quantity::Q1 => "q1",
            Quantity::Qinf => "qinf",
            Quantity::Q1Half => "q1-half",
            Quantity::QinfHalf => "qinf-half",
            Quantity::HPrior => "h-prior",
            Quantity::ChiCoh => "chi-coh",
            Quantity::ChiEpr1 => "chi-epr1",
            Quantity::ChiEpr2 => "chi-epr2",
            Quantity::ChiNoon => "chi-noon",
            Quantity::ChiFock => "chi-fock",
            Quantity::ChiSqz => "chi-sqz",
            Quantity::SqzSplit => "sqz-split",
            Quantity::Gain => "gain",
        }
    }

    /// Parameters the quantity reads.
    pub fn needs(self) -> &'static [Param] {
        use Param::*;
        match self {
            Quantity::Omega | Quantity::Nth | Quantity::NthIdeal => &[Kappa0, Kappa1],
            Quantity::HPrior => &[Prior],
            Quantity::ThetaIdeal
            | Quantity::Q1
            | Quantity::Qinf
            | Quantity::Q1Half
            | Quantity::QinfHalf => &[Kappa0, Photons],
            Quantity::Ic | Quantity::Pc | Quantity::Bhatt => &[Kappa0, Kappa1, Photons],
            _ => &[Kappa0, Kappa1, Prior, Photons],
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Quantity::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Quantity::ALL.iter().map(|q| q.name()).collect();
            format!("unknown quantity `{s}` (expected one of {})", names.join(", "))
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated cell of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Value {
    pub value: f64,
    /// Per-mode Fock cutoff used, for Fock-engine quantities.
    pub cutoff: Option<usize>,
}

impl Value {
    fn closed(value: f64) -> Self {
        Value { value, cutoff: None }
    }

    fn fock(value: f64, cutoff: usize) -> Self {
        Value {
            value,
            cutoff: Some(cutoff),
        }
    }
}

fn require(params: &Params, p: Param) -> qreading::Result<f64> {
    // Callers check requirements up front; this only guards direct use.
    params.get(p).ok_or(qreading::Error::Domain {
        name: p.name(),
        value: f64::NAN,
        domain: "a value supplied by flag or axis",
    })
}

/// Evaluates `quantities` at one point. The squeezed-coherent optimization is
/// shared between `chi-sqz` and `sqz-split`.
pub fn evaluate(quantities: &[Quantity], params: &Params, cutoff: Cutoff) -> qreading::Result<Vec<Value>> {
    let cell = || -> qreading::Result<PureLossCell> {
        PureLossCell::new(
            require(params, Param::Kappa0)?,
            require(params, Param::Kappa1)?,
            params.prior.unwrap_or(0.5),
        )
    };
    let kappa0 = || require(params, Param::Kappa0);
    let photons = || require(params, Param::Photons);
    let mut squeezed: Option<SqueezedOptimum> = None;
    let optimum = |squeezed: &mut Option<SqueezedOptimum>| -> qreading::Result<SqueezedOptimum> {
        if let Some(o) = squeezed {
            return Ok(*o);
        }
        let o = optimize_squeezed_coherent(&cell()?, photons()?, cutoff)?;
        *squeezed = Some(o);
        Ok(o)
    };
    let chi = |t: qreading::Result<Transmitter>| -> qreading::Result<Value> {
        let r = transmitter_chi(&cell()?, &t?, cutoff)?;
        Ok(Value::fock(r.bits, r.cutoff))
    };
    quantities
        .iter()
        .map(|q| -> qreading::Result<Value> {
            Ok(match q {
                Quantity::Cc => Value::closed(classical_reading_capacity(&cell()?, photons()?)?),
                Quantity::Ic => Value::closed(classical_single_cell_info(&cell()?, photons()?)?),
                Quantity::Pc => {
                    Value::closed(classical_single_cell_error(&cell()?, photons()?)?.value())
                }
                Quantity::Omega => Value::closed(bhattacharyya_omega(&cell()?)),
                Quantity::Bhatt => {
                    Value::closed(epr_bhattacharyya_bound(&cell()?, photons()?)?.value())
                }
                Quantity::Nth => Value::closed(threshold_energy(&cell()?)?),
                Quantity::NthIdeal => Value::closed(ideal_threshold_energy(&cell()?)?),
                Quantity::ThetaIdeal => Value::closed(epr_theta_ideal(kappa0()?, photons()?)?.value()),
                Quantity::Q1 => Value::closed(epr_q_rate(kappa0()?, 1, photons()?)?),
                Quantity::Qinf => Value::closed(epr_q_rate_ideal(kappa0()?, photons()?)?),
                Quantity::Q1Half => Value::closed(epr_q_rate(kappa0()?, 1, photons()? / 2.0)?),
                Quantity::QinfHalf => Value::closed(epr_q_rate_ideal(kappa0()?, photons()? / 2.0)?),
                Quantity::HPrior => {
                    // The prior alone fixes H(p); the reflectivities are irrelevant.
                    let p = params.prior.unwrap_or(0.5);
                    Value::closed(unconstrained_capacity(&PureLossCell::new(0.0, 1.0, p)?))
                }
                Quantity::ChiCoh => chi(Transmitter::coherent(photons()?))?,
                Quantity::ChiEpr1 => chi(Transmitter::epr(1, photons()?))?,
                Quantity::ChiEpr2 => chi(Transmitter::epr(2, photons()?))?,
                Quantity::ChiNoon => chi(Transmitter::noon(photons()?))?,
                Quantity::ChiFock => chi(Transmitter::fock(photons()?))?,
                Quantity::ChiSqz => {
                    let o = optimum(&mut squeezed)?;
                    Value::fock(o.bits, o.cutoff)
                }
                Quantity::SqzSplit => {
                    let o = optimum(&mut squeezed)?;
                    Value::fock(o.splitting, o.cutoff)
                }
                Quantity::Gain => {
                    let g = information_gain(&cell()?, photons()?, cutoff)?;
                    Value::fock(g.bits, g.cutoff)
                }
            })
        })
        .collect()
}
