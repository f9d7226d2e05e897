use crate::error::{Error, Result};
use crate::fock::{
    coherent_ket, fock_ket, noon_ket, squeezed_coherent_ket, tmsv_ket, FockCutoff, FockKet,
    LowRankState,
};
use crate::gaussian::SqueezeParam;
use crate::linalg::C64;

/// Largest per-mode cutoff the automatic policy will try.
const MAX_AUTO_DIM: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransmitterKind {
    /// Single-mode coherent state `|√n>`.
    Coherent,
    /// `copies` two-mode squeezed vacua sharing the signal energy.
    Epr { copies: u32 },
    /// `(|N,0> + |0,N>)/√2` with `N = 2n`.
    Noon,
    /// Number state `|n>`.
    FockNumber,
    /// `D(α)S(ξ)|0>` with `sinh²ξ = splitting * n` and `α² = (1 - splitting) n`.
    SqueezedCoherent { splitting: f64 },
}

/// Signal modes `s`, reference modes `r` and mean signal photons `n` per cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalProfile {
    pub signal_modes: u32,
    pub reference_modes: u32,
    pub photons: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmitter {
    kind: TransmitterKind,
    photons: f64,
    strict_energy: bool,
}

fn integer(x: f64) -> Option<usize> {
    let r = x.round();
    ((x - r).abs() < 1e-9 && r >= 0.0).then_some(r as usize)
}

impl Transmitter {
    /// `photons` is the per-cell energy budget. It counts signal photons
    /// only, unless strict energy accounting is switched on, in which case
    /// it counts signal and reference photons together.
    pub fn new(kind: TransmitterKind, photons: f64) -> Result<Self> {
        let t = Transmitter {
            kind,
            photons,
            strict_energy: false,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn coherent(photons: f64) -> Result<Self> {
        Self::new(TransmitterKind::Coherent, photons)
    }

    pub fn epr(copies: u32, photons: f64) -> Result<Self> {
        Self::new(TransmitterKind::Epr { copies }, photons)
    }

    pub fn noon(photons: f64) -> Result<Self> {
        Self::new(TransmitterKind::Noon, photons)
    }

    pub fn fock(photons: f64) -> Result<Self> {
        Self::new(TransmitterKind::FockNumber, photons)
    }

    pub fn squeezed_coherent(photons: f64, splitting: f64) -> Result<Self> {
        Self::new(TransmitterKind::SqueezedCoherent { splitting }, photons)
    }

    pub fn with_strict_energy(self, strict: bool) -> Result<Self> {
        let t = Transmitter {
            strict_energy: strict,
            ..self
        };
        t.validate()?;
        Ok(t)
    }

    pub fn kind(&self) -> TransmitterKind {
        self.kind
    }

    pub fn photons(&self) -> f64 {
        self.photons
    }

    pub fn strict_energy(&self) -> bool {
        self.strict_energy
    }

    fn has_reference(&self) -> bool {
        matches!(self.kind, TransmitterKind::Epr { .. } | TransmitterKind::Noon)
    }

    /// Mean photons sent into the cell. Under strict accounting a probe with
    /// reference modes splits its budget evenly between signal and reference.
    pub fn signal_photons(&self) -> f64 {
        if self.strict_energy && self.has_reference() {
            self.photons / 2.0
        } else {
            self.photons
        }
    }

    pub fn profile(&self) -> SignalProfile {
        let (s, r) = match self.kind {
            TransmitterKind::Epr { copies } => (copies, copies),
            TransmitterKind::Noon => (1, 1),
            _ => (1, 0),
        };
        SignalProfile {
            signal_modes: s,
            reference_modes: r,
            photons: self.signal_photons(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.photons;
        if !(n >= 0.0 && n.is_finite()) {
            return Err(Error::domain("photons", n, "[0, inf)"));
        }
        match self.kind {
            TransmitterKind::Epr { copies } if !(1..=2).contains(&copies) => {
                Err(Error::InvalidTransmitter(format!(
                    "EPR transmitter supports 1 or 2 copies, got {copies}"
                )))
            }
            TransmitterKind::Noon => match integer(2.0 * self.signal_photons()) {
                Some(big_n) if big_n >= 1 => Ok(()),
                _ => Err(Error::InvalidTransmitter(format!(
                    "NOON state needs 2 x {} signal photons to be a positive integer",
                    self.signal_photons()
                ))),
            },
            TransmitterKind::FockNumber => match integer(n) {
                Some(k) if k >= 1 => Ok(()),
                _ => Err(Error::InvalidTransmitter(format!(
                    "number state needs a positive integer photon number, got {n}"
                ))),
            },
            TransmitterKind::SqueezedCoherent { splitting } if !(0.0..=1.0).contains(&splitting) => {
                Err(Error::domain("splitting", splitting, "[0, 1]"))
            }
            _ => Ok(()),
        }
    }

    /// Mean photons in the busiest mode of one copy; drives the cutoff
    /// heuristic.
    fn busiest_mode_photons(&self) -> f64 {
        match self.kind {
            TransmitterKind::Epr { copies } => self.signal_photons() / copies as f64,
            _ => self.signal_photons(),
        }
    }
}

/// How the Fock cutoff is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cutoff {
    /// Start from `FockCutoff::heuristic` and grow until the probe's tail
    /// mass is below 1e-10.
    #[default]
    Auto,
    /// Use exactly this cutoff and fail if the tail check does not pass.
    Fixed(FockCutoff),
}

/// One copy of a probe state plus how it is used.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub state: LowRankState,
    /// Modes of `state` that pass through the cell.
    pub signal_modes: Vec<usize>,
    /// Number of identical copies irradiated per cell.
    pub copies: u32,
    /// Squeezing of each TMSV copy, for EPR probes.
    pub squeeze: Option<SqueezeParam>,
}

impl Probe {
    pub fn cutoff(&self) -> FockCutoff {
        self.state.space().cutoff
    }
}

fn build_ket(t: &Transmitter, cutoff: FockCutoff) -> Result<FockKet> {
    let n = t.signal_photons();
    match t.kind {
        TransmitterKind::Coherent => coherent_ket(C64::new(n.sqrt(), 0.0), cutoff),
        TransmitterKind::Epr { copies } => {
            tmsv_ket(SqueezeParam::for_photons(n / copies as f64)?, cutoff)
        }
        TransmitterKind::Noon => noon_ket(integer(2.0 * n).unwrap_or(0), cutoff),
        TransmitterKind::FockNumber => fock_ket(integer(n).unwrap_or(0), cutoff),
        TransmitterKind::SqueezedCoherent { splitting } => {
            let xi = (splitting * n).sqrt().asinh();
            let alpha = ((1.0 - splitting) * n).max(0.0).sqrt();
            squeezed_coherent_ket(alpha, xi, cutoff)
        }
    }
}

/// Builds one copy of the probe state for `t`.
pub fn probe(t: &Transmitter, cutoff: Cutoff) -> Result<Probe> {
    t.validate()?;
    let ket = match cutoff {
        Cutoff::Fixed(c) => build_ket(t, c)?,
        Cutoff::Auto => {
            let mut dim = FockCutoff::heuristic(t.busiest_mode_photons()).dim();
            // Number-state probes need room for their largest occupation.
            let n = t.signal_photons();
            dim = match t.kind {
                TransmitterKind::Noon => dim.max(integer(2.0 * n).unwrap_or(0) + 1),
                TransmitterKind::FockNumber => dim.max(integer(n).unwrap_or(0) + 1),
                _ => dim,
            };
            loop {
                match build_ket(t, FockCutoff::new(dim)?) {
                    Err(Error::CutoffTooSmall { .. }) if dim < MAX_AUTO_DIM => {
                        dim = (dim + (dim / 4).max(4)).min(MAX_AUTO_DIM);
                    }
                    other => break other?,
                }
            }
        }
    };
    let copies = match t.kind {
        TransmitterKind::Epr { copies } => copies,
        _ => 1,
    };
    let squeeze = match t.kind {
        TransmitterKind::Epr { copies } => {
            Some(SqueezeParam::for_photons(t.signal_photons() / copies as f64)?)
        }
        _ => None,
    };
    Ok(Probe {
        state: LowRankState::from_ket(&ket),
        signal_modes: vec![0],
        copies,
        squeeze,
    })
}
