//! Memory cells, transmitters and the information they let a reader extract.

mod bounds;
mod cell;
mod ensemble;
mod evaluate;
mod transmitter;

pub use bounds::{
    bhattacharyya_omega, classical_reading_capacity, classical_single_cell_error,
    classical_single_cell_info, epr_bhattacharyya_bound, epr_q_rate, epr_q_rate_ideal,
    epr_theta_finite, epr_theta_ideal, ideal_threshold_energy, mutual_info_single_cell,
    threshold_energy, unconstrained_capacity,
};
pub use cell::PureLossCell;
pub use ensemble::{
    helstrom_error, helstrom_error_dense, holevo_chi, holevo_chi_dense, output_ensemble,
    OutputEnsemble,
};
pub use evaluate::{
    information_gain, optimize_squeezed_coherent, transmitter_chi, SqueezedOptimum,
    TransmitterChi,
};
pub use transmitter::{probe, Cutoff, Probe, SignalProfile, Transmitter, TransmitterKind};
