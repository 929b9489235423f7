//! Photonic-crystal bands and the source design chain.

pub mod constants;
mod dispersion;
mod pipeline;

pub use dispersion::{
    band_frequencies, band_frequency, band_point, dispersion_residual, group_velocity,
    pump_band_diagnostic, solve_k_for_vg, BandPoint, CrystalSpec, PumpDiagnostic,
};
pub use pipeline::{
    design, displacement_parameter, gain_rate, lap_times, lie_trotter_alpha_prime,
    mean_photon_number, output_flux, pump_amplitude, squeezing_level_db, squeezing_parameter,
    DesignReport, LapTimes, ResonatorScenario, Squeezing,
};
