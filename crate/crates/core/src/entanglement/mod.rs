//! Splitting a squeezed coherent beam on a 50-50 beam splitter and testing
//! the two outputs for inseparability.

mod coefficients;
mod criterion;

pub use coefficients::{cs_coefficients, tms_element, CsCoefficients, TmsTable};
pub use criterion::{
    assemble_criterion, criterion_from_moments, criterion_sweep, duan_criterion, input_state,
    oracle_criterion, split_amplitudes, split_state_oracle, Axis, CriterionResult, Grid, SweepRow,
    TwoModeAmplitudes, DEFAULT_CUTOFF, STABILITY_STEP, STABILITY_TOL,
};
