//! CODATA 2018 constants in SI units.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
