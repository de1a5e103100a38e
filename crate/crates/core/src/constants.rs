//! Physical constants (CODATA 2018 exact or recommended values).
//!
//! Every numerical path in the crate reads constants from here so that
//! outputs are reproducible bit for bit across builds.

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One ångström in metres.
pub const ANGSTROM: f64 = 1e-10;

/// One nanometre in metres.
pub const NANOMETRE: f64 = 1e-9;

/// One zeptojoule in joules.
pub const ZEPTOJOULE: f64 = 1e-21;
