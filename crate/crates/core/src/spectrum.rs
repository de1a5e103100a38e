//! Matsubara frequency ladder ξ_n = 2πn k_B T / ħ and sum truncation.

use std::f64::consts::PI;

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::DielectricModel;

/// Fewest terms a truncated Matsubara sum may keep.
pub const TRUNCATION_FLOOR: usize = 64;
/// Most terms a truncated Matsubara sum may keep.
pub const TRUNCATION_CEILING: usize = 1_000_000;

/// Default temperature, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

/// Temperature-derived frequency ladder, together with the propagation
/// speed used for retardation.
///
/// The light speed is normally [`SPEED_OF_LIGHT`]; inflating it switches
/// retardation off, which is how the non-retarded limit is checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSpectrum {
    temperature: f64,
    light_speed: f64,
    xi1: f64,
}

impl MatsubaraSpectrum {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(Error::NonpositiveTemperature(temperature));
        }
        Ok(Self {
            temperature,
            light_speed: SPEED_OF_LIGHT,
            xi1: 2.0 * PI * BOLTZMANN * temperature / HBAR,
        })
    }

    /// Same ladder with the speed of light multiplied by `factor`.
    pub fn with_light_speed_factor(mut self, factor: f64) -> Self {
        self.light_speed = SPEED_OF_LIGHT * factor;
        self
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    /// k_B T in joules.
    pub fn thermal_energy(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    /// First nonzero Matsubara frequency, rad/s.
    pub fn fundamental(&self) -> f64 {
        self.xi1
    }

    /// ξ_n in rad/s.
    #[inline]
    pub fn frequency(&self, n: usize) -> f64 {
        n as f64 * self.xi1
    }

    /// Smallest N for which the retardation factor
    /// exp(−2z√ε_w(iξ_N) ξ_N / c) drops below `rel_tol`, clamped to
    /// [`TRUNCATION_FLOOR`], [`TRUNCATION_CEILING`].
    pub fn truncation_index(&self, z: f64, solvent: &DielectricModel, rel_tol: f64) -> Result<usize> {
        if !(z > 0.0) {
            return Err(Error::NonpositiveSeparation(z));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        let target = (1.0 / rel_tol).ln();
        let scale = 2.0 * z / self.light_speed;
        let exponent = |n: usize| -> Result<f64> {
            let xi = self.frequency(n);
            Ok(scale * solvent.eval_permittivity(xi)?.sqrt() * xi)
        };

        // ε_w is non-increasing, so no N below this can satisfy the bound.
        let eps_max = solvent.eval_permittivity(0.0)?;
        let lower = target / (scale * eps_max.sqrt() * self.xi1);
        let mut n = if lower.is_finite() {
            (lower.floor() as usize).clamp(1, TRUNCATION_CEILING)
        } else {
            TRUNCATION_CEILING
        };
        while n < TRUNCATION_CEILING && exponent(n)? <= target {
            n += 1;
        }
        Ok(n.clamp(TRUNCATION_FLOOR, TRUNCATION_CEILING))
    }
}

/// Free-function form of [`MatsubaraSpectrum::frequency`].
pub fn matsubara_frequency(spectrum: &MatsubaraSpectrum, n: usize) -> f64 {
    spectrum.frequency(n)
}
