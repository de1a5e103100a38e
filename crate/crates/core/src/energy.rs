//! Casimir–Polder free energy as a Matsubara sum.
//!
//! Retarded:
//!
//! ```text
//! F = ½ α*(0) g(0) + Σ_{n≥1} α*(iξ_n) g(iξ_n)
//! ```
//!
//! Non-retarded (c → ∞):
//!
//! ```text
//! F = −k_B T / (2z³) Σ′ [α*(iξ_n)/ε_w(iξ_n)] (ε − ε_w)/(ε + ε_w)
//! ```
//!
//! F < 0 is attraction towards the interface, F > 0 repulsion.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{g_of_xi, g_static, HalfSpacePair, QuadratureConfig};
use crate::polarizability::AtomModel;
use crate::spectrum::{MatsubaraSpectrum, TRUNCATION_CEILING, TRUNCATION_FLOOR};

/// Energies below this magnitude (J) count as converged zeros.
pub const ABSOLUTE_FLOOR: f64 = 1e-35;

/// Consecutive small tail estimates required before a sum stops early.
const TAIL_STREAK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Retarded,
    Nonretarded,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Retarded => "retarded",
            Regime::Nonretarded => "nonretarded",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance of the Matsubara sum.
    pub sum_rel_tol: f64,
    pub quad: QuadratureConfig,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sum_rel_tol: 1e-8,
            quad: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SampleDiagnostics {
    /// Highest Matsubara index included.
    pub terms: usize,
    /// The a-priori truncation index (0 in the non-retarded regime).
    pub apriori_terms: usize,
    /// Quadrature panels summed over all frequencies.
    pub panels: usize,
    /// Estimated magnitude of the discarded tail, J.
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub z: f64,
    /// Free energy, J.
    pub energy: f64,
    pub diagnostics: SampleDiagnostics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve {
    pub regime: Regime,
    pub samples: Vec<EnergySample>,
}

impl EnergyCurve {
    pub fn separations(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.z).collect()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.energy).collect()
    }
}

/// Geometric-ratio estimate of a slowly decaying series tail.
#[derive(Debug, Default)]
struct TailMonitor {
    previous: Option<f64>,
    streak: usize,
    last_estimate: f64,
}

impl TailMonitor {
    fn push(&mut self, term: f64, threshold: f64) {
        let t = term.abs();
        let estimate = match self.previous {
            _ if t == 0.0 => 0.0,
            Some(p) if t < p => {
                let q = t / p;
                t * q / (1.0 - q)
            }
            _ => f64::INFINITY,
        };
        self.previous = Some(t);
        self.last_estimate = estimate;
        if estimate <= threshold {
            self.streak += 1;
        } else {
            self.streak = 0;
        }
    }

    fn settled(&self) -> bool {
        self.streak >= TAIL_STREAK
    }
}

fn check_separation(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveSeparation(z))
    }
}

fn check_sum_tol(tols: &Tolerances) -> Result<()> {
    if tols.sum_rel_tol > 0.0 && tols.sum_rel_tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "sum rel_tol must lie in (0, 1), got {}",
            tols.sum_rel_tol
        )))
    }
}

/// The half-weighted n = 0 contribution, ½ α*(0) g(0).
pub fn static_term(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
) -> Result<f64> {
    let alpha0 = atom.excess_polarizability(&pair.solvent, 0.0)?;
    Ok(0.5 * alpha0 * g_static(z, pair, spectrum)?)
}

/// One retarded Matsubara term α*(iξ_n) g(iξ_n) for n ≥ 1, plus the panels
/// its quadrature used.
pub fn retarded_term(
    n: usize,
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    quad: &QuadratureConfig,
) -> Result<(f64, usize)> {
    let xi = spectrum.frequency(n);
    let alpha = atom.excess_polarizability(&pair.solvent, xi)?;
    if alpha == 0.0 {
        return Ok((0.0, 0));
    }
    let g = g_of_xi(xi, z, pair, spectrum, quad)?;
    Ok((alpha * g.value, g.panels))
}

/// Retarded free energy at separation `z`.
///
/// Terms are added up to the a-priori truncation index and past it while
/// the geometric tail estimate exceeds `sum_rel_tol` of the partial sum
/// (or of [`ABSOLUTE_FLOOR`], when the sum is smaller). The sum may stop
/// earlier once that estimate has stayed below tolerance for several
/// consecutive terms.
pub fn cp_energy_retarded(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<EnergySample> {
    check_separation(z)?;
    check_sum_tol(tols)?;
    tols.quad.validate()?;

    let apriori = spectrum.truncation_index(z, &pair.solvent, tols.sum_rel_tol)?;
    let mut total = static_term(z, atom, pair, spectrum)?;
    let mut panels = 0;
    let mut monitor = TailMonitor::default();
    let mut last = 0.0;

    for n in 1..=TRUNCATION_CEILING {
        let (term, used) = retarded_term(n, z, atom, pair, spectrum, &tols.quad)?;
        panels += used;
        total += term;
        last = term;
        let threshold = tols.sum_rel_tol * total.abs();
        monitor.push(term, threshold);

        // Below the absolute floor the tolerance is taken relative to the floor.
        let negligible = total.abs() < ABSOLUTE_FLOOR
            && monitor.last_estimate <= tols.sum_rel_tol * ABSOLUTE_FLOOR;
        let apriori_done = n >= apriori && (monitor.last_estimate <= threshold || negligible);
        let tail_done = n >= TRUNCATION_FLOOR && monitor.settled();
        if apriori_done || tail_done {
            let tail = if monitor.last_estimate.is_finite() {
                monitor.last_estimate
            } else {
                term.abs()
            };
            return Ok(EnergySample {
                z,
                energy: total,
                diagnostics: SampleDiagnostics {
                    terms: n,
                    apriori_terms: apriori,
                    panels,
                    tail_estimate: tail,
                },
            });
        }
    }
    Err(Error::SumNotConverged {
        terms: TRUNCATION_CEILING,
        last_term: last,
        partial: total,
    })
}

/// The dimensionless spectral sum Σ′ (α*/ε_w)(ε − ε_w)/(ε + ε_w), in m³,
/// and the highest index it needed.
pub fn nonretarded_coefficient(
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<(f64, usize, f64)> {
    check_sum_tol(tols)?;
    let term = |n: usize| -> Result<f64> {
        let xi = spectrum.frequency(n);
        let alpha = atom.excess_polarizability(&pair.solvent, xi)?;
        let eps_w = pair.solvent.eval_permittivity(xi)?;
        Ok(alpha / eps_w * pair.nonretarded_reflection(xi)?)
    };
    let mut total = 0.5 * term(0)?;
    let mut monitor = TailMonitor::default();
    let mut last = 0.0;
    for n in 1..=TRUNCATION_CEILING {
        let t = term(n)?;
        total += t;
        last = t;
        monitor.push(t, tols.sum_rel_tol * total.abs());
        if n >= TRUNCATION_FLOOR && monitor.settled() {
            return Ok((total, n, monitor.last_estimate));
        }
    }
    Err(Error::SumNotConverged {
        terms: TRUNCATION_CEILING,
        last_term: last,
        partial: total,
    })
}

fn nonretarded_sample(
    z: f64,
    coefficient: (f64, usize, f64),
    spectrum: &MatsubaraSpectrum,
) -> EnergySample {
    let scale = -spectrum.thermal_energy() / (2.0 * z * z * z);
    let (c, terms, tail) = coefficient;
    EnergySample {
        z,
        energy: scale * c,
        diagnostics: SampleDiagnostics {
            terms,
            apriori_terms: 0,
            panels: 0,
            tail_estimate: (scale * tail).abs(),
        },
    }
}

/// Non-retarded (van der Waals) free energy at separation `z`.
pub fn cp_energy_nonretarded(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<EnergySample> {
    check_separation(z)?;
    let coefficient = nonretarded_coefficient(atom, pair, spectrum, tols)?;
    Ok(nonretarded_sample(z, coefficient, spectrum))
}

/// Free energy in either regime.
pub fn cp_energy(
    regime: Regime,
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<EnergySample> {
    match regime {
        Regime::Retarded => cp_energy_retarded(z, atom, pair, spectrum, tols),
        Regime::Nonretarded => cp_energy_nonretarded(z, atom, pair, spectrum, tols),
    }
}

fn check_grid(z_grid: &[f64]) -> Result<()> {
    if let Some(&z) = z_grid.iter().find(|&&z| !(z > 0.0 && z.is_finite())) {
        return Err(Error::NonpositiveSeparation(z));
    }
    if z_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "separation grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Evaluates every grid point, keeping per-point failures. Points are
/// evaluated in parallel; results follow `z_grid` order.
pub fn sweep_outcomes(
    regime: Regime,
    z_grid: &[f64],
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<Vec<Result<EnergySample>>> {
    check_grid(z_grid)?;
    match regime {
        Regime::Retarded => Ok(z_grid
            .par_iter()
            .map(|&z| cp_energy_retarded(z, atom, pair, spectrum, tols))
            .collect()),
        Regime::Nonretarded => match nonretarded_coefficient(atom, pair, spectrum, tols) {
            Ok(c) => Ok(z_grid
                .iter()
                .map(|&z| Ok(nonretarded_sample(z, c, spectrum)))
                .collect()),
            Err(Error::SumNotConverged {
                terms,
                last_term,
                partial,
            }) => Ok(z_grid
                .iter()
                .map(|&z| {
                    let scale = -spectrum.thermal_energy() / (2.0 * z * z * z);
                    Err(Error::SumNotConverged {
                        terms,
                        last_term: scale * last_term,
                        partial: scale * partial,
                    })
                })
                .collect()),
            Err(e) => Err(e),
        },
    }
}

/// Energy curve over `z_grid`; fails if any point fails.
pub fn sweep(
    regime: Regime,
    z_grid: &[f64],
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
) -> Result<EnergyCurve> {
    let samples = sweep_outcomes(regime, z_grid, atom, pair, spectrum, tols)?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyCurve { regime, samples })
}

/// `points` log-spaced separations from `z_min` to `z_max` inclusive.
pub fn log_grid(z_min: f64, z_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(z_min > 0.0 && z_max > z_min && z_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < z_min < z_max, got {z_min}, {z_max}"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    let (lo, hi) = (z_min.ln(), z_max.ln());
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| match k {
            0 => z_min,
            k if k == points - 1 => z_max,
            k => (lo + step * k as f64).exp(),
        })
        .collect())
}
