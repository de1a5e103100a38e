//! Sign crossovers of the retarded free energy.
//!
//! A log-spaced scan brackets every sign change between consecutive
//! non-zero samples; each bracket is then bisected (geometrically) down to
//! a relative width in z.

use serde::Serialize;

use crate::energy::{cp_energy_retarded, log_grid, sweep, EnergyCurve, Regime, Tolerances, ABSOLUTE_FLOOR};
use crate::error::Result;
use crate::kernel::HalfSpacePair;
use crate::polarizability::AtomModel;
use crate::spectrum::MatsubaraSpectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverConfig {
    pub scan_points: usize,
    /// Bisection stops once z_hi/z_lo − 1 falls below this.
    pub z_rel_tol: f64,
}

impl Default for CrossoverConfig {
    fn default() -> Self {
        Self {
            scan_points: 128,
            z_rel_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub z_lo: f64,
    pub z_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub z: f64,
    /// F at `z`, J.
    pub energy: f64,
    /// Final bisection interval.
    pub refined: Bracket,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverReport {
    /// Scan brackets, one per sign change.
    pub brackets: Vec<Bracket>,
    pub roots: Vec<Root>,
    pub z_rel_tol: f64,
    /// Largest |F| a refined root may carry, J.
    pub energy_tol: f64,
    /// e.g. "repulsive→attractive", "attractive", "null".
    pub sign_pattern: String,
    pub scan: EnergyCurve,
}

impl CrossoverReport {
    pub fn root_positions(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.z).collect()
    }
}

/// -1, 0 or +1, treating energies under the absolute floor as zero.
pub fn energy_sign(energy: f64) -> i8 {
    if energy.abs() < ABSOLUTE_FLOOR {
        0
    } else if energy > 0.0 {
        1
    } else {
        -1
    }
}

fn sign_word(sign: i8) -> &'static str {
    if sign > 0 {
        "repulsive"
    } else {
        "attractive"
    }
}

/// Collapses the signs of a scan into a pattern such as
/// "repulsive→attractive".
pub fn sign_pattern(energies: &[f64]) -> String {
    let mut runs: Vec<i8> = Vec::new();
    for s in energies.iter().map(|&e| energy_sign(e)).filter(|&s| s != 0) {
        if runs.last() != Some(&s) {
            runs.push(s);
        }
    }
    if runs.is_empty() {
        return "null".into();
    }
    runs.iter().map(|&s| sign_word(s)).collect::<Vec<_>>().join("→")
}

/// Scans `[z_min, z_max]` for sign changes of the retarded energy and
/// refines each one by bisection.
pub fn find_crossover(
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    z_min: f64,
    z_max: f64,
    tols: &Tolerances,
    config: &CrossoverConfig,
) -> Result<CrossoverReport> {
    let grid = log_grid(z_min, z_max, config.scan_points)?;
    let scan = sweep(Regime::Retarded, &grid, atom, pair, spectrum, tols)?;

    let nonzero: Vec<(f64, f64)> = scan
        .samples
        .iter()
        .filter(|s| energy_sign(s.energy) != 0)
        .map(|s| (s.z, s.energy))
        .collect();

    let mut brackets = Vec::new();
    let mut roots = Vec::new();
    let mut energy_tol: f64 = 0.0;
    for w in nonzero.windows(2) {
        let ((z_lo, f_lo), (z_hi, f_hi)) = (w[0], w[1]);
        if energy_sign(f_lo) == energy_sign(f_hi) {
            continue;
        }
        brackets.push(Bracket { z_lo, z_hi });
        energy_tol = energy_tol.max(1e-4 * f_lo.abs().max(f_hi.abs()));
        roots.push(bisect(z_lo, f_lo, z_hi, atom, pair, spectrum, tols, config.z_rel_tol)?);
    }

    Ok(CrossoverReport {
        brackets,
        roots,
        z_rel_tol: config.z_rel_tol,
        energy_tol,
        sign_pattern: sign_pattern(&scan.energies()),
        scan,
    })
}

#[allow(clippy::too_many_arguments)]
fn bisect(
    mut lo: f64,
    f_lo: f64,
    mut hi: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    tols: &Tolerances,
    z_rel_tol: f64,
) -> Result<Root> {
    // Inside a bracket the raw sign is used: |F| drops below the absolute
    // floor well before the relative z tolerance is reached.
    let below = f_lo < 0.0;
    while hi / lo - 1.0 > z_rel_tol {
        let mid = (lo * hi).sqrt();
        let f = cp_energy_retarded(mid, atom, pair, spectrum, tols)?.energy;
        if f == 0.0 {
            lo = mid;
            hi = mid;
        } else if (f < 0.0) == below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z = (lo * hi).sqrt();
    let energy = cp_energy_retarded(z, atom, pair, spectrum, tols)?.energy;
    Ok(Root {
        z,
        energy,
        refined: Bracket { z_lo: lo, z_hi: hi },
    })
}
