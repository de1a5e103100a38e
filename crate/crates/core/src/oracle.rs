//! Slow, fixed-grid reference evaluations used to check the adaptive
//! engine. Nothing here adapts to the integrand: every frequency gets the
//! same dense grid and the Matsubara sum runs over a fixed index range.
//!
//! The integrand is written directly in terms of k, γ, γ_w and the plain
//! Fresnel ratios, independently of the factored forms in
//! [`crate::kernel`].

use crate::error::{Error, Result};
use crate::kernel::HalfSpacePair;
use crate::polarizability::AtomModel;
use crate::spectrum::MatsubaraSpectrum;

/// Node count of the kernel-level trapezoid oracle.
pub const TRAPEZOID_NODES: usize = 1_000_001;
/// Node count of the per-frequency Simpson grid in [`oracle_energy`].
pub const SIMPSON_NODES: usize = 4001;
/// Matsubara terms summed by [`oracle_energy`].
pub const ORACLE_TERMS: usize = 100_000;
/// Integration span above u₀.
pub const U_SPAN: f64 = 60.0;
/// Frequencies whose e^{−u₀} lies below e^{−70} are dropped.
pub const U0_DROP: f64 = 70.0;

struct Frequency {
    xi: f64,
    z: f64,
    eps_w: f64,
    eps: f64,
    c: f64,
    u0: f64,
}

impl Frequency {
    fn new(xi: f64, z: f64, pair: &HalfSpacePair, spectrum: &MatsubaraSpectrum) -> Result<Self> {
        let eps_w = pair.solvent.eval_permittivity(xi)?;
        let eps = pair.medium.eval_permittivity(xi)?;
        let c = spectrum.light_speed();
        Ok(Self {
            xi,
            z,
            eps_w,
            eps,
            c,
            u0: 2.0 * z * eps_w.sqrt() * xi / c,
        })
    }

    /// Integrand of ∫ du for g/(−k_B T), at u = 2γ_w z.
    fn integrand(&self, u: f64) -> f64 {
        let z = self.z;
        let k2 = ((u - self.u0) * (u + self.u0)).max(0.0) / (4.0 * z * z);
        if k2 == 0.0 && self.xi == 0.0 {
            return 0.0;
        }
        let q2 = (self.xi / self.c).powi(2);
        let gamma = (k2 + self.eps * q2).sqrt();
        let gamma_w = (k2 + self.eps_w * q2).sqrt();
        let r_p = (self.eps * gamma_w - self.eps_w * gamma) / (self.eps * gamma_w + self.eps_w * gamma);
        let r_s = (gamma_w - gamma) / (gamma_w + gamma);
        let bracket = r_p * (2.0 * gamma_w / self.eps_w - q2 / gamma_w) - r_s * q2 / gamma_w;
        // k dk = γ_w dγ_w = γ_w du / (2z)
        bracket * (-2.0 * gamma_w * z).exp() * gamma_w / (2.0 * z)
    }
}

fn check(z: f64, nodes: usize) -> Result<()> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveSeparation(z));
    }
    if nodes < 3 {
        return Err(Error::InvalidArgument("oracle needs at least 3 nodes".into()));
    }
    Ok(())
}

/// g(iξ, z) by a composite trapezoid rule with `nodes` nodes on
/// [u₀, u₀ + 60].
pub fn trapezoid_g(
    xi: f64,
    z: f64,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    nodes: usize,
) -> Result<f64> {
    check(z, nodes)?;
    let f = Frequency::new(xi, z, pair, spectrum)?;
    let h = U_SPAN / (nodes - 1) as f64;
    let mut acc = 0.5 * (f.integrand(f.u0) + f.integrand(f.u0 + U_SPAN));
    for i in 1..nodes - 1 {
        acc += f.integrand(f.u0 + h * i as f64);
    }
    Ok(-spectrum.thermal_energy() * acc * h)
}

/// g(iξ, z) by composite Simpson with `nodes` (odd) nodes on [u₀, u₀ + 60].
pub fn simpson_g(
    xi: f64,
    z: f64,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    nodes: usize,
) -> Result<f64> {
    check(z, nodes)?;
    if nodes % 2 == 0 {
        return Err(Error::InvalidArgument("Simpson rule needs an odd node count".into()));
    }
    let f = Frequency::new(xi, z, pair, spectrum)?;
    Ok(-spectrum.thermal_energy() * simpson(&f, nodes))
}

fn simpson(f: &Frequency, nodes: usize) -> f64 {
    let h = U_SPAN / (nodes - 1) as f64;
    let mut acc = f.integrand(f.u0) + f.integrand(f.u0 + U_SPAN);
    for i in 1..nodes - 1 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f.integrand(f.u0 + h * i as f64);
    }
    acc * h / 3.0
}

/// Reference retarded free energy: fixed Simpson grid per frequency and a
/// fixed range of [`ORACLE_TERMS`] Matsubara terms, with the n = 0 term
/// also integrated numerically.
pub fn oracle_energy(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
) -> Result<f64> {
    oracle_energy_with(z, atom, pair, spectrum, ORACLE_TERMS, SIMPSON_NODES)
}

pub fn oracle_energy_with(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    terms: usize,
    nodes: usize,
) -> Result<f64> {
    check(z, nodes)?;
    let kt = spectrum.thermal_energy();
    let mut total = 0.0;
    for n in 0..terms {
        let xi = spectrum.frequency(n);
        let f = Frequency::new(xi, z, pair, spectrum)?;
        if f.u0 > U0_DROP {
            continue;
        }
        let alpha = atom.excess_polarizability(&pair.solvent, xi)?;
        let weight = if n == 0 { 0.5 } else { 1.0 };
        total += weight * alpha * (-kt * simpson(&f, nodes));
    }
    Ok(total)
}

/// Independent evaluation of the non-retarded sum over a fixed index range.
pub fn oracle_nonretarded(
    z: f64,
    atom: &AtomModel,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    terms: usize,
) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveSeparation(z));
    }
    let mut total = 0.0;
    for n in (0..terms).rev() {
        let xi = spectrum.frequency(n);
        let eps_w = pair.solvent.eval_permittivity(xi)?;
        let eps = pair.medium.eval_permittivity(xi)?;
        let alpha = atom.excess_polarizability(&pair.solvent, xi)?;
        let weight = if n == 0 { 0.5 } else { 1.0 };
        total += weight * alpha / eps_w * (eps - eps_w) / (eps + eps_w);
    }
    Ok(-spectrum.thermal_energy() / (2.0 * z.powi(3)) * total)
}
