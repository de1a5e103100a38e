//! Green's-function trace g(iξ, z) for an atom in the solvent half-space
//! facing a second dielectric.
//!
//! ```text
//! g(iξ) = −k_B T ∫₀^∞ dk k [ r_p (2γ_w/ε_w − ξ²/(c²γ_w)) − r_s ξ²/(c²γ_w) ] e^{−2γ_w z}
//! ```
//!
//! The transverse wavevector integral is rewritten in the variable
//! u = 2γ_w z, which turns the exponential into the bare weight e^{−u}:
//!
//! ```text
//! g = −k_B T / (8 z³ ε_w) ∫_{u₀}^∞ [ r_p (2u² − u₀²) − r_s u₀² ] e^{−u} du,
//! u₀ = 2z√ε_w ξ/c
//! ```
//!
//! Both Fresnel coefficients are evaluated in factored form, proportional
//! to ε − ε_w, so identical media give exactly zero.
//!
//! Multiplying g (J/m³) by an excess polarizability (m³) gives joules.

use crate::error::{Error, Result};
use crate::materials::DielectricModel;
use crate::quadrature;
use crate::spectrum::MatsubaraSpectrum;

/// The solvent hosting the atom and the medium across the interface.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpacePair {
    pub solvent: DielectricModel,
    pub medium: DielectricModel,
}

impl HalfSpacePair {
    pub fn new(solvent: DielectricModel, medium: DielectricModel) -> Self {
        Self { solvent, medium }
    }

    /// (ε_w, ε) at `xi`.
    pub fn permittivities(&self, xi: f64) -> Result<(f64, f64)> {
        Ok((
            self.solvent.eval_permittivity(xi)?,
            self.medium.eval_permittivity(xi)?,
        ))
    }

    /// (ε − ε_w)/(ε + ε_w) at `xi`: the TM coefficient when retardation is
    /// neglected, and the exact one at ξ = 0.
    pub fn nonretarded_reflection(&self, xi: f64) -> Result<f64> {
        let (eps_w, eps) = self.permittivities(xi)?;
        Ok((eps - eps_w) / (eps + eps_w))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Upper integration limit above u₀, in units of the decay variable u.
    pub u_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_subdivisions: 60,
            u_cutoff: 60.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "quadrature rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.u_cutoff >= 30.0) {
            return Err(Error::InvalidArgument(format!(
                "u_cutoff must be at least 30, got {}",
                self.u_cutoff
            )));
        }
        Ok(())
    }
}

/// (γ, γ_w) in 1/m for transverse wavevector `k` at frequency `xi`.
pub fn gamma_factors(k: f64, xi: f64, pair: &HalfSpacePair, spectrum: &MatsubaraSpectrum) -> Result<(f64, f64)> {
    let (eps_w, eps) = pair.permittivities(xi)?;
    let q = xi / spectrum.light_speed();
    Ok((
        (k * k + eps * q * q).sqrt(),
        (k * k + eps_w * q * q).sqrt(),
    ))
}

/// (r_p, r_s) at transverse wavevector `k` and frequency `xi`.
pub fn fresnel(k: f64, xi: f64, pair: &HalfSpacePair, spectrum: &MatsubaraSpectrum) -> Result<(f64, f64)> {
    if k == 0.0 && xi == 0.0 {
        return Err(Error::DegeneratePoint);
    }
    let (eps_w, eps) = pair.permittivities(xi)?;
    let (gamma, gamma_w) = gamma_factors(k, xi, pair, spectrum)?;
    let q = xi / spectrum.light_speed();
    let q2 = q * q;
    let delta = eps - eps_w;
    let tm_den = eps * gamma_w + eps_w * gamma;
    let r_p = delta * ((eps + eps_w) * k * k + eps * eps_w * q2) / (tm_den * tm_den);
    let te_den = gamma_w + gamma;
    let r_s = -delta * q2 / (te_den * te_den);
    Ok((r_p, r_s))
}

/// g(iξ, z) together with its TM/TE split and quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    /// g in J/m³.
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// The closed-form ξ = 0 trace, −k_B T r_p(0) / (2 ε_w(0) z³).
pub fn g_static(z: f64, pair: &HalfSpacePair, spectrum: &MatsubaraSpectrum) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveSeparation(z));
    }
    let (eps_w, eps) = pair.permittivities(0.0)?;
    let r_p = (eps - eps_w) / (eps + eps_w);
    Ok(-spectrum.thermal_energy() * r_p / (2.0 * eps_w * z * z * z))
}

/// Integrand pieces in the u variable for one (ξ, z).
#[derive(Debug, Clone, Copy)]
struct Integrand {
    eps_w: f64,
    eps: f64,
    delta: f64,
    a2: f64,
    u0: f64,
}

impl Integrand {
    fn new(xi: f64, z: f64, eps_w: f64, eps: f64, light_speed: f64) -> Self {
        let a = 2.0 * z * xi / light_speed;
        Self {
            eps_w,
            eps,
            delta: eps - eps_w,
            a2: a * a,
            u0: a * eps_w.sqrt(),
        }
    }

    /// (TM, TE) parts of the bracket at u (without the e^{−u} weight).
    #[inline]
    fn modes(&self, u: f64) -> (f64, f64) {
        let u2 = u * u;
        let v = (u2 + self.delta * self.a2).sqrt();
        let tm_den = self.eps * u + self.eps_w * v;
        let r_p = self.delta * ((self.eps + self.eps_w) * u2 - self.eps_w * self.eps_w * self.a2)
            / (tm_den * tm_den);
        let te_den = u + v;
        let r_s = -self.delta * self.a2 / (te_den * te_den);
        let u02 = self.u0 * self.u0;
        (r_p * (2.0 * u2 - u02), -r_s * u02)
    }

    fn prefactor(&self, z: f64, spectrum: &MatsubaraSpectrum) -> f64 {
        -spectrum.thermal_energy() * (-self.u0).exp() / (8.0 * z * z * z * self.eps_w)
    }
}

fn check_args(xi: f64, z: f64, quad: &QuadratureConfig) -> Result<()> {
    if !(z > 0.0) {
        return Err(Error::NonpositiveSeparation(z));
    }
    if !(xi >= 0.0) {
        return Err(Error::NegativeFrequency { xi });
    }
    quad.validate()
}

/// g(iξ, z) in J/m³ by adaptive quadrature. At ξ = 0 the closed form is
/// returned instead.
pub fn g_of_xi(
    xi: f64,
    z: f64,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    quad: &QuadratureConfig,
) -> Result<KernelValue> {
    check_args(xi, z, quad)?;
    if xi == 0.0 {
        return Ok(KernelValue {
            value: g_static(z, pair, spectrum)?,
            error_estimate: 0.0,
            panels: 0,
        });
    }
    let (eps_w, eps) = pair.permittivities(xi)?;
    if eps == eps_w {
        return Ok(KernelValue {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
        });
    }
    let f = Integrand::new(xi, z, eps_w, eps, spectrum.light_speed());
    let r = quadrature::integrate(
        |t| {
            let (tm, te) = f.modes(f.u0 + t);
            (tm + te) * (-t).exp()
        },
        0.0,
        quad.u_cutoff,
        quad.rel_tol,
        quad.max_subdivisions,
    )?;
    let pre = f.prefactor(z, spectrum);
    Ok(KernelValue {
        value: pre * r.value,
        error_estimate: (pre * r.error_estimate).abs(),
        panels: r.panels,
    })
}

/// The TM and TE contributions to g(iξ, z), integrated separately (J/m³).
pub fn g_mode_split(
    xi: f64,
    z: f64,
    pair: &HalfSpacePair,
    spectrum: &MatsubaraSpectrum,
    quad: &QuadratureConfig,
) -> Result<(f64, f64)> {
    check_args(xi, z, quad)?;
    if xi == 0.0 {
        return Ok((g_static(z, pair, spectrum)?, 0.0));
    }
    let (eps_w, eps) = pair.permittivities(xi)?;
    let f = Integrand::new(xi, z, eps_w, eps, spectrum.light_speed());
    let part = |pick: fn((f64, f64)) -> f64| {
        quadrature::integrate(
            |t| pick(f.modes(f.u0 + t)) * (-t).exp(),
            0.0,
            quad.u_cutoff,
            quad.rel_tol,
            quad.max_subdivisions,
        )
    };
    let pre = f.prefactor(z, spectrum);
    let tm = part(|m| m.0)?.value;
    let te = part(|m| m.1)?.value;
    Ok((pre * tm, pre * te))
}
