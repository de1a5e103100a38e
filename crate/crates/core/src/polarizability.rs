//! Excess polarizability of an atom dissolved in a dielectric solvent.
//!
//! The atom is modelled as a dielectric sphere of radius R whose effective
//! permittivity follows from its vacuum polarizability,
//! ε_a = 1 + 4πα/V. Embedded in a solvent of permittivity ε_w it carries
//! the excess polarizability
//!
//! ```text
//! α* = R³ (ε_a − ε_w) / (ε_a + 2ε_w)
//! ```
//!
//! Polarizabilities use the volume (Gaussian) convention and are stored in
//! m³.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{parse_json, read_to_string, DielectricModel, Response, ResponseDocument};

#[derive(Debug, Clone, PartialEq)]
pub struct AtomModel {
    name: String,
    radius: f64,
    volume: f64,
    polarizability: Response,
}

/// α* for a sphere of radius³ `radius_cubed` with permittivity `eps_atom`
/// in a solvent of permittivity `eps_solvent`.
#[inline]
pub fn excess_from_permittivities(radius_cubed: f64, eps_atom: f64, eps_solvent: f64) -> f64 {
    radius_cubed * (eps_atom - eps_solvent) / (eps_atom + 2.0 * eps_solvent)
}

pub fn sphere_volume(radius: f64) -> f64 {
    4.0 / 3.0 * PI * radius * radius * radius
}

impl AtomModel {
    /// `polarizability` evaluates α(iξ) in m³.
    pub fn new(name: impl Into<String>, radius: f64, polarizability: Response) -> Result<Self> {
        let name = name.into();
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::SchemaViolation(format!(
                "atom '{name}': radius must be positive and finite, got {radius}"
            )));
        }
        polarizability.check_invariants(&name, 0.0)?;
        Ok(Self {
            volume: sphere_volume(radius),
            name,
            radius,
            polarizability,
        })
    }

    /// An atom whose effective permittivity is `eps_atom` at every frequency.
    pub fn with_constant_permittivity(
        name: impl Into<String>,
        radius: f64,
        eps_atom: f64,
    ) -> Result<Self> {
        let volume = sphere_volume(radius);
        Self::new(
            name,
            radius,
            Response::Constant((eps_atom - 1.0) * volume / (4.0 * PI)),
        )
    }

    /// An atom whose effective permittivity tracks `solvent` at every
    /// frequency, so that α* vanishes (up to rounding).
    pub fn matched_to(name: impl Into<String>, radius: f64, solvent: &DielectricModel) -> Result<Self> {
        let volume = sphere_volume(radius);
        Self::new(
            name,
            radius,
            solvent.response().above_floor_scaled(1.0, volume / (4.0 * PI)),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn polarizability_model(&self) -> &Response {
        &self.polarizability
    }

    /// Vacuum polarizability α(iξ), m³.
    pub fn polarizability(&self, xi: f64) -> Result<f64> {
        self.polarizability.eval(xi, 0.0)
    }

    /// ε_a(iξ) = 1 + 4πα(iξ)/V.
    pub fn effective_permittivity(&self, xi: f64) -> Result<f64> {
        Ok(1.0 + 4.0 * PI * self.polarizability(xi)? / self.volume)
    }

    /// α*(iξ) in `solvent`, m³. Negative when the solvent is the more
    /// polarizable of the two.
    pub fn excess_polarizability(&self, solvent: &DielectricModel, xi: f64) -> Result<f64> {
        let eps_atom = self.effective_permittivity(xi)?;
        let eps_solvent = solvent.eval_permittivity(xi)?;
        Ok(excess_from_permittivities(
            self.radius.powi(3),
            eps_atom,
            eps_solvent,
        ))
    }

    pub fn from_document(doc: AtomDocument) -> Result<Self> {
        let response = doc.polarizability.into_response("constant_eps")?;
        Self::new(doc.name, doc.radius_m, response)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(parse_json(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read_to_string(path.as_ref())?)
    }
}

/// Atom file: `{"name", "radius_m", "polarizability": <response in m³>}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDocument {
    pub name: String,
    pub radius_m: f64,
    pub polarizability: ResponseDocument,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ANGSTROM;
    use crate::materials::LorentzTerm;

    const A3: f64 = ANGSTROM * ANGSTROM * ANGSTROM;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn volume_matches_sphere() {
        let atom = AtomModel::new("x", 1.7 * ANGSTROM, Response::Vacuum).unwrap();
        let r = 1.7 * ANGSTROM;
        assert!(rel(atom.volume(), 4.0 / 3.0 * PI * r * r * r) < 1e-12);
    }

    #[test]
    fn transparent_atom_has_unit_permittivity() {
        let atom = AtomModel::new("ghost", ANGSTROM, Response::Vacuum).unwrap();
        assert_eq!(atom.effective_permittivity(1e15).unwrap(), 1.0);
    }

    #[test]
    fn unit_construction_gives_two() {
        let r = 1.3 * ANGSTROM;
        let v = sphere_volume(r);
        let atom = AtomModel::new("u", r, Response::Constant(v / (4.0 * PI))).unwrap();
        assert!((atom.effective_permittivity(0.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn neon_like_static_permittivity() {
        // 1 + 4π·0.3956/(4π/3) = 1 + 3·0.3956
        let atom = AtomModel::new(
            "ne",
            ANGSTROM,
            Response::Oscillator {
                debye: vec![],
                lorentz: vec![LorentzTerm::undamped(0.3956 * A3, 4e16)],
            },
        )
        .unwrap();
        let eps = atom.effective_permittivity(0.0).unwrap();
        assert!((eps - 2.1868).abs() < 1e-12, "{eps}");
    }

    #[test]
    fn excess_hand_value() {
        let r3 = 8.0 * A3;
        let got = excess_from_permittivities(r3, 2.0, 80.0) / A3;
        assert!((got - (-3.851_851_851_851_852)).abs() < 1e-12, "{got}");
    }

    #[test]
    fn index_matched_excess_is_zero() {
        assert_eq!(excess_from_permittivities(A3, 3.3, 3.3), 0.0);
    }

    #[test]
    fn conducting_sphere_limit() {
        let r3 = 5.0 * A3;
        let got = excess_from_permittivities(r3, 1e15, 1.7);
        assert!(rel(got, r3) < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_radius() {
        assert!(AtomModel::new("bad", 0.0, Response::Vacuum).is_err());
        assert!(AtomModel::new("bad", -1e-10, Response::Vacuum).is_err());
    }

    #[test]
    fn rejects_negative_polarizability() {
        let err = AtomModel::new("bad", ANGSTROM, Response::Constant(-1e-31)).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
    }

    #[test]
    fn constant_permittivity_atom() {
        let atom = AtomModel::with_constant_permittivity("toy", 2.0 * ANGSTROM, 4.0).unwrap();
        for xi in [0.0, 1e14, 1e18] {
            assert!((atom.effective_permittivity(xi).unwrap() - 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn parses_atom_document() {
        let doc = r#"{"name": "Kr", "radius_m": 1.53e-10,
            "polarizability": {"form": "oscillator",
                "lorentz_terms": [{"c": 2.48e-30, "omega_rad_s": 2.2e16}]}}"#;
        let atom = AtomModel::from_json(doc).unwrap();
        assert_eq!(atom.name(), "Kr");
        assert!(rel(atom.polarizability(0.0).unwrap(), 2.48e-30) < 1e-15);
    }

    #[test]
    fn atom_document_rejects_unknown_fields() {
        let doc = r#"{"name": "Kr", "radius_m": 1.53e-10, "mass": 83.8,
            "polarizability": {"form": "vacuum"}}"#;
        assert!(matches!(AtomModel::from_json(doc), Err(Error::SchemaViolation(_))));
    }
}
