#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use polder::constants::ANGSTROM;
use polder::materials::{LorentzTerm, Response};
use polder::{load_material, AtomModel, DielectricModel, HalfSpacePair, MatsubaraSpectrum};

pub const OILS: [&str; 3] = [
    "synthetic-crossover-oil",
    "synthetic-low-index-oil",
    "synthetic-dense-oil",
];

pub const NOBLE_GASES: [&str; 4] = ["synthetic-he", "synthetic-ne", "synthetic-ar", "synthetic-kr"];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn material(name: &str) -> DielectricModel {
    load_material(data_dir().join("materials").join(format!("{name}.json"))).unwrap()
}

pub fn atom(name: &str) -> AtomModel {
    AtomModel::load(data_dir().join("atoms").join(format!("{name}.json"))).unwrap()
}

pub fn water() -> DielectricModel {
    material("synthetic-water")
}

pub fn water_with(oil: &str) -> HalfSpacePair {
    HalfSpacePair::new(water(), material(oil))
}

pub fn room() -> MatsubaraSpectrum {
    MatsubaraSpectrum::new(300.0).unwrap()
}

/// ε_w = 2, ε = 1.5, ε_a = 4 at every frequency, R = 2 Å.
pub fn constant_toy() -> (AtomModel, HalfSpacePair) {
    (
        AtomModel::with_constant_permittivity("toy-atom", 2.0 * ANGSTROM, 4.0).unwrap(),
        HalfSpacePair::new(
            DielectricModel::constant("toy-solvent", 2.0).unwrap(),
            DielectricModel::constant("toy-medium", 1.5).unwrap(),
        ),
    )
}

/// Same static values as [`constant_toy`], each rolling off through one
/// undamped Lorentz term so that every sum converges.
pub fn transparent_toy() -> (AtomModel, HalfSpacePair) {
    let radius = 2.0 * ANGSTROM;
    let volume = 4.0 / 3.0 * PI * radius.powi(3);
    let alpha0 = 3.0 * volume / (4.0 * PI);
    let lorentz = |c, w| Response::Oscillator {
        debye: vec![],
        lorentz: vec![LorentzTerm::undamped(c, w)],
    };
    (
        AtomModel::new("transparent-atom", radius, lorentz(alpha0, 2.5e16)).unwrap(),
        HalfSpacePair::new(
            DielectricModel::new("transparent-solvent", lorentz(1.0, 1.5e16)).unwrap(),
            DielectricModel::new("transparent-medium", lorentz(0.5, 2.0e16)).unwrap(),
        ),
    )
}

/// `model` frozen at its value for `xi`.
pub fn frozen(model: &DielectricModel, xi: f64) -> DielectricModel {
    DielectricModel::constant(
        format!("{}@{xi:e}", model.name()),
        model.eval_permittivity(xi).unwrap(),
    )
    .unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}
