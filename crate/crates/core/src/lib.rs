//! Casimir–Polder free energy of an atom dissolved in a solvent near a
//! planar interface with a second dielectric.
//!
//! The pipeline runs from dielectric models ([`materials`]) and atom
//! models ([`polarizability`]) through the Matsubara ladder ([`spectrum`])
//! and the Green's-function trace ([`kernel`]) to free energies, sweeps
//! ([`energy`]) and sign crossovers ([`crossover`]).

pub mod constants;
pub mod crossover;
pub mod energy;
pub mod error;
pub mod kernel;
pub mod materials;
pub mod oracle;
pub mod polarizability;
pub mod quadrature;
pub mod spectrum;

pub use crossover::{find_crossover, CrossoverConfig, CrossoverReport};
pub use energy::{
    cp_energy, cp_energy_nonretarded, cp_energy_retarded, log_grid, sweep, EnergyCurve, EnergySample,
    Regime, Tolerances,
};
pub use error::{Error, InvariantKind, Result};
pub use kernel::{HalfSpacePair, QuadratureConfig};
pub use materials::{load_material, DielectricModel, Form, Response};
pub use polarizability::AtomModel;
pub use spectrum::MatsubaraSpectrum;
