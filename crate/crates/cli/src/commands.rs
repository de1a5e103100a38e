use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use polder::constants::{NANOMETRE, ZEPTOJOULE};
use polder::crossover::Bracket;
use polder::energy::sweep_outcomes;
use polder::{
    find_crossover, load_material, log_grid, AtomModel, CrossoverConfig, DielectricModel, Error,
    HalfSpacePair, MatsubaraSpectrum, QuadratureConfig, Regime, Tolerances,
};

use crate::args::{CrossoverArgs, RegimeArg, SweepArgs, SystemArgs, Units, ValidateArgs};
use crate::failure::{Context, Failure, Status};

const SWEEP_POINTS: usize = 64;

/// Loaded inputs shared by `sweep` and `crossover`.
struct System {
    atoms: Vec<AtomModel>,
    pairs: Vec<HalfSpacePair>,
    spectrum: MatsubaraSpectrum,
    tols: Tolerances,
    z_min: f64,
    z_max: f64,
}

fn load_atom(path: &Path) -> Result<AtomModel, Failure> {
    AtomModel::load(path).context_with(|| format!("loading atom {}", path.display()))
}

fn load_medium(path: &Path) -> Result<DielectricModel, Failure> {
    load_material(path).context_with(|| format!("loading material {}", path.display()))
}

impl System {
    fn load(args: &SystemArgs) -> Result<Self, Failure> {
        let spectrum = MatsubaraSpectrum::new(args.temp_kelvin)?;
        if !(args.sum_rtol > 0.0 && args.sum_rtol < 1.0) {
            return Err(Failure::config(format!("--sum-rtol must lie in (0, 1), got {}", args.sum_rtol)));
        }
        let tols = Tolerances {
            sum_rel_tol: args.sum_rtol,
            quad: QuadratureConfig {
                rel_tol: args.quad_rtol,
                ..QuadratureConfig::default()
            },
        };
        tols.quad.validate()?;
        let (z_min, z_max) = (args.zmin_nm * NANOMETRE, args.zmax_nm * NANOMETRE);
        if !(z_min > 0.0 && z_max > z_min && z_max.is_finite()) {
            return Err(Failure::config(format!(
                "need 0 < --zmin-nm < --zmax-nm, got {} and {}",
                args.zmin_nm, args.zmax_nm
            )));
        }
        if args.points.is_some_and(|p| p < 2) {
            return Err(Failure::config("--points must be at least 2"));
        }

        let solvent = load_medium(&args.solvent)?;
        let pairs = args
            .oils
            .iter()
            .map(|p| Ok(HalfSpacePair::new(solvent.clone(), load_medium(p)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        let atoms = args.atoms.iter().map(|p| load_atom(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            atoms,
            pairs,
            spectrum,
            tols,
            z_min,
            z_max,
        })
    }
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    let written = match out {
        Some(path) => fs::write(path, bytes).map_err(|e| (path.display().to_string(), e)),
        None => io::stdout().write_all(bytes).map_err(|e| ("standard output".to_string(), e)),
    };
    written.map_err(|(target, e)| Failure::new(Status::Config, anyhow::anyhow!("writing {target}: {e}")))
}

/// 17 significant digits, enough to round-trip any f64.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let system = System::load(&args.system)?;
    let grid = log_grid(
        system.z_min,
        system.z_max,
        args.system.points.unwrap_or(SWEEP_POINTS),
    )?;
    let regimes: &[Regime] = match args.regime {
        RegimeArg::Retarded => &[Regime::Retarded],
        RegimeArg::Nonretarded => &[Regime::Nonretarded],
        RegimeArg::Both => &[Regime::Retarded, Regime::Nonretarded],
    };
    let scale = match args.units {
        Units::J => 1.0,
        Units::KT => 1.0 / system.spectrum.thermal_energy(),
        Units::ZJ => 1.0 / ZEPTOJOULE,
    };

    let mut csv = csv::Writer::from_writer(Vec::new());
    let energy_column = format!("F_{}", args.units.label());
    let header = ["z_m", energy_column.as_str(), "regime", "material", "atom", "N_max", "converged"];
    csv.write_record(header).map_err(|e| Failure::new(Status::Config, e))?;

    let mut first_failure: Option<Failure> = None;
    for atom in &system.atoms {
        for pair in &system.pairs {
            for &regime in regimes {
                let outcomes = sweep_outcomes(regime, &grid, atom, pair, &system.spectrum, &system.tols)?;
                for (&z, outcome) in grid.iter().zip(outcomes) {
                    let (energy, terms, converged) = match outcome {
                        Ok(s) => (s.energy, s.diagnostics.terms, true),
                        Err(e) => {
                            let (partial, terms) = match e {
                                Error::SumNotConverged { terms, partial, .. } => (partial, terms),
                                _ => (f64::NAN, 0),
                            };
                            if first_failure.is_none() {
                                let what = format!(
                                    "{regime} energy of {} near {} at z = {z:e} m",
                                    atom.name(),
                                    pair.medium.name()
                                );
                                first_failure = Some(Failure::during(e, what));
                            }
                            (partial, terms, false)
                        }
                    };
                    csv.write_record([
                        number(z),
                        number(energy * scale),
                        regime.to_string(),
                        pair.medium.name().to_string(),
                        atom.name().to_string(),
                        terms.to_string(),
                        converged.to_string(),
                    ])
                    .map_err(|e| Failure::new(Status::Config, e))?;
                }
            }
        }
    }
    let bytes = csv.into_inner().map_err(|e| Failure::new(Status::Config, anyhow::anyhow!("{e}")))?;
    emit(args.system.out.as_ref(), &bytes)?;
    first_failure.map_or(Ok(()), Err)
}

#[derive(Debug, Serialize)]
struct CrossoverEntry {
    atom: String,
    medium: String,
    sign_pattern: String,
    roots_m: Vec<f64>,
    brackets: Vec<Bracket>,
    z_rel_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn crossover(args: &CrossoverArgs) -> Result<(), Failure> {
    let system = System::load(&args.system)?;
    let config = CrossoverConfig {
        scan_points: args.system.points.unwrap_or(CrossoverConfig::default().scan_points),
        ..CrossoverConfig::default()
    };
    let mut entries = Vec::new();
    let mut first_failure: Option<Failure> = None;
    for atom in &system.atoms {
        for pair in &system.pairs {
            let found = find_crossover(
                atom,
                pair,
                &system.spectrum,
                system.z_min,
                system.z_max,
                &system.tols,
                &config,
            );
            let entry = match found {
                Ok(report) => CrossoverEntry {
                    atom: atom.name().into(),
                    medium: pair.medium.name().into(),
                    roots_m: report.root_positions(),
                    sign_pattern: report.sign_pattern,
                    brackets: report.brackets,
                    z_rel_tol: report.z_rel_tol,
                    error: None,
                },
                Err(e) => {
                    let message = e.to_string();
                    if first_failure.is_none() {
                        let what = format!("crossover of {} near {}", atom.name(), pair.medium.name());
                        first_failure = Some(Failure::during(e, what));
                    }
                    CrossoverEntry {
                        atom: atom.name().into(),
                        medium: pair.medium.name().into(),
                        sign_pattern: "unknown".into(),
                        roots_m: vec![],
                        brackets: vec![],
                        z_rel_tol: config.z_rel_tol,
                        error: Some(message),
                    }
                }
            };
            entries.push(entry);
        }
    }
    let mut json = serde_json::to_vec_pretty(&entries).map_err(|e| Failure::new(Status::Config, e))?;
    json.push(b'\n');
    emit(args.system.out.as_ref(), &json)?;
    first_failure.map_or(Ok(()), Err)
}

const PROBE_INDICES: [usize; 4] = [0, 1, 10, 100];

enum Loaded {
    Material(DielectricModel),
    Atom(AtomModel),
}

fn load_any(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(Status::Config, anyhow::anyhow!("reading {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::new(Status::Config, anyhow::anyhow!("{}: malformed JSON: {e}", path.display())))?;
    let ctx = || path.display().to_string();
    if value.get("radius_m").is_some() {
        Ok(Loaded::Atom(AtomModel::from_json(&text).context_with(ctx)?))
    } else {
        Ok(Loaded::Material(DielectricModel::from_json(&text).context_with(ctx)?))
    }
}

fn describe(loaded: &Loaded, spectrum: &MatsubaraSpectrum) -> Result<String, Failure> {
    let mut out = String::new();
    match loaded {
        Loaded::Material(m) => {
            out.push_str(&format!("material '{}' ({}): invariants hold\n", m.name(), m.form()));
            out.push_str(&format!("  {:>4}  {:>23}  {:>23}\n", "n", "xi_rad_s", "eps"));
            for n in PROBE_INDICES {
                let xi = spectrum.frequency(n);
                let eps = m.eval_permittivity(xi)?;
                out.push_str(&format!("  {n:>4}  {}  {}\n", number(xi), number(eps)));
            }
        }
        Loaded::Atom(a) => {
            out.push_str(&format!(
                "atom '{}' (R = {:e} m): invariants hold\n",
                a.name(),
                a.radius()
            ));
            out.push_str(&format!(
                "  {:>4}  {:>23}  {:>23}  {:>23}\n",
                "n", "xi_rad_s", "alpha_m3", "eps_atom"
            ));
            for n in PROBE_INDICES {
                let xi = spectrum.frequency(n);
                out.push_str(&format!(
                    "  {n:>4}  {}  {}  {}\n",
                    number(xi),
                    number(a.polarizability(xi)?),
                    number(a.effective_permittivity(xi)?)
                ));
            }
        }
    }
    Ok(out)
}

/// Validates every file, printing probes for the good ones; fails with the
/// status of the first bad one.
pub fn validate(args: &ValidateArgs) -> Result<(), Failure> {
    let spectrum = MatsubaraSpectrum::new(args.temp_kelvin)?;
    let mut first_failure: Option<Failure> = None;
    let mut report = String::new();
    for path in &args.paths {
        match load_any(path).and_then(|l| describe(&l, &spectrum)) {
            Ok(text) => {
                report.push_str(&format!("{}: {text}", path.display()));
            }
            Err(f) => {
                eprintln!("{}: {:#}", path.display(), f.error);
                first_failure.get_or_insert(f);
            }
        }
    }
    emit(None, report.as_bytes())?;
    first_failure.map_or(Ok(()), Err)
}
