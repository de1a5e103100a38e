mod common;

use proptest::prelude::*;

use common::{atom, material, water, water_with, NOBLE_GASES, OILS};
use polder::kernel::{fresnel, gamma_factors};
use polder::materials::{probe_grid, DebyeTerm, LorentzTerm, Response, Table};
use polder::polarizability::excess_from_permittivities;
use polder::{AtomModel, DielectricModel, HalfSpacePair, MatsubaraSpectrum};

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn oscillator() -> impl Strategy<Value = DielectricModel> {
    (
        prop::collection::vec((0.0..80.0, log_uniform(1e-13, 1e-9)), 0..2),
        prop::collection::vec((0.0..3.0, log_uniform(1e12, 1e17), 0.0..1e16), 0..4),
    )
        .prop_map(|(debye, lorentz)| {
            DielectricModel::oscillator(
                "random",
                debye
                    .into_iter()
                    .map(|(strength, relaxation_time)| DebyeTerm { strength, relaxation_time })
                    .collect(),
                lorentz
                    .into_iter()
                    .map(|(strength, resonance, damping)| LorentzTerm { strength, resonance, damping })
                    .collect(),
            )
            .expect("non-negative oscillator strengths are always valid")
        })
}

fn shipped_pairs() -> Vec<HalfSpacePair> {
    OILS.iter().map(|o| water_with(o)).chain([HalfSpacePair::new(water(), material("vacuum"))]).collect()
}

#[test]
fn shipped_models_obey_permittivity_invariants() {
    let names = ["synthetic-water", "vacuum"].into_iter().chain(OILS);
    for name in names {
        let m = material(name);
        let mut prev = m.eval_permittivity(0.0).unwrap();
        for xi in probe_grid() {
            let e = m.eval_permittivity(xi).unwrap();
            assert!(e >= 1.0 && e <= prev, "{name} at {xi:e}: {e} after {prev}");
            prev = e;
        }
        assert!(m.eval_permittivity(1e22).unwrap() - 1.0 < 1e-6, "{name} does not relax to 1");
    }
}

#[test]
fn shipped_atoms_decay() {
    for name in NOBLE_GASES.iter().chain(["synthetic-cavity"].iter()) {
        let a = atom(name);
        let mut prev = a.polarizability(0.0).unwrap();
        for xi in probe_grid() {
            let p = a.polarizability(xi).unwrap();
            assert!(p >= 0.0 && p <= prev);
            prev = p;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oscillators_are_passive_and_monotone(model in oscillator()) {
        let mut prev = model.eval_permittivity(0.0).unwrap();
        for xi in probe_grid() {
            let e = model.eval_permittivity(xi).unwrap();
            prop_assert!(e >= 1.0);
            prop_assert!(e <= prev);
            prev = e;
        }
    }

    #[test]
    fn evaluation_is_pure(model in oscillator(), xi in log_uniform(1e8, 1e19)) {
        let a = model.eval_permittivity(xi).unwrap();
        let b = model.clone().eval_permittivity(xi).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn reflection_coefficients_are_bounded(
        solvent in oscillator(),
        medium in oscillator(),
        k in log_uniform(1e3, 1e12),
        xi in prop_oneof![Just(0.0), log_uniform(1e9, 1e19)],
    ) {
        let s = MatsubaraSpectrum::new(300.0).unwrap();
        let pair = HalfSpacePair::new(solvent, medium);
        let (rp, rs) = fresnel(k, xi, &pair, &s).unwrap();
        prop_assert!(rp.abs() <= 1.0 && rs.abs() <= 1.0, "rp={} rs={}", rp, rs);
        let (g, gw) = gamma_factors(k, xi, &pair, &s).unwrap();
        prop_assert!(g >= k && gw >= k);
    }

    #[test]
    fn shipped_reflection_bounded(idx in 0usize..4, k in log_uniform(1e3, 1e12), xi in log_uniform(1e9, 1e19)) {
        let s = MatsubaraSpectrum::new(300.0).unwrap();
        let pair = &shipped_pairs()[idx];
        let (rp, rs) = fresnel(k, xi, pair, &s).unwrap();
        prop_assert!(rp.abs() <= 1.0 && rs.abs() <= 1.0);
    }

    #[test]
    fn excess_polarizability_sign_and_bound(
        radius in log_uniform(5e-11, 5e-10),
        eps_atom in 1.0f64..1e6,
        eps_solvent in 1.0f64..1e3,
    ) {
        let r3 = radius.powi(3);
        let a = excess_from_permittivities(r3, eps_atom, eps_solvent);
        let sign = |x: f64| (x > 0.0) as i8 - (x < 0.0) as i8;
        prop_assert_eq!(sign(a), sign(eps_atom - eps_solvent));
        prop_assert!(a.abs() < r3);
    }

    #[test]
    fn atom_excess_polarizability_tracks_sign(
        alpha0 in log_uniform(1e-32, 1e-29),
        omega in log_uniform(1e15, 1e17),
        radius in log_uniform(5e-11, 3e-10),
        xi in prop_oneof![Just(0.0), log_uniform(1e12, 1e18)],
    ) {
        let atom = AtomModel::new(
            "random",
            radius,
            Response::Oscillator { debye: vec![], lorentz: vec![LorentzTerm::undamped(alpha0, omega)] },
        ).unwrap();
        let w = water();
        let a = atom.excess_polarizability(&w, xi).unwrap();
        let diff = atom.effective_permittivity(xi).unwrap() - w.eval_permittivity(xi).unwrap();
        prop_assert!(a * diff >= 0.0);
        prop_assert!(a.abs() < radius.powi(3));
    }

    #[test]
    fn truncation_is_non_increasing(
        z in log_uniform(1e-10, 1e-5),
        factor in 1.0f64..10.0,
        t in 50.0f64..1000.0,
        t_factor in 1.0f64..3.0,
        rel_tol in log_uniform(1e-12, 1e-2),
    ) {
        let w = water();
        let s = MatsubaraSpectrum::new(t).unwrap();
        let hot = MatsubaraSpectrum::new(t * t_factor).unwrap();
        let n = s.truncation_index(z, &w, rel_tol).unwrap();
        prop_assert!(s.truncation_index(z * factor, &w, rel_tol).unwrap() <= n);
        prop_assert!(hot.truncation_index(z, &w, rel_tol).unwrap() <= n);
    }

    #[test]
    fn table_nodes_are_reproduced(
        mut xs in prop::collection::btree_set(1u64..1_000_000, 2..40),
        steps in prop::collection::vec(0.0f64..0.5, 40),
        xi_scale in log_uniform(1e9, 1e12),
    ) {
        let xs: Vec<f64> = std::mem::take(&mut xs).into_iter().map(|x| x as f64 * xi_scale).collect();
        let mut eps = 1.0 + steps.iter().take(xs.len()).sum::<f64>();
        let static_value = eps + 0.5;
        let mut nodes = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            nodes.push((x, eps));
            eps -= steps[i];
        }
        let table = Table::new(static_value, nodes.clone()).unwrap();
        let model = DielectricModel::new("table", Response::Tabulated(table)).unwrap();
        for (x, e) in nodes {
            let v = model.eval_permittivity(x).unwrap();
            prop_assert!(((v - e) / e).abs() < 1e-12, "{} vs {}", v, e);
        }
    }
}
