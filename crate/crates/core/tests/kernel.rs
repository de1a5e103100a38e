mod common;

use common::{constant_toy, frozen, rel, room, transparent_toy, water, water_with, OILS};
use polder::constants::{BOLTZMANN, NANOMETRE};
use polder::kernel::{fresnel, g_mode_split, g_of_xi, g_static};
use polder::oracle::{trapezoid_g, TRAPEZOID_NODES};
use polder::{DielectricModel, HalfSpacePair, QuadratureConfig};

const XI_GRID: [f64; 5] = [1e13, 1e14, 1e15, 3e15, 1e16];
const Z_GRID: [f64; 5] = [1e-9, 3e-9, 1e-8, 3e-8, 1e-7];

fn pairs() -> Vec<HalfSpacePair> {
    let mut pairs: Vec<HalfSpacePair> = OILS.iter().map(|o| water_with(o)).collect();
    pairs.push(constant_toy().1);
    pairs.push(transparent_toy().1);
    pairs
}

#[test]
fn matches_dense_trapezoid_on_grid() {
    let s = room();
    let quad = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for pair in pairs() {
        for xi in XI_GRID {
            for z in Z_GRID {
                let g = g_of_xi(xi, z, &pair, &s, &quad).unwrap().value;
                let o = trapezoid_g(xi, z, &pair, &s, TRAPEZOID_NODES).unwrap();
                let e = rel(g, o);
                assert!(
                    e < 10.0 * quad.rel_tol,
                    "{} xi={xi:e} z={z:e}: {g:e} vs {o:e} ({e:e})",
                    pair.medium.name()
                );
                worst = worst.max(e);
            }
        }
    }
    println!("worst relative deviation from the trapezoid oracle: {worst:e}");
}

#[test]
fn constant_toy_at_ten_nanometres() {
    let (_, pair) = constant_toy();
    let s = room();
    let g = g_of_xi(1e15, 10.0 * NANOMETRE, &pair, &s, &QuadratureConfig::default())
        .unwrap()
        .value;
    let o = trapezoid_g(1e15, 10.0 * NANOMETRE, &pair, &s, TRAPEZOID_NODES).unwrap();
    assert!(rel(g, o) < 1e-8, "{g:e} vs {o:e}");
}

#[test]
fn tm_dominates_te() {
    let s = room();
    let quad = QuadratureConfig::default();
    for pair in pairs() {
        for xi in XI_GRID {
            for z in Z_GRID {
                let (tm, te) = g_mode_split(xi, z, &pair, &s, &quad).unwrap();
                assert!(tm.abs() >= te.abs(), "xi={xi:e} z={z:e}: {tm:e} < {te:e}");
            }
        }
    }
}

#[test]
fn small_frequency_joins_closed_form() {
    let s = room();
    let quad = QuadratureConfig::default();
    let w = water();
    let flat = [
        constant_toy().1,
        transparent_toy().1,
        HalfSpacePair::new(frozen(&w, 1e6), frozen(&common::material("synthetic-crossover-oil"), 1e6)),
    ];
    for pair in flat {
        for z in [1e-9, 1e-8, 1e-7] {
            let q = g_of_xi(1e6, z, &pair, &s, &quad).unwrap().value;
            let c = g_static(z, &pair, &s).unwrap();
            assert!(rel(q, c) < 1e-6, "{} z={z:e}: {q:e} vs {c:e}", pair.medium.name());
        }
    }
}

#[test]
fn static_closed_form_value() {
    let pair = HalfSpacePair::new(
        DielectricModel::constant("w", 77.9).unwrap(),
        DielectricModel::constant("o", 2.0).unwrap(),
    );
    let s = room();
    let g = g_static(NANOMETRE, &pair, &s).unwrap();
    let expected = -BOLTZMANN * 300.0 * (-75.9 / 79.9) / (2.0 * 77.9 * 1e-27);
    assert!(rel(g, expected) < 1e-14);
    // quoted to four significant figures
    assert!((g - 2.525e4).abs() < 5.0);
    assert_eq!(g_static(2.0 * NANOMETRE, &pair, &s).unwrap(), g / 8.0);
    let (rp, rs) = fresnel(1e8, 0.0, &pair, &s).unwrap();
    assert!((rp + 0.949_937).abs() < 1e-6);
    assert_eq!(rs, 0.0);
}

#[test]
fn static_sign_opposes_reflection() {
    let s = room();
    for oil in OILS {
        let pair = water_with(oil);
        let rp0 = pair.nonretarded_reflection(0.0).unwrap();
        let g = g_static(5e-9, &pair, &s).unwrap();
        assert_eq!(g.signum(), -rp0.signum());
    }
}

#[test]
fn identical_media_vanish() {
    let s = room();
    let pair = HalfSpacePair::new(water(), water());
    for xi in XI_GRID {
        assert_eq!(g_of_xi(xi, 5e-9, &pair, &s, &QuadratureConfig::default()).unwrap().value, 0.0);
    }
    assert_eq!(g_static(5e-9, &pair, &s).unwrap(), 0.0);
}
