//! Property tests for the spectral formulas, the shift function and the
//! Thomas-Fermi structure.

use std::sync::OnceLock;

use proptest::prelude::*;

use scott_core::hydrogenic::{
    coulomb_expectation, dirac_level, fine_structure_term, level_difference, schroedinger_level,
    DIFFERENCE_CONSTANT, REMAINDER_CONSTANT, REMAINDER_CONSTANT_REFINED, VIRIAL_DEVIATION_CONSTANT,
};
use scott_core::quantum_numbers::{channels_for_l, dirac_degeneracy, ChannelIndex};
use scott_core::shift::{
    direct_partial_sum, schwinger_coefficient, shift, SMALL_COUPLING_CONSTANT,
};
use scott_core::thomas_fermi::{
    density, exchange_hole_radius, mean_field, mean_field_gradient, screening_potential, solve_tf,
};
use scott_core::{Coupling, LevelIndex, TfSolution};

fn tf() -> &'static TfSolution {
    static SOL: OnceLock<TfSolution> = OnceLock::new();
    SOL.get_or_init(|| solve_tf(1e-8).unwrap())
}

fn level_strategy() -> impl Strategy<Value = (u32, u32, u32)> {
    (1u32..=1000, 0.0f64..1.0, any::<bool>()).prop_map(|(big_n, frac, aligned)| {
        let l = ((f64::from(big_n) * frac) as u32).min(big_n - 1);
        let twice_j = if aligned || l == 0 {
            2 * l + 1
        } else {
            2 * l - 1
        };
        (big_n - l, l, twice_j)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ordering(gamma in 1e-3f64..0.9999, (n, l, twice_j) in level_strategy()) {
        let g = Coupling::new(gamma).unwrap();
        let idx = LevelIndex::from_numbers(n, l, twice_j).unwrap();
        let d = dirac_level(g, idx);
        let s = schroedinger_level(g, n, l).unwrap();
        prop_assert!(d < s && s < 0.0);
        prop_assert!(level_difference(g, idx) < 0.0);
        prop_assert!(d > -1.0);
    }

    #[test]
    fn remainder_bounds(gi in 1u32..=9, (n, l, twice_j) in level_strategy()) {
        let gamma = f64::from(gi) / 10.0;
        let g = Coupling::new(gamma).unwrap();
        let idx = LevelIndex::from_numbers(n, l, twice_j).unwrap();
        let big_n = f64::from(n + l);
        let r = (level_difference(g, idx) - fine_structure_term(g, idx)).abs();
        prop_assert!(r <= REMAINDER_CONSTANT * gamma.powi(6) / big_n.powi(4));
        prop_assert!(
            r <= REMAINDER_CONSTANT_REFINED * gamma.powi(6) * f64::from(n)
                / (big_n.powi(4) * f64::from(l + 1))
        );
        let d = -level_difference(g, idx);
        prop_assert!(d >= 0.0);
        prop_assert!(d <= DIFFERENCE_CONSTANT * gamma.powi(4) / (big_n.powi(3) * f64::from(l.max(1))));
    }

    #[test]
    fn virial_limit(gamma in 1e-3f64..0.95, (n, l, twice_j) in level_strategy()) {
        let g = Coupling::new(gamma).unwrap();
        let idx = LevelIndex::from_numbers(n, l, twice_j).unwrap();
        let big_n = f64::from(n + l);
        let bg = coulomb_expectation(g, idx);
        let virial = gamma * gamma / (big_n * big_n);
        prop_assert!(bg > 0.0);
        prop_assert!((bg / virial - 1.0).abs() <= VIRIAL_DEVIATION_CONSTANT * gamma * gamma);
    }

    #[test]
    fn spin_orbit_order(gamma in 1e-3f64..0.9999, n in 1u32..500, l in 1u32..500) {
        let g = Coupling::new(gamma).unwrap();
        let up = LevelIndex::new(n, ChannelIndex::aligned(l)).unwrap();
        let down = LevelIndex::new(n, ChannelIndex::anti_aligned(l).unwrap()).unwrap();
        prop_assert!(dirac_level(g, up) > dirac_level(g, down));
    }

    #[test]
    fn block_degeneracy(l in 0u32..100_000) {
        let total: u32 = channels_for_l(l).into_iter().map(dirac_degeneracy).sum();
        prop_assert_eq!(total, if l == 0 { 2 } else { 2 * (2 * l + 1) });
    }
}

#[test]
fn remainder_grid_with_frozen_constant() {
    for gi in 1..=9 {
        let gamma = f64::from(gi) / 10.0;
        let g = Coupling::new(gamma).unwrap();
        for big_n in (1u32..=1000).step_by(37).chain([1000]) {
            for l in 0..big_n {
                for c in channels_for_l(l) {
                    let idx = LevelIndex::new(big_n - l, c).unwrap();
                    let r = (level_difference(g, idx) - fine_structure_term(g, idx)).abs();
                    let bound = REMAINDER_CONSTANT * gamma.powi(6) / f64::from(big_n).powi(4);
                    assert!(r <= bound, "γ={gamma} N={big_n} l={l}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_negative_and_small_coupling(gamma in 1e-3f64..0.3) {
        let g = Coupling::new(gamma).unwrap();
        let s = shift(g, 1e-10).unwrap();
        prop_assert!(s.value < 0.0);
        prop_assert!(s.tail_estimate <= 1e-10);
        let dev = (s.value / (gamma * gamma) - schwinger_coefficient()).abs();
        prop_assert!(dev <= SMALL_COUPLING_CONSTANT * gamma * gamma);
    }

    #[test]
    fn shift_decreasing(a in 0.0f64..0.99, b in 0.0f64..0.99) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s_lo = shift(Coupling::new(lo).unwrap(), 1e-8).unwrap().value;
        let s_hi = shift(Coupling::new(hi).unwrap(), 1e-8).unwrap().value;
        prop_assert!(s_hi < s_lo);
    }

    #[test]
    fn refinement_is_monotone(gamma in 0.05f64..0.95, l_max in 1u32..40, n_max in 1u32..60) {
        let g = Coupling::new(gamma).unwrap();
        let base = direct_partial_sum(g, l_max, n_max);
        prop_assert!(direct_partial_sum(g, l_max + 1, n_max) <= base);
        prop_assert!(direct_partial_sum(g, l_max, n_max + 1) <= base);
        let full = shift(g, 1e-8).unwrap();
        prop_assert!(full.value <= base);
    }
}

#[test]
fn shift_tolerance_refinement() {
    for gamma in [0.2, 0.6, 0.95] {
        let g = Coupling::new(gamma).unwrap();
        let coarse = shift(g, 1e-4).unwrap();
        let fine = shift(g, 1e-10).unwrap();
        assert!((coarse.value - fine.value).abs() <= coarse.tail_estimate + fine.tail_estimate);
    }
}

#[test]
fn shift_is_thread_count_independent() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            [0.1, 0.5, 0.9, 0.99].map(|g| {
                shift(Coupling::new(g).unwrap(), 1e-8)
                    .unwrap()
                    .value
                    .to_bits()
            })
        })
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

// Thomas-Fermi structure

#[test]
fn hole_radius_scaling() {
    for z in [2.0, 27.0] {
        let z13 = f64::cbrt(z);
        for r in [0.05, 0.4, 3.0] {
            let rz = exchange_hole_radius(z, tf(), r).unwrap();
            let r1 = exchange_hole_radius(1.0, tf(), z13 * r).unwrap();
            // R_1 at the scaled point encloses 1/2 of a unit charge, not 1/(2Z),
            // so compare through the density of Z = 1 with hole charge 1/(2Z)
            let d1 = density(1.0, tf()).unwrap();
            let q = d1.ball_charge(z13 * r, z13 * rz);
            assert!((q - 0.5 / z).abs() < 1e-9, "Z={z} r={r}: {q}");
            assert!(r1 > z13 * rz);
        }
    }
}

#[test]
fn hole_radius_monotone_beyond_peak() {
    // ρ is largest at the nucleus, so every r > 0 lies beyond the peak.
    let mut prev = 0.0;
    for i in 0..60 {
        let r = 0.01 * 1.15f64.powi(i);
        let big_r = exchange_hole_radius(1.0, tf(), r).unwrap();
        assert!(big_r >= prev, "r={r}: {big_r} < {prev}");
        prev = big_r;
    }
}

#[test]
fn density_bound_on_grid() {
    let d = density(1.0, tf()).unwrap();
    let b = scott_core::thomas_fermi::length_scale();
    for x in tf().grid().into_iter().skip(1).step_by(7) {
        let r = b * x;
        let ratio = d.rho(r) * 3.0 * std::f64::consts::PI.powi(2) * (r / 2.0).powf(1.5);
        assert!(ratio <= 1.0 + 1e-15, "x={x}: {ratio}");
    }
}

#[test]
fn potential_scaling_bounds() {
    let radii: Vec<f64> = (0..80).map(|i| 1e-4 * 1.2f64.powi(i)).collect();
    let sup = |z: f64| {
        radii
            .iter()
            .map(|&r| mean_field(z, tf(), r / z.cbrt()).unwrap() * z.powf(-4.0 / 3.0))
            .fold(0.0, f64::max)
    };
    let grad_sup = |z: f64| {
        radii
            .iter()
            .map(|&r| {
                let rz = r / z.cbrt();
                mean_field_gradient(z, tf(), rz).unwrap().abs() * rz.sqrt() * z.powf(-1.5)
            })
            .fold(0.0, f64::max)
    };
    let (v1, g1) = (sup(1.0), grad_sup(1.0));
    for z in [8.0, 50.0] {
        assert!(((sup(z) - v1) / v1).abs() < 1e-6);
        assert!(grad_sup(z) <= g1 * (1.0 + 1e-9));
    }
}

#[test]
fn screening_bounds_on_log_grid() {
    for (z, c) in [(1.0, 1.0), (3.0, 0.5), (10.0, 2.0)] {
        for i in 0..=12 {
            let x = c * 10f64.powf(-3.0 + 0.5 * f64::from(i));
            let chi = screening_potential(z, c, tf(), x).unwrap();
            let bound = mean_field(z, tf(), x / c).unwrap() / (c * c);
            assert!(
                chi > 0.0 && chi < bound,
                "Z={z} c={c} x={x}: {chi} vs {bound}"
            );
        }
    }
}

#[test]
fn screening_far_field_at_unit_scale() {
    for z in [1.0, 4.0] {
        let x = 3e4;
        let chi = screening_potential(z, 1.0, tf(), x).unwrap();
        assert!((x * chi - (z - 0.5)).abs() < 1e-3, "Z={z}: {}", x * chi);
    }
}

// Comparison pipeline

#[test]
fn comparison_rows_invariants() {
    use scott_core::atomic_energy::{comparison_table, NistRecord, PhysicalConstants};
    let constants = PhysicalConstants::default();
    let records: Vec<NistRecord> = (1..=41)
        .rev()
        .map(|z| NistRecord {
            z,
            e_total: -0.5 * f64::from(z).powf(2.4),
        })
        .collect();
    let rows = comparison_table(&records, None, constants, tf(), 1e-10).unwrap();
    let again = comparison_table(&records, None, constants, tf(), 1e-10).unwrap();
    assert_eq!(format!("{rows:?}"), format!("{again:?}"));
    assert!(rows.windows(2).all(|w| w[0].z < w[1].z));

    let model: Vec<f64> = rows.iter().map(|r| r.model_q.unwrap()).collect();
    assert!(model.windows(2).all(|w| w[1] < w[0]));
    for r in &rows {
        assert!(r.gamma <= 0.3);
        let gap = (r.schwinger_q - r.model_q.unwrap()).abs();
        assert!(
            gap <= SMALL_COUPLING_CONSTANT * r.gamma.powi(4) + 1e-10,
            "Z={}",
            r.z
        );
    }
}
