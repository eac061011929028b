//! Sweep that produced the frozen empirical constants in `hydrogenic` and
//! `shift`. Run with `cargo run --release -p scott-core --example fit_constants`.

use scott_core::hydrogenic::{coulomb_expectation, fine_structure_term, level_difference};
use scott_core::quantum_numbers::channels_for_l;
use scott_core::shift::{schwinger_coefficient, shift};
use scott_core::{Coupling, LevelIndex};

fn main() {
    let (mut remainder, mut refined, mut difference, mut virial) = (0f64, 0f64, 0f64, 0f64);
    for gi in 1..=9 {
        let gamma = f64::from(gi) / 10.0;
        let g = Coupling::new(gamma).unwrap();
        for big_n in 1u32..=1000 {
            let nn = f64::from(big_n);
            for l in 0..big_n {
                let n = big_n - l;
                for c in channels_for_l(l) {
                    let idx = LevelIndex::new(n, c).unwrap();
                    let d = level_difference(g, idx);
                    let r = (d - fine_structure_term(g, idx)).abs();
                    remainder = remainder.max(r * nn.powi(4) / gamma.powi(6));
                    refined = refined
                        .max(r * nn.powi(4) * f64::from(l + 1) / (gamma.powi(6) * f64::from(n)));
                    difference =
                        difference.max(-d * nn.powi(3) * f64::from(l.max(1)) / gamma.powi(4));
                    let bg = coulomb_expectation(g, idx) * nn * nn / (gamma * gamma);
                    virial = virial.max((bg - 1.0).abs() / (gamma * gamma));
                }
            }
        }
    }
    println!("REMAINDER_CONSTANT          ≥ {remainder}");
    println!("REMAINDER_CONSTANT_REFINED  ≥ {refined}");
    println!("DIFFERENCE_CONSTANT         ≥ {difference}");
    println!("VIRIAL_DEVIATION_CONSTANT   ≥ {virial}");

    let schwinger = schwinger_coefficient();
    let small = (1..=30)
        .map(|i| {
            let gamma = f64::from(i) / 100.0;
            let s = shift(Coupling::new(gamma).unwrap(), 1e-10).unwrap().value;
            (s / (gamma * gamma) - schwinger).abs() / (gamma * gamma)
        })
        .fold(0.0, f64::max);
    println!("SMALL_COUPLING_CONSTANT     ≥ {small}");
}
