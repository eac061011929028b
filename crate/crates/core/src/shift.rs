//! The relativistic spectral shift function
//!
//! ```text
//! s(γ) = γ⁻² Σ_{l≥0} Σ_{j=l±1/2} (2j+1) Σ_{n≥1} (λ^D_{γ,n,l,j} - λ^S_{γ,n,l})
//! ```
//!
//! and Schwinger's approximation built from the γ⁴ fine-structure term.
//!
//! Each Dirac level of degeneracy `2j+1` is paired with the spin-doubled
//! Schrödinger level of the same `(n, l)`, which makes every summand
//! negative. The infinite sum is evaluated as
//!
//! 1. per channel `(l, j)` with `l ≤ L`: direct summation of
//!    [`level_difference`] for `n ≤ n_direct`, then an Euler-Maclaurin tail
//!    using the exact antiderivatives of both level formulas;
//! 2. for `l > L`: the fine-structure term summed in closed form with
//!    Hurwitz zeta values, plus an envelope for the neglected O(γ⁶) part.
//!
//! Channel blocks may be evaluated in parallel but are always reduced in
//! increasing `l` with compensated summation, so results are bit-identical
//! for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogenic::{fine_structure_coefficient, level_difference, Coupling};
use crate::quantum_numbers::{channels_for_l, dirac_degeneracy, ChannelIndex, LevelIndex};
use crate::summation::{neumaier_sum, NeumaierSum};
use crate::zeta::{hurwitz_zeta, riemann_zeta, zeta_minus_one};

pub const MIN_TOLERANCE: f64 = 1e-10;
pub const MAX_TOLERANCE: f64 = 1e-2;

/// Fitted on `γ ∈ (0, 0.3]`: `|s(γ)/γ² - (ζ(3) - 5π²/24)| ≤ K γ²`.
pub const SMALL_COUPLING_CONSTANT: f64 = 0.3;

/// Tolerance used when none is given: `1e-8` up to `γ = 0.9`, `1e-6` above.
pub fn default_tolerance(g: Coupling) -> f64 {
    if g.gamma() <= 0.9 {
        1e-8
    } else {
        1e-6
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConfig {
    pub tol: f64,
    /// Radial levels summed directly in every channel before the
    /// Euler-Maclaurin tail takes over.
    pub n_direct: u32,
    /// Upper limit on the number of `l` blocks summed explicitly.
    pub max_l: u64,
}

impl ShiftConfig {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            n_direct: 32,
            max_l: 1_000_000,
        }
    }
}

/// Value of `s(γ)` together with its truncation record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub gamma: Coupling,
    pub value: f64,
    /// Bound on `|s(γ) - value|`.
    pub tail_estimate: f64,
    /// Largest `l` summed channel by channel.
    pub l_max: u64,
    /// Radial levels summed directly per channel.
    pub n_max: u64,
    pub target_tol: f64,
}

/// Scott coefficient `q = 1/2 + s(γ)`, the coefficient of `Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScottCoefficient {
    pub gamma: Coupling,
    pub q: f64,
    pub tail_estimate: f64,
}

fn check_tolerance(tol: f64) -> Result<()> {
    if (MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tol) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "tolerance",
            value: tol,
            min: MIN_TOLERANCE,
            max: MAX_TOLERANCE,
        })
    }
}

/// `s(γ)` to absolute accuracy `tol ∈ [1e-10, 1e-2]`.
pub fn shift(g: Coupling, tol: f64) -> Result<ShiftResult> {
    shift_with(g, &ShiftConfig::new(tol))
}

pub fn shift_with(g: Coupling, config: &ShiftConfig) -> Result<ShiftResult> {
    check_tolerance(config.tol)?;
    if config.n_direct == 0 {
        return Err(Error::InvalidArgument("n_direct must be at least 1".into()));
    }
    let gamma = g.gamma();
    if gamma == 0.0 {
        return Ok(ShiftResult {
            gamma: g,
            value: 0.0,
            tail_estimate: 0.0,
            l_max: 0,
            n_max: 0,
            target_tol: config.tol,
        });
    }
    let g2 = g.gamma_sq();
    let budget = 0.5 * config.tol;

    // smallest L with l_tail_bound(L) ≤ budget
    let l_needed = (2.0 * g2 / budget).cbrt().ceil().max(16.0);
    if l_needed > config.max_l as f64 {
        return Err(Error::ToleranceUnreachable {
            tol: config.tol,
            bound: l_tail_bound(g2, config.max_l as f64),
            l_max: config.max_l,
        });
    }
    let l_max = l_needed as u64;
    let l_max_u32 = u32::try_from(l_max).map_err(|_| Error::ToleranceUnreachable {
        tol: config.tol,
        bound: l_tail_bound(g2, config.max_l as f64),
        l_max,
    })?;

    let blocks: Vec<(f64, f64)> = (0..=l_max_u32)
        .into_par_iter()
        .map(|l| block_sum(g, l, config.n_direct))
        .collect();

    let mut sum = NeumaierSum::new();
    let mut em_bound = 0.0;
    for &(value, bound) in &blocks {
        sum.add(value);
        em_bound += bound;
    }
    sum.add(fine_structure_l_tail(g2, l_max)?);

    let l_bound = l_tail_bound(g2, l_max as f64);
    let value = sum.value() / g2;
    let tail_estimate = l_bound + em_bound / g2 + 16.0 * f64::EPSILON * value.abs();
    if tail_estimate > config.tol {
        return Err(Error::ToleranceUnreachable {
            tol: config.tol,
            bound: tail_estimate,
            l_max,
        });
    }
    Ok(ShiftResult {
        gamma: g,
        value,
        tail_estimate,
        l_max,
        n_max: u64::from(config.n_direct),
        target_tol: config.tol,
    })
}

/// Bound on the O(γ⁶) part of `γ⁻² Σ_{l>L} ...` omitted by the closed-form
/// fine-structure tail: `γ⁴ / L³`.
fn l_tail_bound(g2: f64, l: f64) -> f64 {
    g2 * g2 / (l * l * l)
}

/// `Σ_{l>L} Σ_{n≥1} Σ_j (2j+1) δλ_{n,l,j}`.
///
/// Grouping the double sum by `N = n + l`, the multiplicities are
/// `N - 1 - L` and `Σ (2l+1) = N² - (L+1)²`, so the tail equals
/// `-γ⁴ [ 5/4 ζ(2, L+2) - 2(L+1) ζ(3, L+2) + 3/4 (L+1)² ζ(4, L+2) ]`.
fn fine_structure_l_tail(g2: f64, l_max: u64) -> Result<f64> {
    let a = l_max as f64 + 2.0;
    let lp = l_max as f64 + 1.0;
    let bracket = 1.25 * hurwitz_zeta(2.0, a)? - 2.0 * lp * hurwitz_zeta(3.0, a)?
        + 0.75 * lp * lp * hurwitz_zeta(4.0, a)?;
    Ok(-g2 * g2 * bracket)
}

/// Degeneracy-weighted radial sum of one `l` block, with the accumulated
/// Euler-Maclaurin remainder bound (both not yet divided by γ²).
fn block_sum(g: Coupling, l: u32, n_direct: u32) -> (f64, f64) {
    let mut acc = NeumaierSum::new();
    let mut bound = 0.0;
    for c in channels_for_l(l) {
        let (s, b) = channel_sum(g, c, n_direct);
        let weight = f64::from(dirac_degeneracy(c));
        acc.add(weight * s);
        bound += weight * b;
    }
    (acc.value(), bound)
}

/// `Σ_{n≥1} (λ^D - λ^S)` in one channel and a bound on the truncation error
/// of the Euler-Maclaurin tail.
fn channel_sum(g: Coupling, c: ChannelIndex, n_direct: u32) -> (f64, f64) {
    let mut acc: NeumaierSum = (1..=n_direct)
        .map(|n| level_difference(g, level(n, c)))
        .collect();

    let g2 = g.gamma_sq();
    let k = f64::from(c.kappa_abs());
    let root = ((k - g.gamma()) * (k + g.gamma())).sqrt();
    let defect = g2 / (k + root);

    let a = n_direct + 1;
    let big_n = f64::from(a) + f64::from(c.l());
    // The Dirac level is M/√(M²+γ²) - 1 with M = N - δ.
    let m = big_n - defect;
    let p = (m * m + g2).sqrt();

    let integral = g2 / (2.0 * big_n) - g2 / (p + m);
    let f0 = level_difference(g, level(a, c));
    let p3 = p * p * p;
    let n3 = big_n * big_n * big_n;
    let d1 = g2 / p3 - g2 / n3;
    let d3 = 3.0 * g2 * (4.0 * m * m - g2) / (p3 * p3 * p) - 12.0 * g2 / (n3 * big_n * big_n);

    acc.add(integral);
    acc.add(0.5 * f0);
    acc.add(-d1 / 12.0);
    acc.add(d3 / 720.0);

    // next Euler-Maclaurin term for f ~ -γ⁴/(2kN³) is γ⁴/(24 k N⁸); the
    // envelope carries a factor 12 on top of it
    let m4 = m * m * m * m;
    let bound = g2 * g2 / (2.0 * k * m4 * m4);
    (acc.value(), bound)
}

fn level(n: u32, c: ChannelIndex) -> LevelIndex {
    LevelIndex::new(n, c).expect("radial quantum numbers start at 1")
}

/// Truncated direct sum `γ⁻² Σ_{l ≤ l_max} Σ_j (2j+1) Σ_{n ≤ n_max} (λ^D - λ^S)`
/// without any tail correction.
pub fn direct_partial_sum(g: Coupling, l_max: u32, n_max: u32) -> f64 {
    if g.gamma() == 0.0 {
        return 0.0;
    }
    let blocks: Vec<f64> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            neumaier_sum(channels_for_l(l).into_iter().flat_map(|c| {
                let weight = f64::from(dirac_degeneracy(c));
                (1..=n_max).map(move |n| weight * level_difference(g, level(n, c)))
            }))
        })
        .collect();
    neumaier_sum(blocks) / g.gamma_sq()
}

/// `q = 1/2 + s(γ)`.
pub fn scott_coefficient(g: Coupling, tol: f64) -> Result<ScottCoefficient> {
    let s = shift(g, tol)?;
    Ok(ScottCoefficient {
        gamma: g,
        q: 0.5 + s.value,
        tail_estimate: s.tail_estimate,
    })
}

/// Schwinger's coefficient `ζ(3) - 5π²/24 ≈ -0.8541`, i.e. the Schwinger
/// shift at unit coupling.
pub fn schwinger_coefficient() -> f64 {
    let zeta3 = riemann_zeta(3.0).expect("ζ(3) is finite");
    zeta3 - 5.0 * std::f64::consts::PI * std::f64::consts::PI / 24.0
}

/// Schwinger's approximation `(ζ(3) - 5π²/24) γ²` to `s(γ)`.
pub fn schwinger_shift(g: Coupling) -> f64 {
    schwinger_coefficient() * g.gamma_sq()
}

/// `Σ_{l ≤ l_max} Σ_{n ≤ n_max} Σ_j (2j+1) δλ_{n,l,j}` at unit coupling.
pub fn schwinger_bruteforce_coefficient(l_max: u32, n_max: u32) -> f64 {
    let blocks: Vec<f64> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            neumaier_sum(channels_for_l(l).into_iter().flat_map(|c| {
                let weight = f64::from(dirac_degeneracy(c));
                (1..=n_max).map(move |n| weight * fine_structure_coefficient(level(n, c)))
            }))
        })
        .collect();
    neumaier_sum(blocks)
}

/// Truncated Schwinger sum `γ⁻² Σ (2j+1) δλ_{n,l,j}` over `l ≤ l_max`,
/// `n ≤ n_max`.
pub fn schwinger_shift_bruteforce(g: Coupling, l_max: u32, n_max: u32) -> f64 {
    schwinger_bruteforce_coefficient(l_max, n_max) * g.gamma_sq()
}

/// Schwinger coefficient from square truncations `L/4`, `L/2`, `L` and two
/// Richardson steps eliminating the `1/L` and `1/L²` tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// `|second Richardson step - first Richardson step|`.
    pub error_estimate: f64,
    pub raw: f64,
}

pub fn schwinger_extrapolated_coefficient(cutoff: u32) -> Result<Extrapolated> {
    if cutoff < 16 || !cutoff.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be a multiple of 4 and at least 16, got {cutoff}"
        )));
    }
    let raw = |c: u32| schwinger_bruteforce_coefficient(c, c);
    let (r4, r2, r1) = (raw(cutoff / 4), raw(cutoff / 2), raw(cutoff));
    let first_coarse = 2.0 * r2 - r4;
    let first = 2.0 * r1 - r2;
    let second = (4.0 * first - first_coarse) / 3.0;
    Ok(Extrapolated {
        value: second,
        error_estimate: (second - first).abs(),
        raw: r1,
    })
}

/// Both sides of `Σ_{m,n≥1} (m+n)^{-s} = ζ(s-1) - ζ(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaIdentityCheck {
    pub s: f64,
    /// Double sum over `m + n ≤ cutoff` plus the midpoint integral of the
    /// remainder.
    pub truncated: f64,
    /// Bound on the error of `truncated`.
    pub tail_estimate: f64,
    /// `ζ(s-1) - ζ(s)`.
    pub closed_form: f64,
}

impl ZetaIdentityCheck {
    pub fn agrees(&self) -> bool {
        (self.truncated - self.closed_form).abs() <= self.tail_estimate
    }
}

pub const ZETA_IDENTITY_CUTOFF: u32 = 4000;

pub fn zeta_double_sum_identity_check(s: f64) -> Result<ZetaIdentityCheck> {
    zeta_double_sum_identity_check_with(s, ZETA_IDENTITY_CUTOFF)
}

pub fn zeta_double_sum_identity_check_with(s: f64, cutoff: u32) -> Result<ZetaIdentityCheck> {
    if !s.is_finite() || s <= 2.0 {
        return Err(Error::InvalidArgument(format!(
            "double-sum identity requires s > 2, got {s}"
        )));
    }
    if cutoff < 2 {
        return Err(Error::InvalidArgument("cutoff must be at least 2".into()));
    }
    let rows: Vec<f64> = (1..cutoff)
        .into_par_iter()
        .map(|m| {
            let mut row = NeumaierSum::new();
            for n in (1..=cutoff - m).rev() {
                row.add(f64::from(m + n).powf(-s));
            }
            row.value()
        })
        .collect();
    let partial = neumaier_sum(rows.into_iter().rev());

    // Σ_{N>K} (N-1) N^{-s} ≈ ∫_{K+1/2}^∞ (x-1) x^{-s} dx
    let k = f64::from(cutoff);
    let x = k + 0.5;
    let integral = x.powf(2.0 - s) / (s - 2.0) - x.powf(1.0 - s) / (s - 1.0);
    // midpoint error ≤ |f'(K+1/2)|/24 for convex decreasing f = (x-1)x^{-s}
    let slope = ((1.0 - s) * k + s) * k.powf(-s - 1.0);
    let truncated = partial + integral;
    let closed_form = zeta_minus_one(s - 1.0)? - zeta_minus_one(s)?;
    let tail_estimate = slope.abs() / 12.0 + 64.0 * f64::EPSILON * closed_form.abs();
    Ok(ZetaIdentityCheck {
        s,
        truncated,
        tail_estimate,
        closed_form,
    })
}
