//! Closed-form hydrogenic spectra.
//!
//! Levels are dimensionless: the Dirac-Coulomb eigenvalue `λ^D` is measured
//! from the rest energy in units of mc², and the Schrödinger eigenvalue
//! `λ^S = -γ²/(2(n+l)²)` uses the same scale.
//!
//! Every expression that would subtract nearly equal numbers is rewritten:
//! `√(1-x) - 1` becomes `-x/(1+√(1-x))` and `k - √(k²-γ²)` becomes
//! `γ²/(k+√(k²-γ²))`, where `k = j + 1/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum_numbers::LevelIndex;

/// Fitted on `γ ∈ {0.1, …, 0.9}`, `n + l ≤ 1000`:
/// `|λ^D - λ^S - δλ| ≤ C γ⁶ / (n+l)⁴`. The ratio grows like `(n+l)/8` at
/// `l = 0`, so the constant is set by the largest `n + l` of the grid.
pub const REMAINDER_CONSTANT: f64 = 245.0;

/// Fitted on the same grid: `|λ^D - λ^S - δλ| ≤ C γ⁶ n / ((n+l)⁴ (l+1))`,
/// uniform in `n + l`.
pub const REMAINDER_CONSTANT_REFINED: f64 = 1.6;

/// Fitted on the same grid: `0 ≤ λ^S - λ^D ≤ C γ⁴ / ((n+l)³ max(l, 1))`.
pub const DIFFERENCE_CONSTANT: f64 = 0.75;

/// Fitted on the same grid: `|⟨γ/|x|⟩ (n+l)²/γ² - 1| ≤ C γ²`.
pub const VIRIAL_DEVIATION_CONSTANT: f64 = 5.0;

/// Coupling constant `γ = Z/c`, restricted to `0 ≤ γ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(gamma: f64) -> Result<Self> {
        if (0.0..1.0).contains(&gamma) {
            Ok(Self(gamma))
        } else {
            Err(Error::CouplingDomain(gamma))
        }
    }

    pub fn zero() -> Self {
        Self(0.0)
    }

    pub fn gamma(self) -> f64 {
        self.0
    }

    pub fn gamma_sq(self) -> f64 {
        self.0 * self.0
    }
}

impl TryFrom<f64> for Coupling {
    type Error = Error;

    fn try_from(gamma: f64) -> Result<Self> {
        Self::new(gamma)
    }
}

impl From<Coupling> for f64 {
    fn from(g: Coupling) -> f64 {
        g.0
    }
}

/// Channel-dependent pieces shared by the level formulas.
#[derive(Debug, Clone, Copy)]
struct LevelTerms {
    /// `k = j + 1/2`
    k: f64,
    /// principal quantum number `N = n + l`
    principal: f64,
    /// radial node count `N - k`
    radial: f64,
    /// `√(k² - γ²)`
    root: f64,
    /// `k - √(k² - γ²)`, without cancellation
    defect: f64,
}

impl LevelTerms {
    fn new(g: Coupling, idx: LevelIndex) -> Self {
        let k = f64::from(idx.channel().kappa_abs());
        let gamma = g.gamma();
        let root = ((k - gamma) * (k + gamma)).sqrt();
        let principal = idx.principal() as f64;
        Self {
            k,
            principal,
            radial: principal - k,
            root,
            defect: g.gamma_sq() / (k + root),
        }
    }

    /// `(N - δ)² + γ² = N² - 2(N-k)δ`
    fn denominator(&self) -> f64 {
        let n = self.principal;
        n * n - 2.0 * self.radial * self.defect
    }

    /// `√(1 - γ²/Δ) = (N - k + √(k²-γ²)) / √Δ`
    fn sqrt_one_minus(&self, big_delta: f64) -> f64 {
        (self.radial + self.root) / big_delta.sqrt()
    }
}

/// Dirac-Coulomb eigenvalue `λ^D_{γ,n,l,j}` (Sommerfeld's fine-structure
/// formula).
pub fn dirac_level(g: Coupling, idx: LevelIndex) -> f64 {
    if g.gamma() == 0.0 {
        return 0.0;
    }
    let t = LevelTerms::new(g, idx);
    let big_delta = t.denominator();
    let x = g.gamma_sq() / big_delta;
    -x / (1.0 + t.sqrt_one_minus(big_delta))
}

/// Balmer eigenvalue `λ^S_{γ,n,l} = -γ²/(2(n+l)²)`.
pub fn schroedinger_level(g: Coupling, n: u32, l: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidRadialNumber(n));
    }
    let principal = f64::from(n) + f64::from(l);
    Ok(-g.gamma_sq() / (2.0 * principal * principal))
}

/// `λ^D - λ^S` from a single rational expression in which every term has
/// the same sign.
///
/// With `e = 2(N-k)δ`, `Δ = N² - e` and `s = √(1-γ²/Δ)`:
///
/// ```text
/// λ^D - λ^S = -γ² [ (e(Δ+N²) + γ²Δ)/(Δs + N²) + e ] / (2N²Δ(1+s))
/// ```
///
/// The result is strictly negative for `γ > 0` and exactly zero at `γ = 0`.
pub fn level_difference(g: Coupling, idx: LevelIndex) -> f64 {
    if g.gamma() == 0.0 {
        return 0.0;
    }
    let t = LevelTerms::new(g, idx);
    let n2 = t.principal * t.principal;
    let e = 2.0 * t.radial * t.defect;
    let big_delta = n2 - e;
    let s = t.sqrt_one_minus(big_delta);
    let g2 = g.gamma_sq();
    let numerator = (e * (big_delta + n2) + g2 * big_delta) / (big_delta * s + n2) + e;
    -g2 * numerator / (2.0 * n2 * big_delta * (1.0 + s))
}

/// Fine-structure term at unit coupling:
/// `-(1/(2N³)) (1/(j+1/2) - 3/(4N))`.
pub fn fine_structure_coefficient(idx: LevelIndex) -> f64 {
    let n = idx.principal() as f64;
    let k = f64::from(idx.channel().kappa_abs());
    -(1.0 / k - 0.75 / n) / (2.0 * n * n * n)
}

/// Leading relativistic correction `δλ_{n,l,j} = γ⁴ · fine_structure_coefficient`.
pub fn fine_structure_term(g: Coupling, idx: LevelIndex) -> f64 {
    let g2 = g.gamma_sq();
    g2 * g2 * fine_structure_coefficient(idx)
}

/// Expectation `⟨ψ, γ/|x| ψ⟩` in a Dirac-Coulomb eigenstate (Burke-Grant):
///
/// ```text
/// γ² (k² + (N-k)√(k²-γ²)) / ( √(k²-γ²) ((√(k²-γ²) + N - k)² + γ²)^{3/2} )
/// ```
pub fn coulomb_expectation(g: Coupling, idx: LevelIndex) -> f64 {
    if g.gamma() == 0.0 {
        return 0.0;
    }
    let t = LevelTerms::new(g, idx);
    let m = t.radial + t.root;
    let g2 = g.gamma_sq();
    let big_delta = m * m + g2;
    g2 * (t.k * t.k + t.radial * t.root) / (t.root * big_delta * big_delta.sqrt())
}
