//! TF density, mean field and the exchange-hole screened potential.

use std::f64::consts::PI;

use super::{length_scale, TfSolution};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_to_infinity};

/// Absolute quadrature target per unit of nuclear charge.
const QUAD_TOL: f64 = 1e-13;
const HOLE_CHARGE: f64 = 0.5;
const HOLE_CHARGE_TOL: f64 = 1e-11;

/// `ρ_Z(r) = Z² ρ_1(Z^{1/3} r)` with `ρ_1(r) = (2φ(r/b)/r)^{3/2} / (3π²)`.
#[derive(Debug, Clone, Copy)]
pub struct RadialDensity<'a> {
    z: f64,
    sol: &'a TfSolution,
}

fn check_charge(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "nuclear charge must be positive, got {z}"
        )))
    }
}

fn check_radius(what: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} must be positive, got {r}"
        )))
    }
}

pub fn density(z: f64, sol: &TfSolution) -> Result<RadialDensity<'_>> {
    check_charge(z)?;
    Ok(RadialDensity { z, sol })
}

impl<'a> RadialDensity<'a> {
    pub fn z(&self) -> f64 {
        self.z
    }

    fn length(&self) -> f64 {
        length_scale() / self.z.cbrt()
    }

    /// Radius where the shooting core of the profile ends.
    fn join_radius(&self) -> f64 {
        self.sol.join_point() * self.length()
    }

    /// Particle density at radius `r ≥ 0`; infinite at the origin.
    pub fn rho(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return f64::INFINITY;
        }
        let z13 = self.z.cbrt();
        let r1 = z13 * r;
        let phi = self.sol.phi(r1 / length_scale()).max(0.0);
        let base = 2.0 * phi / r1;
        self.z * self.z * base * base.sqrt() / (3.0 * PI * PI)
    }

    /// `∫_a^b f(s) ds` for an integrand with at most an `s^{-1/2}`-type
    /// singularity at the origin, split at `breaks` and at the join radius.
    /// `b = ∞` is allowed.
    fn radial_integral<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, breaks: &[f64]) -> f64 {
        let tol = QUAD_TOL * self.z.max(1.0);
        let mut points = vec![a];
        points.extend(
            breaks
                .iter()
                .copied()
                .chain(std::iter::once(self.join_radius()))
                .filter(|&p| p > a && p < b),
        );
        points.sort_by(f64::total_cmp);
        points.dedup();
        let mut total = 0.0;
        for w in points.windows(2) {
            let (p, q) = (w[0], w[1]);
            total += integrate(|u| 2.0 * u * f(u * u), p.sqrt(), q.sqrt(), tol).value;
        }
        let last = *points.last().expect("non-empty");
        if b.is_infinite() {
            total += if last > 0.0 {
                integrate_to_infinity(&f, last, tol).value
            } else {
                integrate_to_infinity(&f, self.length(), tol).value
                    + integrate(|u| 2.0 * u * f(u * u), 0.0, self.length().sqrt(), tol).value
            };
        } else {
            total += integrate(|u| 2.0 * u * f(u * u), last.sqrt(), b.sqrt(), tol).value;
        }
        total
    }

    /// Charge inside the sphere of radius `r`.
    pub fn enclosed_charge(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        self.radial_integral(|s| 4.0 * PI * self.rho(s) * s * s, 0.0, r, &[])
    }

    /// `4π ∫ ρ r² dr`.
    pub fn total_charge(&self) -> f64 {
        self.radial_integral(|s| 4.0 * PI * self.rho(s) * s * s, 0.0, f64::INFINITY, &[])
    }

    /// `V(r) = Q(r)/r + 4π ∫_r^∞ ρ(s) s ds`.
    fn newton_potential(&self, r: f64) -> f64 {
        let outside = self.radial_integral(|s| 4.0 * PI * self.rho(s) * s, r, f64::INFINITY, &[]);
        self.enclosed_charge(r) / r + outside
    }

    /// Charge inside the ball of radius `radius` whose center lies at
    /// distance `r > 0` from the nucleus.
    pub fn ball_charge(&self, r: f64, radius: f64) -> f64 {
        if radius <= 0.0 {
            return 0.0;
        }
        let full = if radius > r {
            self.enclosed_charge(radius - r)
        } else {
            0.0
        };
        let lo = (r - radius).abs();
        let hi = r + radius;
        let partial = self.radial_integral(
            |s| {
                let d = s - r;
                PI / r * self.rho(s) * s * (radius * radius - d * d).max(0.0)
            },
            lo,
            hi,
            &[r],
        );
        full + partial
    }

    /// Potential at distance `p > 0` from the nucleus generated by the
    /// charge inside the ball of radius `h` centered there.
    pub fn ball_potential(&self, p: f64, h: f64) -> f64 {
        if h <= 0.0 {
            return 0.0;
        }
        let lo = (p - h).max(0.0);
        let hi = p + h;
        let len = |s: f64| ((p + s).min(h) - (p - s).abs()).max(0.0);
        2.0 * PI / p
            * self.radial_integral(|s| self.rho(s) * s * len(s), lo, hi, &[(h - p).abs(), p])
    }
}

/// `V_Z(r) = (ρ_Z ∗ 1/|·|)(r)` from Newton's theorem.
pub fn mean_field(z: f64, sol: &TfSolution, r: f64) -> Result<f64> {
    check_radius("radius", r)?;
    Ok(density(z, sol)?.newton_potential(r))
}

/// `V_Z(r) = Z (1 - φ(Z^{1/3} r / b)) / r`, the same field read off the TF
/// equation.
pub fn mean_field_closed_form(z: f64, sol: &TfSolution, r: f64) -> Result<f64> {
    check_charge(z)?;
    check_radius("radius", r)?;
    let x = z.cbrt() * r / length_scale();
    Ok(z * (1.0 - sol.phi(x)) / r)
}

/// `dV_Z/dr`.
pub fn mean_field_gradient(z: f64, sol: &TfSolution, r: f64) -> Result<f64> {
    check_charge(z)?;
    check_radius("radius", r)?;
    let scale = z.cbrt() / length_scale();
    let (phi, dphi) = sol.phi_and_slope(scale * r);
    Ok(-z * (1.0 - phi) / (r * r) - z * dphi * scale / r)
}

/// Smallest `R` such that the ball of radius `R` around a point at distance
/// `r` from the nucleus holds TF charge `½`.
pub fn exchange_hole_radius(z: f64, sol: &TfSolution, r: f64) -> Result<f64> {
    check_radius("radius", r)?;
    let rho = density(z, sol)?;
    if z <= HOLE_CHARGE {
        return Err(Error::InsufficientCharge { charge: z });
    }
    let mut lo = 0.0;
    let mut hi = r.max(rho.length());
    let mut grown = 0;
    while rho.ball_charge(r, hi) < HOLE_CHARGE {
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 200 {
            return Err(Error::NonConvergence(
                "exchange-hole radius bracket did not close".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let q = rho.ball_charge(r, mid);
        if (q - HOLE_CHARGE).abs() < HOLE_CHARGE_TOL {
            return Ok(mid);
        }
        if q < HOLE_CHARGE {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `χ(x) = c⁻⁴ ∫_{|x-y| > R_Z(x/c)} ρ_Z(y/c) / |x-y| dy`, i.e.
/// `c⁻² [V_Z(p) - H(p, R_Z(p)/c)]` with `p = x/c` and `H` the potential of
/// the charge in the excluded ball.
pub fn screening_potential(z: f64, c: f64, sol: &TfSolution, x: f64) -> Result<f64> {
    check_radius("screening scale c", c)?;
    check_radius("position", x)?;
    let p = x / c;
    let radius = exchange_hole_radius(z, sol, p)?;
    let rho = density(z, sol)?;
    let full = rho.newton_potential(p);
    let hole = rho.ball_potential(p, radius / c);
    Ok((full - hole) / (c * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thomas_fermi::solve_tf;
    use std::sync::OnceLock;

    fn sol() -> &'static TfSolution {
        static SOL: OnceLock<TfSolution> = OnceLock::new();
        SOL.get_or_init(|| solve_tf(1e-8).unwrap())
    }

    #[test]
    fn normalization() {
        for z in [1.0, 8.0, 92.0] {
            let q = density(z, sol()).unwrap().total_charge();
            assert!((q - z).abs() < 1e-6 * z, "Z={z}: {q}");
        }
    }

    #[test]
    fn scaling_of_density() {
        let one = density(1.0, sol()).unwrap();
        let eight = density(8.0, sol()).unwrap();
        for r in [1e-3, 0.05, 0.7, 3.0, 40.0] {
            let a = eight.rho(r);
            let b = 64.0 * one.rho(2.0 * r);
            assert!(((a - b) / b).abs() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn density_bound() {
        let d = density(3.0, sol()).unwrap();
        for i in 0..200 {
            let r = 1e-4 * 1.1f64.powi(i);
            let bound = (2.0 * 3.0 / r).powf(1.5) / (3.0 * PI * PI);
            assert!(d.rho(r) <= bound);
        }
    }

    #[test]
    fn newton_matches_closed_form() {
        for z in [1.0, 10.0] {
            for r in [1e-3, 0.1, 1.0, 7.0, 90.0] {
                let a = mean_field(z, sol(), r).unwrap();
                let b = mean_field_closed_form(z, sol(), r).unwrap();
                assert!(((a - b) / b).abs() < 1e-6, "Z={z} r={r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn mean_field_limits() {
        // Z/r - V_Z → Z/r, with V_Z(0) = -Z^{4/3} φ'(0) / b finite
        let r = 1e-12;
        let v = mean_field(2.0, sol(), r).unwrap();
        let near = (2.0 / r - v) / (2.0 / r);
        assert!((near - 1.0).abs() < 1e-6);
        let v0 = -2f64.powf(4.0 / 3.0) * sol().initial_slope() / length_scale();
        // V_Z(r) = V_Z(0) - O(√r)
        assert!(((v - v0) / v0).abs() < 1e-5, "{v} vs {v0}");
        let r = 1e4;
        let far = mean_field(2.0, sol(), r).unwrap() * r / 2.0;
        assert!((far - 1.0).abs() < 1e-6);
        assert!(mean_field(1.0, sol(), 0.0).is_err());
        assert!(mean_field(1.0, sol(), -1.0).is_err());
    }

    #[test]
    fn gradient_matches_difference_quotient() {
        for r in [0.01, 0.5, 4.0] {
            let h = 1e-6 * r;
            let fd = (mean_field_closed_form(5.0, sol(), r + h).unwrap()
                - mean_field_closed_form(5.0, sol(), r - h).unwrap())
                / (2.0 * h);
            let g = mean_field_gradient(5.0, sol(), r).unwrap();
            assert!(((fd - g) / g).abs() < 1e-5, "r={r}: {fd} vs {g}");
        }
    }

    #[test]
    fn ball_around_nucleus_is_a_sphere() {
        let d = density(1.0, sol()).unwrap();
        let r = 1e-9;
        let q = d.ball_charge(r, 2.0);
        assert!((q - d.enclosed_charge(2.0)).abs() < 1e-7);
    }

    #[test]
    fn hole_radius_defining_property() {
        let d = density(1.0, sol()).unwrap();
        for r in [0.1, 1.0, 10.0] {
            let big_r = exchange_hole_radius(1.0, sol(), r).unwrap();
            assert!((d.ball_charge(r, big_r) - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn hole_radius_needs_charge() {
        assert!(matches!(
            exchange_hole_radius(0.4, sol(), 1.0),
            Err(Error::InsufficientCharge { .. })
        ));
    }

    #[test]
    fn screening_bounds() {
        for x in [1e-3, 0.3, 1.0, 30.0, 1e3] {
            let chi = screening_potential(1.0, 1.0, sol(), x).unwrap();
            let bound = mean_field(1.0, sol(), x).unwrap();
            assert!(chi > 0.0 && chi < bound, "x={x}: {chi} vs {bound}");
        }
    }

    #[test]
    fn screening_far_field() {
        let x = 1e4;
        let chi = screening_potential(3.0, 1.0, sol(), x).unwrap();
        assert!((x * chi - 2.5).abs() < 1e-3, "{}", x * chi);
    }
}
