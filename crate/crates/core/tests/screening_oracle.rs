//! Brute-force oracle for the screened potential at `Z = 1`, `c = 1`,
//! `x = 1`: the hole radius and the potential are both recomputed from the
//! density by tensor-product Gauss-Legendre quadrature in `(s, μ)`.

use std::f64::consts::PI;

use scott_core::thomas_fermi::{density, screening_potential, solve_tf, RadialDensity};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

struct Rule(Vec<(f64, f64)>);

impl Rule {
    /// Composite rule with `panels` equal panels on `[a, b]`.
    fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            for &(x, w) in &self.0 {
                total += 0.5 * h * w * f(mid + 0.5 * h * x);
            }
        }
        total
    }

    /// `∫_a^b g(s) ds` through `s = u²`, which removes the `s^{-1/2}`
    /// behaviour of the radial integrands at the origin.
    fn radial<F: Fn(f64) -> f64>(&self, g: F, a: f64, b: f64, panels: usize) -> f64 {
        self.integrate(|u| 2.0 * u * g(u * u), a.sqrt(), b.sqrt(), panels)
    }

    /// `∫_a^∞ g(s) ds` through `s = a / w`.
    fn to_infinity<F: Fn(f64) -> f64>(&self, g: F, a: f64, panels: usize) -> f64 {
        self.integrate(|w| g(a / w) * a / (w * w), 0.0, 1.0, panels)
    }
}

/// `cos` of the polar angle at which `|x - y| = R` for `|x| = p`, `|y| = s`.
fn mu_star(p: f64, s: f64, big_r: f64) -> f64 {
    (p * p + s * s - big_r * big_r) / (2.0 * p * s)
}

fn pieces(p: f64, big_r: f64) -> Vec<f64> {
    let mut v = vec![0.0, (p - big_r).abs(), p, p + big_r, 200.0];
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn ball_charge(rule: &Rule, rho: &RadialDensity, p: f64, big_r: f64) -> f64 {
    // measure of μ ∈ [μ*, 1] inside the ball
    let g = |s: f64| {
        let inside = 1.0 - mu_star(p, s, big_r).clamp(-1.0, 1.0);
        2.0 * PI * s * s * rho.rho(s) * inside
    };
    pieces(p, big_r)
        .windows(2)
        .filter(|w| w[0] < p + big_r)
        .map(|w| rule.radial(g, w[0], w[1].min(p + big_r), 64))
        .sum()
}

fn screened(rule: &Rule, rho: &RadialDensity, p: f64, big_r: f64) -> f64 {
    let g = |s: f64| {
        let top = mu_star(p, s, big_r).min(1.0);
        if top <= -1.0 {
            return 0.0;
        }
        let inner = rule.integrate(
            |mu| 1.0 / (p * p + s * s - 2.0 * p * s * mu).sqrt(),
            -1.0,
            top,
            2,
        );
        2.0 * PI * s * s * rho.rho(s) * inner
    };
    let bounds = pieces(p, big_r);
    let finite: f64 = bounds
        .windows(2)
        .map(|w| rule.radial(g, w[0], w[1], 64))
        .sum();
    finite + rule.to_infinity(g, *bounds.last().unwrap(), 16)
}

#[test]
fn screening_matches_brute_force_oracle() {
    let sol = solve_tf(1e-8).unwrap();
    let rho = density(1.0, &sol).unwrap();
    let rule = Rule(gauss_legendre(20));
    let p = 1.0;

    let (mut lo, mut hi) = (0.0, 50.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if ball_charge(&rule, &rho, p, mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let big_r = 0.5 * (lo + hi);
    let oracle = screened(&rule, &rho, p, big_r);
    let got = screening_potential(1.0, 1.0, &sol, 1.0).unwrap();
    println!("chi(1) = {got}, oracle {oracle}, R = {big_r}");
    assert!(
        (got - oracle).abs() < 1e-6,
        "{got} vs oracle {oracle} (R = {big_r})"
    );
}

#[test]
fn gauss_legendre_rule() {
    let rule = Rule(gauss_legendre(20));
    assert!((rule.integrate(|x| x.powi(39), 0.0, 1.0, 1) - 1.0 / 40.0).abs() < 1e-15);
    assert!((rule.integrate(f64::exp, 0.0, 2.0, 3) - (2f64.exp() - 1.0)).abs() < 1e-13);
}
