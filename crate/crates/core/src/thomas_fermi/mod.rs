//! Thomas-Fermi theory of the neutral atom.
//!
//! With `r = b x`, `b = (3π)^{2/3} / 2^{7/3}` (Z = 1), the TF equation
//! `½(3π²)^{2/3} ρ^{2/3} = Z/r - V` reduces to the universal profile problem
//!
//! ```text
//! φ''(x) = φ(x)^{3/2} / √x,     φ(0) = 1,   φ(∞) = 0,
//! ```
//!
//! where `Z φ / r` is the screened potential and `ρ = (2Zφ/r)^{3/2} / (3π²)`.
//!
//! The profile is computed in two pieces:
//!
//! * **core** (`x ≤ x_m`): shooting on the initial slope `φ'(0)` with
//!   bisection, integrated by RK4 in `t = √x` where the equation reads
//!   `φ_t = 2tψ`, `ψ_t = 2φ^{3/2}` and has no singularity;
//! * **tail** (`x ≥ x_m`): in `s = ln x` the function `y = x³φ` obeys the
//!   autonomous equation `y'' - 7y' + 12y = y^{3/2}` with fixed point
//!   `y = 144`. The decaying branch is its stable manifold, integrated
//!   backward from the fixed point and joined to the core at `y = x_m³ φ(x_m)`.
//!
//! Interpolation between nodes is cubic Hermite with exact derivatives from
//! the differential equation, so point queries are C¹.

mod density;

pub use density::{
    density, exchange_hole_radius, mean_field, mean_field_closed_form, mean_field_gradient,
    screening_potential, RadialDensity,
};

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::report::format_sig;

pub const MIN_TOLERANCE: f64 = 1e-10;
pub const MAX_TOLERANCE: f64 = 1e-4;

/// Largest abscissa of the shooting segment.
const CORE_X_MAX: f64 = 100.0;
const CORE_X_MIN: f64 = 16.0;
/// Shots that survive to `x = T_CAP²` count as converged.
const T_CAP: f64 = 40.0;
const MAX_BISECTIONS: usize = 200;
const SLOPE_BRACKET: (f64, f64) = (-1.7, -1.5);
/// Relative distance from the fixed point `y = 144` where the tail starts.
const TAIL_START_OFFSET: f64 = 1e-7;
const TAIL_STEP: f64 = 2e-3;
const FIXED_POINT: f64 = 144.0;

/// Length unit `b` of the profile for `Z = 1`, in Bohr.
pub fn length_scale() -> f64 {
    (3.0 * PI).powf(2.0 / 3.0) / 2f64.powf(7.0 / 3.0)
}

/// Decay exponent of the stable mode around `144/x³`: `(√73 - 7)/2`.
pub fn tail_exponent() -> f64 {
    (73f64.sqrt() - 7.0) / 2.0
}

/// Pieces of the TF functional at the minimizer for `Z = 1`, in Hartree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParts {
    pub kinetic: f64,
    pub attraction: f64,
    pub repulsion: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.kinetic + self.attraction + self.repulsion
    }

    /// Functional value after scaling the density by `amplitude`:
    /// kinetic `∝ a^{5/3}`, attraction `∝ a`, repulsion `∝ a²`.
    pub fn scaled(&self, amplitude: f64) -> f64 {
        amplitude.powf(5.0 / 3.0) * self.kinetic
            + amplitude * self.attraction
            + amplitude * amplitude * self.repulsion
    }
}

/// Shooting segment on the uniform grid `t_i = i h`, `x_i = t_i²`.
#[derive(Debug, Clone)]
struct CoreSegment {
    step: f64,
    phi: Vec<f64>,
    /// `dφ/dx`
    slope: Vec<f64>,
}

/// Stable-manifold segment on the uniform grid `s_i = s_0 + i h`.
#[derive(Debug, Clone)]
struct TailSegment {
    s0: f64,
    step: f64,
    /// `y = x³ φ`
    y: Vec<f64>,
    /// `dy/ds`
    w: Vec<f64>,
}

/// Dimensionless neutral-atom TF profile.
#[derive(Debug, Clone)]
pub struct TfSolution {
    initial_slope: f64,
    e_tf_1: f64,
    tol: f64,
    energy: EnergyParts,
    charge: f64,
    join_mismatch: f64,
    core: CoreSegment,
    tail: TailSegment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shot {
    /// φ reached zero: slope too steep.
    Overshoot,
    /// φ' turned positive: slope too shallow.
    Undershoot,
    Survived,
}

#[derive(Debug, Clone, Copy)]
struct State {
    phi: f64,
    psi: f64,
}

fn rk4_core(t: f64, h: f64, s: State) -> State {
    let f = |t: f64, s: State| {
        let p = s.phi.max(0.0);
        (2.0 * t * s.psi, 2.0 * p * p.sqrt())
    };
    let k1 = f(t, s);
    let s2 = State {
        phi: s.phi + 0.5 * h * k1.0,
        psi: s.psi + 0.5 * h * k1.1,
    };
    let k2 = f(t + 0.5 * h, s2);
    let s3 = State {
        phi: s.phi + 0.5 * h * k2.0,
        psi: s.psi + 0.5 * h * k2.1,
    };
    let k3 = f(t + 0.5 * h, s3);
    let s4 = State {
        phi: s.phi + h * k3.0,
        psi: s.psi + h * k3.1,
    };
    let k4 = f(t + h, s4);
    State {
        phi: s.phi + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        psi: s.psi + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    }
}

fn shoot(slope: f64, h: f64, mut record: Option<&mut Vec<State>>) -> Shot {
    let mut s = State {
        phi: 1.0,
        psi: slope,
    };
    if let Some(rec) = record.as_deref_mut() {
        rec.push(s);
    }
    let steps = (T_CAP / h).ceil() as usize;
    for i in 0..steps {
        s = rk4_core(i as f64 * h, h, s);
        if let Some(rec) = record.as_deref_mut() {
            rec.push(s);
        }
        if s.phi < 0.0 {
            return Shot::Overshoot;
        }
        if s.psi > 0.0 {
            return Shot::Undershoot;
        }
    }
    Shot::Survived
}

fn emden_fowler_rhs(y: f64, w: f64) -> (f64, f64) {
    let p = y.max(0.0);
    (w, 7.0 * w - 12.0 * y + p * p.sqrt())
}

fn rk4_tail(h: f64, y: f64, w: f64) -> (f64, f64) {
    let k1 = emden_fowler_rhs(y, w);
    let k2 = emden_fowler_rhs(y + 0.5 * h * k1.0, w + 0.5 * h * k1.1);
    let k3 = emden_fowler_rhs(y + 0.5 * h * k2.0, w + 0.5 * h * k2.1);
    let k4 = emden_fowler_rhs(y + h * k3.0, w + h * k3.1);
    (
        y + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        w + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Backward integration of the stable manifold from `y = 144(1 - ε)` with
/// step `h` until `y ≤ y_stop`. Returns the visited nodes in order of
/// decreasing `s`.
fn manifold_backward(h: f64, y_stop: f64, max_steps: usize) -> Result<Vec<(f64, f64)>> {
    let lambda = tail_exponent();
    let mut y = FIXED_POINT * (1.0 - TAIL_START_OFFSET);
    let mut w = FIXED_POINT * TAIL_START_OFFSET * lambda;
    let mut nodes = vec![(y, w)];
    for _ in 0..max_steps {
        if y <= y_stop {
            return Ok(nodes);
        }
        if w <= 0.0 {
            return Err(Error::NonConvergence(
                "tail trajectory lost monotonicity".into(),
            ));
        }
        (y, w) = rk4_tail(-h, y, w);
        nodes.push((y, w));
    }
    Err(Error::NonConvergence(
        "tail trajectory did not reach the join point".into(),
    ))
}

/// Hermite cubic on `[0, 1]` with values `f0, f1` and derivatives `d0, d1`
/// (already scaled by the interval length). Returns value and derivative
/// with respect to `u`.
fn hermite(u: f64, f0: f64, f1: f64, d0: f64, d1: f64) -> (f64, f64) {
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    let value = h00 * f0 + h10 * d0 + h01 * f1 + h11 * d1;
    let g00 = 6.0 * u2 - 6.0 * u;
    let g10 = 3.0 * u2 - 4.0 * u + 1.0;
    let g01 = -6.0 * u2 + 6.0 * u;
    let g11 = 3.0 * u2 - 2.0 * u;
    (value, g00 * f0 + g10 * d0 + g01 * f1 + g11 * d1)
}

/// Composite Simpson rule on equally spaced samples, with a closing 3/8
/// panel when the number of intervals is odd.
fn simpson(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (f[0] + f[1]),
        3 => h / 3.0 * (f[0] + 4.0 * f[1] + f[2]),
        _ => {
            let intervals = n - 1;
            let (simpson_end, tail) = if intervals.is_multiple_of(2) {
                (n - 1, 0.0)
            } else {
                let e = n - 4;
                (
                    e,
                    3.0 * h / 8.0 * (f[e] + 3.0 * f[e + 1] + 3.0 * f[e + 2] + f[e + 3]),
                )
            };
            let mut acc = f[0] + f[simpson_end];
            for (i, v) in f.iter().enumerate().take(simpson_end).skip(1) {
                acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            h / 3.0 * acc + tail
        }
    }
}

fn core_step(tol: f64) -> f64 {
    (0.05 * tol.powf(0.25)).clamp(2.5e-4, 5e-3)
}

/// Solve the neutral-atom TF problem to tolerance `tol ∈ [1e-10, 1e-4]`.
pub fn solve_tf(tol: f64) -> Result<TfSolution> {
    if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tol) {
        return Err(Error::OutOfRange {
            what: "tolerance",
            value: tol,
            min: MIN_TOLERANCE,
            max: MAX_TOLERANCE,
        });
    }
    let h = core_step(tol);

    let (mut lo, mut hi) = SLOPE_BRACKET;
    if shoot(lo, h, None) != Shot::Overshoot || shoot(hi, h, None) != Shot::Undershoot {
        return Err(Error::NonConvergence(format!(
            "initial slope bracket [{lo}, {hi}] does not enclose the solution"
        )));
    }
    let mut converged = false;
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            converged = true;
            break;
        }
        match shoot(mid, h, None) {
            Shot::Overshoot => lo = mid,
            Shot::Undershoot => hi = mid,
            Shot::Survived => {
                lo = mid;
                hi = mid;
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "bisection on the initial slope did not close after {MAX_BISECTIONS} steps"
        )));
    }

    let mut steep = Vec::new();
    let mut shallow = Vec::new();
    shoot(lo, h, Some(&mut steep));
    shoot(hi, h, Some(&mut shallow));

    // The exact profile lies between the two bracketing trajectories; keep
    // the core only while they agree well below the tolerance.
    let gap_limit = 1e-2 * tol;
    let mut last = 0;
    for (i, (a, b)) in steep.iter().zip(shallow.iter()).enumerate() {
        let t = i as f64 * h;
        if t * t > CORE_X_MAX || (a.phi - b.phi).abs() > gap_limit || a.phi <= 0.0 || a.psi >= 0.0 {
            break;
        }
        last = i;
    }
    let x_join = (last as f64 * h).powi(2);
    if x_join < CORE_X_MIN {
        return Err(Error::NonConvergence(format!(
            "shooting profile only reliable up to x = {x_join:.3}"
        )));
    }
    let core_states: Vec<State> = steep[..=last]
        .iter()
        .zip(&shallow[..=last])
        .map(|(a, b)| State {
            phi: 0.5 * (a.phi + b.phi),
            psi: 0.5 * (a.psi + b.psi),
        })
        .collect();
    let join = core_states[last];
    let y_join = x_join.powf(1.5) * x_join.powf(1.5) * join.phi;
    let w_join = 3.0 * y_join + x_join.powi(4) * join.psi;

    // First pass locates the join on the manifold, the second lands on it
    // with an adjusted step.
    let max_steps = 200_000;
    let coarse = manifold_backward(TAIL_STEP, y_join, max_steps)?;
    let n = coarse.len() - 1;
    let (ya, wa) = coarse[n - 1];
    let (yb, wb) = coarse[n];
    let frac = locate_crossing(y_join, ya, yb, -wa * TAIL_STEP, -wb * TAIL_STEP);
    let span = TAIL_STEP * ((n - 1) as f64 + frac);
    let tail_steps = (span / TAIL_STEP).round().max(1.0) as usize;
    let tail_h = span / tail_steps as f64;
    let fine = manifold_backward_fixed(tail_h, tail_steps);
    // Charge outside x is φ - xφ' = (4y - w)/x³; compare both sides.
    let (y_end_join, w_end_join) = *fine.last().expect("tail has nodes");
    let x3 = x_join.powi(3);
    let join_mismatch = ((4.0 * y_end_join - w_end_join) - (4.0 * y_join - w_join)).abs() / x3;
    if join_mismatch > tol {
        return Err(Error::NonConvergence(format!(
            "core and tail disagree at x = {x_join:.3} (outside charge differs by {join_mismatch:e})"
        )));
    }

    let (y, w): (Vec<f64>, Vec<f64>) = fine.into_iter().rev().unzip();
    let tail = TailSegment {
        s0: x_join.ln(),
        step: tail_h,
        y,
        w,
    };
    let core = CoreSegment {
        step: h,
        phi: core_states.iter().map(|s| s.phi).collect(),
        slope: core_states.iter().map(|s| s.psi).collect(),
    };

    let mut sol = TfSolution {
        initial_slope: 0.5 * (lo + hi),
        e_tf_1: 0.0,
        tol,
        energy: EnergyParts {
            kinetic: 0.0,
            attraction: 0.0,
            repulsion: 0.0,
        },
        charge: 0.0,
        join_mismatch,
        core,
        tail,
    };
    let (energy, charge) = sol.functional_pieces();
    sol.energy = energy;
    sol.charge = charge;
    sol.e_tf_1 = energy.total();
    Ok(sol)
}

fn manifold_backward_fixed(h: f64, steps: usize) -> Vec<(f64, f64)> {
    let lambda = tail_exponent();
    let mut y = FIXED_POINT * (1.0 - TAIL_START_OFFSET);
    let mut w = FIXED_POINT * TAIL_START_OFFSET * lambda;
    let mut nodes = Vec::with_capacity(steps + 1);
    nodes.push((y, w));
    for _ in 0..steps {
        (y, w) = rk4_tail(-h, y, w);
        nodes.push((y, w));
    }
    nodes
}

/// Fraction `u ∈ [0, 1]` of the interval where the Hermite cubic through
/// `(fa, da)`, `(fb, db)` attains `target`.
fn locate_crossing(target: f64, fa: f64, fb: f64, da: f64, db: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    let decreasing = fb < fa;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let (v, _) = hermite(mid, fa, fb, da, db);
        if (v > target) == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl TfSolution {
    /// `φ'(0)`, Baker's constant.
    pub fn initial_slope(&self) -> f64 {
        self.initial_slope
    }

    /// `E_TF(1)` in Hartree, from the TF functional at the minimizer.
    pub fn e_tf_1(&self) -> f64 {
        self.e_tf_1
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn energy_parts(&self) -> EnergyParts {
        self.energy
    }

    /// `∫ φ^{3/2} √x dx` over the stored profile plus its asymptotic
    /// remainder; equals one for the neutral atom.
    pub fn profile_charge(&self) -> f64 {
        self.charge
    }

    /// Difference of the charge outside the join point as seen from the
    /// core and from the tail.
    pub fn join_mismatch(&self) -> f64 {
        self.join_mismatch
    }

    /// Abscissa where the shooting core hands over to the tail.
    pub fn join_point(&self) -> f64 {
        let t = (self.core.phi.len() - 1) as f64 * self.core.step;
        t * t
    }

    /// Largest stored abscissa.
    pub fn x_max(&self) -> f64 {
        (self.tail.s0 + (self.tail.y.len() - 1) as f64 * self.tail.step).exp()
    }

    /// Strictly increasing abscissas of all stored nodes.
    pub fn grid(&self) -> Vec<f64> {
        self.nodes().map(|(x, _)| x).collect()
    }

    /// Profile values on [`grid`](Self::grid).
    pub fn phi_values(&self) -> Vec<f64> {
        self.nodes().map(|(_, p)| p).collect()
    }

    fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = self.core.step;
        let core = self.core.phi.iter().enumerate().map(move |(i, &p)| {
            let t = i as f64 * h;
            (t * t, p)
        });
        let tail = self.tail.y.iter().enumerate().skip(1).map(move |(i, &y)| {
            let s = self.tail.s0 + i as f64 * self.tail.step;
            (s.exp(), y * (-3.0 * s).exp())
        });
        core.chain(tail)
    }

    /// `φ(x)` and `φ'(x)`.
    pub fn phi_and_slope(&self, x: f64) -> (f64, f64) {
        if x <= 0.0 {
            return (1.0, self.initial_slope);
        }
        if x <= self.join_point() {
            let h = self.core.step;
            let t = x.sqrt();
            let last = self.core.phi.len() - 1;
            let i = ((t / h) as usize).min(last - 1);
            let t0 = i as f64 * h;
            let t1 = t0 + h;
            let u = ((t - t0) / h).clamp(0.0, 1.0);
            let (p0, p1) = (self.core.phi[i], self.core.phi[i + 1]);
            let (q0, q1) = (self.core.slope[i], self.core.slope[i + 1]);
            let (phi, _) = hermite(u, p0, p1, 2.0 * t0 * q0 * h, 2.0 * t1 * q1 * h);
            let dq0 = 2.0 * p0.max(0.0).powf(1.5);
            let dq1 = 2.0 * p1.max(0.0).powf(1.5);
            let (psi, _) = hermite(u, q0, q1, dq0 * h, dq1 * h);
            return (phi, psi);
        }
        let s = x.ln();
        let last = self.tail.y.len() - 1;
        let pos = (s - self.tail.s0) / self.tail.step;
        let (y, w) = if pos >= last as f64 {
            let s_end = self.tail.s0 + last as f64 * self.tail.step;
            let decay = (-tail_exponent() * (s - s_end)).exp();
            let dev = (FIXED_POINT - self.tail.y[last]) * decay;
            (FIXED_POINT - dev, tail_exponent() * dev)
        } else {
            let i = (pos.max(0.0) as usize).min(last - 1);
            let u = (pos - i as f64).clamp(0.0, 1.0);
            let h = self.tail.step;
            let (y0, y1) = (self.tail.y[i], self.tail.y[i + 1]);
            let (w0, w1) = (self.tail.w[i], self.tail.w[i + 1]);
            let (y, _) = hermite(u, y0, y1, w0 * h, w1 * h);
            let dw0 = emden_fowler_rhs(y0, w0).1;
            let dw1 = emden_fowler_rhs(y1, w1).1;
            let (w, _) = hermite(u, w0, w1, dw0 * h, dw1 * h);
            (y, w)
        };
        let inv_x3 = (-3.0 * s).exp();
        (y * inv_x3, (w - 3.0 * y) * inv_x3 / x)
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.phi_and_slope(x).0
    }

    /// Functional pieces and profile charge for `Z = 1`.
    fn functional_pieces(&self) -> (EnergyParts, f64) {
        let b = length_scale();
        let h = self.core.step;
        let core = &self.core.phi;
        let p32 = |p: f64| {
            let p = p.max(0.0);
            p * p.sqrt()
        };
        // core, in t: x^{-1/2} dx = 2 dt, x^{1/2} dx = 2t² dt
        let ik: Vec<f64> = core.iter().map(|&p| 2.0 * p32(p) * p).collect();
        let ia: Vec<f64> = core.iter().map(|&p| 2.0 * p32(p)).collect();
        let ir: Vec<f64> = core.iter().map(|&p| 2.0 * p32(p) * (1.0 - p)).collect();
        let iq: Vec<f64> = core
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let t = i as f64 * h;
                2.0 * p32(p) * t * t
            })
            .collect();
        let mut kinetic = simpson(&ik, h);
        let mut attraction = simpson(&ia, h);
        let mut repulsion = simpson(&ir, h);
        let mut charge = simpson(&iq, h);

        // tail, in s: x^{-1/2} dx = x^{1/2} ds, x^{1/2} dx = x^{3/2} ds
        let hs = self.tail.step;
        let mut tk = Vec::with_capacity(self.tail.y.len());
        let mut ta = Vec::with_capacity(self.tail.y.len());
        let mut tr = Vec::with_capacity(self.tail.y.len());
        let mut tq = Vec::with_capacity(self.tail.y.len());
        for (i, &y) in self.tail.y.iter().enumerate() {
            let s = self.tail.s0 + i as f64 * hs;
            let x = s.exp();
            let p = y / (x * x * x);
            let sqrt_x = x.sqrt();
            tk.push(p32(p) * p * sqrt_x);
            ta.push(p32(p) * sqrt_x);
            tr.push(p32(p) * (1.0 - p) * sqrt_x);
            tq.push(p32(p) * x * sqrt_x);
        }
        kinetic += simpson(&tk, hs);
        attraction += simpson(&ta, hs);
        repulsion += simpson(&tr, hs);
        charge += simpson(&tq, hs);

        // beyond the last node φ = 144/x³
        let x_end = self.x_max();
        let c32 = FIXED_POINT * FIXED_POINT.sqrt();
        kinetic += c32 * FIXED_POINT / (7.0 * x_end.powi(7));
        attraction += c32 / (4.0 * x_end.powi(4));
        repulsion += c32 / (4.0 * x_end.powi(4));
        charge += c32 / (3.0 * x_end.powi(3));

        (
            EnergyParts {
                kinetic: 0.6 / b * kinetic,
                attraction: -attraction / b,
                repulsion: 0.5 / b * repulsion,
            },
            charge,
        )
    }

    /// Write the profile as CSV with header `x,phi`.
    pub fn write_profile_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,phi")?;
        for (x, p) in self.nodes() {
            writeln!(out, "{},{}", format_sig(x), format_sig(p))?;
        }
        Ok(())
    }
}

/// `E_TF(Z) = E_TF(1) Z^{7/3}`.
pub fn tf_energy(z: f64, sol: &TfSolution) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    Ok(sol.e_tf_1 * z.powf(7.0 / 3.0))
}
