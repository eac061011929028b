//! Adaptive Gauss-Kronrod (7/15) quadrature.

use crate::summation::NeumaierSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Cap on the number of subintervals kept by the global adaptive scheme.
const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Quadrature {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Quadrature {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    q: Quadrature,
}

/// `∫_a^b f` to absolute tolerance `abs_tol`. The subinterval with the
/// largest error estimate is bisected until the summed estimate meets the
/// target, the interval cap is hit, or the worst piece can no longer be
/// split in floating point.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error: 0.0,
        };
    }
    let mut pieces = vec![Piece {
        a,
        b,
        q: gk15(&f, a, b),
    }];
    let mut error = pieces[0].q.error;
    while error > abs_tol && pieces.len() < MAX_INTERVALS {
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.q.error.total_cmp(&y.1.q.error))
            .expect("non-empty");
        let p = pieces[worst];
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            break;
        }
        let left = Piece {
            a: p.a,
            b: mid,
            q: gk15(&f, p.a, mid),
        };
        let right = Piece {
            a: mid,
            b: p.b,
            q: gk15(&f, mid, p.b),
        };
        error += left.q.error + right.q.error - p.q.error;
        pieces[worst] = left;
        pieces.push(right);
    }
    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    for p in &pieces {
        sum.add(p.q.value);
        err += p.q.error;
    }
    Quadrature {
        value: sum.value(),
        error: err,
    }
}

/// Sum of [`integrate`] over consecutive breakpoints; the tolerance is split
/// evenly between the pieces.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], abs_tol: f64) -> Quadrature {
    let pieces = breakpoints.len().saturating_sub(1).max(1) as f64;
    breakpoints
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], abs_tol / pieces))
        .fold(
            Quadrature {
                value: 0.0,
                error: 0.0,
            },
            |acc, q| Quadrature {
                value: acc.value + q.value,
                error: acc.error + q.error,
            },
        )
}

/// `∫_a^∞ f` through `x = a / w`, `w ∈ (0, 1]`. `f` must decay faster than
/// `1/x`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64) -> Quadrature {
    assert!(a > 0.0, "lower limit must be positive");
    integrate(
        |w| {
            if w <= 0.0 {
                0.0
            } else {
                f(a / w) * a / (w * w)
            }
        },
        0.0,
        1.0,
        abs_tol,
    )
}
