//! Scalar optimizers: golden-section search, bisection, grid scans and the
//! closed-form cubic solver.

use crate::error::{Error, Result};

/// Argument tolerance of the golden-section searches.
pub const GOLDEN_TOL: f64 = 1e-9;
/// Iteration cap of the golden-section searches.
pub const GOLDEN_MAX_ITER: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Outcome of a 1-D minimization.
#[derive(Debug, Clone, Copy)]
pub struct MinResult {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section minimum of `f` on `[a, b]` to argument tolerance `tol`.
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_iter: usize) -> MinResult {
    debug_assert!(a <= b);
    let (mut a, mut b) = (a, b);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while (b - a) > tol && iterations < max_iter {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iterations += 1;
    }
    let x = 0.5 * (a + b);
    MinResult {
        x,
        value: f(x),
        iterations,
    }
}

/// Golden-section maximum of `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_iter: usize) -> MinResult {
    let r = golden_min(|x| -f(x), a, b, tol, max_iter);
    MinResult {
        x: r.x,
        value: -r.value,
        iterations: r.iterations,
    }
}

/// Minimum of `f` over an `n`-point uniform grid on `[a, b]`, refined by a
/// golden-section pass over the bracketing grid interval.
pub fn grid_then_golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> MinResult {
    debug_assert!(n >= 2);
    if b <= a {
        return MinResult {
            x: a,
            value: f(a),
            iterations: 0,
        };
    }
    let h = (b - a) / (n - 1) as f64;
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let x = a + h * i as f64;
        let v = f(x);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = a + h * best_i.saturating_sub(1) as f64;
    let hi = (a + h * (best_i + 1) as f64).min(b);
    let refined = golden_min(&f, lo, hi, GOLDEN_TOL, GOLDEN_MAX_ITER);
    if refined.value <= best {
        refined
    } else {
        MinResult {
            x: a + h * best_i as f64,
            value: best,
            iterations: refined.iterations,
        }
    }
}

/// Bisection root of `f` on `[a, b]`; requires a sign change over the
/// bracket.
pub fn bisect(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<MinResult> {
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(MinResult { x: a, value: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(MinResult { x: b, value: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Internal(format!(
            "bisection bracket [{a}, {b}] has no sign change (f(a)={fa:.3e}, f(b)={fb:.3e})"
        )));
    }
    let (mut a, mut b, mut fa) = (a, b, fa);
    let mut iterations = 0;
    while (b - a) > tol && iterations < max_iter {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(MinResult { x: m, value: 0.0, iterations });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        iterations += 1;
    }
    let x = 0.5 * (a + b);
    Ok(MinResult {
        x,
        value: f(x),
        iterations,
    })
}

/// Real roots of `c3 x^3 + c2 x^2 + c1 x + c0 = 0` via the trigonometric /
/// Cardano method. Degenerate leading coefficients fall back to the
/// quadratic/linear cases.
pub fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    if c3.abs() < 1e-14 {
        // quadratic
        if c2.abs() < 1e-14 {
            if c1.abs() < 1e-14 {
                return Vec::new();
            }
            return vec![-c0 / c1];
        }
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc < 0.0 {
            return Vec::new();
        }
        let s = disc.sqrt();
        return vec![(-c1 + s) / (2.0 * c2), (-c1 - s) / (2.0 * c2)];
    }
    // depressed form t^3 + p t + q with x = t - c2/(3 c3)
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let mut roots = if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v + shift]
    } else if p.abs() < 1e-300 {
        vec![shift]
    } else {
        // three real roots
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    };
    // one Newton polish per root
    for r in &mut roots {
        for _ in 0..2 {
            let f = ((c3 * *r + c2) * *r + c1) * *r + c0;
            let df = (3.0 * c3 * *r + 2.0 * c2) * *r + c1;
            if df.abs() > 1e-300 {
                *r -= f / df;
            }
        }
    }
    roots
}
