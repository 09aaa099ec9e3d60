//! Two-observable key bounds from the readings `(w_x, w_z)` and `(w, w_z)`.
//!
//! `w_z` is defined with an absolute value, so the anticorrelated-dominant
//! regime is already folded onto `p+ = (1 + w_z)/2 >= 1/2` before these
//! formulas apply; the two regimes are symmetric under relabeling the
//! sectors.

use super::scalar::{golden_max, GOLDEN_MAX_ITER, GOLDEN_TOL};
use super::{check_unit_interval, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::binary_entropy;

/// Grid resolution of the supremum cross-check.
const GRID_POINTS: usize = 10_000;
/// Entropy arguments may leave `[0, 1]` by at most this much (round-off at
/// feasible-region corners) before the excursion is treated as an error.
const CLIP_SLACK: f64 = 1e-9;

fn clip_unit(x: f64, context: &str) -> Result<f64> {
    if !x.is_finite() || !(-CLIP_SLACK..=1.0 + CLIP_SLACK).contains(&x) {
        return Err(Error::Internal(format!(
            "entropy argument {x} out of [0,1] beyond round-off in {context}"
        )));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Smallest feasible `xi_-`: `max(1/2, (w_x - w_z)/(1 - w_z))`.
fn xi_minus_min(wx: f64, wz: f64) -> f64 {
    if wz >= 1.0 {
        // p- = 0; the anticorrelated sector is empty and xi- is moot.
        return 0.5;
    }
    (0.5f64).max((wx - wz) / (1.0 - wz))
}

/// Full two-observable bound: supremum of the sector-entropy mixture over
/// the feasible line, by golden-section (the objective is concave there)
/// with a dense-grid cross-check.
pub fn kd_two_full(wx: f64, wz: f64) -> Result<BoundReport> {
    let wx = check_unit_interval(wx, "w_x")?;
    let wz = check_unit_interval(wz, "w_z")?;
    let p_plus = 0.5 * (1.0 + wz);
    let note = (wx + wz <= 1.0)
        .then(|| "feasible region touches xi_+ = 1/2; no positive key certifiable".to_owned());

    if wz >= 1.0 {
        // Degenerate p- = 0 branch: the line argument is constant.
        let value = 1.0 - binary_entropy(0.5 * (1.0 + wx));
        return Ok(BoundReport {
            value,
            method: "two-full",
            argmin: None,
            iterations: 0,
            residual: 0.0,
            note: note.or_else(|| Some("degenerate p- = 0 branch".to_owned())),
        });
    }

    let xi_lo = xi_minus_min(wx, wz);
    let line = |xi: f64| (1.0 + wx) / (1.0 + wz) - xi * (1.0 - wz) / (1.0 + wz);
    // The line stays inside [0, 1] on the feasible interval; check the
    // endpoints once so round-off cannot hide a real excursion.
    clip_unit(line(xi_lo), "two-observable line at xi_-^min")?;
    clip_unit(line(1.0), "two-observable line at xi_- = 1")?;
    let objective = |xi: f64| {
        (1.0 - p_plus) * binary_entropy(xi)
            + p_plus * binary_entropy(line(xi).clamp(0.0, 1.0))
    };

    let golden = golden_max(objective, xi_lo, 1.0, GOLDEN_TOL, GOLDEN_MAX_ITER);
    let mut grid_best = f64::NEG_INFINITY;
    let h = (1.0 - xi_lo) / (GRID_POINTS - 1) as f64;
    for i in 0..GRID_POINTS {
        let v = objective(xi_lo + h * i as f64);
        if v > grid_best {
            grid_best = v;
        }
    }
    if grid_best > golden.value + 1e-7 {
        return Err(Error::Internal(format!(
            "two-observable supremum cross-check failed: grid {grid_best} above golden {}",
            golden.value
        )));
    }
    let f_max = golden.value.max(grid_best);
    Ok(BoundReport {
        value: 1.0 - 2.0 * binary_entropy(p_plus) - f_max,
        method: "two-full",
        argmin: Some(golden.x),
        iterations: golden.iterations,
        residual: (golden.value - grid_best).abs(),
        note,
    })
}

/// Weaker two-observable bound requiring no maximization:
/// `1 - 2h(p+) - (1-p+) h(xi_-^min) - p+ h(xi_+^min)`.
///
/// `xi_+^min = (w_x + w_z)/(1 + w_z)` is clamped from below at 1/2: the
/// square constraint `xi_+ >= 1/2` always applies, and without the clamp
/// the formula would fall above the full bound for small `w_x + w_z`.
pub fn kd_two_weak(wx: f64, wz: f64) -> Result<BoundReport> {
    let wx = check_unit_interval(wx, "w_x")?;
    let wz = check_unit_interval(wz, "w_z")?;
    let p_plus = 0.5 * (1.0 + wz);
    let xi_m = xi_minus_min(wx, wz);
    let xi_p = (0.5f64).max((wx + wz) / (1.0 + wz));
    let value = 1.0 - 2.0 * binary_entropy(p_plus) - (1.0 - p_plus) * binary_entropy(xi_m)
        - p_plus * binary_entropy(xi_p);
    Ok(BoundReport {
        value,
        method: "two-weak",
        argmin: None,
        iterations: 0,
        residual: 0.0,
        note: (wx + wz <= 1.0)
            .then(|| "feasible region touches xi_+ = 1/2; no positive key certifiable".to_owned()),
    })
}

/// Combined `w` and `w_z` bound:
/// `p+ [1 - h(1/2 + w/(2 p+))] - 2 h(p+)` with `p+ = (1 + w_z)/2`.
///
/// Physical inputs must satisfy `(1 + w_z)/2 >= w`; otherwise `p2` would be
/// negative and the reading is rejected as a domain error.
pub fn kd_w_wz(w: f64, wz: f64) -> Result<BoundReport> {
    let w = check_unit_interval(w, "w")?;
    let wz = check_unit_interval(wz, "w_z")?;
    let p_plus = 0.5 * (1.0 + wz);
    if p_plus < w - 1e-12 {
        return Err(Error::Domain(format!(
            "physicality constraint (1 + w_z)/2 >= w violated: (1 + {wz})/2 = {p_plus} < {w} \
             (it would force p2 < 0)"
        )));
    }
    let arg = (0.5 + w / (2.0 * p_plus)).clamp(0.0, 1.0);
    let value = p_plus * (1.0 - binary_entropy(arg)) - 2.0 * binary_entropy(p_plus);
    Ok(BoundReport::closed(value, "w-wz"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn perfect_readings_certify_one_bit() {
        assert!((kd_two_full(1.0, 1.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!((kd_two_weak(1.0, 1.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!((kd_w_wz(1.0, 1.0).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_bound_matches_grid_oracle() {
        // Frozen before the build from a 1e4-point grid + golden refinement.
        let r = kd_two_full(0.95, 0.95).unwrap();
        assert!((r.value - 0.494017205510).abs() < 1e-8, "got {}", r.value);
        assert!(r.certified());
        let r = kd_two_full(0.9, 0.7).unwrap();
        assert!((r.value - -0.506077566549).abs() < 1e-8, "got {}", r.value);
    }

    #[test]
    fn weak_bound_matches_grid_oracle() {
        let r = kd_two_weak(0.95, 0.95).unwrap();
        assert!((r.value - 0.469942111387).abs() < 1e-9, "got {}", r.value);
        let r = kd_two_weak(0.9, 0.7).unwrap();
        assert!((r.value - -0.631768399604).abs() < 1e-9, "got {}", r.value);
    }

    #[test]
    fn xi_minus_min_arithmetic() {
        // (w_x, w_z) = (0.9, 0.7): max(1/2, 0.2/0.3) = 2/3
        assert!((xi_minus_min(0.9, 0.7) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(xi_minus_min(0.3, 0.6), 0.5);
    }

    #[test]
    fn nonpositive_outside_necessary_region() {
        for i in 0..=20 {
            let wx = i as f64 / 20.0;
            let wz = 1.0 - wx;
            let r = kd_two_full(wx, wz).unwrap();
            assert!(r.value <= 1e-12, "wx={wx} wz={wz}: {}", r.value);
            assert!(r.note.is_some());
        }
    }

    #[test]
    fn weak_never_exceeds_full() {
        for i in 0..=30 {
            for j in 0..=30 {
                let wx = i as f64 / 30.0;
                let wz = j as f64 / 30.0;
                let full = kd_two_full(wx, wz).unwrap().value;
                let weak = kd_two_weak(wx, wz).unwrap().value;
                assert!(weak <= full + 1e-9, "({wx}, {wz}): weak {weak} > full {full}");
            }
        }
    }

    #[test]
    fn w_wz_examples() {
        assert!(matches!(kd_w_wz(0.6, 0.0), Err(Error::Domain(_))));
        let r = kd_w_wz(0.95, 0.95).unwrap();
        assert!((r.value - 0.541193019035).abs() < 1e-9, "got {}", r.value);
        assert!(r.certified());
    }
}
