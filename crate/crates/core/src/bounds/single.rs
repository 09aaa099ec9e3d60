//! Single-witness key bounds: the central minimization and its closed-form
//! and weaker variants.

use super::scalar::{golden_min, grid_then_golden_min, real_cubic_roots, GOLDEN_MAX_ITER, GOLDEN_TOL};
use super::{check_unit_interval, entropy_bits, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::binary_entropy;

/// Grid resolution of the numeric cross-check route.
const GRID_POINTS: usize = 10_000;
/// Admissible disagreement between the closed-form and numeric routes.
const ROUTE_TOL: f64 = 1e-6;

/// The objective of the central bound:
/// `kappa(p+) = p+ - 2h(p+) - p+ h((w + p+)/(2 p+))`.
///
/// Guarded at `p+ = 0` (the sector-weighted entropy term vanishes) and at
/// `p+ = w`, where the inner argument reaches `h(1) = 0`.
pub fn kappa(p_plus: f64, w: f64) -> f64 {
    if p_plus <= 0.0 {
        return 0.0;
    }
    let xi = ((w + p_plus) / (2.0 * p_plus)).clamp(0.0, 1.0);
    p_plus - 2.0 * binary_entropy(p_plus) - p_plus * binary_entropy(xi)
}

/// Central single-witness bound: `inf over p+ in [w, 1] of kappa(p+)`.
///
/// Evaluated two independent ways: the closed-form route solves the cubic
/// `4p^3 - (6 + w^2)p^2 + 4p - 1 = 0` for interior critical points and
/// compares them with the endpoints; the numeric route runs a dense grid
/// plus golden-section refinement. The routes must agree to 1e-6.
pub fn kd_single_central(w: f64) -> Result<BoundReport> {
    let w = check_unit_interval(w, "w")?;
    if w >= 1.0 {
        return Ok(BoundReport {
            value: 1.0,
            method: "single-central",
            argmin: Some(1.0),
            iterations: 0,
            residual: 0.0,
            note: None,
        });
    }

    // Closed form: interior critical points are real cubic roots in [w, 1];
    // the endpoints are always evaluated explicitly.
    let mut candidates = vec![w, 1.0];
    for root in real_cubic_roots(4.0, -(6.0 + w * w), 4.0, -1.0) {
        if root > w - 1e-9 && root < 1.0 + 1e-9 {
            candidates.push(root.clamp(w, 1.0));
        }
    }
    let (closed_arg, closed_val) = candidates
        .iter()
        .map(|&p| (p, kappa(p, w)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty candidate list");

    // Numeric route: dense grid + golden refinement. The dip next to p+ = w
    // can be narrower than the grid step, so refine inside the first
    // interval as well.
    let numeric = {
        let base = grid_then_golden_min(|p| kappa(p, w), w, 1.0, GRID_POINTS);
        let step = (1.0 - w) / (GRID_POINTS - 1) as f64;
        let near = golden_min(|p| kappa(p, w), w, (w + step).min(1.0), GOLDEN_TOL, GOLDEN_MAX_ITER);
        if near.value < base.value {
            near
        } else {
            base
        }
    };

    let residual = (closed_val - numeric.value).abs();
    if residual > ROUTE_TOL {
        return Err(Error::Internal(format!(
            "central bound routes disagree by {residual:.3e} at w = {w} \
             (closed {closed_val}, grid {})",
            numeric.value
        )));
    }
    Ok(BoundReport {
        value: closed_val,
        method: "single-central",
        argmin: Some(closed_arg),
        iterations: numeric.iterations,
        residual,
        note: None,
    })
}

/// Weaker bound 1, valid for `w >= 1/4`:
/// `1 - h(w) - H(w, (1-w)/3, (1-w)/3, (1-w)/3)`.
pub fn kd_single_weak1(w: f64) -> Result<BoundReport> {
    let w = check_unit_interval(w, "w")?;
    if w < 0.25 {
        return Err(Error::Domain(format!(
            "weaker bound 1 requires w >= 1/4, got {w}"
        )));
    }
    let q = (1.0 - w) / 3.0;
    let value = 1.0 - binary_entropy(w) - entropy_bits(&[w, q, q, q]);
    Ok(BoundReport::closed(value, "single-weak1"))
}

/// Weaker bound 2 from entropy subadditivity:
/// `1 - 2h(w) - h((1+w)/2)`.
pub fn kd_single_weak2(w: f64) -> Result<BoundReport> {
    let w = check_unit_interval(w, "w")?;
    let value = 1.0 - 2.0 * binary_entropy(w) - binary_entropy(0.5 * (1.0 + w));
    Ok(BoundReport::closed(value, "single-weak2"))
}

/// Closed-form approximation of the central bound:
/// `kappa(w + (1-w)^4 / (2 w^3))` with the argument clipped to `[w, 1]`.
pub fn kd_single_approx(w: f64) -> Result<BoundReport> {
    let w = check_unit_interval(w, "w")?;
    if w == 0.0 {
        return Err(Error::Domain(
            "approximate bound requires w > 0 (the shift (1-w)^4 / (2 w^3) diverges)".into(),
        ));
    }
    let delta = (1.0 - w).powi(4) / (2.0 * w.powi(3));
    let arg = (w + delta).clamp(w, 1.0);
    let clipped = w + delta > 1.0;
    Ok(BoundReport {
        value: kappa(arg, w),
        method: "single-approx",
        argmin: Some(arg),
        iterations: 0,
        residual: 0.0,
        note: clipped.then(|| "argument clipped to p+ = 1".to_owned()),
    })
}
