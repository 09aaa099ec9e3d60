//! Base-2 entropy functions with the 0 log 0 = 0 convention.

use crate::error::{Error, Result};

/// Admissible deviation of a probability vector's sum from 1 before the
/// input is rejected instead of renormalized.
const SUM_SLACK: f64 = 1e-6;
/// Entries above `-ENTRY_SLACK` are clipped to zero.
const ENTRY_SLACK: f64 = 1e-10;

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability list.
///
/// Entries in `[-tau_psd, 0)` are clipped to 0 and the list is renormalized;
/// a sum deviating from 1 by more than 1e-6 is an input error.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::Input("empty probability list".into()));
    }
    let mut q = Vec::with_capacity(p.len());
    for &x in p {
        if !x.is_finite() {
            return Err(Error::Input("non-finite probability".into()));
        }
        if x < -ENTRY_SLACK {
            return Err(Error::Input(format!("negative probability {x:.3e}")));
        }
        q.push(x.max(0.0));
    }
    let sum: f64 = q.iter().sum();
    if (sum - 1.0).abs() > SUM_SLACK {
        return Err(Error::Input(format!(
            "probabilities sum to {sum}, deviating from 1 beyond {SUM_SLACK:.0e}"
        )));
    }
    Ok(-q.iter().map(|&x| xlog2x(x / sum)).sum::<f64>())
}

/// Binary entropy `h(x) = -x log2 x - (1-x) log2(1-x)`.
///
/// Arguments outside `[0,1]` by round-off magnitude are clamped; anything
/// further out is a caller bug, caught in debug builds.
pub fn binary_entropy(x: f64) -> f64 {
    debug_assert!(
        (-1e-9..=1.0 + 1e-9).contains(&x),
        "binary_entropy argument {x} outside [0,1]"
    );
    let x = x.clamp(0.0, 1.0);
    -xlog2x(x) - xlog2x(1.0 - x)
}

/// Entropy of a density-operator spectrum: eigenvalues are clipped to
/// `[0, 1]` before summation.
pub(crate) fn entropy_of_eigenvalues(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .map(|&l| xlog2x(l.clamp(0.0, 1.0)))
        .sum::<f64>()
}
