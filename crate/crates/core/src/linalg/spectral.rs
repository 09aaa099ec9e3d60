//! Hermitian eigendecomposition, singular values and the trace norm.

use super::matrix::{check_finite, check_square, hermiticity_defect, CMatrix, Complex64};
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Real eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, ordered like `eigenvalues`.
    pub eigenvectors: CMatrix,
}

/// Hermitian eigendecomposition with eigenvalues sorted descending.
///
/// The input is symmetrized as `(m + m^dagger)/2` before factorization;
/// inputs that are non-Hermitian beyond `herm_tol` are rejected.
pub fn eigh(m: &CMatrix, herm_tol: f64, orth_tol: f64) -> Result<Spectrum> {
    check_finite(m, "eigh input")?;
    check_square(m, "eigh input")?;
    let defect = hermiticity_defect(m);
    if defect > herm_tol {
        return Err(Error::Input(format!(
            "eigh input is non-Hermitian: defect {defect:.3e} > tolerance {herm_tol:.3e}"
        )));
    }
    let n = m.nrows();
    let sym = (m + m.adjoint()).scale(0.5);
    let decomp = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| decomp.eigenvalues[b].total_cmp(&decomp.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &decomp.eigenvectors.column(src));
    }

    let gram = eigenvectors.adjoint() * &eigenvectors;
    let ortho_defect = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let want = if i == j { 1.0 } else { 0.0 };
            (gram[(i, j)] - Complex64::new(want, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    if ortho_defect > orth_tol {
        return Err(Error::Internal(format!(
            "eigendecomposition produced non-orthonormal vectors (defect {ortho_defect:.3e})"
        )));
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

impl Spectrum {
    /// Reassemble `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            self.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }
}

/// Singular values of a square matrix, descending.
///
/// Computed from the Hermitian dilation `[[0, m], [m^dagger, 0]]`, whose
/// spectrum is `{±sigma_i}`; this reuses the one validated eigensolver and
/// is backward stable in `||m||` even for vanishing singular values.
pub fn singular_values(m: &CMatrix, herm_tol: f64, orth_tol: f64) -> Result<Vec<f64>> {
    check_finite(m, "singular value input")?;
    check_square(m, "singular value input")?;
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut dilation = CMatrix::zeros(2 * n, 2 * n);
    dilation.view_mut((0, n), (n, n)).copy_from(m);
    dilation
        .view_mut((n, 0), (n, n))
        .copy_from(&m.adjoint());
    let spec = eigh(&dilation, herm_tol, orth_tol)?;
    // Positive half of the symmetric spectrum.
    let mut sv: Vec<f64> = spec.eigenvalues[..n].iter().map(|&x| x.max(0.0)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Trace norm: the sum of singular values.
///
/// Hermitian inputs go through the fast path (sum of absolute eigenvalues).
pub fn trace_norm(m: &CMatrix, herm_tol: f64, orth_tol: f64) -> Result<f64> {
    check_finite(m, "trace norm input")?;
    check_square(m, "trace norm input")?;
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    if hermiticity_defect(m) <= herm_tol {
        let spec = eigh(m, herm_tol, orth_tol)?;
        Ok(spec.eigenvalues.iter().map(|x| x.abs()).sum())
    } else {
        Ok(singular_values(m, herm_tol, orth_tol)?.iter().sum())
    }
}

/// Largest singular value (operator norm).
pub fn largest_singular_value(m: &CMatrix, herm_tol: f64, orth_tol: f64) -> Result<f64> {
    let sv = singular_values(m, herm_tol, orth_tol)?;
    Ok(sv.first().copied().unwrap_or(0.0))
}
