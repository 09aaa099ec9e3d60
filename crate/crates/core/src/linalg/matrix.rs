//! Complex matrix type and elementary constructions.

use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// Dense complex matrix, the universal numerical carrier of the crate.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector (pure states).
pub type CVector = nalgebra::DVector<Complex64>;

/// Largest matrix dimension accepted by [`tensor`] and the state
/// constructors. Dense storage above this is outside the intended scale.
pub const DIM_CAP: usize = 4096;

/// `d x d` identity.
pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn pauli_i() -> CMatrix {
    identity(2)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
}

/// Computational basis vector `|i>` in dimension `d`.
pub fn basis_vector(d: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

/// Outer product `|v><w|`.
pub fn outer(v: &CVector, w: &CVector) -> CMatrix {
    v * w.adjoint()
}

/// Largest entry modulus of `m`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |m - m^dagger|` entrywise; zero for exactly Hermitian input.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Whether `m` is Hermitian within the entrywise tolerance `tol`.
pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && hermiticity_defect(m) <= tol
}

pub(crate) fn check_finite(m: &CMatrix, what: &str) -> Result<()> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Input(format!("{what} contains non-finite entries")));
    }
    Ok(())
}

pub(crate) fn check_square(m: &CMatrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Input(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Kronecker product `a (x) b`; the first factor is the slowest-varying
/// index.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_finite(a, "tensor factor")?;
    check_finite(b, "tensor factor")?;
    let rows = a.nrows().checked_mul(b.nrows());
    let cols = a.ncols().checked_mul(b.ncols());
    match (rows, cols) {
        (Some(r), Some(c)) if r <= DIM_CAP && c <= DIM_CAP => Ok(a.kronecker(b)),
        _ => Err(Error::Capacity(format!(
            "tensor product dimension {}x{} exceeds cap {DIM_CAP}",
            a.nrows() * b.nrows(),
            a.ncols() * b.ncols()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        a.shape() == b.shape() && max_abs_diff(a, b) <= tol
    }

    #[test]
    fn tensor_identities() {
        let i4 = tensor(&pauli_i(), &pauli_i()).unwrap();
        assert!(approx_eq(&i4, &identity(4), 0.0));

        let zz = tensor(&pauli_z(), &pauli_z()).unwrap();
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        assert!(approx_eq(&zz, &want, 0.0));
    }

    #[test]
    fn xx_minus_yy_is_twice_the_corner_projectors() {
        // sigma_x (x) sigma_x - sigma_y (x) sigma_y = 2(|00><11| + |11><00|)
        let xx = tensor(&pauli_x(), &pauli_x()).unwrap();
        let yy = tensor(&pauli_y(), &pauli_y()).unwrap();
        let lhs = xx - yy;
        let e00 = basis_vector(4, 0);
        let e11 = basis_vector(4, 3);
        let rhs = (outer(&e00, &e11) + outer(&e11, &e00)).scale(2.0);
        assert!(approx_eq(&lhs, &rhs, 1e-15));
    }

    #[test]
    fn tensor_rejects_oversized_output() {
        let big = identity(128);
        let err = tensor(&big, &identity(64)).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }

    #[test]
    fn tensor_ordering_first_factor_slowest() {
        let a = CMatrix::from_row_slice(
            1,
            1,
            &[Complex64::new(2.0, 0.0)],
        );
        let z = pauli_z();
        let az = tensor(&z, &a).unwrap();
        assert_eq!(az[(0, 0)], Complex64::new(2.0, 0.0));
        assert_eq!(az[(1, 1)], Complex64::new(-2.0, 0.0));
    }
}
