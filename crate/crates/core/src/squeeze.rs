//! Privacy squeezing: the Bell-diagonal parameters of sigma_AB computed
//! from trace norms of the block form.

use crate::error::{Error, Result};
use crate::linalg::{trace_norm, CMatrix, Complex64, MultipartiteState};
use crate::states::BlockForm;

/// The four Bell-basis probabilities of the privacy-squeezed state, with
/// `p1 >= p2` and `p3 >= p4` by construction (the off-diagonal entries of
/// sigma_AB are trace norms, hence nonnegative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    p: [f64; 4],
}

impl SqueezeParams {
    /// Validate a probability quadruple (ordering within sectors enforced).
    pub fn new(p: [f64; 4]) -> Result<Self> {
        for &x in &p {
            if !x.is_finite() || x < -1e-10 {
                return Err(Error::Input(format!("invalid squeeze probability {x}")));
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(Error::Input(format!("squeeze probabilities sum to {sum}, not 1")));
        }
        if p[0] < p[1] - 1e-10 || p[2] < p[3] - 1e-10 {
            return Err(Error::Input(
                "squeeze probabilities must satisfy p1 >= p2 and p3 >= p4".into(),
            ));
        }
        let mut q = p.map(|x| x.max(0.0));
        let s: f64 = q.iter().sum();
        for x in &mut q {
            *x /= s;
        }
        Ok(SqueezeParams { p: q })
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    /// Correlated-sector weight `p1 + p2`.
    pub fn p_plus(&self) -> f64 {
        self.p[0] + self.p[1]
    }

    /// Anticorrelated-sector weight `p3 + p4`.
    pub fn p_minus(&self) -> f64 {
        self.p[2] + self.p[3]
    }

    /// `xi_+ = p1 / (p1 + p2)`; `None` when the correlated sector is empty
    /// (consumers must treat the corresponding entropy term as 0).
    pub fn xi_plus(&self) -> Option<f64> {
        let pp = self.p_plus();
        (pp > 0.0).then(|| self.p[0] / pp)
    }

    /// `xi_- = p3 / (p3 + p4)`; `None` when the anticorrelated sector is
    /// empty.
    pub fn xi_minus(&self) -> Option<f64> {
        let pm = self.p_minus();
        (pm > 0.0).then(|| self.p[2] / pm)
    }
}

/// Compute the privacy-squeezed Bell-diagonal probabilities from a block
/// form:
///
/// ```text
/// p1 + p2 = Tr(A_{00,00} + A_{11,11})    p1 - p2 = ||A_{00,11} + A_{11,00}||
/// p3 + p4 = Tr(A_{01,01} + A_{10,10})    p3 - p4 = ||A_{01,10} + A_{10,01}||
/// ```
pub fn privacy_squeeze(b: &BlockForm) -> Result<SqueezeParams> {
    let tol = b.tolerances();
    let tn = |m: &CMatrix| trace_norm(m, tol.herm, tol.orth);

    let sum_corr = (b.block(0, 0) + b.block(3, 3)).trace().re;
    let dif_corr = tn(&(b.block(0, 3) + b.block(3, 0)))?;
    let sum_anti = (b.block(1, 1) + b.block(2, 2)).trace().re;
    let dif_anti = tn(&(b.block(1, 2) + b.block(2, 1)))?;

    let mut p = [
        0.5 * (sum_corr + dif_corr),
        0.5 * (sum_corr - dif_corr),
        0.5 * (sum_anti + dif_anti),
        0.5 * (sum_anti - dif_anti),
    ];
    for x in &mut p {
        if *x < -tol.psd {
            return Err(Error::Inconsistency(format!(
                "privacy squeezing produced probability {x:.3e} below -tau_psd; \
                 the input state violates the block-norm constraints"
            )));
        }
        *x = x.clamp(0.0, 1.0);
    }
    SqueezeParams::new(p)
}

/// The explicit 4x4 matrix of sigma_AB: diagonal
/// `(p+/2, p-/2, p-/2, p+/2)` with `(p1-p2)/2` and `(p3-p4)/2` on the
/// anti-diagonal. Bell-diagonal with spectrum `{p1, p2, p3, p4}`.
pub fn sigma_matrix(q: &SqueezeParams) -> Result<MultipartiteState> {
    let [p1, p2, p3, p4] = q.probabilities();
    let mut m = CMatrix::zeros(4, 4);
    let r = |x: f64| Complex64::new(x, 0.0);
    m[(0, 0)] = r(0.5 * (p1 + p2));
    m[(3, 3)] = r(0.5 * (p1 + p2));
    m[(1, 1)] = r(0.5 * (p3 + p4));
    m[(2, 2)] = r(0.5 * (p3 + p4));
    m[(0, 3)] = r(0.5 * (p1 - p2));
    m[(3, 0)] = r(0.5 * (p1 - p2));
    m[(1, 2)] = r(0.5 * (p3 - p4));
    m[(2, 1)] = r(0.5 * (p3 - p4));
    MultipartiteState::new(m, vec![2, 2], vec!["A", "B"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigh, max_abs_diff, outer};
    use crate::states::{bell_basis, max_entangled, pbit_state, BellDiagonal, BlockForm};

    #[test]
    fn pbit_squeezes_to_perfect_key_params() {
        for d in 2..=3 {
            let q = privacy_squeeze(&pbit_state(d).unwrap()).unwrap();
            let p = q.probabilities();
            assert!((p[0] - 1.0).abs() < 1e-10, "p = {p:?}");
            for x in &p[1..] {
                assert!(x.abs() < 1e-10);
            }
            assert_eq!(q.xi_plus(), Some(1.0));
            assert_eq!(q.xi_minus(), None);
        }
    }

    #[test]
    fn trivial_shield_bell_pair() {
        let v = max_entangled(2).unwrap();
        let s = MultipartiteState::new(outer(&v, &v), vec![2, 2], vec!["A", "B"]).unwrap();
        let q = privacy_squeeze(&BlockForm::from_state(&s).unwrap()).unwrap();
        assert!((q.probabilities()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_shield_bell_diagonal_is_fixed() {
        // With a one-dimensional shield the trace norm of a scalar is its
        // absolute value, so squeezing returns the Bell probabilities.
        let p0 = [0.5, 0.3, 0.15, 0.05];
        let s = BellDiagonal::new(p0).unwrap().state().unwrap();
        let q = privacy_squeeze(&BlockForm::from_state(&s).unwrap()).unwrap();
        for (a, b) in q.probabilities().iter().zip(&p0) {
            assert!((a - b).abs() < 1e-12, "{:?}", q.probabilities());
        }
    }

    #[test]
    fn sigma_matrix_examples() {
        let perfect = SqueezeParams::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = sigma_matrix(&perfect).unwrap();
        let v = max_entangled(2).unwrap();
        assert!(max_abs_diff(s.matrix(), &outer(&v, &v)) < 1e-14);

        let mixed = SqueezeParams::new([0.25; 4]).unwrap();
        let s = sigma_matrix(&mixed).unwrap();
        assert!(max_abs_diff(s.matrix(), &crate::linalg::identity(4).scale(0.25)) < 1e-14);
    }

    #[test]
    fn sigma_matrix_spectrum_is_the_probabilities() {
        let q = SqueezeParams::new([0.55, 0.2, 0.2, 0.05]).unwrap();
        let s = sigma_matrix(&q).unwrap();
        let spec = eigh(s.matrix(), 1e-10, 1e-9).unwrap();
        let mut want = q.probabilities();
        want.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in spec.eigenvalues.iter().zip(&want) {
            assert!((got - want).abs() < 1e-12);
        }
        // and sigma is Bell-diagonal: each Bell vector is an eigenvector
        for (v, &p) in bell_basis().iter().zip(&q.probabilities()) {
            let sv = s.matrix() * v;
            assert!((&sv - v.scale(p)).norm() < 1e-12);
        }
    }

    #[test]
    fn squeeze_is_invariant_under_locc_symmetrization() {
        let b = pbit_state(2).unwrap();
        let sym = crate::states::locc_symmetrize(&b).unwrap();
        let q1 = privacy_squeeze(&b).unwrap();
        let q2 = privacy_squeeze(&sym).unwrap();
        for (a, b) in q1.probabilities().iter().zip(&q2.probabilities()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
