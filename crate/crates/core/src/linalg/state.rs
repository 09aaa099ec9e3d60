//! Multipartite density operators and the reductions on them.

use super::entropy::entropy_of_eigenvalues;
use super::matrix::{check_finite, check_square, hermiticity_defect, CMatrix, CVector, Complex64, DIM_CAP};
use super::spectral::eigh;
use crate::error::{Error, Result};

/// Numerical tolerances for state validation.
///
/// Idealized states are exact; real inputs are noisy, so every check is
/// made against a named threshold instead of exact comparison.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Entrywise Hermiticity defect (tau_herm).
    pub herm: f64,
    /// Trace deviation from 1 (tau_tr).
    pub trace: f64,
    /// Most negative admissible eigenvalue magnitude (tau_psd).
    pub psd: f64,
    /// Eigenvector orthonormality defect (tau_orth).
    pub orth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            trace: 1e-9,
            psd: 1e-10,
            orth: 1e-9,
        }
    }
}

/// Density operator together with its subsystem structure.
///
/// The subsystem ordering convention is fixed globally as A, B, A', B'
/// (key qubits first); the composite row index runs with the first
/// subsystem slowest.
#[derive(Debug, Clone)]
pub struct MultipartiteState {
    matrix: CMatrix,
    dims: Vec<usize>,
    labels: Vec<String>,
    tol: Tolerances,
}

/// Purification of a mixed state: a pure vector on system (x) environment.
#[derive(Debug, Clone)]
pub struct Purification {
    /// State vector, system indices slowest, environment fastest.
    pub vector: CVector,
    /// Subsystem dimensions including the trailing environment dimension.
    pub dims: Vec<usize>,
    /// Subsystem labels including the trailing environment label `E`.
    pub labels: Vec<String>,
}

impl MultipartiteState {
    /// Validate and wrap a density operator with default tolerances.
    pub fn new(matrix: CMatrix, dims: Vec<usize>, labels: Vec<&str>) -> Result<Self> {
        Self::with_tolerances(matrix, dims, labels, Tolerances::default())
    }

    /// Validate and wrap a density operator.
    pub fn with_tolerances(
        matrix: CMatrix,
        dims: Vec<usize>,
        labels: Vec<&str>,
        tol: Tolerances,
    ) -> Result<Self> {
        check_finite(&matrix, "state matrix")?;
        check_square(&matrix, "state matrix")?;
        let n = matrix.nrows();
        if n > DIM_CAP {
            return Err(Error::Capacity(format!(
                "state dimension {n} exceeds cap {DIM_CAP}"
            )));
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Input("subsystem dimensions must be positive".into()));
        }
        let prod: usize = dims.iter().product();
        if prod != n {
            return Err(Error::Input(format!(
                "product of dims {prod} does not match matrix dimension {n}"
            )));
        }
        if labels.len() != dims.len() {
            return Err(Error::Input(format!(
                "{} labels for {} subsystems",
                labels.len(),
                dims.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::Input(format!("duplicate subsystem label {a:?}")));
            }
        }
        let defect = hermiticity_defect(&matrix);
        if defect > tol.herm {
            return Err(Error::Input(format!(
                "state is non-Hermitian: defect {defect:.3e} > {:.3e}",
                tol.herm
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::Input(format!(
                "state trace {tr} deviates from 1 beyond {:.3e}",
                tol.trace
            )));
        }
        let spec = eigh(&matrix, tol.herm, tol.orth)?;
        if let Some(min) = spec.eigenvalues.last() {
            if *min < -tol.psd {
                return Err(Error::Input(format!(
                    "state has negative eigenvalue {min:.3e} beyond -{:.3e}",
                    tol.psd
                )));
            }
        }
        Ok(MultipartiteState {
            matrix,
            dims,
            labels: labels.into_iter().map(str::to_owned).collect(),
            tol,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> Vec<&str> {
        self.labels.iter().map(String::as_str).collect()
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn positions_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            match self.labels.iter().position(|l| l == name) {
                Some(p) => {
                    if out.contains(&p) {
                        return Err(Error::Input(format!("label {name:?} listed twice")));
                    }
                    out.push(p);
                }
                None => {
                    return Err(Error::Input(format!(
                        "unknown subsystem label {name:?} (have {:?})",
                        self.labels
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Row-major strides of the subsystem indices.
    fn strides(&self) -> Vec<usize> {
        let k = self.dims.len();
        let mut s = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    /// Reduced density matrix on the subsystems named in `keep`, in the
    /// order they appear in the original state.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<MultipartiteState> {
        if keep.is_empty() {
            return Err(Error::Input("partial trace must keep at least one subsystem".into()));
        }
        let mut kept = self.positions_of(keep)?;
        kept.sort_unstable();
        let strides = self.strides();
        let traced: Vec<usize> = (0..self.dims.len()).filter(|p| !kept.contains(p)).collect();

        let kept_dims: Vec<usize> = kept.iter().map(|&p| self.dims[p]).collect();
        let kept_labels: Vec<&str> = kept.iter().map(|&p| self.labels[p].as_str()).collect();
        let out_dim: usize = kept_dims.iter().product();
        let tr_dim: usize = traced.iter().map(|&p| self.dims[p]).product();

        // Offsets of each kept (resp. traced) multi-index into the full
        // composite index.
        let offsets = |positions: &[usize], count: usize| -> Vec<usize> {
            let mut offs = vec![0usize; count];
            for (flat, off) in offs.iter_mut().enumerate() {
                let mut rem = flat;
                for &p in positions.iter().rev() {
                    *off += (rem % self.dims[p]) * strides[p];
                    rem /= self.dims[p];
                }
            }
            offs
        };
        let kept_offs = offsets(&kept, out_dim);
        let traced_offs = offsets(&traced, tr_dim);

        let mut out = CMatrix::zeros(out_dim, out_dim);
        for (i, &oi) in kept_offs.iter().enumerate() {
            for (j, &oj) in kept_offs.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &ot in &traced_offs {
                    acc += self.matrix[(oi + ot, oj + ot)];
                }
                out[(i, j)] = acc;
            }
        }
        MultipartiteState::with_tolerances(out, kept_dims, kept_labels, self.tol)
    }

    /// Partial transpose over the subsystems named in `transposed`, which
    /// together with the rest must form a bipartition of all labels.
    ///
    /// The result is Hermitian but in general not positive, so it is
    /// returned as a bare matrix.
    pub fn partial_transpose(&self, transposed: &[&str]) -> Result<CMatrix> {
        let positions = self.positions_of(transposed)?;
        if positions.is_empty() || positions.len() == self.dims.len() {
            return Err(Error::Input(
                "partial transpose needs a proper bipartition of the subsystems".into(),
            ));
        }
        let strides = self.strides();
        let n = self.dim();
        let decompose = |idx: usize| -> Vec<usize> {
            let mut rem = idx;
            strides
                .iter()
                .map(|&s| {
                    let q = rem / s;
                    rem %= s;
                    q
                })
                .collect()
        };
        let mut out = CMatrix::zeros(n, n);
        for row in 0..n {
            let ri0 = decompose(row);
            for col in 0..n {
                let mut ri = ri0.clone();
                let mut ci = decompose(col);
                for &p in &positions {
                    std::mem::swap(&mut ri[p], &mut ci[p]);
                }
                let src_row: usize = ri.iter().zip(&strides).map(|(&i, &s)| i * s).sum();
                let src_col: usize = ci.iter().zip(&strides).map(|(&i, &s)| i * s).sum();
                out[(row, col)] = self.matrix[(src_row, src_col)];
            }
        }
        Ok(out)
    }

    /// Purification with environment dimension equal to the numerical rank
    /// (eigenvalues above tau_psd).
    pub fn purify(&self) -> Result<Purification> {
        let spec = eigh(&self.matrix, self.tol.herm, self.tol.orth)?;
        let kept: Vec<(f64, usize)> = spec
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > self.tol.psd)
            .map(|(i, &l)| (l, i))
            .collect();
        let rank = kept.len().max(1);
        let n = self.dim();
        let mut vector = CVector::zeros(n * rank);
        for (k, &(lambda, col)) in kept.iter().enumerate() {
            let amp = lambda.max(0.0).sqrt();
            for i in 0..n {
                vector[i * rank + k] += spec.eigenvectors[(i, col)].scale(amp);
            }
        }
        let mut dims = self.dims.clone();
        dims.push(rank);
        let mut labels: Vec<String> = self.labels.clone();
        labels.push("E".to_owned());
        Ok(Purification {
            vector,
            dims,
            labels,
        })
    }

    /// Von Neumann entropy in bits; eigenvalues in `[-tau_psd, 0)` are
    /// clipped to 0.
    pub fn von_neumann_entropy(&self) -> f64 {
        // Constructor validation guarantees Hermiticity and near-positivity.
        let spec = eigh(&self.matrix, self.tol.herm, self.tol.orth)
            .expect("validated state must eigendecompose");
        entropy_of_eigenvalues(&spec.eigenvalues)
    }
}

impl Purification {
    /// Density operator `|Psi><Psi|` as a validated state.
    pub fn projector(&self) -> Result<MultipartiteState> {
        let m = &self.vector * self.vector.adjoint();
        MultipartiteState::new(
            m,
            self.dims.clone(),
            self.labels.iter().map(String::as_str).collect(),
        )
    }
}
