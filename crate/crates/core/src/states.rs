//! Reference states and the twirl/LOCC transforms.
//!
//! Bell basis ordering is fixed as Psi_1 = Phi+, Psi_2 = Phi-, Psi_3 = Psi+,
//! Psi_4 = Psi-, so that p1 + p2 is always the correlated-sector weight.

use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, identity, max_abs_diff, outer, CMatrix, CVector, Complex64, MultipartiteState,
    Tolerances, DIM_CAP,
};

/// Bell-diagonal two-qubit state, stored as its four Bell-basis
/// probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonal {
    p: [f64; 4],
}

impl BellDiagonal {
    /// Validate probabilities (nonnegative within round-off, summing to 1).
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let tol = Tolerances::default();
        let mut q = [0.0; 4];
        for (dst, &x) in q.iter_mut().zip(&p) {
            if !x.is_finite() || x < -tol.psd {
                return Err(Error::Input(format!("invalid Bell probability {x}")));
            }
            *dst = x.max(0.0);
        }
        let sum: f64 = q.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(Error::Input(format!(
                "Bell probabilities sum to {sum}, not 1"
            )));
        }
        for x in &mut q {
            *x /= sum;
        }
        Ok(BellDiagonal { p: q })
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    /// Assemble the 4x4 density matrix `sum_i p_i |Psi_i><Psi_i|`.
    pub fn state(&self) -> Result<MultipartiteState> {
        let basis = bell_basis();
        let mut m = CMatrix::zeros(4, 4);
        for (v, &p) in basis.iter().zip(&self.p) {
            m += outer(v, v).scale(p);
        }
        MultipartiteState::new(m, vec![2, 2], vec!["A", "B"])
    }
}

/// The four Bell vectors in the fixed ordering Phi+, Phi-, Psi+, Psi-.
pub fn bell_basis() -> [CVector; 4] {
    let s = 1.0 / 2f64.sqrt();
    let e = |i| basis_vector(4, i);
    [
        (e(0) + e(3)).scale(s),
        (e(0) - e(3)).scale(s),
        (e(1) + e(2)).scale(s),
        (e(1) - e(2)).scale(s),
    ]
}

/// Normalized maximally entangled vector `sum_i |ii> / sqrt(d)`.
pub fn max_entangled(d: usize) -> Result<CVector> {
    if d < 2 {
        return Err(Error::Input(format!("maximally entangled state needs d >= 2, got {d}")));
    }
    let mut v = CVector::zeros(d * d);
    let amp = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        v[i * d + i] = Complex64::new(amp, 0.0);
    }
    Ok(v)
}

/// Result of the fidelity test against the maximally entangled state.
#[derive(Debug, Clone, Copy)]
pub struct FidelityReport {
    /// `F = <Psi_max| rho |Psi_max>`.
    pub value: f64,
    /// Distillability flag: `F > 1/d` (boundary excluded).
    pub distillable: bool,
}

/// Overlap with the maximally entangled state of a `d (x) d` bipartite
/// state.
pub fn fidelity(s: &MultipartiteState) -> Result<FidelityReport> {
    let dims = s.dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::Input(format!(
            "fidelity needs a d (x) d bipartite state, got dims {dims:?}"
        )));
    }
    let d = dims[0];
    let psi = max_entangled(d)?;
    let value = (psi.adjoint() * s.matrix() * &psi)[(0, 0)].re;
    Ok(FidelityReport {
        value,
        distillable: value > 1.0 / d as f64,
    })
}

/// Swap operator `V |a>|b> = |b>|a>` on `d (x) d`; Hermitian and unitary.
pub fn swap_operator(d: usize) -> CMatrix {
    let mut v = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            v[(b * d + a, a * d + b)] = Complex64::new(1.0, 0.0);
        }
    }
    v
}

/// Isotropic (`U (x) U*`) twirl: projects onto
/// `F P_max + (1-F)(1 - P_max)/(d^2-1)` with the fidelity preserved.
///
/// Implemented as the analytic fixed-point projection rather than an
/// average over sampled unitaries, so results are deterministic.
pub fn isotropic_twirl(s: &MultipartiteState) -> Result<MultipartiteState> {
    let rep = fidelity(s)?;
    let d = s.dims()[0];
    let dd = d * d;
    let psi = max_entangled(d)?;
    let p_max = outer(&psi, &psi);
    let rest = (identity(dd) - &p_max).scale((1.0 - rep.value) / (dd as f64 - 1.0));
    let m = p_max.scale(rep.value) + rest;
    MultipartiteState::with_tolerances(m, s.dims().to_vec(), s.labels(), s.tolerances())
}

/// Bell (random Pauli) twirl of a two-qubit state: keeps the Bell-basis
/// diagonal.
pub fn bell_twirl(s: &MultipartiteState) -> Result<BellDiagonal> {
    if s.dims() != [2, 2] {
        return Err(Error::Input(format!(
            "Bell twirl needs a two-qubit state, got dims {:?}",
            s.dims()
        )));
    }
    let basis = bell_basis();
    let mut p = [0.0; 4];
    for (dst, v) in p.iter_mut().zip(&basis) {
        *dst = (v.adjoint() * s.matrix() * v)[(0, 0)].re;
    }
    BellDiagonal::new(p)
}

/// Density matrix of `rho_ABA'B'` as a 4x4 array of shield-space blocks
/// `A_{ij,kl} = <ij|_AB rho |kl>_AB`, indexed by the key-basis pairs
/// 00, 01, 10, 11.
#[derive(Debug, Clone)]
pub struct BlockForm {
    blocks: Vec<CMatrix>,
    shield_dims: (usize, usize),
    tol: Tolerances,
}

impl BlockForm {
    /// Build from 16 blocks in row-major (ij, kl) order; validates the
    /// adjoint pairing and that the assembled matrix is a valid state.
    pub fn from_blocks(blocks: Vec<CMatrix>, shield_dims: (usize, usize)) -> Result<Self> {
        Self::from_blocks_with_tolerances(blocks, shield_dims, Tolerances::default())
    }

    pub fn from_blocks_with_tolerances(
        blocks: Vec<CMatrix>,
        shield_dims: (usize, usize),
        tol: Tolerances,
    ) -> Result<Self> {
        if blocks.len() != 16 {
            return Err(Error::Input(format!("expected 16 blocks, got {}", blocks.len())));
        }
        let ds = shield_dims.0 * shield_dims.1;
        for b in &blocks {
            if b.nrows() != ds || b.ncols() != ds {
                return Err(Error::Input(format!(
                    "block shape {}x{} does not match shield dimension {ds}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let defect = max_abs_diff(&blocks[4 * i + j], &blocks[4 * j + i].adjoint());
                if defect > tol.herm {
                    return Err(Error::Input(format!(
                        "block ({i},{j}) is not the adjoint of block ({j},{i}): defect {defect:.3e}"
                    )));
                }
            }
        }
        let form = BlockForm {
            blocks,
            shield_dims,
            tol,
        };
        form.assemble()?;
        Ok(form)
    }

    /// Decompose a state over A, B, A', B' (or a plain two-qubit key part,
    /// which gets a trivial one-dimensional shield).
    pub fn from_state(s: &MultipartiteState) -> Result<Self> {
        let dims = s.dims();
        let shield_dims = match dims {
            [2, 2] => (1, 1),
            [2, 2, da, db] => (*da, *db),
            _ => {
                return Err(Error::Input(format!(
                    "block form needs dims [2,2] or [2,2,dA',dB'], got {dims:?}"
                )))
            }
        };
        let ds = shield_dims.0 * shield_dims.1;
        let m = s.matrix();
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(m.view((i * ds, j * ds), (ds, ds)).into_owned());
            }
        }
        Self::from_blocks_with_tolerances(blocks, shield_dims, s.tolerances())
    }

    /// Block `A_{ij,kl}` with `row = 2i + j`, `col = 2k + l`.
    pub fn block(&self, row: usize, col: usize) -> &CMatrix {
        &self.blocks[4 * row + col]
    }

    pub fn shield_dims(&self) -> (usize, usize) {
        self.shield_dims
    }

    /// Total shield dimension `d_A' * d_B'`.
    pub fn shield_dim(&self) -> usize {
        self.shield_dims.0 * self.shield_dims.1
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    /// Reassemble the full density operator as an A, B, A', B' state.
    pub fn assemble(&self) -> Result<MultipartiteState> {
        let ds = self.shield_dim();
        let n = 4 * ds;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..4 {
            for j in 0..4 {
                m.view_mut((i * ds, j * ds), (ds, ds)).copy_from(self.block(i, j));
            }
        }
        let (da, db) = self.shield_dims;
        MultipartiteState::with_tolerances(m, vec![2, 2, da, db], vec!["A", "B", "A'", "B'"], self.tol)
    }
}

/// The d (x) d shield p-bit family: key part maximally coherent on
/// |00>, |11> with the swap operator as shield correlation.
pub fn pbit_state(d: usize) -> Result<BlockForm> {
    if d < 2 {
        return Err(Error::Input(format!("p-bit shield dimension must be >= 2, got {d}")));
    }
    let ds = d * d;
    if 4 * ds > DIM_CAP {
        return Err(Error::Capacity(format!(
            "p-bit total dimension {} exceeds cap {DIM_CAP}",
            4 * ds
        )));
    }
    let norm = 1.0 / (2.0 * ds as f64);
    let eye = identity(ds).scale(norm);
    let swap = swap_operator(d).scale(norm);
    let zero = CMatrix::zeros(ds, ds);
    let mut blocks = vec![zero; 16];
    blocks[0] = eye.clone(); // A_{00,00}
    blocks[15] = eye; // A_{11,11}
    blocks[3] = swap.clone(); // A_{00,11}
    blocks[12] = swap; // A_{11,00}
    BlockForm::from_blocks(blocks, (d, d))
}

/// LOCC symmetrization with respect to the `AA' : BB'` partition: averages
/// the diagonal and corner blocks pairwise and zeroes everything else.
pub fn locc_symmetrize(b: &BlockForm) -> Result<BlockForm> {
    let ds = b.shield_dim();
    let zero = CMatrix::zeros(ds, ds);
    let avg = |x: &CMatrix, y: &CMatrix| (x + y).scale(0.5);

    let diag_corr = avg(b.block(0, 0), b.block(3, 3));
    let diag_anti = avg(b.block(1, 1), b.block(2, 2));
    let corner = avg(b.block(0, 3), b.block(3, 0));
    let center = avg(b.block(1, 2), b.block(2, 1));

    let mut blocks = vec![zero; 16];
    blocks[0] = diag_corr.clone();
    blocks[15] = diag_corr;
    blocks[5] = diag_anti.clone();
    blocks[10] = diag_anti;
    blocks[3] = corner.clone();
    blocks[12] = corner;
    blocks[6] = center.clone();
    blocks[9] = center;
    BlockForm::from_blocks_with_tolerances(blocks, b.shield_dims(), b.tolerances())
}
