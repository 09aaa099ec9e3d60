//! Privacy witness operators, their expectation values, and the
//! measurement cost of reading them out with local Pauli settings.

use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, hermiticity_defect, identity, largest_singular_value, outer, tensor, CMatrix,
    Complex64, Tolerances,
};
use crate::states::BlockForm;

/// Admissible overshoot of the largest singular value above 1 for the
/// contraction constraint `U^dagger U <= 1`.
const CONTRACTION_SLACK: f64 = 1e-9;

/// Key-part pattern of the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyPattern {
    /// `(|00><11| + |11><00|) (x) U`, the canonical secrecy witness.
    ///
    /// Equal to `(sigma_x sigma_x - sigma_y sigma_y)/2 (x) U`; the projector
    /// normalization is the ground truth here because the bound chain needs
    /// `|w| <= p1 - p2 <= 1`.
    Corner,
    /// `sigma_x (x) sigma_x (x) U`, used for the two-observable bound.
    Xx,
    /// `sigma_z (x) sigma_z (x) 1`, the key-basis correlation readout.
    Zz,
}

/// A witness specification: shield operator plus key pattern.
#[derive(Debug, Clone)]
pub struct WitnessSpec {
    shield_op: CMatrix,
    hermitian: bool,
    key_pattern: KeyPattern,
}

impl WitnessSpec {
    /// Validate the contraction constraint and record Hermiticity.
    pub fn new(shield_op: CMatrix, key_pattern: KeyPattern) -> Result<Self> {
        Self::with_tolerances(shield_op, key_pattern, Tolerances::default())
    }

    pub fn with_tolerances(
        shield_op: CMatrix,
        key_pattern: KeyPattern,
        tol: Tolerances,
    ) -> Result<Self> {
        if !shield_op.is_square() {
            return Err(Error::Input("shield operator must be square".into()));
        }
        let top = largest_singular_value(&shield_op, tol.herm, tol.orth)?;
        if top > 1.0 + CONTRACTION_SLACK {
            return Err(Error::Input(format!(
                "shield operator violates the contraction constraint: largest singular value {top:.12}"
            )));
        }
        let hermitian = hermiticity_defect(&shield_op) <= tol.herm;
        Ok(WitnessSpec {
            shield_op,
            hermitian,
            key_pattern,
        })
    }

    /// The `sigma_z sigma_z (x) 1` readout on a given shield dimension.
    pub fn zz(shield_dim: usize) -> Result<Self> {
        Self::new(identity(shield_dim), KeyPattern::Zz)
    }

    pub fn shield_op(&self) -> &CMatrix {
        &self.shield_op
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn key_pattern(&self) -> KeyPattern {
        self.key_pattern
    }
}

fn corner_key() -> CMatrix {
    let e00 = basis_vector(4, 0);
    let e11 = basis_vector(4, 3);
    outer(&e00, &e11) + outer(&e11, &e00)
}

/// Assemble the full witness operator on key (x) shield.
pub fn witness_operator(spec: &WitnessSpec) -> Result<CMatrix> {
    let key = match spec.key_pattern {
        KeyPattern::Corner => corner_key(),
        KeyPattern::Xx => tensor(&crate::linalg::pauli_x(), &crate::linalg::pauli_x())?,
        KeyPattern::Zz => tensor(&crate::linalg::pauli_z(), &crate::linalg::pauli_z())?,
    };
    let shield = match spec.key_pattern {
        KeyPattern::Zz => identity(spec.shield_op.nrows()),
        _ => spec.shield_op.clone(),
    };
    tensor(&key, &shield)
}

/// `Tr(a b)` without forming the product.
fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Complex expectation `Tr(W rho)` of the witness on a block-form state.
pub fn expectation(spec: &WitnessSpec, b: &BlockForm) -> Result<Complex64> {
    if spec.shield_op.nrows() != b.shield_dim() {
        return Err(Error::Input(format!(
            "shield operator dimension {} does not match state shield dimension {}",
            spec.shield_op.nrows(),
            b.shield_dim()
        )));
    }
    let w = witness_operator(spec)?;
    let rho = b.assemble()?;
    Ok(trace_product(&w, rho.matrix()))
}

/// Signed real expectation value; for a non-Hermitian shield operator this
/// is the measurable `<key (x) U_R>` part.
pub fn expect(spec: &WitnessSpec, b: &BlockForm) -> Result<f64> {
    Ok(expectation(spec, b)?.re)
}

/// Witness reading `w = |<W_key>|`; bounded by `p1 - p2` for any
/// contraction.
pub fn w(spec: &WitnessSpec, b: &BlockForm) -> Result<f64> {
    Ok(expectation(spec, b)?.norm())
}

/// The key-basis correlation readout `w_z` and the sector weights derived
/// from it.
#[derive(Debug, Clone, Copy)]
pub struct ZzReading {
    /// `|<sigma_z sigma_z (x) 1>|`.
    pub value: f64,
    /// Signed expectation before folding; negative means the anticorrelated
    /// sector dominates and the correlated/anticorrelated roles are swapped.
    pub raw: f64,
    /// `(1 + w_z)/2`.
    pub p_plus: f64,
    /// `(1 - w_z)/2`.
    pub p_minus: f64,
}

/// `w_z` from the block traces:
/// `|Tr A_{00,00} - Tr A_{01,01} - Tr A_{10,10} + Tr A_{11,11}|`.
pub fn wz(b: &BlockForm) -> ZzReading {
    let raw = b.block(0, 0).trace().re - b.block(1, 1).trace().re - b.block(2, 2).trace().re
        + b.block(3, 3).trace().re;
    let value = raw.abs().min(1.0);
    ZzReading {
        value,
        raw,
        p_plus: 0.5 * (1.0 + value),
        p_minus: 0.5 * (1.0 - value),
    }
}

/// `w_x = |Tr[U (A_{00,11} + A_{01,10} + A_{10,01} + A_{11,00})]|` for a
/// Hermitian contraction; the reading that constrains `(xi_-, xi_+)`.
pub fn wx(spec: &WitnessSpec, b: &BlockForm) -> Result<f64> {
    if spec.key_pattern != KeyPattern::Xx {
        return Err(Error::Input("wx needs a witness with the xx key pattern".into()));
    }
    if !spec.hermitian {
        return Err(Error::Input("wx needs a Hermitian shield operator".into()));
    }
    w(spec, b)
}

/// Split an arbitrary operator into Hermitian and anti-Hermitian parts:
/// `U = U_R + i U_I` with both returned matrices Hermitian.
pub fn split_nonhermitian(u: &CMatrix) -> (CMatrix, CMatrix) {
    let adj = u.adjoint();
    let re = (u + &adj).scale(0.5);
    let im = (u - &adj).scale(0.5) * Complex64::new(0.0, -1.0);
    (re, im)
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// One term of a Pauli-string decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub string: Vec<Pauli>,
}

impl PauliTerm {
    pub fn label(&self) -> String {
        self.string.iter().map(Pauli::to_string).collect()
    }
}

/// Hilbert-Schmidt decomposition of a Hermitian operator over Pauli
/// strings.
#[derive(Debug, Clone)]
pub struct PauliDecomposition {
    pub n_qubits: usize,
    pub terms: Vec<PauliTerm>,
}

/// Coefficients below this threshold are dropped from decompositions.
const COEFF_CUTOFF: f64 = 1e-12;

/// Decompose a Hermitian operator on `n` qubits over the `4^n` Pauli
/// strings: `c_s = Tr(op P_s) / 2^n`.
pub fn pauli_decompose(op: &CMatrix) -> Result<PauliDecomposition> {
    pauli_decompose_with_tolerances(op, Tolerances::default())
}

pub fn pauli_decompose_with_tolerances(
    op: &CMatrix,
    tol: Tolerances,
) -> Result<PauliDecomposition> {
    if !op.is_square() {
        return Err(Error::Input("pauli decomposition input must be square".into()));
    }
    let dim = op.nrows();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::Input(format!(
            "pauli decomposition needs dimension 2^n, got {dim}"
        )));
    }
    let n = dim.trailing_zeros() as usize;
    let defect = hermiticity_defect(op);
    if defect > tol.herm {
        return Err(Error::Input(format!(
            "pauli decomposition input is non-Hermitian: defect {defect:.3e}"
        )));
    }

    let mut terms = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let string = decode_string(code, n);
        // Tr(op P_s) walked basis state by basis state: P_s |a> = phi |pi(a)>.
        let mut tr = Complex64::new(0.0, 0.0);
        for a in 0..dim {
            let (target, phase) = apply_string(&string, a, n);
            tr += op[(a, target)] * phase;
        }
        let c = tr / Complex64::new(dim as f64, 0.0);
        if c.norm() >= COEFF_CUTOFF {
            debug_assert!(c.im.abs() < 1e-9, "complex Pauli coefficient {c}");
            terms.push(PauliTerm {
                coefficient: c.re,
                string,
            });
        }
    }
    Ok(PauliDecomposition { n_qubits: n, terms })
}

fn decode_string(code: usize, n: usize) -> Vec<Pauli> {
    let mut s = vec![Pauli::I; n];
    let mut rem = code;
    for q in (0..n).rev() {
        s[q] = match rem % 4 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        };
        rem /= 4;
    }
    s
}

/// `P_s |a> = phase |target>`; qubit 0 is the most significant bit of the
/// basis index (first tensor factor slowest).
fn apply_string(string: &[Pauli], a: usize, n: usize) -> (usize, Complex64) {
    let mut target = a;
    let mut phase = Complex64::new(1.0, 0.0);
    for (q, p) in string.iter().enumerate() {
        let bit_pos = n - 1 - q;
        let bit = (a >> bit_pos) & 1;
        match p {
            Pauli::I => {}
            Pauli::X => target ^= 1 << bit_pos,
            Pauli::Y => {
                target ^= 1 << bit_pos;
                // Y|v> = i(-1)^v |1-v>
                phase *= if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                };
            }
            Pauli::Z => {
                if bit == 1 {
                    phase = -phase;
                }
            }
        }
    }
    (target, phase)
}

impl PauliDecomposition {
    /// Rebuild the operator `sum_s c_s P_s`.
    pub fn reconstruct(&self) -> CMatrix {
        let dim = 1usize << self.n_qubits;
        let mut out = CMatrix::zeros(dim, dim);
        for term in &self.terms {
            for a in 0..dim {
                let (target, phase) = apply_string(&term.string, a, self.n_qubits);
                // P_s has entry phase at (target, a).
                out[(target, a)] += phase.scale(term.coefficient);
            }
        }
        out
    }
}

/// A measurement setting: one of X, Y, Z per qubit.
type Setting = Vec<Pauli>;

fn covers(setting: &[Pauli], string: &[Pauli]) -> bool {
    setting
        .iter()
        .zip(string)
        .all(|(s, p)| *p == Pauli::I || p == s)
}

/// Every completion of `string` into a full setting (identity positions
/// replaced by each of X, Y, Z).
fn completions(string: &[Pauli]) -> Vec<Setting> {
    let mut out = vec![Vec::with_capacity(string.len())];
    for &p in string {
        let choices = match p {
            Pauli::I => vec![Pauli::X, Pauli::Y, Pauli::Z],
            other => vec![other],
        };
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &c in &choices {
                let mut s = prefix.clone();
                s.push(c);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Minimal number of local measurement settings that covers every
/// non-identity string of the decomposition.
///
/// Exact set cover: full-weight strings force their own setting; the rest
/// is an iterative-deepening search over dominance-pruned completions.
/// Identity-only strings need no measurement and are excluded.
pub fn count_settings(dec: &PauliDecomposition) -> Result<usize> {
    let strings: Vec<Vec<Pauli>> = dec.terms.iter().map(|t| t.string.clone()).collect();
    count_settings_for_strings(dec.n_qubits, &strings)
}

/// Setting count for an explicit string set (used for e.g. the full
/// tomography comparison).
pub fn count_settings_for_strings(n_qubits: usize, strings: &[Vec<Pauli>]) -> Result<usize> {
    if n_qubits > 6 {
        return Err(Error::Capacity(format!(
            "setting counting is limited to 6 qubits, got {n_qubits}"
        )));
    }
    let mut work: Vec<Vec<Pauli>> = Vec::new();
    for s in strings {
        if s.len() != n_qubits {
            return Err(Error::Input("string length does not match qubit count".into()));
        }
        if s.iter().all(|&p| p == Pauli::I) {
            continue;
        }
        if !work.contains(s) {
            work.push(s.clone());
        }
    }
    if work.is_empty() {
        return Ok(0);
    }

    // Full-weight strings are covered only by themselves.
    let mandatory: Vec<Setting> = work
        .iter()
        .filter(|s| s.iter().all(|&p| p != Pauli::I))
        .cloned()
        .collect();
    let remaining: Vec<Vec<Pauli>> = work
        .iter()
        .filter(|s| !mandatory.iter().any(|m| covers(m, s)))
        .cloned()
        .collect();
    if remaining.is_empty() {
        return Ok(mandatory.len());
    }
    if remaining.len() > 64 {
        return Err(Error::Capacity(format!(
            "set cover over {} partial-weight strings exceeds the search budget",
            remaining.len()
        )));
    }

    // Candidate settings: completions of the remaining strings.
    let mut candidates: Vec<Setting> = Vec::new();
    for s in &remaining {
        for c in completions(s) {
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }
    let masks: Vec<u64> = candidates
        .iter()
        .map(|c| {
            remaining
                .iter()
                .enumerate()
                .filter(|(_, s)| covers(c, s))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    // Dominance pruning: drop candidates whose coverage is contained in
    // another's.
    let mut keep: Vec<u64> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        let dominated = masks
            .iter()
            .enumerate()
            .any(|(j, &m2)| (m & m2) == m && (m2 != m || j < i));
        if !dominated {
            keep.push(m);
        }
    }

    let full = (1u64 << remaining.len()) - 1;
    for k in 1..=remaining.len() {
        if cover_search(full, k, &keep) {
            return Ok(mandatory.len() + k);
        }
    }
    Err(Error::Internal("set cover search failed to terminate".into()))
}

fn cover_search(uncovered: u64, budget: usize, masks: &[u64]) -> bool {
    if uncovered == 0 {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let pivot = uncovered.trailing_zeros();
    masks
        .iter()
        .filter(|&&m| m & (1 << pivot) != 0)
        .any(|&m| cover_search(uncovered & !m, budget - 1, masks))
}

/// The complete tomography string set on `n` qubits: every non-identity
/// Pauli string.
pub fn full_tomography_strings(n_qubits: usize) -> Vec<Vec<Pauli>> {
    (1..4usize.pow(n_qubits as u32))
        .map(|code| decode_string(code, n_qubits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigh, max_abs_diff, pauli_y};
    use crate::states::{pbit_state, swap_operator};

    #[test]
    fn corner_witness_with_trivial_shield() {
        let spec = WitnessSpec::new(identity(1), KeyPattern::Corner).unwrap();
        let w = witness_operator(&spec).unwrap();
        assert_eq!(w.nrows(), 4);
        assert_eq!(w[(0, 3)], Complex64::new(1.0, 0.0));
        assert_eq!(w[(3, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(w[(1, 2)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn corner_witness_with_swap_shield_has_unit_norm() {
        let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Corner).unwrap();
        let w = witness_operator(&spec).unwrap();
        assert_eq!(w.nrows(), 16);
        assert!(hermiticity_defect(&w) < 1e-15);
        let spec_w = eigh(&w, 1e-10, 1e-9).unwrap();
        let top = spec_w
            .eigenvalues
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        assert!((top - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zz_witness_is_diagonal_sign_pattern() {
        let spec = WitnessSpec::zz(4).unwrap();
        let w = witness_operator(&spec).unwrap();
        for i in 0..4 {
            let sign = match i {
                0 | 3 => 1.0,
                _ => -1.0,
            };
            for k in 0..4 {
                assert_eq!(w[(4 * i + k, 4 * i + k)], Complex64::new(sign, 0.0));
            }
        }
    }

    #[test]
    fn contraction_constraint_is_enforced() {
        let too_big = identity(2).scale(1.5);
        assert!(matches!(
            WitnessSpec::new(too_big, KeyPattern::Corner),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn pbit_witness_values() {
        let b = pbit_state(2).unwrap();
        let swap = WitnessSpec::new(swap_operator(2), KeyPattern::Corner).unwrap();
        assert!((w(&swap, &b).unwrap() - 1.0).abs() < 1e-10);

        let plain = WitnessSpec::new(identity(4), KeyPattern::Corner).unwrap();
        assert!((w(&plain, &b).unwrap() - 0.5).abs() < 1e-12);

        let zero = WitnessSpec::new(CMatrix::zeros(4, 4), KeyPattern::Corner).unwrap();
        assert_eq!(w(&zero, &b).unwrap(), 0.0);
    }

    #[test]
    fn wz_readings() {
        let b = pbit_state(2).unwrap();
        let r = wz(&b);
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!((r.p_plus - 1.0).abs() < 1e-12);

        // maximally mixed four-qubit state
        let mixed = crate::linalg::MultipartiteState::new(
            identity(16).scale(1.0 / 16.0),
            vec![2, 2, 2, 2],
            vec!["A", "B", "A'", "B'"],
        )
        .unwrap();
        let r = wz(&BlockForm::from_state(&mixed).unwrap());
        assert!(r.value.abs() < 1e-12);

        // anticorrelated key |01><01| (x) shield
        let mut key = CMatrix::zeros(4, 4);
        key[(1, 1)] = Complex64::new(1.0, 0.0);
        let shield = identity(4).scale(0.25);
        let s = crate::linalg::MultipartiteState::new(
            tensor(&key, &shield).unwrap(),
            vec![2, 2, 2, 2],
            vec!["A", "B", "A'", "B'"],
        )
        .unwrap();
        let r = wz(&BlockForm::from_state(&s).unwrap());
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.raw < 0.0);
    }

    #[test]
    fn wx_on_pbit_with_swap() {
        let b = pbit_state(2).unwrap();
        let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Xx).unwrap();
        assert!((wx(&spec, &b).unwrap() - 1.0).abs() < 1e-10);

        let mixed = crate::linalg::MultipartiteState::new(
            identity(16).scale(1.0 / 16.0),
            vec![2, 2, 2, 2],
            vec!["A", "B", "A'", "B'"],
        )
        .unwrap();
        let bm = BlockForm::from_state(&mixed).unwrap();
        assert!(wx(&spec, &bm).unwrap().abs() < 1e-12);
    }

    #[test]
    fn split_examples() {
        let herm = swap_operator(2);
        let (re, im) = split_nonhermitian(&herm);
        assert!(max_abs_diff(&re, &herm) < 1e-15);
        assert!(crate::linalg::max_abs(&im) < 1e-15);

        // anti-Hermitian iK
        let k = pauli_y();
        let ik = k.clone() * Complex64::new(0.0, 1.0);
        let (re, im) = split_nonhermitian(&ik);
        assert!(crate::linalg::max_abs(&re) < 1e-15);
        assert!(max_abs_diff(&im, &k) < 1e-15);
    }

    #[test]
    fn split_reconstructs_random_operator() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let u = CMatrix::from_fn(4, 4, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let (re, im) = split_nonhermitian(&u);
        let back = &re + &im * Complex64::new(0.0, 1.0);
        assert!(max_abs_diff(&back, &u) < 1e-12);
        assert!(hermiticity_defect(&re) < 1e-15);
        assert!(hermiticity_defect(&im) < 1e-15);
    }

    #[test]
    fn swap_decomposes_into_four_uniform_terms() {
        let dec = pauli_decompose(&swap_operator(2)).unwrap();
        assert_eq!(dec.terms.len(), 4);
        for t in &dec.terms {
            assert!((t.coefficient - 0.5).abs() < 1e-12, "{} {}", t.label(), t.coefficient);
        }
        let labels: Vec<String> = dec.terms.iter().map(PauliTerm::label).collect();
        for want in ["II", "XX", "YY", "ZZ"] {
            assert!(labels.iter().any(|l| l == want), "missing {want}");
        }
    }

    #[test]
    fn identity_decomposes_into_single_term() {
        let dec = pauli_decompose(&identity(4)).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!(dec.terms[0].label(), "II");
        assert!((dec.terms[0].coefficient - 1.0).abs() < 1e-14);
    }

    #[test]
    fn corner_times_swap_has_eight_quarter_terms() {
        let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Corner).unwrap();
        let w = witness_operator(&spec).unwrap();
        let dec = pauli_decompose(&w).unwrap();
        assert_eq!(dec.terms.len(), 8);
        for t in &dec.terms {
            assert!((t.coefficient.abs() - 0.25).abs() < 1e-12);
        }
        assert!(max_abs_diff(&dec.reconstruct(), &w) < 1e-10);
    }

    #[test]
    fn pauli_reconstruction_of_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = CMatrix::from_fn(8, 8, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let m = (&g + g.adjoint()).scale(0.5);
        let dec = pauli_decompose(&m).unwrap();
        assert!(max_abs_diff(&dec.reconstruct(), &m) < 1e-10);
    }

    #[test]
    fn pauli_decompose_rejects_non_power_of_two() {
        let m = identity(3);
        assert!(matches!(pauli_decompose(&m), Err(Error::Input(_))));
    }

    #[test]
    fn setting_counts() {
        // The p-bit swap witness needs 6 settings.
        let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Corner).unwrap();
        let dec = pauli_decompose(&witness_operator(&spec).unwrap()).unwrap();
        assert_eq!(count_settings(&dec).unwrap(), 6);

        // Full tomography on 4 qubits needs 3^4 = 81.
        let strings = full_tomography_strings(4);
        assert_eq!(count_settings_for_strings(4, &strings).unwrap(), 81);

        // A single string is one setting; identity alone is zero.
        let one = vec![vec![Pauli::X, Pauli::X, Pauli::I, Pauli::I]];
        assert_eq!(count_settings_for_strings(4, &one).unwrap(), 1);
        let none = vec![vec![Pauli::I; 4]];
        assert_eq!(count_settings_for_strings(4, &none).unwrap(), 0);
    }

    #[test]
    fn setting_count_rejects_large_systems() {
        let strings = vec![vec![Pauli::X; 7]];
        assert!(matches!(
            count_settings_for_strings(7, &strings),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn setting_count_never_exceeds_the_string_count() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for n in 2..=3usize {
            for _ in 0..5 {
                let dim = 1 << n;
                let g = CMatrix::from_fn(dim, dim, |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                // sparsify so some coefficients actually vanish
                let m = (&g + g.adjoint()).map(|z| {
                    if z.re.abs() < 0.4 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(z.re, 0.0)
                    }
                });
                let m = (&m + m.adjoint()).scale(0.5);
                let dec = pauli_decompose(&m).unwrap();
                let distinct = dec
                    .terms
                    .iter()
                    .filter(|t| t.string.iter().any(|&p| p != Pauli::I))
                    .count();
                let settings = count_settings(&dec).unwrap();
                assert!(settings <= distinct.max(1), "{settings} > {distinct}");
            }
        }
    }

    #[test]
    fn swap_witness_attains_the_squeezed_coherence_on_the_pbit() {
        // |<W>| = p1 - p2 exactly for the swap shield on the p-bit family.
        let b = pbit_state(2).unwrap();
        let q = crate::squeeze::privacy_squeeze(&b).unwrap();
        let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Corner).unwrap();
        let reading = w(&spec, &b).unwrap();
        let coherence = q.probabilities()[0] - q.probabilities()[1];
        assert!((reading - coherence).abs() < 1e-10);
    }
}
