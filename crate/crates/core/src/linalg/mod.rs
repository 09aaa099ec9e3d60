//! Dense complex matrix kernel used by every other module.
//!
//! All operations are pure functions of immutable inputs; there is no shared
//! mutable state anywhere in this module.

mod entropy;
mod matrix;
mod spectral;
mod state;

pub use entropy::{binary_entropy, shannon_entropy};
pub use matrix::{
    basis_vector, hermiticity_defect, identity, is_hermitian, max_abs, max_abs_diff, outer,
    pauli_i, pauli_x, pauli_y, pauli_z, tensor, CMatrix, CVector, Complex64, DIM_CAP,
};
pub use spectral::{eigh, largest_singular_value, singular_values, trace_norm, Spectrum};
pub use state::{MultipartiteState, Purification, Tolerances};
