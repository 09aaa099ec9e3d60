//! Lower bounds on the distillable secret key of bipartite quantum states
//! from one or two witness expectation values.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! state (rho_ABA'B')  ->  block form  ->  privacy squeezing  ->  key bounds
//!                          |                                      ^
//!                          +-- witness expectation (w, wx, wz) ---+
//! ```
//!
//! * [`linalg`] — dense complex matrix kernel: Hermitian eigendecomposition,
//!   trace norm, tensor products, partial trace/transpose, purification,
//!   entropies.
//! * [`states`] — reference states (maximally entangled, p-bit family,
//!   Bell-diagonal) and the twirl/LOCC symmetrization maps.
//! * [`squeeze`] — the privacy-squeezed two-qubit parameters (p1..p4) and
//!   their (p±, ξ±) form.
//! * [`witness`] — witness operators, their expectation values, Pauli-string
//!   decomposition and measurement-setting counting.
//! * [`bounds`] — every key-rate and distillable-entanglement bound, with
//!   the scalar optimizers they require.
//! * [`dw`] — the Devetak–Winter one-way rate for small states, used as an
//!   independent cross-check oracle.

pub mod bounds;
pub mod dw;
pub mod error;
pub mod linalg;
pub mod squeeze;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, Complex64, MultipartiteState, Spectrum, Tolerances};
