//! Dense complex linear algebra for registers of at most seven qubits.

mod density;
mod eigen;
mod matrix;

pub use density::{partial_trace, DensityMatrix};
pub use eigen::{eig_hermitian, sqrt_psd, HermitianEigen};
pub use matrix::{kron, ComplexMatrix};

pub(crate) use eigen::eigenvalues_general;
