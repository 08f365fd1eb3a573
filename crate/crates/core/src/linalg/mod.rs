//! Exact linear algebra over the rationals: dense matrices, canonical
//! subspaces and matrix pencils.

pub mod matrix;
pub mod pencil;
pub mod subspace;

pub use matrix::QMat;
pub use pencil::{interpolation_node, pencil_degree_filtration, pencil_det, PencilFiltration, PencilMatrix};
pub use subspace::Subspace;
