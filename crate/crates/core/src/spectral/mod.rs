//! Numeric eigendecomposition, transition matrices, and exact spectra
//! (integer spectra of base graphs and closed-form spectra of total graphs).

mod exact;
mod numeric;
mod total;

pub use exact::{default_integer_tolerance, exact_integer_spectrum, ExactEntry, ExactSpectrum, SpectrumSource};
pub use numeric::{
    default_tolerance, direct_transition_matrix, eigendecompose_symmetric, null_space_orthonormal,
    transition_matrix, InvariantReport, SpectralDecomposition,
};
pub use total::{
    tkn_closed_projectors, total_closed_form, total_closed_form_terms, total_exact_spectrum,
    total_exact_terms, ClosedFormTerm, TermKind, MAX_DENSE_TOTAL_VERTICES,
};

use crate::error::Result;
use crate::graph::Graph;

/// Numeric decomposition of `L(G)` at the default grouping tolerance.
pub fn laplacian_decomposition(g: &Graph) -> Result<SpectralDecomposition> {
    let l = g.laplacian();
    eigendecompose_symmetric(&l, default_tolerance(&l))
}
