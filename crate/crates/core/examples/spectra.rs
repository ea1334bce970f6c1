//! Exact Laplacian spectra of a few total graphs next to the numeric ones.

use pairwalk::pst::certifiable_spectrum;
use pairwalk::spectral::{laplacian_decomposition, total_exact_spectrum};
use pairwalk::theorem::fixture;

fn main() -> pairwalk::Result<()> {
    for name in ["K4", "petersen", "Q3", "K33"] {
        let g = fixture(name)?;
        let base = certifiable_spectrum(&g)?;
        let exact = total_exact_spectrum(&g, &base)?;
        let (total, _) = g.total_graph();
        let numeric = laplacian_decomposition(&total)?;
        println!("T({name}), {} vertices", total.vertex_count());
        for (entry, theta) in exact.entries().iter().zip(numeric.eigenvalues()) {
            println!(
                "  {:>12}  x{:<3} numeric {theta:.12}",
                entry.value.to_string(),
                entry.multiplicity
            );
        }
    }
    Ok(())
}
