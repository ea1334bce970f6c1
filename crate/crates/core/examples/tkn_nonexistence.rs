//! No pair state of T(K_n) has perfect transfer, for n = 4..7.

use pairwalk::graph::complete_graph;
use pairwalk::pair::default_support_tolerance;
use pairwalk::pst::{certifiable_spectrum, scan_all_pairs_pst};
use pairwalk::spectral::total_exact_spectrum;

fn main() -> pairwalk::Result<()> {
    for n in 4..=7 {
        let g = complete_graph(n)?;
        let total = total_exact_spectrum(&g, &certifiable_spectrum(&g)?)?;
        let report = scan_all_pairs_pst(&total, default_support_tolerance())?;
        println!(
            "T(K{n}): {} vertices, {} pair states, {} strongly cospectral pairs, {} certificates",
            report.dimension,
            report.pair_states,
            report.strongly_cospectral,
            report.certificates.len()
        );
    }
    Ok(())
}
