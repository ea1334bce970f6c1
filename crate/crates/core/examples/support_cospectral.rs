//! Eigenvalue supports and signed splits of pair states in Q_3.

use pairwalk::graph::hypercube;
use pairwalk::pair::{analyze_support, default_support_tolerance, PairState};
use pairwalk::pst::certifiable_spectrum;

fn main() -> pairwalk::Result<()> {
    let g = hypercube(3)?;
    // Exact eigenvalues keep the printed supports free of rounding noise.
    let dec = certifiable_spectrum(&g)?.to_decomposition();
    let tol = default_support_tolerance();
    let p = PairState::new(0, 1)?;
    for partner in [PairState::new(7, 6)?, PairState::new(2, 3)?, PairState::new(0, 7)?] {
        let a = analyze_support(&dec, &p, Some(&partner), tol)?;
        println!(
            "{p} vs {partner}: support {:?}, strongly cospectral {:?}, plus {:?}, minus {:?}",
            a.support, a.strongly_cospectral, a.plus_set, a.minus_set
        );
    }
    Ok(())
}
