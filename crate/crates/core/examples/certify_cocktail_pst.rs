//! Perfect pair state transfer on the cocktail party graph CP(6).

use pairwalk::graph::cocktail_party;
use pairwalk::pair::{default_support_tolerance, PairState};
use pairwalk::pst::{certifiable_spectrum, certify_pst, scan_all_pairs_pst};

fn main() -> pairwalk::Result<()> {
    let g = cocktail_party(6)?;
    let spec = certifiable_spectrum(&g)?;
    let tol = default_support_tolerance();

    let cert = certify_pst(&spec, &PairState::new(0, 1)?, &PairState::new(6, 7)?, tol)?;
    println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));

    let scan = scan_all_pairs_pst(&spec, tol)?;
    println!(
        "scan: {} pair states, {} strongly cospectral, {} certificates",
        scan.pair_states,
        scan.strongly_cospectral,
        scan.certificates.len()
    );
    for c in &scan.certificates {
        println!("  {} -> {}  t0 = {:.6}", c.pair, c.partner, c.t0.unwrap_or(f64::NAN));
    }
    Ok(())
}
