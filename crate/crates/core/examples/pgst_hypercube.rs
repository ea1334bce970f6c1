//! Pretty good pair state transfer on the total graph of Q_10, evaluated
//! through the base decomposition only (the total graph has 6144 vertices).

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use pairwalk::graph::hypercube;
use pairwalk::pair::{best_partner_at, PairState};
use pairwalk::pgst::{pgst_hypotheses, search_pgst, total_walk, PgstQuery};
use pairwalk::pst::certifiable_spectrum;

fn main() -> pairwalk::Result<()> {
    let start = Instant::now();
    let g = hypercube(10)?;
    let spec = certifiable_spectrum(&g)?;
    let dec = spec.to_decomposition();
    println!("base spectrum: {} distinct eigenvalues ({:.1?})", dec.len(), start.elapsed());

    // 0 and 1 lie on opposite sides of the bipartition.
    let pair = PairState::new(0, 1)?;
    let (partner, amp) = best_partner_at(&dec, &pair, FRAC_PI_2)?;
    println!("partner at pi/2: {partner} (fidelity {:.12})", amp.fidelity);

    let check = pgst_hypotheses(&g, &spec, &pair, &partner)?;
    println!("case {:?}: {} -> holds = {}", check.case, check.arithmetic_detail, check.holds);

    let bip = g.is_bipartite();
    let walk = total_walk(&g, &dec, bip.as_ref())?;
    let query = PgstQuery::new(pair, partner, 0.1, 100_000, false)?;
    let report = search_pgst(&walk, &query)?;
    for p in &report.trace {
        println!("  l = {:>6}  t = {:>12.4}  fidelity = {:.6}", p.ell, p.time, p.fidelity);
    }
    println!(
        "best fidelity {:.6} at l = {} after {} candidates ({:.1?})",
        report.best_fidelity,
        report.best_ell,
        report.evaluated,
        start.elapsed()
    );
    Ok(())
}
