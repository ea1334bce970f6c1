//! Pretty good pair state transfer on T(CP(6)) as the candidate budget grows.

use std::f64::consts::FRAC_PI_2;

use pairwalk::graph::cocktail_party;
use pairwalk::pair::{best_partner_at, PairState};
use pairwalk::pgst::{pgst_hypotheses, search_pgst, total_walk, PgstQuery};
use pairwalk::pst::certifiable_spectrum;

fn main() -> pairwalk::Result<()> {
    let g = cocktail_party(6)?;
    let spec = certifiable_spectrum(&g)?;
    let dec = spec.to_decomposition();
    let pair = PairState::new(0, 1)?;
    let (partner, _) = best_partner_at(&dec, &pair, FRAC_PI_2)?;
    let check = pgst_hypotheses(&g, &spec, &pair, &partner)?;
    println!("{pair} -> {partner}: {} (holds = {})", check.arithmetic_detail, check.holds);

    let walk = total_walk(&g, &dec, None)?;
    for ell_max in [100, 1_000, 10_000, 100_000] {
        let report = search_pgst(&walk, &PgstQuery::new(pair, partner, 1e-12, ell_max, false)?)?;
        let quality = report.best_quality.map(|q| q.quality).unwrap_or(f64::NAN);
        println!(
            "l <= {ell_max:>6}: best {:.9} at l = {:>5}, smallest Kronecker score {quality:.2e}",
            report.best_fidelity, report.best_ell
        );
    }

    let refined = search_pgst(&walk, &PgstQuery::new(pair, partner, 0.05, 100_000, true)?)?;
    if let Some(p) = refined.refined {
        println!("first hit l = {} refined to t = {:.6}, fidelity {:.6}", refined.best_ell, p.time, p.fidelity);
    }
    Ok(())
}
