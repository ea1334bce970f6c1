//! Pretty good pair state transfer on total graphs: the sufficient
//! conditions on the base graph, and a search over the candidate times
//! `(4l + 1/2) pi`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::{square_free_decompose, ExactScalar};
use crate::graph::{Bipartition, Graph};
use crate::pair::{default_support_tolerance, PairState, TotalWalk};
use crate::pst::{certify_pst, PstCertificate};
use crate::spectral::{ExactSpectrum, SpectralDecomposition};

pub const DEFAULT_ELL_MAX: u64 = 100_000;
pub const REFINE_ITERATIONS: usize = 40;
pub const REFINE_HALF_WIDTH: f64 = PI / 8.0;

/// Kernel weights below this are treated as outside the support.
const WEIGHT_FLOOR: f64 = 1e-9;
const CHUNK: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PgstQuery {
    pub pair: PairState,
    pub partner: PairState,
    pub epsilon: f64,
    pub ell_max: u64,
    pub refine: bool,
}

impl PgstQuery {
    pub fn new(pair: PairState, partner: PairState, epsilon: f64, ell_max: u64, refine: bool) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        Ok(PgstQuery {
            pair,
            partner,
            epsilon,
            ell_max,
            refine,
        })
    }
}

pub fn candidate_time(ell: u64) -> f64 {
    (4.0 * ell as f64 + 0.5) * PI
}

pub fn candidate_times(ell_max: u64) -> Vec<f64> {
    (0..=ell_max).map(candidate_time).collect()
}

fn distance_to_2pi_z(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    r.min(2.0 * PI - r)
}

/// `max_j dist(delta_j (4l + 1/2) pi / 2, 2 pi Z)`; small values predict high fidelity.
pub fn kronecker_quality(ell: u64, deltas: &[f64]) -> f64 {
    let t = candidate_time(ell);
    deltas
        .iter()
        .map(|d| distance_to_2pi_z(d * t / 2.0))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub ell: u64,
    pub time: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KroneckerPoint {
    pub ell: u64,
    pub quality: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PgstReport {
    pub query: PgstQuery,
    pub best_ell: u64,
    pub best_time: f64,
    pub best_fidelity: f64,
    pub reached_target: bool,
    pub evaluated: u64,
    /// Strict improvements of the best fidelity, in order of `ell`.
    pub trace: Vec<TracePoint>,
    /// `Delta_j` for the base eigenvalues in the support of the pair.
    pub deltas: Vec<f64>,
    /// The evaluated candidate with the smallest Kronecker score.
    pub best_quality: Option<KroneckerPoint>,
    /// True when every `Delta_j` is an integer, so the phases are periodic.
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined: Option<TracePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_check: Option<HypothesisCheck>,
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Evaluates the closed-form pair amplitude on `T(G)` at every candidate time
/// up to `query.ell_max`, stopping at the first time with fidelity `>= 1 - epsilon`.
pub fn search_pgst(walk: &TotalWalk<'_>, query: &PgstQuery) -> Result<PgstReport> {
    let kernel = walk.pair_kernel(&query.pair, &query.partner)?;
    let deltas: Vec<f64> = kernel
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.abs() > WEIGHT_FLOOR)
        .filter_map(|(j, _)| walk.delta(j))
        .collect();
    let degenerate = deltas.iter().all(|d| (d - d.round()).abs() < 1e-9);
    let target = 1.0 - query.epsilon;

    let mut trace: Vec<TracePoint> = Vec::new();
    let mut best_quality: Option<KroneckerPoint> = None;
    let mut evaluated = 0;
    let mut start = 0;
    'chunks: while start <= query.ell_max {
        let end = query.ell_max.min(start.saturating_add(CHUNK - 1));
        let block: Vec<(f64, f64)> = (start..=end)
            .into_par_iter()
            .map(|ell| {
                let fidelity = kernel.amplitude(candidate_time(ell)).fidelity;
                (fidelity, kronecker_quality(ell, &deltas))
            })
            .collect();
        for (ell, (fidelity, quality)) in (start..=end).zip(block) {
            evaluated += 1;
            if best_quality.is_none_or(|b| quality < b.quality) {
                best_quality = Some(KroneckerPoint { ell, quality, fidelity });
            }
            if trace.last().is_none_or(|p| fidelity > p.fidelity) {
                trace.push(TracePoint {
                    ell,
                    time: candidate_time(ell),
                    fidelity,
                });
            }
            if fidelity >= target {
                break 'chunks;
            }
        }
        if end == query.ell_max {
            break;
        }
        start = end + 1;
    }

    let best = *trace.last().expect("at least one candidate is evaluated");
    let mut report = PgstReport {
        query: query.clone(),
        best_ell: best.ell,
        best_time: best.time,
        best_fidelity: best.fidelity,
        reached_target: best.fidelity >= target,
        evaluated,
        trace,
        deltas,
        best_quality: if degenerate { None } else { best_quality },
        degenerate,
        refined: None,
        hypothesis_check: None,
    };
    if query.refine {
        let (time, fidelity) = golden_section_max(
            |t| kernel.amplitude(t).fidelity,
            best.time - REFINE_HALF_WIDTH,
            best.time + REFINE_HALF_WIDTH,
            REFINE_ITERATIONS,
        );
        let point = TracePoint {
            ell: best.ell,
            time,
            fidelity,
        };
        report.refined = Some(point);
        if fidelity > report.best_fidelity {
            report.best_time = time;
            report.best_fidelity = fidelity;
            report.reached_target = fidelity >= target;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PgstCase {
    /// Non-bipartite base: needs `(r + 2) / 4` integral.
    NonBipartite,
    /// Bipartite base, `a` and `b` on one side: needs `(r + 2) / 4` integral.
    BipartiteSameSide,
    /// Bipartite base, `a` and `b` on opposite sides: needs `3r/2` and
    /// `(5r + 2)/4` integral with equal parity.
    BipartiteCrossSide,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub r: usize,
    pub case: PgstCase,
    pub base_certificate: PstCertificate,
    /// The base graph transfers the pair at `pi / 2`.
    pub base_pst_at_half_pi: bool,
    pub r_plus_one_absent: bool,
    pub arithmetic: bool,
    pub arithmetic_detail: String,
    /// `Delta_j = x * sqrt(y)` for each support eigenvalue, as `(theta, x, y)`.
    pub delta_forms: Vec<(i64, i64, i64)>,
    pub holds: bool,
}

fn arithmetic_condition(case: PgstCase, r: i64) -> (bool, String) {
    match case {
        PgstCase::NonBipartite | PgstCase::BipartiteSameSide => {
            let ok = (r + 2) % 4 == 0;
            (ok, format!("(r+2)/4 = {}/4{}", r + 2, if ok { " is an integer" } else { " is not an integer" }))
        }
        PgstCase::BipartiteCrossSide => {
            let a_int = (3 * r) % 2 == 0;
            let b_int = (5 * r + 2) % 4 == 0;
            if !(a_int && b_int) {
                return (false, format!("3r/2 = {}/2 and (5r+2)/4 = {}/4 are not both integers", 3 * r, 5 * r + 2));
            }
            let (a, b) = (3 * r / 2, (5 * r + 2) / 4);
            let ok = a % 2 == b % 2;
            (ok, format!("3r/2 = {a}, (5r+2)/4 = {b}, {}", if ok { "same parity" } else { "different parity" }))
        }
    }
}

/// Checks the base-graph hypotheses under which `T(G)` has pretty good pair
/// state transfer between `p1` and `p2`.
pub fn pgst_hypotheses(g: &Graph, spec: &ExactSpectrum, p1: &PairState, p2: &PairState) -> Result<HypothesisCheck> {
    let r = g
        .regular_degree()
        .ok_or_else(|| invalid("base graph must be regular"))?;
    if r <= 2 {
        return Err(Error::Unsupported(format!("pretty good transfer conditions need r > 2, got r = {r}")));
    }
    if spec.dim() != g.vertex_count() {
        return Err(invalid("spectrum does not belong to the base graph"));
    }
    let ri = r as i64;
    let case = match g.is_bipartite() {
        None => PgstCase::NonBipartite,
        Some(bip) if bip.same_side(p1.a(), p1.b()) => PgstCase::BipartiteSameSide,
        Some(_) => PgstCase::BipartiteCrossSide,
    };
    let cert = certify_pst(spec, p1, p2, default_support_tolerance())?;
    // pi/2 is a transfer time iff it is an odd multiple of t0.
    let base_pst_at_half_pi = match (cert.t0, cert.delta, cert.g) {
        (Some(_), Some(1), Some(g)) => g % 2 == 0 && (g / 2) % 2 == 1,
        _ => false,
    };
    let r_plus_one_absent = !spec.contains(&ExactScalar::integer(ri + 1));
    let (arithmetic, arithmetic_detail) = arithmetic_condition(case, ri);
    let mut delta_forms = Vec::new();
    for value in &cert.support {
        if let Some(theta) = value.as_integer() {
            let squared = (ri + 2) * (ri + 2) - 4 * theta;
            if squared > 0 {
                let (x, y) = square_free_decompose(squared)?;
                delta_forms.push((theta, x, y));
            }
        }
    }
    Ok(HypothesisCheck {
        r,
        case,
        base_pst_at_half_pi,
        r_plus_one_absent,
        arithmetic,
        arithmetic_detail,
        delta_forms,
        holds: base_pst_at_half_pi && r_plus_one_absent && arithmetic,
        base_certificate: cert,
    })
}

/// Numeric `TotalWalk` over a base decomposition, with the bipartition when present.
pub fn total_walk<'a>(
    g: &Graph,
    base: &'a SpectralDecomposition,
    bipartition: Option<&Bipartition>,
) -> Result<TotalWalk<'a>> {
    let r = g
        .regular_degree()
        .ok_or_else(|| invalid("base graph must be regular"))?;
    TotalWalk::new(base, bipartition, r)
}
