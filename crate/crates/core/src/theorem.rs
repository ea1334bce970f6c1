//! Registered verification cases: each names fixtures, an expectation, and
//! produces a pass/fail report with the evidence it computed.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exact::{ExactScalar, QuadraticNumber};
use crate::graph::{circulant, cocktail_party, complete_graph, cycle, hypercube, petersen, Graph};
use crate::pair::{best_partner_at, default_support_tolerance, pair_amplitude, project, PairState, TotalWalk};
use crate::pgst::{pgst_hypotheses, search_pgst, PgstQuery};
use crate::pst::{certifiable_spectrum, scan_all_pairs_pst};
use crate::spectral::{
    direct_transition_matrix, eigendecompose_symmetric, laplacian_decomposition, tkn_closed_projectors,
    total_closed_form, total_exact_spectrum, total_exact_terms, transition_matrix, SpectralDecomposition,
    TermKind,
};

/// Builds a fixture graph from a short name: `K4`, `C5`, `Q3`, `K33`,
/// `petersen`, `cocktail6`.
pub fn fixture(name: &str) -> Result<Graph> {
    let number = |prefix: &str| -> Result<usize> {
        name[prefix.len()..]
            .parse()
            .map_err(|_| invalid(format!("unknown fixture {name:?}")))
    };
    match name {
        "petersen" => Ok(petersen()),
        "K33" => circulant(6, &[1, 3, 5]),
        _ if name.starts_with("cocktail") => cocktail_party(number("cocktail")?),
        _ if name.starts_with('K') => complete_graph(number("K")?),
        _ if name.starts_with('C') => cycle(number("C")?),
        _ if name.starts_with('Q') => hypercube(number("Q")?),
        _ => Err(invalid(format!("unknown fixture {name:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    /// Closed-form total spectrum equals the numeric decomposition of `L(T(G))`.
    ClosedFormSpectra { fixtures: &'static [&'static str], tol: f64 },
    /// Explicit `T(K_n)` projectors equal the numeric ones.
    TknProjectors { ns: &'static [usize], tol: f64 },
    /// The base graph has certified pair transfer, all with the given witness.
    BasePstScan {
        fixture: &'static str,
        g: i64,
        delta: i64,
        min_fidelity: f64,
    },
    /// No pair of pair states of `T(G)` admits perfect transfer.
    NoTotalPst {
        fixtures: &'static [&'static str],
        support_symmetry: bool,
    },
    /// The base pair `(0, 1)` and its partner at `pi/2` reach the fidelity on `T(G)`.
    Pgst {
        fixture: &'static str,
        epsilon: f64,
        ell_max: u64,
        budgets: &'static [u64],
    },
    /// Closed-form total-graph amplitudes equal the direct matrix exponential.
    AmplitudeOracle {
        fixtures: &'static [&'static str],
        times: usize,
        tol: f64,
    },
    /// Projector, unitarity, fidelity and exact-identity invariants.
    Properties { fixtures: &'static [&'static str] },
}

#[derive(Debug, Clone, Copy)]
pub struct TheoremCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub expectation: Expectation,
}

pub static CASES: &[TheoremCase] = &[
    TheoremCase {
        id: "spectra-oracle",
        summary: "closed-form total-graph spectra match numeric decompositions",
        expectation: Expectation::ClosedFormSpectra {
            fixtures: &["K4", "K5", "petersen", "Q3", "K33", "C5"],
            tol: 1e-8,
        },
    },
    TheoremCase {
        id: "tkn-projectors",
        summary: "explicit T(K_n) eigenprojectors match numeric decompositions",
        expectation: Expectation::TknProjectors {
            ns: &[4, 5, 6],
            tol: 1e-8,
        },
    },
    TheoremCase {
        id: "ex-cocktail-pst",
        summary: "cocktail_party(6) has perfect pair state transfer at pi/2",
        expectation: Expectation::BasePstScan {
            fixture: "cocktail6",
            g: 2,
            delta: 1,
            min_fidelity: 1.0 - 1e-9,
        },
    },
    TheoremCase {
        id: "thm-tkn",
        summary: "total graphs of complete graphs K_n, n > 3, have no perfect pair state transfer",
        expectation: Expectation::NoTotalPst {
            fixtures: &["K4", "K5"],
            support_symmetry: false,
        },
    },
    TheoremCase {
        id: "thm-nonexistence-total",
        summary: "no perfect pair state transfer on T(G) when r > 2 and r + 1 is not a base eigenvalue",
        expectation: Expectation::NoTotalPst {
            fixtures: &["petersen"],
            support_symmetry: true,
        },
    },
    TheoremCase {
        id: "ex-cocktail",
        summary: "T(cocktail_party(6)) has pretty good pair state transfer",
        expectation: Expectation::Pgst {
            fixture: "cocktail6",
            epsilon: 0.05,
            ell_max: 100_000,
            budgets: &[100, 1_000, 10_000, 100_000],
        },
    },
    TheoremCase {
        id: "ex-hypercube",
        summary: "T(Q_10) has pretty good pair state transfer between cross-side pairs",
        expectation: Expectation::Pgst {
            fixture: "Q10",
            epsilon: 0.1,
            ell_max: 100_000,
            budgets: &[],
        },
    },
    TheoremCase {
        id: "oracle-amplitudes",
        summary: "closed-form total-graph amplitudes match the direct exponential",
        expectation: Expectation::AmplitudeOracle {
            fixtures: &["petersen", "Q3"],
            times: 20,
            tol: 1e-8,
        },
    },
    TheoremCase {
        id: "properties",
        summary: "projector, unitarity, fidelity and exact-identity invariants",
        expectation: Expectation::Properties {
            fixtures: &["K4", "K5", "petersen", "Q3", "K33", "C5", "cocktail6"],
        },
    },
];

pub fn find_case(id: &str) -> Result<&'static TheoremCase> {
    CASES.iter().find(|c| c.id == id).ok_or_else(|| {
        let known: Vec<&str> = CASES.iter().map(|c| c.id).collect();
        invalid(format!("unknown case {id:?}; known cases: {}", known.join(", ")))
    })
}

/// Overrides for a case run.
#[derive(Debug, Clone, Copy, Default)]
pub struct CaseParams {
    /// Replaces the fixtures of `thm-tkn` by `K_n` and of `tkn-projectors` by `n`.
    pub n: Option<usize>,
    pub ell_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub summary: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub evidence: Value,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn verify_case(id: &str, params: CaseParams) -> Result<CaseReport> {
    let case = find_case(id)?;
    let mut checks = Checks(Vec::new());
    let evidence = match case.expectation {
        Expectation::ClosedFormSpectra { fixtures, tol } => closed_form_spectra(fixtures, tol, &mut checks)?,
        Expectation::TknProjectors { ns, tol } => {
            let ns: Vec<usize> = params.n.map_or_else(|| ns.to_vec(), |n| vec![n]);
            tkn_projectors(&ns, tol, &mut checks)?
        }
        Expectation::BasePstScan {
            fixture: name,
            g,
            delta,
            min_fidelity,
        } => base_pst_scan(name, g, delta, min_fidelity, &mut checks)?,
        Expectation::NoTotalPst {
            fixtures,
            support_symmetry,
        } => {
            let names: Vec<String> = match params.n {
                Some(n) if case.id == "thm-tkn" => vec![format!("K{n}")],
                _ => fixtures.iter().map(|s| s.to_string()).collect(),
            };
            no_total_pst(&names, support_symmetry, &mut checks)?
        }
        Expectation::Pgst {
            fixture: name,
            epsilon,
            ell_max,
            budgets,
        } => pgst_case(name, epsilon, params.ell_max.unwrap_or(ell_max), budgets, &mut checks)?,
        Expectation::AmplitudeOracle { fixtures, times, tol } => amplitude_oracle(fixtures, times, tol, &mut checks)?,
        Expectation::Properties { fixtures } => properties(fixtures, &mut checks)?,
    };
    let status = if checks.0.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CaseReport {
        id: case.id.to_string(),
        summary: case.summary.to_string(),
        status,
        checks: checks.0,
        evidence,
    })
}

/// Largest eigenvalue and projector (Frobenius) discrepancy, or `None` when
/// the numbers of distinct eigenvalues differ.
pub fn compare_decompositions(a: &SpectralDecomposition, b: &SpectralDecomposition) -> Option<(f64, f64)> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return None;
    }
    let mut value_err: f64 = 0.0;
    let mut proj_err: f64 = 0.0;
    for ((x, ex), (y, ey)) in a.iter().zip(b.iter()) {
        value_err = value_err.max((x - y).abs());
        proj_err = proj_err.max((ex - ey).norm());
    }
    Some((value_err, proj_err))
}

fn numeric_total(g: &Graph) -> Result<SpectralDecomposition> {
    let (t, _) = g.total_graph();
    laplacian_decomposition(&t)
}

/// Closed-form decomposition of `L(T(G))`: exact when the base spectrum is
/// integral, numeric otherwise.
pub fn closed_form_total(g: &Graph) -> Result<(SpectralDecomposition, bool)> {
    match certifiable_spectrum(g) {
        Ok(base) => Ok((total_exact_spectrum(g, &base)?.to_decomposition(), true)),
        Err(Error::CertificationUnavailable(_)) => {
            let base = laplacian_decomposition(g)?;
            Ok((total_closed_form(g, &base, 1e-8)?, false))
        }
        Err(e) => Err(e),
    }
}

fn closed_form_spectra(fixtures: &[&str], tol: f64, checks: &mut Checks) -> Result<Value> {
    let mut evidence = Vec::new();
    for &name in fixtures {
        let g = fixture(name)?;
        let (closed, exact) = closed_form_total(&g)?;
        let numeric = numeric_total(&g)?;
        match compare_decompositions(&closed, &numeric) {
            Some((ve, pe)) => {
                checks.push(
                    format!("{name}: eigenvalues"),
                    ve <= tol,
                    format!("max difference {ve:.3e}"),
                );
                checks.push(
                    format!("{name}: projectors"),
                    pe <= tol,
                    format!("max Frobenius difference {pe:.3e}"),
                );
                evidence.push(json!({
                    "fixture": name, "exact": exact, "distinct": closed.len(),
                    "multiplicities": closed.multiplicities(),
                    "eigenvalue_error": ve, "projector_error": pe,
                }));
            }
            None => {
                checks.push(
                    format!("{name}: distinct eigenvalues"),
                    false,
                    format!("closed form has {}, numeric has {}", closed.len(), numeric.len()),
                );
            }
        }
    }
    Ok(json!({ "fixtures": evidence, "tolerance": tol }))
}

fn tkn_projectors(ns: &[usize], tol: f64, checks: &mut Checks) -> Result<Value> {
    let mut evidence = Vec::new();
    for &n in ns {
        let closed = tkn_closed_projectors(n)?.to_decomposition();
        let numeric = numeric_total(&complete_graph(n)?)?;
        match compare_decompositions(&closed, &numeric) {
            Some((ve, pe)) => {
                checks.push(
                    format!("T(K{n}): projectors"),
                    ve <= tol && pe <= tol,
                    format!("eigenvalue error {ve:.3e}, projector error {pe:.3e}"),
                );
                evidence.push(json!({ "n": n, "eigenvalue_error": ve, "projector_error": pe }));
            }
            None => checks.push(format!("T(K{n}): distinct eigenvalues"), false, "count mismatch"),
        }
    }
    Ok(json!({ "cases": evidence, "tolerance": tol }))
}

fn base_pst_scan(name: &str, g_exp: i64, delta_exp: i64, min_fidelity: f64, checks: &mut Checks) -> Result<Value> {
    let g = fixture(name)?;
    let spec = certifiable_spectrum(&g)?;
    let report = scan_all_pairs_pst(&spec, default_support_tolerance())?;
    let dec = spec.to_decomposition();
    checks.push(
        "certificates found",
        !report.certificates.is_empty(),
        format!("{} certified pairs", report.certificates.len()),
    );
    let mut worst: f64 = 1.0;
    let mut witnesses_ok = true;
    for cert in &report.certificates {
        let fid = pair_amplitude(&dec, &cert.pair, &cert.partner, FRAC_PI_2)?.fidelity;
        worst = worst.min(fid);
        witnesses_ok &= cert.g == Some(g_exp)
            && cert.delta == Some(delta_exp)
            && cert.t0.is_some_and(|t| (t - FRAC_PI_2).abs() < 1e-12);
    }
    checks.push(
        "witnesses",
        witnesses_ok,
        format!("every certificate has g = {g_exp}, delta = {delta_exp}, t0 = pi/2"),
    );
    checks.push(
        "fidelity at pi/2",
        worst >= min_fidelity,
        format!("minimum fidelity {worst:.12}"),
    );
    let pairs: Vec<String> = report
        .certificates
        .iter()
        .map(|c| format!("{} -> {}", c.pair, c.partner))
        .collect();
    Ok(json!({
        "fixture": name, "pair_states": report.pair_states, "comparisons": report.comparisons,
        "certified": pairs, "min_fidelity": worst,
    }))
}

/// Checks that `theta_j^+` and `theta_j^-` enter the support together for
/// every vertex-vertex and edge-edge pair of `T(G)`. Returns the number of
/// pairs examined and the violations.
pub fn support_symmetry_violations(g: &Graph) -> Result<(usize, Vec<String>)> {
    let base = certifiable_spectrum(g)?;
    let terms = total_exact_terms(g, &base)?;
    let n = g.vertex_count();
    let size = n + g.edge_count();
    let tol = default_support_tolerance();
    let mut examined = 0;
    let mut violations = Vec::new();
    for p in PairState::all(size) {
        if (p.a() < n) != (p.b() < n) {
            continue;
        }
        examined += 1;
        for j in 0..base.entries().len() {
            let in_support = |kind: TermKind| {
                terms
                    .iter()
                    .find(|t| t.kind == kind)
                    .map(|t| project(&t.projector, &p).norm() > tol)
            };
            let minus = in_support(TermKind::Minus { base_index: j });
            let plus = in_support(TermKind::Plus { base_index: j });
            if let (Some(m), Some(pl)) = (minus, plus) {
                if m != pl {
                    violations.push(format!("pair {p}, base eigenvalue index {j}"));
                }
            }
        }
    }
    Ok((examined, violations))
}

fn no_total_pst(names: &[String], support_symmetry: bool, checks: &mut Checks) -> Result<Value> {
    let mut evidence = Vec::new();
    for name in names {
        let g = fixture(name)?;
        let base = certifiable_spectrum(&g)?;
        let r = g.regular_degree().unwrap_or(0);
        let total = total_exact_spectrum(&g, &base)?;
        let report = scan_all_pairs_pst(&total, default_support_tolerance())?;
        checks.push(
            format!("T({name}): no certificates"),
            report.certificates.is_empty(),
            format!(
                "{} certificates over {} pair states ({} comparisons, {} strongly cospectral)",
                report.certificates.len(),
                report.pair_states,
                report.comparisons,
                report.strongly_cospectral
            ),
        );
        let mut item = json!({
            "fixture": name, "r": r, "total_vertices": total.dim(),
            "pair_states": report.pair_states, "comparisons": report.comparisons,
            "strongly_cospectral": report.strongly_cospectral,
            "certificates": report.certificates.len(),
        });
        if support_symmetry {
            let absent = !base.contains(&ExactScalar::integer(r as i64 + 1));
            checks.push(
                format!("{name}: r > 2 and r + 1 not an eigenvalue"),
                r > 2 && absent,
                format!("r = {r}"),
            );
            let (examined, violations) = support_symmetry_violations(&g)?;
            checks.push(
                format!("T({name}): paired support membership"),
                violations.is_empty(),
                format!("{examined} vertex-vertex and edge-edge pairs, {} violations", violations.len()),
            );
            item["support_pairs_examined"] = json!(examined);
            item["support_violations"] = json!(violations);
        }
        evidence.push(item);
    }
    Ok(json!({ "fixtures": evidence }))
}

fn pgst_case(name: &str, epsilon: f64, ell_max: u64, budgets: &[u64], checks: &mut Checks) -> Result<Value> {
    let g = fixture(name)?;
    let spec = certifiable_spectrum(&g)?;
    let dec = spec.to_decomposition();
    let pair = PairState::new(0, 1)?;
    let (partner, amp) = best_partner_at(&dec, &pair, FRAC_PI_2)?;
    let hyp = pgst_hypotheses(&g, &spec, &pair, &partner)?;
    checks.push(
        "base transfer at pi/2",
        hyp.base_pst_at_half_pi,
        format!("{pair} -> {partner}, fidelity {:.12}", amp.fidelity),
    );
    checks.push("hypotheses", hyp.holds, format!("{:?}: {}", hyp.case, hyp.arithmetic_detail));

    let bip = g.is_bipartite();
    let walk = TotalWalk::new(&dec, bip.as_ref(), hyp.r)?;
    let query = PgstQuery::new(pair, partner, epsilon, ell_max, false)?;
    let report = search_pgst(&walk, &query)?;
    checks.push(
        "search",
        report.best_fidelity >= 1.0 - epsilon,
        format!(
            "fidelity {:.6} at l = {} (t = {:.4})",
            report.best_fidelity, report.best_ell, report.best_time
        ),
    );

    let mut budget_trace = Vec::new();
    if !budgets.is_empty() {
        let mut previous: f64 = 0.0;
        let mut monotone = true;
        for &budget in budgets {
            let q = PgstQuery::new(pair, partner, 1e-12, budget, false)?;
            let best = search_pgst(&walk, &q)?.best_fidelity;
            monotone &= best >= previous;
            previous = best;
            budget_trace.push(json!({ "ell_max": budget, "best_fidelity": best }));
        }
        checks.push(
            "best fidelity non-decreasing in the budget",
            monotone,
            format!("{} budgets", budgets.len()),
        );
    }
    Ok(json!({
        "fixture": name, "pair": pair, "partner": partner,
        "hypotheses": hyp, "search": report, "budgets": budget_trace,
    }))
}

/// Deterministic times spread over `[0, 20)`.
pub fn sample_times(count: usize) -> Vec<f64> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (0..count).map(|k| 20.0 * (0.5 + k as f64 * golden).fract()).collect()
}

fn amplitude_oracle(fixtures: &[&str], times: usize, tol: f64, checks: &mut Checks) -> Result<Value> {
    let mut evidence = Vec::new();
    for &name in fixtures {
        let g = fixture(name)?;
        let r = g.regular_degree().ok_or_else(|| invalid("fixture must be regular"))?;
        let n = g.vertex_count();
        let base = laplacian_decomposition(&g)?;
        let bip = g.is_bipartite();
        let walk = TotalWalk::new(&base, bip.as_ref(), r)?;
        let (t_graph, _) = g.total_graph();
        let lt = t_graph.laplacian();
        let pairs: Vec<PairState> = PairState::all(n).into_iter().take(12).collect();
        let mut vertex_err: f64 = 0.0;
        let mut pair_err: f64 = 0.0;
        for t in sample_times(times) {
            let u = direct_transition_matrix(&lt, t);
            for a in 0..n {
                for b in 0..n {
                    vertex_err = vertex_err.max((walk.vertex_amplitude(a, b, t)? - u[(a, b)]).norm());
                }
            }
            for p in &pairs {
                for q in &pairs {
                    let direct: Complex64 = (u[(p.a(), q.a())] - u[(p.a(), q.b())] - u[(p.b(), q.a())]
                        + u[(p.b(), q.b())])
                        * 0.5;
                    pair_err = pair_err.max((walk.pair_amplitude(p, q, t)?.value - direct).norm());
                }
            }
        }
        checks.push(
            format!("T({name}): vertex amplitudes"),
            vertex_err <= tol,
            format!("max error {vertex_err:.3e}"),
        );
        checks.push(
            format!("T({name}): pair amplitudes"),
            pair_err <= tol,
            format!("max error {pair_err:.3e}"),
        );
        evidence.push(json!({ "fixture": name, "vertex_error": vertex_err, "pair_error": pair_err }));
    }
    Ok(json!({ "fixtures": evidence, "times": times, "tolerance": tol }))
}

fn unitarity_error(dec: &SpectralDecomposition, t: f64) -> f64 {
    let u = transition_matrix(dec, t);
    let prod = &u * u.adjoint();
    let mut err: f64 = 0.0;
    for i in 0..prod.nrows() {
        for j in 0..prod.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            err = err.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    err
}

/// Checks `theta+ + theta- = r + 2 + 2 theta` and `theta+ theta- = theta (theta + r + 3)`
/// exactly for every closed-form pair. Returns the number of pairs checked.
pub fn exact_identity_failures(g: &Graph) -> Result<(usize, Vec<String>)> {
    let base = certifiable_spectrum(g)?;
    let r = g.regular_degree().ok_or_else(|| invalid("graph must be regular"))? as i64;
    let terms = total_exact_terms(g, &base)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for (j, entry) in base.entries().iter().enumerate() {
        let find = |kind: TermKind| terms.iter().find(|t| t.kind == kind).and_then(|t| t.exact);
        let (Some(minus), Some(plus)) = (
            find(TermKind::Minus { base_index: j }),
            find(TermKind::Plus { base_index: j }),
        ) else {
            continue;
        };
        let theta = entry.value.as_integer().expect("integer base");
        let (p, m) = (plus.to_quadratic(), minus.to_quadratic());
        checked += 1;
        if p + m != QuadraticNumber::integer(r + 2 + 2 * theta) {
            failures.push(format!("sum for theta = {theta}"));
        }
        if p * m != QuadraticNumber::integer(theta * (theta + r + 3)) {
            failures.push(format!("product for theta = {theta}"));
        }
    }
    Ok((checked, failures))
}

fn properties(fixtures: &[&str], checks: &mut Checks) -> Result<Value> {
    let times = sample_times(50);
    let mut evidence = Vec::new();
    for &name in fixtures {
        let g = fixture(name)?;
        let (t_graph, _) = g.total_graph();
        let mut worst_projector: f64 = 0.0;
        let mut worst_unitary: f64 = 0.0;
        let mut worst_fidelity: f64 = 0.0;
        for graph in [&g, &t_graph] {
            let l = graph.laplacian();
            let dec = eigendecompose_symmetric(&l, crate::spectral::default_tolerance(&l))?;
            worst_projector = worst_projector.max(dec.check_invariants(Some(&l)).max_projector_error());
            for &t in &times {
                worst_unitary = worst_unitary.max(unitarity_error(&dec, t));
            }
            let pairs = PairState::all(graph.vertex_count());
            for &t in times.iter().take(3) {
                for p in pairs.iter().step_by(7) {
                    for q in pairs.iter().step_by(5) {
                        worst_fidelity = worst_fidelity.max(pair_amplitude(&dec, p, q, t)?.fidelity);
                    }
                }
            }
        }
        checks.push(
            format!("{name}: projector invariants"),
            worst_projector <= 1e-8,
            format!("max error {worst_projector:.3e}"),
        );
        checks.push(
            format!("{name}: unitarity"),
            worst_unitary <= 1e-8,
            format!("max error {worst_unitary:.3e} over {} times", times.len()),
        );
        checks.push(
            format!("{name}: fidelity bound"),
            worst_fidelity <= 1.0 + 1e-10,
            format!("max fidelity {worst_fidelity:.12}"),
        );
        let identities = match exact_identity_failures(&g) {
            Ok((checked, failures)) => {
                checks.push(
                    format!("{name}: exact identities"),
                    failures.is_empty(),
                    format!("{checked} eigenvalue pairs, {} failures", failures.len()),
                );
                json!(checked)
            }
            Err(Error::CertificationUnavailable(_)) => Value::Null,
            Err(e) => return Err(e),
        };
        evidence.push(json!({
            "fixture": name, "projector_error": worst_projector,
            "unitarity_error": worst_unitary, "max_fidelity": worst_fidelity,
            "identity_pairs_checked": identities,
        }));
    }
    Ok(json!({ "fixtures": evidence }))
}
