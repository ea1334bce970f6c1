//! Exact certification of Laplacian perfect pair state transfer.
//!
//! Strong cospectrality is decided numerically on the projectors; the field,
//! gcd and parity conditions run on the exact eigenvalues. Every positive
//! verdict is confirmed by evaluating the fidelity at the predicted time.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DVector;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::ExactScalar;
use crate::graph::Graph;
use crate::pair::{pair_amplitude, project, signed_partition, PairState};
use crate::spectral::{default_integer_tolerance, exact_integer_spectrum, ExactSpectrum, SpectralDecomposition};

/// Largest dimension accepted by [`scan_all_pairs_pst`].
pub const MAX_SCAN_DIMENSION: usize = 60;

/// Fidelity a positive verdict must reach at `t0`.
pub const CONFIRMATION_THRESHOLD: f64 = 1.0 - 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Incompatibility {
    MixedIntegerAndSurd,
    NonIntegralRational { value: ExactScalar },
    DifferentRadicands { radicands: Vec<i64> },
    /// The quadratic eigenvalues do not share the rational part `x`.
    XNotShared { xs: Vec<i64> },
    ParityClash { ys: Vec<i64> },
}

impl fmt::Display for Incompatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Incompatibility::MixedIntegerAndSurd => write!(f, "support mixes integers and quadratic integers"),
            Incompatibility::NonIntegralRational { value } => write!(f, "non-integral rational eigenvalue {value}"),
            Incompatibility::DifferentRadicands { radicands } => write!(f, "support spans radicands {radicands:?}"),
            Incompatibility::XNotShared { xs } => write!(f, "rational parts {xs:?} are not shared"),
            Incompatibility::ParityClash { ys } => write!(f, "coefficients {ys:?} differ in parity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum FieldClass {
    AllIntegers { values: Vec<i64> },
    /// Every value is `(x + y_j*sqrt(delta)) / 2`.
    Quadratic { x: i64, delta: i64, ys: Vec<i64> },
    Incompatible(Incompatibility),
}

pub fn classify_support(values: &[ExactScalar]) -> Result<FieldClass> {
    if values.is_empty() {
        return Err(invalid("cannot classify an empty support"));
    }
    let mut integers = Vec::new();
    let mut surds = Vec::new();
    for value in values {
        match *value {
            ExactScalar::Rational(_) => match value.as_integer() {
                Some(k) => integers.push(k),
                None => {
                    return Ok(FieldClass::Incompatible(Incompatibility::NonIntegralRational { value: *value }));
                }
            },
            ExactScalar::Surd { x, y, radicand } => surds.push((x, y, radicand)),
        }
    }
    if surds.is_empty() {
        return Ok(FieldClass::AllIntegers { values: integers });
    }
    if !integers.is_empty() {
        return Ok(FieldClass::Incompatible(Incompatibility::MixedIntegerAndSurd));
    }
    let delta = surds[0].2;
    if surds.iter().any(|s| s.2 != delta) {
        let mut radicands: Vec<i64> = surds.iter().map(|s| s.2).collect();
        radicands.sort_unstable();
        radicands.dedup();
        return Ok(FieldClass::Incompatible(Incompatibility::DifferentRadicands { radicands }));
    }
    let x = surds[0].0;
    if surds.iter().any(|s| s.0 != x) {
        let xs = surds.iter().map(|s| s.0).collect();
        return Ok(FieldClass::Incompatible(Incompatibility::XNotShared { xs }));
    }
    let ys: Vec<i64> = surds.iter().map(|s| s.1).collect();
    if ys.iter().any(|y| y.is_odd() != ys[0].is_odd()) {
        return Ok(FieldClass::Incompatible(Incompatibility::ParityClash { ys }));
    }
    Ok(FieldClass::Quadratic { x, delta, ys })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignSet {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation {
    NotStronglyCospectral,
    /// One of the signed sets is empty, so the state is fixed or cannot leave.
    FixedState { empty: SignSet },
    Field { detail: Incompatibility },
    Parity {
        eigenvalue: ExactScalar,
        quotient: i64,
        g: i64,
        found_in: SignSet,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotStronglyCospectral => write!(f, "(i) pair states are not strongly cospectral"),
            Violation::FixedState { empty } => write!(f, "fixed state: the {empty:?} set is empty"),
            Violation::Field { detail } => write!(f, "(ii) {detail}"),
            Violation::Parity {
                eigenvalue,
                quotient,
                g,
                found_in,
            } => write!(
                f,
                "(iii) {eigenvalue} has quotient {quotient}/{g} but lies in the {found_in:?} set"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstCertificate {
    pub pair: PairState,
    pub partner: PairState,
    pub verdict: Verdict,
    /// Support of `pair`, in decreasing order.
    pub support: Vec<ExactScalar>,
    pub plus: Vec<ExactScalar>,
    pub minus: Vec<ExactScalar>,
    /// The signed sets refer to `e_d - e_c` rather than `e_c - e_d`.
    pub partner_reversed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confirmed_fidelity: Option<f64>,
    /// Fidelity at `t0 / 2`; a spot check on minimality, never asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_time_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl PstCertificate {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// An exact spectrum prepared for repeated certification.
#[derive(Debug, Clone)]
pub struct Certifier<'a> {
    spec: &'a ExactSpectrum,
    dec: SpectralDecomposition,
    tol: f64,
}

impl<'a> Certifier<'a> {
    pub fn new(spec: &'a ExactSpectrum, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(invalid(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Certifier {
            spec,
            dec: spec.to_decomposition(),
            tol,
        })
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.dec
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    fn projections(&self, p: &PairState) -> Vec<DVector<f64>> {
        self.dec.projectors().iter().map(|e| project(e, p)).collect()
    }

    fn check(&self, p: &PairState) -> Result<()> {
        if p.max_index() >= self.dec.dim() {
            return Err(invalid(format!("pair {p} out of range for dimension {}", self.dec.dim())));
        }
        Ok(())
    }

    pub fn certify(&self, p1: &PairState, p2: &PairState) -> Result<PstCertificate> {
        if p1.same_pair(p2) {
            return Err(invalid(format!("pair states {p1} and {p2} coincide")));
        }
        self.check(p1)?;
        self.check(p2)?;
        self.certify_projected(p1, p2, &self.projections(p1), &self.projections(p2))
    }

    fn value(&self, j: usize) -> ExactScalar {
        self.spec.entries()[j].value
    }

    fn descending(&self, idx: &[usize]) -> Vec<ExactScalar> {
        let mut values: Vec<ExactScalar> = idx.iter().map(|&j| self.value(j)).collect();
        values.sort_by(|a, b| b.to_f64().total_cmp(&a.to_f64()));
        values
    }

    fn certify_projected(
        &self,
        p1: &PairState,
        p2: &PairState,
        u: &[DVector<f64>],
        v: &[DVector<f64>],
    ) -> Result<PstCertificate> {
        let support_idx: Vec<usize> = (0..u.len()).filter(|&j| u[j].norm() > self.tol).collect();
        if support_idx.is_empty() {
            return Err(Error::NumericFailure(format!(
                "empty eigenvalue support for pair {p1} at tolerance {:e}",
                self.tol
            )));
        }
        let mut cert = PstCertificate {
            pair: *p1,
            partner: *p2,
            verdict: Verdict::No,
            support: self.descending(&support_idx),
            plus: Vec::new(),
            minus: Vec::new(),
            partner_reversed: false,
            field: None,
            g: None,
            delta: None,
            t0: None,
            confirmed_fidelity: None,
            half_time_fidelity: None,
            violation: None,
        };

        let Some(partition) = signed_partition(u, v, self.tol) else {
            cert.violation = Some(Violation::NotStronglyCospectral);
            return Ok(cert);
        };
        cert.plus = self.descending(&partition.plus);
        cert.minus = self.descending(&partition.minus);
        // Fidelity ignores the sign of e_c - e_d; orient it so theta_0 is in the plus set.
        if cert.minus.first() == cert.support.first() {
            std::mem::swap(&mut cert.plus, &mut cert.minus);
            cert.partner_reversed = true;
        }
        if cert.plus.is_empty() || cert.minus.is_empty() {
            let empty = if cert.plus.is_empty() { SignSet::Plus } else { SignSet::Minus };
            cert.violation = Some(Violation::FixedState { empty });
            return Ok(cert);
        }

        let field = classify_support(&cert.support)?;
        cert.field = Some(field.clone());
        // q_j = (theta_0 - theta_j) / sqrt(delta), exactly.
        let (delta, quotients): (i64, Vec<i64>) = match field {
            FieldClass::Incompatible(detail) => {
                cert.violation = Some(Violation::Field { detail });
                return Ok(cert);
            }
            FieldClass::AllIntegers { values } => (1, values.iter().map(|v| values[0] - v).collect()),
            FieldClass::Quadratic { delta, ys, .. } => (delta, ys.iter().map(|y| (ys[0] - y) / 2).collect()),
        };
        let g = quotients.iter().filter(|q| **q != 0).fold(0i64, |acc, q| acc.gcd(q));
        if g == 0 {
            return Err(Error::InternalInconsistency(
                "all support quotients vanish for a non-fixed state".into(),
            ));
        }
        cert.g = Some(g);
        cert.delta = Some(delta);
        for (value, q) in cert.support.iter().zip(&quotients) {
            let expected = if (q / g).is_even() { SignSet::Plus } else { SignSet::Minus };
            let found_in = if cert.plus.contains(value) { SignSet::Plus } else { SignSet::Minus };
            if expected != found_in {
                cert.violation = Some(Violation::Parity {
                    eigenvalue: *value,
                    quotient: *q,
                    g,
                    found_in,
                });
                return Ok(cert);
            }
        }

        let t0 = PI / (g as f64 * (delta as f64).sqrt());
        let fidelity = pair_amplitude(&self.dec, p1, p2, t0)?.fidelity;
        if fidelity < CONFIRMATION_THRESHOLD {
            return Err(Error::InternalInconsistency(format!(
                "exact conditions hold for {p1} -> {p2} but fidelity at t0 = {t0} is {fidelity}"
            )));
        }
        cert.verdict = Verdict::Yes;
        cert.t0 = Some(t0);
        cert.confirmed_fidelity = Some(fidelity);
        cert.half_time_fidelity = Some(pair_amplitude(&self.dec, p1, p2, t0 / 2.0)?.fidelity);
        Ok(cert)
    }

    /// Certifies every unordered pair of distinct pair states.
    pub fn scan(&self) -> Result<ScanReport> {
        let n = self.dec.dim();
        if n > MAX_SCAN_DIMENSION {
            return Err(Error::TooLarge(format!(
                "exhaustive scan limited to {MAX_SCAN_DIMENSION} vertices, got {n}; certify selected pairs instead"
            )));
        }
        let states = PairState::all(n);
        let projections: Vec<Vec<DVector<f64>>> = states.iter().map(|p| self.projections(p)).collect();
        let jobs: Vec<(usize, usize)> = (0..states.len())
            .flat_map(|i| (i + 1..states.len()).map(move |k| (i, k)))
            .collect();
        let results = jobs
            .par_iter()
            .map(|&(i, k)| self.certify_projected(&states[i], &states[k], &projections[i], &projections[k]))
            .collect::<Result<Vec<_>>>()?;
        let strongly_cospectral = results
            .iter()
            .filter(|c| c.violation != Some(Violation::NotStronglyCospectral))
            .count();
        let certificates: Vec<PstCertificate> = results.into_iter().filter(|c| c.is_yes()).collect();
        Ok(ScanReport {
            dimension: n,
            pair_states: states.len(),
            comparisons: jobs.len(),
            strongly_cospectral,
            certificates,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub dimension: usize,
    pub pair_states: usize,
    pub comparisons: usize,
    pub strongly_cospectral: usize,
    pub certificates: Vec<PstCertificate>,
}

pub fn certify_pst(spec: &ExactSpectrum, p1: &PairState, p2: &PairState, tol: f64) -> Result<PstCertificate> {
    Certifier::new(spec, tol)?.certify(p1, p2)
}

pub fn scan_all_pairs_pst(spec: &ExactSpectrum, tol: f64) -> Result<ScanReport> {
    Certifier::new(spec, tol)?.scan()
}

/// The integer spectrum of `g`, or `CertificationUnavailable` when it has none.
pub fn certifiable_spectrum(g: &Graph) -> Result<ExactSpectrum> {
    exact_integer_spectrum(g, default_integer_tolerance(g))?.ok_or_else(|| {
        Error::CertificationUnavailable("Laplacian spectrum is not integral; only numeric analysis applies".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cocktail_party, complete_graph, hypercube};
    use crate::pair::default_support_tolerance;

    fn int(k: i64) -> ExactScalar {
        ExactScalar::integer(k)
    }

    fn surd(x: i64, y: i64, d: i64) -> ExactScalar {
        ExactScalar::surd(x, y, d).unwrap()
    }

    fn pair(a: usize, b: usize) -> PairState {
        PairState::new(a, b).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_support(&[int(12), int(10)]).unwrap(),
            FieldClass::AllIntegers { values: vec![12, 10] }
        );
        assert_eq!(
            classify_support(&[surd(9, 1, 17), surd(9, -1, 17)]).unwrap(),
            FieldClass::Quadratic {
                x: 9,
                delta: 17,
                ys: vec![1, -1]
            }
        );
        assert_eq!(
            classify_support(&[surd(9, 1, 17), surd(15, 1, 5)]).unwrap(),
            FieldClass::Incompatible(Incompatibility::DifferentRadicands { radicands: vec![5, 17] })
        );
        assert_eq!(
            classify_support(&[int(5), surd(9, 1, 17)]).unwrap(),
            FieldClass::Incompatible(Incompatibility::MixedIntegerAndSurd)
        );
        assert_eq!(
            classify_support(&[surd(9, 1, 17), surd(7, 1, 17)]).unwrap(),
            FieldClass::Incompatible(Incompatibility::XNotShared { xs: vec![9, 7] })
        );
        assert_eq!(
            classify_support(&[surd(9, 1, 17), surd(9, 2, 17)]).unwrap(),
            FieldClass::Incompatible(Incompatibility::ParityClash { ys: vec![1, 2] })
        );
        assert!(classify_support(&[]).is_err());
    }

    #[test]
    fn cocktail_party_transfer_is_certified() {
        let spec = certifiable_spectrum(&cocktail_party(6).unwrap()).unwrap();
        let cert = certify_pst(&spec, &pair(0, 1), &pair(6, 7), default_support_tolerance()).unwrap();
        assert!(cert.is_yes(), "{:?}", cert.violation);
        assert_eq!(cert.support, vec![int(12), int(10)]);
        assert_eq!((cert.g, cert.delta), (Some(2), Some(1)));
        assert!((cert.t0.unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(cert.confirmed_fidelity.unwrap() >= CONFIRMATION_THRESHOLD);
    }

    #[test]
    fn fixed_and_unrelated_pairs_fail() {
        let spec = certifiable_spectrum(&cocktail_party(6).unwrap()).unwrap();
        let tol = default_support_tolerance();
        let cert = certify_pst(&spec, &pair(0, 6), &pair(1, 7), tol).unwrap();
        assert_eq!(cert.verdict, Verdict::No);
        assert!(cert.violation.is_some());
        let cert = certify_pst(&spec, &pair(0, 1), &pair(2, 3), tol).unwrap();
        assert_eq!(cert.violation, Some(Violation::NotStronglyCospectral));
    }

    #[test]
    fn hypercube_antipodal_transfer() {
        // Q_3 sends e_v to e_{complement of v} at pi/2.
        let spec = certifiable_spectrum(&hypercube(3).unwrap()).unwrap();
        let cert = certify_pst(&spec, &pair(0, 1), &pair(7, 6), default_support_tolerance()).unwrap();
        assert!(cert.is_yes(), "{:?}", cert.violation);
        assert!((cert.t0.unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(cert.partner_reversed);
        let flipped = certify_pst(&spec, &pair(0, 1), &pair(6, 7), default_support_tolerance()).unwrap();
        assert!(flipped.is_yes() && !flipped.partner_reversed);
        assert_eq!(flipped.plus, cert.plus);
    }

    #[test]
    fn complete_graph_has_no_transfer() {
        let spec = certifiable_spectrum(&complete_graph(5).unwrap()).unwrap();
        let report = scan_all_pairs_pst(&spec, default_support_tolerance()).unwrap();
        assert_eq!(report.pair_states, 10);
        assert_eq!(report.comparisons, 45);
        assert!(report.certificates.is_empty());
    }

    #[test]
    fn scan_guard() {
        let spec = certifiable_spectrum(&hypercube(6).unwrap()).unwrap();
        assert!(matches!(
            scan_all_pairs_pst(&spec, default_support_tolerance()),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn non_integral_base_is_unavailable() {
        let c5 = crate::graph::cycle(5).unwrap();
        assert!(matches!(certifiable_spectrum(&c5), Err(Error::CertificationUnavailable(_))));
    }
}
