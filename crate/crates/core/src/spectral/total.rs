//! Closed-form Laplacian spectrum of the total graph of an `r`-regular graph.
//!
//! Every distinct base eigenvalue `theta` with projector `E` (excluding `2r`
//! when the base is bipartite) produces two total-graph eigenvalues
//!
//! ```text
//! theta± = (r + 2 + 2 theta ± sqrt((r+2)^2 - 4 theta)) / 2
//! ```
//!
//! with projector `[[k^2 E, k E R], [k R^T E, R^T E R]] / (k^2 + 2r - theta)`
//! where `k = 2 + theta - theta±` and `R` is the incidence matrix. The null
//! space of `R` contributes `2r + 2`, and a bipartite base contributes `3r`
//! with projector `Q / n` on the vertex block (`Q_ab = ±1` by side).

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::exact::{ExactEntry, ExactSpectrum, SpectrumSource};
use super::numeric::{null_space_orthonormal, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::graph::{complete_graph, Bipartition, Graph};

/// Total graphs above this many vertices are refused by the dense routines.
pub const MAX_DENSE_TOTAL_VERTICES: usize = 2500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TermKind {
    Minus { base_index: usize },
    Plus { base_index: usize },
    /// `2r + 2`, from the null space of the incidence matrix.
    EdgeKernel,
    /// `3r`, present only for bipartite bases.
    BipartiteSigned,
}

/// One unmerged summand of the closed-form decomposition.
#[derive(Debug, Clone)]
pub struct ClosedFormTerm {
    pub kind: TermKind,
    pub value: f64,
    pub exact: Option<ExactScalar>,
    pub multiplicity: usize,
    pub projector: DMatrix<f64>,
}

struct BaseEigen<'a> {
    value: f64,
    exact: Option<i64>,
    multiplicity: usize,
    projector: &'a DMatrix<f64>,
}

fn regular_degree_for_total(g: &Graph) -> Result<usize> {
    let r = g
        .regular_degree()
        .ok_or_else(|| Error::Unsupported("closed-form total spectrum needs a regular graph".into()))?;
    if r <= 1 {
        return Err(Error::Unsupported(format!(
            "closed-form total spectrum needs degree r > 1, got r = {r}"
        )));
    }
    let total = g.vertex_count() + g.edge_count();
    if total > MAX_DENSE_TOTAL_VERTICES {
        return Err(Error::TooLarge(format!(
            "total graph has {total} vertices; dense limit is {MAX_DENSE_TOTAL_VERTICES}"
        )));
    }
    Ok(r)
}

fn build_terms(g: &Graph, r: usize, base: &[BaseEigen<'_>]) -> Result<Vec<ClosedFormTerm>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let size = n + m;
    let rf = r as f64;
    let bipartition = g.is_bipartite();

    let paired = match &bipartition {
        Some(_) => {
            let top = base.last().expect("non-empty spectrum");
            let is_two_r = match top.exact {
                Some(k) => k == 2 * r as i64,
                None => (top.value - 2.0 * rf).abs() <= 1e-8 * (1.0 + 2.0 * rf),
            };
            if !is_two_r {
                return Err(Error::InternalInconsistency(format!(
                    "bipartite {r}-regular graph should have largest Laplacian eigenvalue {}, found {}",
                    2 * r,
                    top.value
                )));
            }
            &base[..base.len() - 1]
        }
        None => base,
    };

    let incidence = g.incidence_matrix();
    let mut terms = Vec::with_capacity(2 * paired.len() + 2);
    for (j, eig) in paired.iter().enumerate() {
        let discriminant = (rf + 2.0).powi(2) - 4.0 * eig.value;
        if discriminant <= 1e-12 {
            return Err(Error::Unsupported(format!(
                "degenerate discriminant for base eigenvalue {}",
                eig.value
            )));
        }
        let root = discriminant.sqrt();
        let er = eig.projector * &incidence;
        let rter = incidence.transpose() * &er;

        for sign in [-1i64, 1] {
            let value = (rf + 2.0 + 2.0 * eig.value + sign as f64 * root) / 2.0;
            let k = 2.0 + eig.value - value;
            let scale = 1.0 / (k * k + 2.0 * rf - eig.value);
            let mut projector = DMatrix::zeros(size, size);
            projector
                .view_mut((0, 0), (n, n))
                .copy_from(&(eig.projector * (k * k * scale)));
            projector.view_mut((0, n), (n, m)).copy_from(&(&er * (k * scale)));
            projector
                .view_mut((n, 0), (m, n))
                .copy_from(&(er.transpose() * (k * scale)));
            projector.view_mut((n, n), (m, m)).copy_from(&(&rter * scale));

            let exact = match eig.exact {
                Some(theta) => Some(ExactScalar::surd(
                    r as i64 + 2 + 2 * theta,
                    sign,
                    (r as i64 + 2).pow(2) - 4 * theta,
                )?),
                None => None,
            };
            terms.push(ClosedFormTerm {
                kind: if sign < 0 {
                    TermKind::Minus { base_index: j }
                } else {
                    TermKind::Plus { base_index: j }
                },
                value,
                exact,
                multiplicity: eig.multiplicity,
                projector,
            });
        }
    }

    let kernel = null_space_orthonormal(&incidence);
    let expected = if bipartition.is_some() { m + 1 - n } else { m - n };
    if kernel.ncols() != expected {
        return Err(Error::NumericFailure(format!(
            "incidence null space has dimension {}, expected {expected}",
            kernel.ncols()
        )));
    }
    if kernel.ncols() > 0 {
        let mut projector = DMatrix::zeros(size, size);
        projector
            .view_mut((n, n), (m, m))
            .copy_from(&(&kernel * kernel.transpose()));
        terms.push(ClosedFormTerm {
            kind: TermKind::EdgeKernel,
            value: 2.0 * rf + 2.0,
            exact: Some(ExactScalar::integer(2 * r as i64 + 2)),
            multiplicity: kernel.ncols(),
            projector,
        });
    }

    if let Some(bip) = &bipartition {
        terms.push(ClosedFormTerm {
            kind: TermKind::BipartiteSigned,
            value: 3.0 * rf,
            exact: Some(ExactScalar::integer(3 * r as i64)),
            multiplicity: 1,
            projector: signed_vertex_block(bip, n, m),
        });
    }

    check_kernel_against_complement(&terms, size)?;
    Ok(terms)
}

fn signed_vertex_block(bip: &Bipartition, n: usize, m: usize) -> DMatrix<f64> {
    let mut projector = DMatrix::zeros(n + m, n + m);
    for a in 0..n {
        for b in 0..n {
            projector[(a, b)] = bip.sign(a) * bip.sign(b) / n as f64;
        }
    }
    projector
}

/// The kernel projector must equal `I` minus every other closed-form projector.
fn check_kernel_against_complement(terms: &[ClosedFormTerm], size: usize) -> Result<()> {
    let mut complement = DMatrix::<f64>::identity(size, size);
    let mut kernel = DMatrix::<f64>::zeros(size, size);
    for term in terms {
        if term.kind == TermKind::EdgeKernel {
            kernel = term.projector.clone();
        } else {
            complement -= &term.projector;
        }
    }
    let gap = (complement - kernel).norm();
    if gap > 1e-8 {
        return Err(Error::InternalInconsistency(format!(
            "edge-kernel projector differs from the complement of the other projectors by {gap:e}"
        )));
    }
    Ok(())
}

/// Unmerged closed-form terms from a numeric base decomposition.
pub fn total_closed_form_terms(g: &Graph, base: &SpectralDecomposition) -> Result<Vec<ClosedFormTerm>> {
    let r = regular_degree_for_total(g)?;
    let eigs: Vec<_> = base
        .iter()
        .zip(base.multiplicities())
        .map(|((value, projector), multiplicity)| BaseEigen {
            value,
            exact: None,
            multiplicity,
            projector,
        })
        .collect();
    build_terms(g, r, &eigs)
}

/// Unmerged closed-form terms with exact eigenvalue labels.
pub fn total_exact_terms(g: &Graph, base: &ExactSpectrum) -> Result<Vec<ClosedFormTerm>> {
    let r = regular_degree_for_total(g)?;
    if base.source() != SpectrumSource::IntegerBase {
        return Err(Error::Unsupported("base spectrum must be an integer spectrum".into()));
    }
    let eigs = base
        .entries()
        .iter()
        .map(|e| {
            let k = e.value.as_integer().ok_or_else(|| {
                Error::Unsupported(format!("base eigenvalue {} is not an integer", e.value))
            })?;
            Ok(BaseEigen {
                value: k as f64,
                exact: Some(k),
                multiplicity: e.multiplicity,
                projector: &e.projector,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    build_terms(g, r, &eigs)
}

/// Closed-form decomposition of `L(T(G))` from any numeric base
/// decomposition; eigenvalues within `tol` are merged.
pub fn total_closed_form(g: &Graph, base: &SpectralDecomposition, tol: f64) -> Result<SpectralDecomposition> {
    let mut terms = total_closed_form_terms(g, base)?;
    terms.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut values: Vec<f64> = Vec::new();
    let mut projectors: Vec<DMatrix<f64>> = Vec::new();
    for term in terms {
        match values.last() {
            Some(&last) if term.value - last <= tol => {
                *projectors.last_mut().unwrap() += &term.projector;
            }
            _ => {
                values.push(term.value);
                projectors.push(term.projector);
            }
        }
    }
    SpectralDecomposition::from_parts(values, projectors, tol)
}

/// Exact closed-form spectrum of `T(G)` from an integer spectrum of `G`.
pub fn total_exact_spectrum(g: &Graph, base: &ExactSpectrum) -> Result<ExactSpectrum> {
    let entries = total_exact_terms(g, base)?
        .into_iter()
        .map(|t| ExactEntry {
            value: t.exact.expect("exact base yields exact labels"),
            multiplicity: t.multiplicity,
            projector: t.projector,
        })
        .collect();
    Ok(ExactSpectrum::from_entries(entries, SpectrumSource::TotalClosedForm))
}

/// The explicit eigenprojectors of `T(K_n)`: eigenvalues `0`, `n + 1` and
/// `2n`, each assembled from `I`, `J`, the incidence matrix and the
/// incidence null space.
pub fn tkn_closed_projectors(n: usize) -> Result<ExactSpectrum> {
    if n <= 3 {
        return Err(Error::Unsupported(format!("explicit T(K_n) projectors need n > 3, got {n}")));
    }
    let kn = complete_graph(n)?;
    let m = kn.edge_count();
    let size = n + m;
    let nf = n as f64;
    let r = kn.incidence_matrix();
    let rtr = r.transpose() * &r;
    let j = |rows: usize, cols: usize| DMatrix::<f64>::from_element(rows, cols, 1.0);
    let i_n = DMatrix::<f64>::identity(n, n);

    let blocks = |tl: DMatrix<f64>, tr: DMatrix<f64>, br: DMatrix<f64>, scale: f64| {
        let mut p = DMatrix::zeros(size, size);
        p.view_mut((0, 0), (n, n)).copy_from(&(tl * scale));
        p.view_mut((n, 0), (m, n)).copy_from(&(tr.transpose() * scale));
        p.view_mut((0, n), (n, m)).copy_from(&(tr * scale));
        p.view_mut((n, n), (m, m)).copy_from(&(br * scale));
        p
    };

    let zero_minus = j(size, size) * (2.0 / (nf * nf + nf));
    let zero_plus = blocks(
        j(n, n) * ((nf * nf - 2.0 * nf + 1.0) / nf),
        j(n, m) * ((2.0 - 2.0 * nf) / nf),
        j(m, m) * (4.0 / nf),
        1.0 / (nf * nf - 1.0),
    );
    let one_minus = blocks(
        &i_n - j(n, n) / nf,
        &r - j(n, m) * (2.0 / nf),
        &rtr - j(m, m) * (4.0 / nf),
        1.0 / (nf - 1.0),
    );
    // k = 2 - n multiplies both J corrections in the vertex rows as well.
    let k = 2.0 - nf;
    let one_plus = blocks(
        (&i_n - j(n, n) / nf) * (k * k),
        (&r - j(n, m) * (2.0 / nf)) * k,
        &rtr - j(m, m) * (4.0 / nf),
        1.0 / (nf * nf - 3.0 * nf + 2.0),
    );
    let z = null_space_orthonormal(&r);
    let mut kernel = DMatrix::zeros(size, size);
    kernel.view_mut((n, n), (m, m)).copy_from(&(&z * z.transpose()));

    let int = |v: usize| ExactScalar::integer(v as i64);
    let entries = vec![
        ExactEntry { value: int(0), multiplicity: 1, projector: zero_minus },
        ExactEntry { value: int(n + 1), multiplicity: 1, projector: zero_plus },
        ExactEntry { value: int(n + 1), multiplicity: n - 1, projector: one_minus },
        ExactEntry { value: int(2 * n), multiplicity: n - 1, projector: one_plus },
        ExactEntry { value: int(2 * n), multiplicity: z.ncols(), projector: kernel },
    ];
    Ok(ExactSpectrum::from_entries(entries, SpectrumSource::TotalClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, hypercube, petersen};
    use crate::spectral::exact::{default_integer_tolerance, exact_integer_spectrum};

    fn exact_base(g: &Graph) -> ExactSpectrum {
        exact_integer_spectrum(g, default_integer_tolerance(g)).unwrap().unwrap()
    }

    #[test]
    fn k4_values_and_multiplicities() {
        let k4 = complete_graph(4).unwrap();
        let spec = total_exact_spectrum(&k4, &exact_base(&k4)).unwrap();
        let got: Vec<_> = spec.entries().iter().map(|e| (e.value.to_string(), e.multiplicity)).collect();
        assert_eq!(got, vec![("0".into(), 1), ("5".into(), 4), ("8".into(), 5)]);
    }

    #[test]
    fn petersen_values() {
        let p = petersen();
        let spec = total_exact_spectrum(&p, &exact_base(&p)).unwrap();
        let got: Vec<_> = spec.entries().iter().map(|e| (e.value.to_string(), e.multiplicity)).collect();
        let want = [
            ("0", 1),
            ("(9-sqrt(17))/2", 5),
            ("5", 1),
            ("(15-sqrt(5))/2", 4),
            ("(9+sqrt(17))/2", 5),
            ("8", 5),
            ("(15+sqrt(5))/2", 4),
        ];
        let want: Vec<_> = want.iter().map(|(s, m)| (s.to_string(), *m)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn q3_includes_bipartite_and_kernel_terms() {
        let q3 = hypercube(3).unwrap();
        let terms = total_exact_terms(&q3, &exact_base(&q3)).unwrap();
        let kernel = terms.iter().find(|t| t.kind == TermKind::EdgeKernel).unwrap();
        assert_eq!(kernel.multiplicity, 5);
        assert_eq!(kernel.exact, Some(ExactScalar::integer(8)));
        let signed = terms.iter().find(|t| t.kind == TermKind::BipartiteSigned).unwrap();
        assert_eq!(signed.exact, Some(ExactScalar::integer(9)));
        // base eigenvalues 0, 2, 4 are paired; 6 = 2r is not
        assert_eq!(terms.len(), 2 * 3 + 2);
    }

    #[test]
    fn rejects_unsupported_bases() {
        let k2 = complete_graph(2).unwrap();
        let spec = exact_base(&k2);
        assert!(matches!(total_exact_spectrum(&k2, &spec), Err(Error::Unsupported(_))));
        assert!(matches!(tkn_closed_projectors(3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tkn_first_projector_is_scaled_all_ones() {
        let spec = tkn_closed_projectors(4).unwrap();
        let first = &spec.entries()[0];
        assert_eq!(first.value, ExactScalar::integer(0));
        assert!((first.projector.clone() - DMatrix::from_element(10, 10, 0.1)).amax() < 1e-14);
        let sum = spec
            .entries()
            .iter()
            .fold(DMatrix::<f64>::zeros(10, 10), |acc, e| acc + &e.projector);
        assert!((sum - DMatrix::<f64>::identity(10, 10)).norm() < 1e-10);
    }
}
