use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::numeric::{default_tolerance, eigendecompose_symmetric, SpectralDecomposition};
use crate::error::Result;
use crate::exact::ExactScalar;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    /// Numeric spectrum of the graph, rounded to integers and verified.
    IntegerBase,
    /// Assembled from the closed-form total-graph spectrum.
    TotalClosedForm,
}

#[derive(Debug, Clone)]
pub struct ExactEntry {
    pub value: ExactScalar,
    pub multiplicity: usize,
    pub projector: DMatrix<f64>,
}

/// Eigenvalues known exactly, with numeric projectors, strictly increasing.
#[derive(Debug, Clone)]
pub struct ExactSpectrum {
    entries: Vec<ExactEntry>,
    source: SpectrumSource,
}

impl ExactSpectrum {
    /// Sorts the entries and merges equal exact values by summing projectors.
    pub fn from_entries(mut entries: Vec<ExactEntry>, source: SpectrumSource) -> Self {
        entries.sort_by(|a, b| a.value.to_f64().total_cmp(&b.value.to_f64()));
        let mut merged: Vec<ExactEntry> = Vec::with_capacity(entries.len());
        for entry in entries {
            match merged.iter_mut().find(|e| e.value == entry.value) {
                Some(existing) => {
                    existing.multiplicity += entry.multiplicity;
                    existing.projector += &entry.projector;
                }
                None => merged.push(entry),
            }
        }
        ExactSpectrum {
            entries: merged,
            source,
        }
    }

    pub fn entries(&self) -> &[ExactEntry] {
        &self.entries
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn dim(&self) -> usize {
        self.entries[0].projector.nrows()
    }

    pub fn values(&self) -> Vec<ExactScalar> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn contains(&self, value: &ExactScalar) -> bool {
        self.entries.iter().any(|e| &e.value == value)
    }

    pub fn to_decomposition(&self) -> SpectralDecomposition {
        SpectralDecomposition::from_parts(
            self.entries.iter().map(|e| e.value.to_f64()).collect(),
            self.entries.iter().map(|e| e.projector.clone()).collect(),
            0.0,
        )
        .expect("exact spectrum has consistent projectors")
    }
}

/// Default tolerance for recognising integer eigenvalues.
pub fn default_integer_tolerance(g: &Graph) -> f64 {
    1e-6 * (2 * g.vertex_count()).max(1) as f64
}

/// The Laplacian spectrum of `g` as integers, if every eigenvalue is within
/// `tol` of an integer `k` and its projector satisfies `||(L - kI) E|| < tol`.
pub fn exact_integer_spectrum(g: &Graph, tol: f64) -> Result<Option<ExactSpectrum>> {
    let l = g.laplacian();
    let dec = eigendecompose_symmetric(&l, default_tolerance(&l))?;
    let mut entries = Vec::with_capacity(dec.len());
    for ((theta, projector), multiplicity) in dec.iter().zip(dec.multiplicities()) {
        let k = theta.round();
        if (theta - k).abs() > tol {
            return Ok(None);
        }
        let residual = (g.laplacian_times(projector) - projector * k).norm();
        if residual > tol {
            return Ok(None);
        }
        entries.push(ExactEntry {
            value: ExactScalar::integer(k as i64),
            multiplicity,
            projector: projector.clone(),
        });
    }
    Ok(Some(ExactSpectrum::from_entries(entries, SpectrumSource::IntegerBase)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cocktail_party, complete_graph, cycle, hypercube};

    fn ints(spec: &ExactSpectrum) -> Vec<(i64, usize)> {
        spec.entries()
            .iter()
            .map(|e| (e.value.as_integer().unwrap(), e.multiplicity))
            .collect()
    }

    #[test]
    fn integral_graphs() {
        let k5 = complete_graph(5).unwrap();
        let spec = exact_integer_spectrum(&k5, default_integer_tolerance(&k5)).unwrap().unwrap();
        assert_eq!(ints(&spec), vec![(0, 1), (5, 4)]);
        assert_eq!(spec.source(), SpectrumSource::IntegerBase);

        let cp = cocktail_party(6).unwrap();
        let spec = exact_integer_spectrum(&cp, default_integer_tolerance(&cp)).unwrap().unwrap();
        assert_eq!(ints(&spec), vec![(0, 1), (10, 6), (12, 5)]);

        let q3 = hypercube(3).unwrap();
        let spec = exact_integer_spectrum(&q3, default_integer_tolerance(&q3)).unwrap().unwrap();
        assert_eq!(ints(&spec), vec![(0, 1), (2, 3), (4, 3), (6, 1)]);
    }

    #[test]
    fn five_cycle_is_not_integral() {
        let c5 = cycle(5).unwrap();
        assert!(exact_integer_spectrum(&c5, default_integer_tolerance(&c5)).unwrap().is_none());
    }
}
