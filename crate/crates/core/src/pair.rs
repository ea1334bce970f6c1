//! Pair states `e_a - e_b`: eigenvalue supports, strong cospectrality and
//! transfer amplitudes, both on an arbitrary decomposition and through the
//! closed form for total graphs of regular graphs.
//!
//! Pair vectors are kept unnormalised; amplitudes carry the factor `1/2`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::graph::Bipartition;
use crate::spectral::SpectralDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairState {
    a: usize,
    b: usize,
}

impl PairState {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(invalid(format!("pair state needs distinct vertices, got ({a}, {b})")));
        }
        Ok(PairState { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Equal as unordered pairs, i.e. the same state up to sign.
    pub fn same_pair(&self, other: &PairState) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    pub fn max_index(&self) -> usize {
        self.a.max(self.b)
    }

    pub fn vector(&self, dim: usize) -> DVector<f64> {
        let mut v = DVector::zeros(dim);
        v[self.a] = 1.0;
        v[self.b] = -1.0;
        v
    }

    /// Every pair `(a, b)` with `a < b < n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<PairState> {
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| PairState { a, b }))
            .collect()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.max_index() >= dim {
            return Err(invalid(format!("pair {self} out of range for dimension {dim}")));
        }
        Ok(())
    }
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for PairState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| invalid(format!("expected \"a,b\", got {s:?}")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("not a vertex index: {x:?}")))
        };
        PairState::new(parse(a)?, parse(b)?)
    }
}

/// `1e-7 * ||e_a - e_b||`.
pub fn default_support_tolerance() -> f64 {
    1e-7 * std::f64::consts::SQRT_2
}

/// `E (e_a - e_b)`.
pub fn project(projector: &DMatrix<f64>, p: &PairState) -> DVector<f64> {
    projector.column(p.a) - projector.column(p.b)
}

/// `(e_a - e_b)^T E (e_c - e_d)`.
pub fn pair_weight(projector: &DMatrix<f64>, p1: &PairState, p2: &PairState) -> f64 {
    let (a, b, c, d) = (p1.a, p1.b, p2.a, p2.b);
    projector[(a, c)] - projector[(a, d)] - projector[(b, c)] + projector[(b, d)]
}

/// Indices of the distinct eigenvalues whose projector does not annihilate the pair.
pub fn support_indices(dec: &SpectralDecomposition, p: &PairState, tol: f64) -> Result<Vec<usize>> {
    p.check_dim(dec.dim())?;
    let support: Vec<usize> = (0..dec.len())
        .filter(|&j| project(dec.projector(j), p).norm() > tol)
        .collect();
    if support.is_empty() {
        return Err(Error::NumericFailure(format!(
            "empty eigenvalue support for pair {p} at tolerance {tol:e}"
        )));
    }
    Ok(support)
}

pub fn eigenvalue_support(dec: &SpectralDecomposition, p: &PairState, tol: f64) -> Result<Vec<f64>> {
    Ok(support_indices(dec, p, tol)?
        .into_iter()
        .map(|j| dec.eigenvalues()[j])
        .collect())
}

/// Sign pattern of a strongly cospectral pair of pair states, as indices into
/// the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl SignedPartition {
    pub fn support(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        all.sort_unstable();
        all
    }
}

/// Tests `E_j (e_a - e_b) = ±E_j (e_c - e_d)` for every distinct eigenvalue.
///
/// A sign is accepted when its residual is below `tol` and the opposite
/// residual is above `10 * tol`.
pub fn strongly_cospectral(
    dec: &SpectralDecomposition,
    p1: &PairState,
    p2: &PairState,
    tol: f64,
) -> Result<Option<SignedPartition>> {
    if p1.same_pair(p2) {
        return Err(invalid(format!("pair states {p1} and {p2} coincide")));
    }
    p1.check_dim(dec.dim())?;
    p2.check_dim(dec.dim())?;
    let u: Vec<_> = dec.projectors().iter().map(|e| project(e, p1)).collect();
    let v: Vec<_> = dec.projectors().iter().map(|e| project(e, p2)).collect();
    Ok(signed_partition(&u, &v, tol))
}

/// The sign comparison behind [`strongly_cospectral`], on precomputed
/// projections `E_j (e_a - e_b)` and `E_j (e_c - e_d)`.
pub fn signed_partition(u: &[DVector<f64>], v: &[DVector<f64>], tol: f64) -> Option<SignedPartition> {
    let mut partition = SignedPartition {
        plus: Vec::new(),
        minus: Vec::new(),
    };
    for (j, (u, v)) in u.iter().zip(v).enumerate() {
        if u.norm() <= tol && v.norm() <= tol {
            continue;
        }
        let same = (u - v).norm();
        let opposite = (u + v).norm();
        if same < tol && opposite > 10.0 * tol {
            partition.plus.push(j);
        } else if opposite < tol && same > 10.0 * tol {
            partition.minus.push(j);
        } else {
            return None;
        }
    }
    Some(partition)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportAnalysis {
    pub pair: PairState,
    pub support: Vec<f64>,
    pub partner: Option<PairState>,
    pub strongly_cospectral: Option<bool>,
    pub plus_set: Vec<f64>,
    pub minus_set: Vec<f64>,
}

pub fn analyze_support(
    dec: &SpectralDecomposition,
    pair: &PairState,
    partner: Option<&PairState>,
    tol: f64,
) -> Result<SupportAnalysis> {
    let support = eigenvalue_support(dec, pair, tol)?;
    let values = |idx: &[usize]| idx.iter().map(|&j| dec.eigenvalues()[j]).collect::<Vec<_>>();
    let (cospectral, plus_set, minus_set) = match partner {
        None => (None, Vec::new(), Vec::new()),
        Some(q) => match strongly_cospectral(dec, pair, q, tol)? {
            Some(part) => (Some(true), values(&part.plus), values(&part.minus)),
            None => (Some(false), Vec::new(), Vec::new()),
        },
    };
    Ok(SupportAnalysis {
        pair: *pair,
        support,
        partner: partner.copied(),
        strongly_cospectral: cospectral,
        plus_set,
        minus_set,
    })
}

/// `1/2 (e_a - e_b)^T U(t) (e_c - e_d)` and its modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub fidelity: f64,
}

impl Amplitude {
    pub fn new(value: Complex64) -> Self {
        Amplitude {
            value,
            fidelity: value.norm(),
        }
    }
}

impl Serialize for Amplitude {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Amplitude", 3)?;
        s.serialize_field("re", &self.value.re)?;
        s.serialize_field("im", &self.value.im)?;
        s.serialize_field("fidelity", &self.fidelity)?;
        s.end()
    }
}

pub fn pair_amplitude(dec: &SpectralDecomposition, p1: &PairState, p2: &PairState, t: f64) -> Result<Amplitude> {
    p1.check_dim(dec.dim())?;
    p2.check_dim(dec.dim())?;
    let value = dec
        .iter()
        .map(|(theta, e)| Complex64::from_polar(1.0, -theta * t) * pair_weight(e, p1, p2))
        .sum::<Complex64>()
        * 0.5;
    Ok(Amplitude::new(value))
}

/// The pair state that `U(t)(e_a - e_b)` overlaps most, other than the pair itself.
pub fn best_partner_at(dec: &SpectralDecomposition, p: &PairState, t: f64) -> Result<(PairState, Amplitude)> {
    p.check_dim(dec.dim())?;
    let n = dec.dim();
    if n < 3 {
        return Err(invalid("need at least three vertices for a distinct partner"));
    }
    let mut evolved = vec![Complex64::new(0.0, 0.0); n];
    for (theta, e) in dec.iter() {
        let phase = Complex64::from_polar(1.0, -theta * t);
        for (i, slot) in evolved.iter_mut().enumerate() {
            *slot += phase * (e[(i, p.a)] - e[(i, p.b)]);
        }
    }
    let mut best: Option<(PairState, Complex64)> = None;
    for c in 0..n {
        for d in c + 1..n {
            let candidate = PairState { a: c, b: d };
            if candidate.same_pair(p) {
                continue;
            }
            let value = (evolved[c] - evolved[d]) * 0.5;
            if best.is_none_or(|(_, v)| value.norm() > v.norm()) {
                best = Some((candidate, value));
            }
        }
    }
    let (partner, value) = best.expect("n >= 3 leaves a candidate");
    Ok((partner, Amplitude::new(value)))
}

/// Base-graph data for evaluating total-graph amplitudes between base vertices
/// without building the total graph.
#[derive(Debug, Clone)]
pub struct TotalWalk<'a> {
    base: &'a SpectralDecomposition,
    r: usize,
    /// Index of the eigenvalue `2r` when the base is bipartite.
    signed_index: Option<usize>,
    deltas: Vec<f64>,
}

impl<'a> TotalWalk<'a> {
    pub fn new(base: &'a SpectralDecomposition, bipartition: Option<&Bipartition>, r: usize) -> Result<Self> {
        let rf = r as f64;
        let signed_index = match bipartition {
            None => None,
            Some(_) => {
                let top = base.len() - 1;
                let value = base.eigenvalues()[top];
                if (value - 2.0 * rf).abs() > 1e-8 * (1.0 + 2.0 * rf) {
                    return Err(Error::InternalInconsistency(format!(
                        "bipartite {r}-regular base should have largest eigenvalue {}, found {value}",
                        2 * r
                    )));
                }
                Some(top)
            }
        };
        let mut deltas = Vec::with_capacity(base.len());
        for (j, &theta) in base.eigenvalues().iter().enumerate() {
            if Some(j) == signed_index {
                deltas.push(f64::NAN);
                continue;
            }
            let disc = (rf + 2.0).powi(2) - 4.0 * theta;
            if disc <= 1e-12 {
                return Err(Error::Unsupported(format!(
                    "vanishing delta for base eigenvalue {theta} with r = {r}"
                )));
            }
            deltas.push(disc.sqrt());
        }
        Ok(TotalWalk {
            base,
            r,
            signed_index,
            deltas,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn base(&self) -> &SpectralDecomposition {
        self.base
    }

    pub fn is_bipartite(&self) -> bool {
        self.signed_index.is_some()
    }

    /// `sqrt((r+2)^2 - 4 theta_j)` for each paired base eigenvalue.
    pub fn delta(&self, j: usize) -> Option<f64> {
        (Some(j) != self.signed_index).then(|| self.deltas[j])
    }

    fn factor(&self, j: usize, t: f64) -> Complex64 {
        let rf = self.r as f64;
        if Some(j) == self.signed_index {
            return Complex64::from_polar(1.0, -3.0 * rf * t);
        }
        let theta = self.base.eigenvalues()[j];
        let delta = self.deltas[j];
        let half = delta * t / 2.0;
        let envelope = Complex64::new(half.cos(), (2.0 - rf) / delta * half.sin());
        Complex64::from_polar(1.0, -t * (rf + 2.0 * theta + 2.0) / 2.0) * envelope
    }

    fn check_base(&self, v: usize) -> Result<()> {
        if v >= self.base.dim() {
            return Err(invalid(format!("{v} is not a base vertex")));
        }
        Ok(())
    }

    /// `U_{T(G)}(t)_{a,b}` for base vertices `a`, `b`.
    pub fn vertex_amplitude(&self, a: usize, b: usize, t: f64) -> Result<Complex64> {
        self.check_base(a)?;
        self.check_base(b)?;
        Ok((0..self.base.len())
            .map(|j| self.factor(j, t) * self.base.projector(j)[(a, b)])
            .sum())
    }

    pub fn pair_kernel(&self, p1: &PairState, p2: &PairState) -> Result<PairKernel<'a>> {
        self.check_base(p1.max_index())?;
        self.check_base(p2.max_index())?;
        let weights = (0..self.base.len())
            .map(|j| pair_weight(self.base.projector(j), p1, p2))
            .collect();
        Ok(PairKernel {
            walk: self.clone(),
            weights,
        })
    }

    pub fn pair_amplitude(&self, p1: &PairState, p2: &PairState, t: f64) -> Result<Amplitude> {
        Ok(self.pair_kernel(p1, p2)?.amplitude(t))
    }
}

/// Precomputed `(e_a - e_b)^T E_j (e_c - e_d)` so that each time costs
/// `O(#distinct eigenvalues)`.
#[derive(Debug, Clone)]
pub struct PairKernel<'a> {
    walk: TotalWalk<'a>,
    weights: Vec<f64>,
}

impl PairKernel<'_> {
    pub fn amplitude(&self, t: f64) -> Amplitude {
        let value = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(j, &w)| self.walk.factor(j, t) * w)
            .sum::<Complex64>()
            * 0.5;
        Amplitude::new(value)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub fn total_vertex_amplitude(
    base: &SpectralDecomposition,
    bipartition: Option<&Bipartition>,
    a: usize,
    b: usize,
    r: usize,
    t: f64,
) -> Result<Complex64> {
    TotalWalk::new(base, bipartition, r)?.vertex_amplitude(a, b, t)
}

pub fn total_pair_amplitude(
    base: &SpectralDecomposition,
    bipartition: Option<&Bipartition>,
    p1: &PairState,
    p2: &PairState,
    r: usize,
    t: f64,
) -> Result<Amplitude> {
    TotalWalk::new(base, bipartition, r)?.pair_amplitude(p1, p2, t)
}
