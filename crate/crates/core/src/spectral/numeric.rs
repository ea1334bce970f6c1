use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distinct eigenvalues of a real symmetric matrix in increasing order, each
/// paired with its orthogonal eigenprojector.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<DMatrix<f64>>,
    grouping_tolerance: f64,
}

/// Worst-case deviations from the algebraic identities a spectral
/// decomposition must satisfy. All entries are Frobenius norms except
/// `trace_integrality`, which is an absolute distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub resolution: f64,
    pub idempotence: f64,
    pub orthogonality: f64,
    pub symmetry: f64,
    pub trace_integrality: f64,
    /// `|| M - sum theta_j E_j ||`, only when the source matrix is supplied.
    pub reconstruction: Option<f64>,
}

impl InvariantReport {
    pub fn max_projector_error(&self) -> f64 {
        self.resolution
            .max(self.idempotence)
            .max(self.orthogonality)
            .max(self.symmetry)
    }
}

impl SpectralDecomposition {
    /// Assembles a decomposition from parts, sorting by eigenvalue.
    pub fn from_parts(
        eigenvalues: Vec<f64>,
        projectors: Vec<DMatrix<f64>>,
        grouping_tolerance: f64,
    ) -> Result<Self> {
        if eigenvalues.len() != projectors.len() || eigenvalues.is_empty() {
            return Err(Error::InvalidMatrix(format!(
                "{} eigenvalues but {} projectors",
                eigenvalues.len(),
                projectors.len()
            )));
        }
        let dim = projectors[0].nrows();
        if projectors.iter().any(|p| p.nrows() != dim || p.ncols() != dim) {
            return Err(Error::InvalidMatrix("projectors differ in shape".into()));
        }
        let mut pairs: Vec<_> = eigenvalues.into_iter().zip(projectors).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (eigenvalues, projectors) = pairs.into_iter().unzip();
        Ok(SpectralDecomposition {
            eigenvalues,
            projectors,
            grouping_tolerance,
        })
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[DMatrix<f64>] {
        &self.projectors
    }

    pub fn projector(&self, j: usize) -> &DMatrix<f64> {
        &self.projectors[j]
    }

    pub fn grouping_tolerance(&self) -> f64 {
        self.grouping_tolerance
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DMatrix<f64>)> {
        self.eigenvalues.iter().copied().zip(self.projectors.iter())
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.projectors
            .iter()
            .map(|p| p.trace().round().max(0.0) as usize)
            .collect()
    }

    /// Index of the distinct eigenvalue within `tol` of `value`.
    pub fn index_of(&self, value: f64, tol: f64) -> Option<usize> {
        self.eigenvalues.iter().position(|&x| (x - value).abs() <= tol)
    }

    /// `sum_j theta_j E_j`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.dim();
        self.iter()
            .fold(DMatrix::zeros(n, n), |acc, (theta, p)| acc + p * theta)
    }

    pub fn check_invariants(&self, source: Option<&DMatrix<f64>>) -> InvariantReport {
        let n = self.dim();
        let sum = self
            .projectors
            .iter()
            .fold(DMatrix::<f64>::zeros(n, n), |acc, p| acc + p);
        let resolution = (sum - DMatrix::<f64>::identity(n, n)).norm();

        let mut idempotence: f64 = 0.0;
        let mut orthogonality: f64 = 0.0;
        let mut symmetry: f64 = 0.0;
        let mut trace_integrality: f64 = 0.0;
        for (i, p) in self.projectors.iter().enumerate() {
            idempotence = idempotence.max((p * p - p).norm());
            symmetry = symmetry.max((p - p.transpose()).norm());
            let tr = p.trace();
            trace_integrality = trace_integrality.max((tr - tr.round()).abs());
            for q in &self.projectors[i + 1..] {
                orthogonality = orthogonality.max((p * q).norm());
            }
        }
        InvariantReport {
            resolution,
            idempotence,
            orthogonality,
            symmetry,
            trace_integrality,
            reconstruction: source.map(|m| (m - self.reconstruct()).norm()),
        }
    }
}

/// `1e-8 * max(1, ||M||_inf)`.
pub fn default_tolerance(m: &DMatrix<f64>) -> f64 {
    1e-8 * infinity_norm(m).max(1.0)
}

pub(crate) fn infinity_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a real symmetric matrix with eigenvalues closer than
/// `tol` merged into one distinct eigenvalue (the cluster mean).
pub fn eigendecompose_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<SpectralDecomposition> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::InvalidMatrix(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let asymmetry = (m - m.transpose()).amax();
    if asymmetry > tol {
        return Err(Error::InvalidMatrix(format!(
            "matrix is not symmetric (max |m_ij - m_ji| = {asymmetry:e})"
        )));
    }

    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 1000 * n.max(10))
        .ok_or_else(|| Error::NumericFailure("symmetric eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()] <= tol => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projectors = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean = cluster.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / cluster.len() as f64;
        let basis = eig.eigenvectors.select_columns(&cluster);
        eigenvalues.push(mean);
        projectors.push(&basis * basis.transpose());
    }
    SpectralDecomposition::from_parts(eigenvalues, projectors, tol)
}

/// `U(t) = sum_j exp(-i theta_j t) E_j`.
pub fn transition_matrix(dec: &SpectralDecomposition, t: f64) -> DMatrix<Complex64> {
    let n = dec.dim();
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    for (theta, p) in dec.iter() {
        let phase = Complex64::from_polar(1.0, -theta * t);
        u.zip_apply(p, |entry, x| *entry += phase * x);
    }
    u
}

/// `exp(-i t M)` by scaling and squaring a truncated Taylor series.
///
/// Independent of any eigendecomposition; used to cross-check spectral sums.
pub fn direct_transition_matrix(m: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let n = m.nrows();
    let generator: DMatrix<Complex64> = m.map(|x| Complex64::new(0.0, -t * x));
    let norm = infinity_norm(m) * t.abs();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = generator.unscale(2f64.powi(squarings as i32));

    let identity = DMatrix::<Complex64>::identity(n, n);
    let mut term = identity.clone();
    let mut sum = identity;
    for k in 1..=30 {
        term = (&term * &scaled).unscale(k as f64);
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Orthonormal basis (as columns) of the null space of an incidence matrix.
pub fn null_space_orthonormal(r: &DMatrix<f64>) -> DMatrix<f64> {
    let m = r.ncols();
    if m == 0 {
        return DMatrix::zeros(0, 0);
    }
    let gram = r.transpose() * r;
    let tol = 1e-9 * infinity_norm(&gram).max(1.0);
    let eig = SymmetricEigen::new(gram);
    let kernel: Vec<usize> = (0..m).filter(|&i| eig.eigenvalues[i].abs() <= tol).collect();
    eig.eigenvectors.select_columns(&kernel)
}
