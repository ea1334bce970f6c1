//! Test-side oracles that share no code with the library's spectral path:
//! a cyclic Jacobi eigensolver and a total graph built from its definition.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use pairwalk::graph::Graph;

/// Eigenvalues (ascending) and orthonormal eigenvectors by cyclic Jacobi rotations.
pub fn jacobi_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() < 1e-14 * (1.0 + a.norm()) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

/// Distinct eigenvalues (cluster means) and projectors from the Jacobi oracle.
pub struct Oracle {
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub projectors: Vec<DMatrix<f64>>,
}

impl Oracle {
    pub fn new(m: &DMatrix<f64>) -> Oracle {
        let (vals, vecs) = jacobi_eigen(m);
        let n = vals.len();
        let mut values = Vec::new();
        let mut multiplicities = Vec::new();
        let mut projectors = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            while j < n && vals[j] - vals[j - 1] < 1e-6 {
                j += 1;
            }
            let mut e = DMatrix::zeros(n, n);
            for k in i..j {
                let col = vecs.column(k);
                e += col * col.transpose();
            }
            values.push(vals[i..j].iter().sum::<f64>() / (j - i) as f64);
            multiplicities.push(j - i);
            projectors.push(e);
            i = j;
        }
        Oracle {
            values,
            multiplicities,
            projectors,
        }
    }

    pub fn of_laplacian(g: &Graph) -> Oracle {
        Oracle::new(&laplacian_by_definition(g))
    }

    pub fn index_of(&self, value: f64, tol: f64) -> Option<usize> {
        self.values.iter().position(|v| (v - value).abs() <= tol)
    }

    pub fn transition(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.projectors[0].nrows();
        let mut u = DMatrix::<Complex64>::zeros(n, n);
        for (theta, e) in self.values.iter().zip(&self.projectors) {
            let phase = Complex64::from_polar(1.0, -theta * t);
            u += e.map(|x| phase * x);
        }
        u
    }

    pub fn pair_fidelity(&self, a: usize, b: usize, c: usize, d: usize, t: f64) -> f64 {
        let u = self.transition(t);
        ((u[(a, c)] - u[(a, d)] - u[(b, c)] + u[(b, d)]) * 0.5).norm()
    }
}

pub fn laplacian_by_definition(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// Adjacency of `T(G)` straight from the definition: vertices then edges,
/// adjacent when adjacent or incident in `G`.
pub fn total_adjacency_by_definition(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let edges = g.edges();
    let size = n + edges.len();
    let mut a = DMatrix::zeros(size, size);
    for x in 0..size {
        for y in 0..size {
            if x == y {
                continue;
            }
            let adjacent = match (x < n, y < n) {
                (true, true) => edges.contains(&(x.min(y), x.max(y))),
                (true, false) => {
                    let (u, v) = edges[y - n];
                    x == u || x == v
                }
                (false, true) => {
                    let (u, v) = edges[x - n];
                    y == u || y == v
                }
                (false, false) => {
                    let (u1, v1) = edges[x - n];
                    let (u2, v2) = edges[y - n];
                    u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2
                }
            };
            if adjacent {
                a[(x, y)] = 1.0;
            }
        }
    }
    a
}

pub fn total_laplacian_by_definition(g: &Graph) -> DMatrix<f64> {
    let a = total_adjacency_by_definition(g);
    let degrees = DVector::from_iterator(a.nrows(), a.row_iter().map(|r| r.sum()));
    DMatrix::from_diagonal(&degrees) - a
}

/// Deterministic pseudo-random values in `[0, 1)` (64-bit LCG).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize
    }
}
