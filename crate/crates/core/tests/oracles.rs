mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use common::{jacobi_eigen, laplacian_by_definition, total_adjacency_by_definition, Oracle};
use pairwalk::graph::{cocktail_party, complete_graph, hypercube, petersen};
use pairwalk::pair::{default_support_tolerance, PairState};
use pairwalk::pst::{certifiable_spectrum, certify_pst};
use pairwalk::spectral::{direct_transition_matrix, laplacian_decomposition, transition_matrix};
use pairwalk::theorem::fixture;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn assert_spectrum(values: &[f64], multiplicities: &[usize], expected: &[(f64, usize)]) {
    assert_eq!(values.len(), expected.len(), "{values:?}");
    for ((v, m), (e, em)) in values.iter().zip(multiplicities).zip(expected) {
        assert!((v - e).abs() < 1e-9, "{v} vs {e}");
        assert_eq!(m, em);
    }
}

#[test]
fn jacobi_oracle_diagonalizes() {
    let l = laplacian_by_definition(&petersen());
    let (values, vectors) = jacobi_eigen(&l);
    let diag = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(values));
    assert!((&vectors * diag * vectors.transpose() - l).norm() < 1e-10);
}

#[test]
fn petersen_spectrum() {
    let oracle = Oracle::of_laplacian(&petersen());
    assert_spectrum(&oracle.values, &oracle.multiplicities, &[(0.0, 1), (2.0, 5), (5.0, 4)]);
    let dec = laplacian_decomposition(&petersen()).unwrap();
    assert_spectrum(dec.eigenvalues(), &dec.multiplicities(), &[(0.0, 1), (2.0, 5), (5.0, 4)]);
    for (e, f) in dec.projectors().iter().zip(&oracle.projectors) {
        assert!((e - f).norm() < 1e-9);
    }
}

#[test]
fn hypercube_spectrum_is_binomial() {
    for d in 2..=6 {
        let dec = laplacian_decomposition(&hypercube(d).unwrap()).unwrap();
        let expected: Vec<(f64, usize)> = (0..=d).map(|k| (2.0 * k as f64, binomial(d, k))).collect();
        assert_spectrum(dec.eigenvalues(), &dec.multiplicities(), &expected);
    }
}

#[test]
fn cocktail_party_spectrum() {
    for m in 2..=6 {
        let oracle = Oracle::of_laplacian(&cocktail_party(m).unwrap());
        let top = 2.0 * m as f64;
        assert_spectrum(&oracle.values, &oracle.multiplicities, &[(0.0, 1), (top - 2.0, m), (top, m - 1)]);
    }
}

#[test]
fn total_graph_matches_its_definition() {
    for name in ["K4", "K5", "petersen", "Q3", "K33", "C5", "cocktail6"] {
        let g = fixture(name).unwrap();
        let (total, labels) = g.total_graph();
        assert_eq!(labels.len(), total.vertex_count());
        assert_eq!(total.adjacency_matrix(), total_adjacency_by_definition(&g), "{name}");
        let r = g.regular_degree().unwrap();
        assert_eq!(total.regular_degree(), Some(2 * r), "{name}");
    }
}

#[test]
fn total_of_complete_graph_spectrum() {
    // Independent of the closed form: T(K_n) has eigenvalues 0, n + 1, 2n.
    for n in 4..=6 {
        let oracle = Oracle::new(&common::total_laplacian_by_definition(&complete_graph(n).unwrap()));
        let nf = n as f64;
        let values: Vec<f64> = oracle.values.clone();
        assert_eq!(values.len(), 3, "T(K{n}): {values:?}");
        for (v, e) in values.iter().zip([0.0, nf + 1.0, 2.0 * nf]) {
            assert!((v - e).abs() < 1e-9);
        }
        assert_eq!(oracle.multiplicities.iter().sum::<usize>(), n + n * (n - 1) / 2);
    }
}

#[test]
fn spectral_and_taylor_exponentials_agree_with_the_oracle() {
    let g = petersen();
    let dec = laplacian_decomposition(&g).unwrap();
    let oracle = Oracle::of_laplacian(&g);
    for t in [0.0, 0.4, FRAC_PI_2, 7.3, 41.0] {
        let reference = oracle.transition(t);
        assert!((transition_matrix(&dec, t) - &reference).norm() < 1e-10);
        assert!((direct_transition_matrix(&g.laplacian(), t) - &reference).norm() < 1e-8);
    }
}

#[test]
fn cocktail_certificate_against_the_oracle() {
    let g = cocktail_party(6).unwrap();
    let spec = certifiable_spectrum(&g).unwrap();
    let p1 = PairState::new(0, 1).unwrap();
    let p2 = PairState::new(6, 7).unwrap();
    let cert = certify_pst(&spec, &p1, &p2, default_support_tolerance()).unwrap();
    assert!(cert.is_yes());
    let oracle = Oracle::of_laplacian(&g);
    assert!((oracle.pair_fidelity(0, 1, 6, 7, FRAC_PI_2) - 1.0).abs() < 1e-10);
    let half = cert.half_time_fidelity.unwrap();
    assert!((half - oracle.pair_fidelity(0, 1, 6, 7, FRAC_PI_4)).abs() < 1e-10);
}

#[test]
fn hypercube_antipodal_pair_transfer() {
    // In Q3 the edge (0,1) is carried to the antipodal edge (7,6) at pi/2.
    let oracle = Oracle::of_laplacian(&hypercube(3).unwrap());
    assert!((oracle.pair_fidelity(0, 1, 7, 6, FRAC_PI_2) - 1.0).abs() < 1e-10);
    let spec = certifiable_spectrum(&hypercube(3).unwrap()).unwrap();
    let cert = certify_pst(
        &spec,
        &PairState::new(0, 1).unwrap(),
        &PairState::new(7, 6).unwrap(),
        default_support_tolerance(),
    )
    .unwrap();
    assert!(cert.is_yes());
}
