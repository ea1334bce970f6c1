mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use common::{total_laplacian_by_definition, Oracle};
use pairwalk::exact::{is_square_free, square_free_decompose};
use pairwalk::graph::{circulant, Graph};
use pairwalk::pair::{pair_amplitude, strongly_cospectral, PairState, TotalWalk};
use pairwalk::pgst::{candidate_time, kronecker_quality};
use pairwalk::spectral::{laplacian_decomposition, total_closed_form_terms, transition_matrix, TermKind};

/// Connected circulant graphs on 5..=12 vertices with a symmetric connection set.
fn circulants() -> impl Strategy<Value = Graph> {
    (5usize..=12, prop::collection::vec(any::<bool>(), 6)).prop_filter_map("disconnected or empty", |(n, picks)| {
        let set: Vec<i64> = (1..=n / 2)
            .filter(|&s| picks[s - 1])
            .flat_map(|s| [s as i64, -(s as i64)])
            .collect();
        if set.is_empty() {
            return None;
        }
        circulant(n, &set).ok()
    })
}

fn pair_in(n: usize) -> impl Strategy<Value = PairState> {
    (0..n, 1..n).prop_map(move |(a, k)| PairState::new(a, (a + k) % n).unwrap())
}

fn fidelity(u: &DMatrix<Complex64>, p: &PairState, q: &PairState) -> f64 {
    ((u[(p.a(), q.a())] - u[(p.a(), q.b())] - u[(p.b(), q.a())] + u[(p.b(), q.b())]) * 0.5).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projectors_resolve_and_are_orthogonal(g in circulants()) {
        for l in [g.laplacian(), g.total_graph().0.laplacian()] {
            let n = l.nrows();
            let dec = pairwalk::spectral::eigendecompose_symmetric(&l, pairwalk::spectral::default_tolerance(&l)).unwrap();
            let mut sum = DMatrix::zeros(n, n);
            let mut weighted = DMatrix::zeros(n, n);
            for (i, (theta, e)) in dec.iter().enumerate() {
                prop_assert!((e * e - e).norm() < 1e-9);
                for f in &dec.projectors()[i + 1..] {
                    prop_assert!((e * f).norm() < 1e-9);
                }
                sum += e;
                weighted += e * theta;
            }
            prop_assert!((sum - DMatrix::identity(n, n)).norm() < 1e-9);
            prop_assert!((weighted - &l).norm() < 1e-9 * (1.0 + l.norm()));
        }
    }

    #[test]
    fn transition_is_unitary(g in circulants(), t in -30.0f64..30.0) {
        let dec = laplacian_decomposition(&g).unwrap();
        let u = transition_matrix(&dec, t);
        let n = dec.dim();
        prop_assert!((&u * u.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm() < 1e-9);
    }

    #[test]
    fn fidelity_is_bounded_and_symmetric(g in circulants(), t in 0.0f64..50.0, seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut rng = common::Lcg(seed);
        let p = PairState::new(0, 1 + rng.below(n - 1)).unwrap();
        let c = rng.below(n);
        let q = PairState::new(c, (c + 1 + rng.below(n - 1)) % n).unwrap();
        let dec = laplacian_decomposition(&g).unwrap();
        let forward = pair_amplitude(&dec, &p, &q, t).unwrap().fidelity;
        let backward = pair_amplitude(&dec, &q, &p, t).unwrap().fidelity;
        prop_assert!(forward <= 1.0 + 1e-10);
        prop_assert!((forward - backward).abs() < 1e-10);
        prop_assert!((forward - fidelity(&transition_matrix(&dec, t), &p, &q)).abs() < 1e-10);
    }

    #[test]
    fn cospectrality_is_symmetric(g in circulants(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut rng = common::Lcg(seed);
        let p = PairState::new(0, 1 + rng.below(n - 1)).unwrap();
        let c = 1 + rng.below(n - 1);
        let q = PairState::new(c, (c + 1 + rng.below(n - 2)) % n).unwrap();
        prop_assume!(!p.same_pair(&q));
        let dec = laplacian_decomposition(&g).unwrap();
        let tol = pairwalk::pair::default_support_tolerance();
        let pq = strongly_cospectral(&dec, &p, &q, tol).unwrap();
        let qp = strongly_cospectral(&dec, &q, &p, tol).unwrap();
        prop_assert_eq!(pq.is_some(), qp.is_some());
        if let (Some(a), Some(b)) = (pq, qp) {
            prop_assert_eq!(a.plus, b.plus);
            prop_assert_eq!(a.minus, b.minus);
        }
    }

    #[test]
    fn plus_and_minus_terms_satisfy_their_identities(g in circulants()) {
        let base = laplacian_decomposition(&g).unwrap();
        let r = g.regular_degree().unwrap() as f64;
        let terms = total_closed_form_terms(&g, &base).unwrap();
        for (j, &theta) in base.eigenvalues().iter().enumerate() {
            let value = |kind| terms.iter().find(|t| t.kind == kind).map(|t| t.value);
            if let (Some(p), Some(m)) = (value(TermKind::Plus { base_index: j }), value(TermKind::Minus { base_index: j })) {
                prop_assert!((p + m - (r + 2.0 + 2.0 * theta)).abs() < 1e-9);
                prop_assert!((p * m - theta * (theta + r + 3.0)).abs() < 1e-8 * (1.0 + p * m));
            }
        }
    }

    #[test]
    fn closed_form_vertex_amplitudes_match_the_total_graph(g in circulants(), t in 0.0f64..25.0) {
        let base = laplacian_decomposition(&g).unwrap();
        let bip = g.is_bipartite();
        let walk = TotalWalk::new(&base, bip.as_ref(), g.regular_degree().unwrap());
        prop_assume!(walk.is_ok());
        let walk = walk.unwrap();
        let u = Oracle::new(&total_laplacian_by_definition(&g)).transition(t);
        for a in 0..g.vertex_count() {
            for b in 0..g.vertex_count() {
                prop_assert!((walk.vertex_amplitude(a, b, t).unwrap() - u[(a, b)]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn closed_form_pair_amplitudes_match_the_total_graph(g in circulants(), t in 0.0f64..25.0, p in pair_in(5), q in pair_in(5)) {
        prop_assume!(!p.same_pair(&q));
        let base = laplacian_decomposition(&g).unwrap();
        let bip = g.is_bipartite();
        let walk = TotalWalk::new(&base, bip.as_ref(), g.regular_degree().unwrap());
        prop_assume!(walk.is_ok());
        let closed = walk.unwrap().pair_amplitude(&p, &q, t).unwrap();
        let (total, _) = g.total_graph();
        let full = pair_amplitude(&laplacian_decomposition(&total).unwrap(), &p, &q, t).unwrap();
        prop_assert!((closed.value - full.value).norm() < 1e-8);
    }

    #[test]
    fn kronecker_quality_is_a_distance(ell in 0u64..1_000_000, deltas in prop::collection::vec(0.1f64..20.0, 1..6)) {
        let q = kronecker_quality(ell, &deltas);
        prop_assert!((0.0..=std::f64::consts::PI + 1e-12).contains(&q));
        let spacing = candidate_time(ell + 1) - candidate_time(ell);
        prop_assert!((spacing - 4.0 * std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn integer_deltas_align_perfectly(ell in 0u64..100_000, ks in prop::collection::vec(1i64..10, 1..5)) {
        // Delta = 8k gives Delta t / 2 = 2 pi (8kl + k).
        let deltas: Vec<f64> = ks.iter().map(|k| 8.0 * *k as f64).collect();
        prop_assert!(kronecker_quality(ell, &deltas) < 1e-6);
    }

    #[test]
    fn square_free_parts_recombine(k in 1i64..2_000_000) {
        let (x, d) = square_free_decompose(k).unwrap();
        prop_assert_eq!(x * x * d, k);
        prop_assert!(is_square_free(d));
    }
}
