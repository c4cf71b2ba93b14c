use std::f64::consts::PI;

use cutlift_core::cloud;
use cutlift_core::hamiltonian::{self, qmc_hamiltonian};
use cutlift_core::ptas;
use cutlift_core::rankcut::{self, AscentOptions};
use cutlift_core::spectral;
use cutlift_core::spin;
use cutlift_core::{
    BlochProduct, Edge, Graph, HalfInt, LocalHamiltonian, NamedGraph, PauliTerm, UnitAssignment,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn er(n: usize, seed: u64) -> Graph {
    Graph::named(NamedGraph::ErdosRenyi { p: 0.5, seed }, n).unwrap()
}

/// Random orthogonal matrix, row-major, from Gram-Schmidt on Gaussian rows.
fn random_orthogonal(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < k {
        let mut v: Vec<f64> = (0..k).map(|_| StandardNormal.sample(rng)).collect();
        for r in &rows {
            let d: f64 = v.iter().zip(r).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(r).for_each(|(a, b)| *a -= d * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-6 {
            rows.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    rows.concat()
}

/// Random SU(2) element from a unit quaternion.
fn random_su2(rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    use rand_distr::{Distribution, StandardNormal};
    let q: Vec<f64> = (0..4).map(|_| StandardNormal.sample(rng)).collect();
    let n = q.iter().map(|a| a * a).sum::<f64>().sqrt();
    let (a, b, c, d) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(a, b),
            Complex64::new(c, d),
            Complex64::new(-c, d),
            Complex64::new(a, -b),
        ],
    )
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_psd_hamiltonian(n: usize, seed: u64) -> LocalHamiltonian {
    // weighted QMC terms are PSD; their weights are drawn at random
    let g = er(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            w: 0.25 + rand::Rng::random::<f64>(&mut rng),
            ..*e
        })
        .collect();
    qmc_hamiltonian(&Graph::new(n, edges).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn self_loops_and_duplicates_are_rejected(n in 2usize..8, u in 0usize..8, v in 0usize..8) {
        let (u, v) = (u % n, v % n);
        let loop_edge = Graph::unweighted(n, &[(u, u)]);
        prop_assert!(loop_edge.is_err());
        if u != v {
            prop_assert!(Graph::unweighted(n, &[(u, v), (v, u)]).is_err());
        }
        prop_assert!(Graph::unweighted(n, &[(u, n)]).is_err());
    }

    #[test]
    fn laplacian_trace_identity(n in 2usize..12, seed in 0u64..1000) {
        let g = er(n, seed);
        let spectrum = spectral::laplacian_spectrum(&g).unwrap();
        let trace: f64 = spectrum.iter().sum();
        let degrees: usize = g.degrees().iter().sum();
        prop_assert!((trace - degrees as f64).abs() <= 1e-8);
        prop_assert!(spectrum.iter().all(|&l| l >= -1e-9));
    }

    #[test]
    fn expanders_are_certified_and_reproducible(half in 4usize..14, d in 2usize..5, seed in 0u64..500) {
        prop_assume!(d <= half);
        let Ok((g, cert)) = spectral::make_bipartite_expander(half, d, 0.05, seed) else {
            return Ok(());
        };
        prop_assert!((cert.lambda_max - 2.0 * d as f64).abs() <= 1e-8);
        prop_assert!(cert.gap >= 0.0);
        // the ±1 sign pattern is an eigenvector for 2d
        let l = spectral::laplacian_matrix(&g);
        let v: Vec<f64> = (0..2 * half).map(|i| if i < half { 1.0 } else { -1.0 }).collect();
        let rq = nalgebra_rayleigh(&l, &v);
        prop_assert!((rq - cert.lambda_max).abs() <= 1e-8);
        let (again, _) = spectral::make_bipartite_expander(half, d, 0.05, seed).unwrap();
        prop_assert_eq!(g, again);
    }

    #[test]
    fn energy_is_rotation_invariant(n in 2usize..9, k in 1usize..5, seed in 0u64..1000) {
        let g = er(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = UnitAssignment::random(n, k, &mut rng);
        let q = random_orthogonal(k, &mut rng);
        let before = rankcut::energy(&g, &x).unwrap();
        let after = rankcut::energy(&g, &x.transformed(&q)).unwrap();
        prop_assert!((before - after).abs() <= 1e-10);
    }

    #[test]
    fn ascent_never_decreases_energy(n in 2usize..10, k in 1usize..4, seed in 0u64..1000) {
        let g = er(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = UnitAssignment::random(n, k, &mut rng);
        let mut value = rankcut::energy(&g, &x).unwrap();
        for _ in 0..6 {
            let step = rankcut::ascend(&g, x, AscentOptions { tol: 0.0, max_sweeps: Some(1) }).unwrap();
            prop_assert!(step.value >= value - 1e-12);
            value = step.value;
            x = step.assignment;
        }
    }

    #[test]
    fn higher_rank_does_at_least_as_well(n in 2usize..8, k in 1usize..3, seed in 0u64..300) {
        let g = er(n, seed);
        let best = rankcut::solve_rankk(&g, k, 16, seed, AscentOptions::default()).unwrap();
        let low = best.value;
        // a rank-k assignment padded with a zero coordinate is feasible at
        // rank k+1 with the same energy, and ascent from it cannot lose
        let padded = UnitAssignment::new(
            k + 1,
            best.assignment.vectors().map(|v| v.iter().copied().chain([0.0]).collect()).collect(),
        )
        .unwrap();
        prop_assert!((rankcut::energy(&g, &padded).unwrap() - low).abs() <= 1e-12);
        let high = rankcut::ascend(&g, padded, AscentOptions::default()).unwrap().value;
        prop_assert!(high >= low - 1e-9);
        // a uniformly random assignment cuts half the weight on average
        prop_assert!(low >= g.total_weight() / 2.0 - 1e-9);
    }

    #[test]
    fn triangle_closed_form_and_bound(theta in 0.0f64..PI) {
        let t = rankcut::triangle_max(theta).unwrap();
        prop_assert!(t.value <= t.quadratic_bound + 1e-9);
        prop_assert!(t.value <= 2.25 + 1e-12);
        let search = rankcut::triangle_search(theta).unwrap();
        prop_assert!((search - t.value).abs() <= 1e-6);
    }
}

fn nalgebra_rayleigh(m: &DMatrix<f64>, v: &[f64]) -> f64 {
    let x = nalgebra::DVector::from_column_slice(v);
    (x.transpose() * m * &x)[(0, 0)] / x.norm_squared()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reduction_counts_and_witness_round_trip(
        which in 0usize..4,
        eta in 1usize..3,
        k in 1usize..4,
        seed in 0u64..200,
    ) {
        let g = match which {
            0 => Graph::named(NamedGraph::Complete, 2),
            1 => Graph::named(NamedGraph::Complete, 3),
            2 => Graph::named(NamedGraph::Path, 4),
            _ => Graph::named(NamedGraph::Cycle, 5),
        }
        .unwrap();
        let (n, m) = (g.n(), g.m());
        let d = 4.min(2 * eta * m);
        let b = ptas::build_reduction(&g, eta, d, 0.05, seed).unwrap();
        prop_assert_eq!(b.g_prime.n(), n + 6 * eta * m);
        prop_assert_eq!(b.triangle_count(), 2 * eta * m);
        prop_assert_eq!(b.g_prime.m(), m + 6 * eta * m + d * 2 * eta * m);
        prop_assert!(b.g_prime.is_unweighted());

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = UnitAssignment::random(n, k, &mut rng);
        let y = ptas::witness_assignment(&b, &x).unwrap();
        let predicted = b.gadget_value() + 0.75 * rankcut::energy(&g, &x).unwrap();
        prop_assert!((rankcut::energy(&b.g_prime, &y).unwrap() - predicted).abs() <= 1e-9);
        let back = ptas::pullback(&b, &y).unwrap();
        let diff = rankcut::energy(&g, &back).unwrap() - rankcut::energy(&g, &x).unwrap();
        prop_assert!(diff.abs() <= 1e-9);

        // every gadget triangle {i, a, c} contributes at most 9/4, in any
        // assignment
        let z = UnitAssignment::random(b.g_prime.n(), k + 1, &mut rng);
        let pair = |p: usize, q: usize| {
            let dot: f64 = z.vector(p).iter().zip(z.vector(q)).map(|(a, b)| a * b).sum();
            0.5 * (1.0 - dot)
        };
        for (i, gadgets) in b.vertex_maps.iter().enumerate() {
            for gadget in gadgets {
                let value = pair(i, gadget.a) + pair(gadget.a, gadget.c) + pair(i, gadget.c);
                prop_assert!(value <= 2.25 + 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn qmc_is_invariant_under_global_rotations(n in 2usize..6, seed in 0u64..1000) {
        let h = qmc_hamiltonian(&er(n, seed)).to_dense().unwrap().matrix;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_su2(&mut rng);
        let mut big = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for _ in 0..n {
            big = big.kronecker(&u);
        }
        let rotated = &big * &h * big.adjoint();
        prop_assert!(max_abs(&(rotated - &h)) <= 1e-10);
    }

    #[test]
    fn product_states_never_beat_the_optimum(n in 2usize..7, seed in 0u64..1000) {
        let h = random_psd_hamiltonian(n, seed);
        let prod = hamiltonian::opt_prod(&h, 8, seed).unwrap().value;
        prop_assert!(h.opt().unwrap() >= prod - 1e-9);
    }

    #[test]
    fn cut_states_give_half_the_cut(n in 2usize..9, seed in 0u64..1000) {
        let g = er(n, seed);
        let (cut, x) = rankcut::solve_exact_rank1(&g).unwrap();
        let state = BlochProduct::new(x.vectors().map(|v| [0.0, 0.0, v[0]]).collect()).unwrap();
        let h = qmc_hamiltonian(&g);
        let energy = h.product_energy(&state).unwrap();
        prop_assert!((energy - 0.5 * cut).abs() <= 1e-12);
        prop_assert!(hamiltonian::opt_prod(&h, 8, seed).unwrap().value >= 0.0);
        if n <= 6 {
            prop_assert!(h.opt().unwrap() >= energy - 1e-9);
        }
    }

    #[test]
    fn spin_representations_close(twice in 1u32..40) {
        let rep = spin::spin_matrices(HalfInt::from_twice(twice)).unwrap();
        prop_assert!(spin::commutator_residual(&rep) <= 1e-10);
        let d = twice as usize + 1;
        prop_assert!(rep.matrices[0] == DMatrix::identity(d, d));
        for r in 0..d {
            let expected = twice as f64 - 2.0 * r as f64;
            prop_assert!((rep.matrices[3][(r, r)].re - expected).abs() <= 1e-15);
        }
    }

    #[test]
    fn cloud_multiplicities(t in 1usize..17) {
        let total: u128 = spin::multiplicities(t)
            .unwrap()
            .iter()
            .map(|(j, g)| (j.twice() as u128 + 1) * g)
            .sum();
        prop_assert_eq!(total, 1u128 << t);
        if t <= 8 {
            // multiplicity of 2m in the total Z is the number of ways to
            // choose the up spins
            let z = spin::total_pauli(t, 3).unwrap().to_dense();
            for up in 0..=t {
                let value = 2.0 * up as f64 - t as f64;
                let count = (0..1usize << t).filter(|&r| (z[(r, r)].re - value).abs() < 1e-9).count();
                prop_assert_eq!(count as u128, spin::binomial(t as u64, up as i64));
            }
        }
    }

    #[test]
    fn raising_spins_never_lowers_the_scaled_product_value(
        n in 2usize..5,
        seed in 0u64..1000,
        raise in 0usize..5,
    ) {
        let h = random_psd_hamiltonian(n, seed);
        prop_assume!(!h.terms().is_empty());
        let low: Vec<HalfInt> = (0..n).map(|i| HalfInt::from_twice(1 + (seed as u32 + i as u32) % 3)).collect();
        let mut high = low.clone();
        high[raise % n] = high[raise % n].raised();
        let h_low = spin::build_tilde_hj(&h, &low).unwrap();
        let h_high = spin::build_tilde_hj(&h, &high).unwrap();
        let best_low = hamiltonian::opt_prod(&h_low, 8, seed).unwrap();
        // every PSD term has non-negative product energy, so a larger scale
        // can only add energy to the same state
        let same_state = h_high.product_energy(&best_low.state).unwrap();
        prop_assert!(same_state >= best_low.value - 1e-9);
        let best_high = hamiltonian::opt_prod(&h_high, 8, seed).unwrap().value;
        prop_assert!(best_high.max(same_state) >= best_low.value - 1e-9);
    }

    #[test]
    fn cloud_of_qmc_is_qmc_of_cloud(n in 2usize..6, t in 1usize..4, seed in 0u64..1000) {
        let g = er(n, seed);
        let (from_h, _) = cloud::blow_up_hamiltonian(&qmc_hamiltonian(&g), t).unwrap();
        let (blown_graph, _) = cloud::blow_up_graph(&g, t).unwrap();
        let from_g = qmc_hamiltonian(&blown_graph);
        let sorted = |h: &LocalHamiltonian| {
            let mut terms: Vec<PauliTerm> = h.terms().to_vec();
            terms.sort_by(|a, b| a.support.cmp(&b.support));
            terms
        };
        prop_assert_eq!(from_h.n(), from_g.n());
        prop_assert_eq!(sorted(&from_h), sorted(&from_g));
    }

    #[test]
    fn lifting_a_product_state_scales_its_energy(n in 2usize..6, t in 1usize..4, seed in 0u64..1000) {
        let h = random_psd_hamiltonian(n, seed);
        prop_assume!(!h.terms().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = BlochProduct::random(n, &mut rng);
        let lifted = cloud::product_lift_energy(&h, t, &x).unwrap();
        let base = h.product_energy(&x).unwrap();
        prop_assert!((lifted - (t * t) as f64 * base).abs() <= 1e-10 * lifted.abs().max(1.0));
    }
}

#[test]
fn normalized_cloud_optimum_decreases_with_cloud_size() {
    for g in [
        Graph::named(NamedGraph::Complete, 2).unwrap(),
        Graph::named(NamedGraph::Path, 3).unwrap(),
    ] {
        let h = qmc_hamiltonian(&g);
        let mut previous = f64::INFINITY;
        for t in 1..=3 {
            let (blown, _) = cloud::blow_up_hamiltonian(&h, t).unwrap();
            let normalized = blown.opt().unwrap() / (t * t) as f64;
            assert!(
                normalized <= previous + 1e-8,
                "T={t}: {normalized} after {previous}"
            );
            previous = normalized;
        }
        let prod = spin::best_product_value(&h, 16, 0).unwrap();
        assert!(previous >= prod - 1e-9);
    }
}
