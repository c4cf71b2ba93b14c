//! Acceptance criteria 1-9, run in order by a single test so the PASS/FAIL
//! lines come out together. Run with `--nocapture` to see them.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use cutlift_core::cloud;
use cutlift_core::hamiltonian::{self, qmc_hamiltonian, xy_hamiltonian};
use cutlift_core::ptas::{self, ReductionBundle};
use cutlift_core::rankcut::{self, AscentOptions};
use cutlift_core::spectral;
use cutlift_core::spin;
use cutlift_core::{Graph, HalfInt, NamedGraph, UnitAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    criterion: usize,
    pass: bool,
    detail: String,
    /// Checks that replace a literal expectation shown to be wrong. Only
    /// meaningful when `pass` is false.
    corrected_pass: Option<bool>,
}

impl Outcome {
    fn new(criterion: usize, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            criterion,
            pass,
            detail: detail.into(),
            corrected_pass: None,
        }
    }
}

fn named(kind: NamedGraph, n: usize) -> Graph {
    Graph::named(kind, n).unwrap()
}

fn instances() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", named(NamedGraph::Complete, 2)),
        ("K3", named(NamedGraph::Complete, 3)),
        ("P3", named(NamedGraph::Path, 3)),
        ("C5", named(NamedGraph::Cycle, 5)),
    ]
}

/// Test-side energy: Σ w·½(1 − y_u·y_v), summed directly from the edge list.
fn cut_energy(g: &Graph, y: &UnitAssignment) -> f64 {
    g.edges()
        .iter()
        .map(|e| {
            let dot: f64 = y
                .vector(e.u)
                .iter()
                .zip(y.vector(e.v))
                .map(|(a, b)| a * b)
                .sum();
            e.w * 0.5 * (1.0 - dot)
        })
        .sum()
}

fn bundle_for(g: &Graph, eta: usize, seed: u64) -> ReductionBundle {
    // tiny instances cannot host a 4-regular expander on 2ηm vertices a side
    let d = 4.min(2 * eta * g.m());
    ptas::build_reduction(g, eta, d, 0.1, seed).unwrap()
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

/// Triangle gadget closed form against a planar grid search and the
/// quadratic bound.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let report = ptas::verify_triangle(100, 1e-6).unwrap();
    let library_pass = report.all_pass() && report.claims.len() == 200;
    // independent oracle: sweep the free vector over the circle containing
    // the two fixed ones
    let mut worst_grid: f64 = 0.0;
    let steps = 40_000;
    for s in 0..100 {
        let theta = PI * s as f64 / 100.0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..steps {
            let phi = 2.0 * PI * i as f64 / steps as f64;
            let value = 0.5 * (1.0 - theta.cos())
                + 0.5 * (1.0 - phi.cos())
                + 0.5 * (1.0 - (phi - theta).cos());
            best = best.max(value);
        }
        let closed = rankcut::triangle_max(theta).unwrap().value;
        worst_grid = worst_grid.max((best - closed).abs());
    }
    let elapsed = start.elapsed();
    let pass = library_pass && worst_grid <= 1e-6 && within(elapsed, 5);
    let worst = report.worst().unwrap();
    Outcome::new(
        1,
        pass,
        format!(
            "100 angles: search vs closed form and quadratic bound all within tolerance ({}); grid oracle max dev {worst_grid:.2e}; least slack {:.2e}; {elapsed:.2?}",
            library_pass, worst.slack
        ),
    )
}

/// Bipartite bound on certified 4-regular expanders.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut least = f64::INFINITY;
    for (i, half) in [6usize, 12, 24].into_iter().enumerate() {
        let (g, cert) = spectral::make_bipartite_expander(half, 4, 0.5, 100 + i as u64).unwrap();
        // a d-regular bipartite graph has Laplacian top eigenvalue 2d
        pass &= (cert.lambda_max - 8.0).abs() < 1e-9;
        for k in [2, 3] {
            let report =
                ptas::verify_bipartite_bound(&g, &cert, k, 100, 20, 7 + half as u64).unwrap();
            pass &= report.all_pass();
            for c in report.claims.iter().skip(1) {
                least = least.min(c.slack);
            }
            let tight = &report.claims[0];
            // all ±z cuts every edge: F = m = n·d/2
            pass &= (tight.lhs - (2 * half * 4 / 2) as f64).abs() < 1e-9;
        }
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 30);
    Outcome::new(
        2,
        pass,
        format!("half sizes 6, 12, 24 with d = 4, k = 2 and 3, 100 random + 20 ascended each; least slack {least:.2e}; {elapsed:.2?}"),
    )
}

/// Witness energy equals Cηm + ¾F_k(x).
fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (_, g) in instances() {
        for eta in [1, 2] {
            let bundle = bundle_for(&g, eta, 11);
            let c = &bundle.constants;
            let cert = &bundle.expander_cert;
            pass &=
                (c.lambda_max - cert.lambda_max).abs() < 1e-12 && (c.gap - cert.gap).abs() < 1e-12;
            pass &= (c.big_c - (4.5 + cert.lambda_max)).abs() < 1e-12;
            for k in 1..=3 {
                for trial in 0..10 {
                    let x = if trial == 0 {
                        rankcut::solve_rankk(&g, k, 8, trial, AscentOptions::default())
                            .unwrap()
                            .assignment
                    } else {
                        UnitAssignment::random(g.n(), k, &mut rng)
                    };
                    let y = ptas::witness_assignment(&bundle, &x).unwrap();
                    let predicted = c.big_c * eta as f64 * g.m() as f64 + 0.75 * cut_energy(&g, &x);
                    let dev = (cut_energy(&bundle.g_prime, &y) - predicted).abs();
                    worst = worst.max(dev);
                    pass &= dev <= 1e-9;
                }
            }
        }
    }
    Outcome::new(
        3,
        pass,
        format!("K2, K3, P3, C5 with η = 1, 2 and k = 1..3: max |F(witness) − (Cηm + ¾F(x))| = {worst:.2e}"),
    )
}

/// Pullback upper bound over sampled, ascended and adversarial assignments.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut least = f64::INFINITY;
    let mut samples = 0;
    for (_, g) in instances() {
        for eta in [1, 2] {
            let bundle = bundle_for(&g, eta, 11);
            for k in [1, 2] {
                let report = ptas::verify_reduction(&bundle, k, 200, 5).unwrap();
                pass &= report.all_pass();
                for c in report.claims.iter().filter(|c| {
                    c.id.starts_with("reduction-pullback") || c.id == "reduction-witness-slack"
                }) {
                    least = least.min(c.slack);
                    samples += c.samples;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 300);
    Outcome::new(
        4,
        pass,
        format!("{samples} assignments over K2, K3, P3, C5, η = 1, 2, k = 1, 2; zero violations = {pass}; least slack {least:.2e}; {elapsed:.2?}"),
    )
}

/// Product-state sandwich for cloud blowups.
fn criterion_5() -> Outcome {
    let start = Instant::now();
    let k2 = qmc_hamiltonian(&named(NamedGraph::Complete, 2));
    let p3 = qmc_hamiltonian(&named(NamedGraph::Path, 3));
    let (blown, _) = cloud::blow_up_hamiltonian(&k2, 2).unwrap();
    let opt = blown.to_dense().unwrap().max_eigenvalue();
    let literal = (opt - 2.25).abs() <= 1e-8;
    // H′ = T²/4 − S_A·S_B on K2; at S_A = S_B = T/2, S = 0 this is
    // T²/4 + T(T+2)/4, which is 3 for T = 2
    let corrected_opt = (opt - 3.0).abs() <= 1e-8;
    let mut sandwich = true;
    let mut lines = Vec::new();
    for (name, h, t) in [
        ("K2", &k2, 1),
        ("K2", &k2, 2),
        ("K2", &k2, 3),
        ("P3", &p3, 2),
    ] {
        let report = cloud::verify_sandwich(h, t, 16, 0).unwrap();
        sandwich &= report.all_pass();
        lines.push(format!(
            "{name} T={t}: {:.4} ≤ {:.4} ≤ {:.4}",
            report.claims[0].lhs, report.claims[0].rhs, report.claims[1].rhs
        ));
        if name == "K2" && t == 2 {
            sandwich &= (report.claims[0].lhs - 2.0).abs() < 1e-8
                && (report.claims[1].rhs - 8.0).abs() < 1e-8;
        }
    }
    let elapsed = start.elapsed();
    let mut outcome = Outcome::new(
        5,
        literal && sandwich && within(elapsed, 120),
        format!(
            "qmc(K2) T=2: OPT(H′) = {opt:.10} by dense diagonalization, expected 2.25 (not reproduced; T²/4 + T(T+2)/4 = 3); {}; {elapsed:.2?}",
            lines.join(", ")
        ),
    );
    outcome.corrected_pass = Some(corrected_opt && sandwich && within(elapsed, 120));
    outcome
}

/// Block decomposition and the sector maximum.
fn criterion_6() -> Outcome {
    let mut pass = true;
    for t in 1..=4 {
        pass &= spin::verify_block_decomposition(t).unwrap().all_pass();
    }
    let mut parts = Vec::new();
    // T²m/4 − min Σ S_i·S_j at full cloud spins: K2 T=2 → 3, K2 T=3 → 6,
    // P3 T=2 → 2 − S_1·(S_0 + S_2) at S_0 + S_2 = 2, S = 1 → 5
    for (name, g, t, expected) in [
        ("K2", named(NamedGraph::Complete, 2), 2, 3.0),
        ("K2", named(NamedGraph::Complete, 2), 3, 6.0),
        ("P3", named(NamedGraph::Path, 3), 2, 5.0),
    ] {
        let report = spin::verify_opt_max_j(&qmc_hamiltonian(&g), t).unwrap();
        let claim = &report.claims[0];
        let details = claim.details.as_ref().unwrap();
        pass &= report.all_pass();
        pass &= details["maximizer_is_top_spin"] == true;
        pass &= (claim.lhs - expected).abs() < 1e-8;
        parts.push(format!(
            "{name} T={t}: OPT(H′) = {:.8}, sector max {:.8} at {}",
            claim.lhs, claim.rhs, details["maximizer"]
        ));
    }
    Outcome::new(
        6,
        pass,
        format!("spectra match for T ≤ 4; {}", parts.join("; ")),
    )
}

/// Spin-J product bound over every spin vector up to dimension 4096.
fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    let k2 = qmc_hamiltonian(&named(NamedGraph::Complete, 2));
    // J̄ = (1/2, 1/2): OPT = 1 and the raised spins (3/2, 3/2) scale the
    // term by 9 with product optimum ½
    let single = spin::verify_lieb(&k2, &[HalfInt::HALF, HalfInt::HALF], 8, 0).unwrap();
    pass &= (single.claims[0].lhs - 1.0).abs() < 1e-9 && (single.claims[0].rhs - 4.5).abs() < 1e-9;
    for (name, g) in [
        ("K2", named(NamedGraph::Complete, 2)),
        ("K3", named(NamedGraph::Complete, 3)),
        ("P3", named(NamedGraph::Path, 3)),
    ] {
        let report = spin::verify_lieb_sweep(&qmc_hamiltonian(&g), 4096, 8, 0).unwrap();
        let claim = &report.claims[0];
        let details = claim.details.as_ref().unwrap();
        pass &= report.all_pass();
        parts.push(format!(
            "{name}: {} vectors ({} evaluated), least slack {:.3}",
            details["spin_vectors"], details["evaluated"], claim.slack
        ));
    }
    Outcome::new(
        7,
        pass,
        format!("{}; {:.2?}", parts.join(", "), start.elapsed()),
    )
}

/// Product optima against rank-3 and rank-2 cuts, and exact Max-Cut values.
fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut worst_qmc: f64 = 0.0;
    let mut worst_xy: f64 = 0.0;
    for i in 0..50u64 {
        let n = 2 + (i as usize % 7);
        let g = named(
            NamedGraph::ErdosRenyi {
                p: 0.5,
                seed: 1000 + i,
            },
            n,
        );
        let qmc = hamiltonian::opt_prod(&qmc_hamiltonian(&g), 32, i)
            .unwrap()
            .value;
        let r3 = rankcut::solve_rankk(&g, 3, 32, i, AscentOptions::default())
            .unwrap()
            .value;
        let xy = hamiltonian::opt_prod(&xy_hamiltonian(&g), 32, i)
            .unwrap()
            .value;
        let r2 = rankcut::solve_rankk(&g, 2, 32, i, AscentOptions::default())
            .unwrap()
            .value;
        worst_qmc = worst_qmc.max((2.0 * qmc - r3).abs());
        worst_xy = worst_xy.max((2.0 * xy - r2).abs());
    }
    pass &= worst_qmc <= 1e-6 && worst_xy <= 1e-6;
    let mut exact = Vec::new();
    for (name, g, expected) in [
        ("K3", named(NamedGraph::Complete, 3), 2.0),
        ("C5", named(NamedGraph::Cycle, 5), 4.0),
        ("K2", named(NamedGraph::Complete, 2), 1.0),
    ] {
        let (value, x) = rankcut::solve_exact_rank1(&g).unwrap();
        pass &= value == expected && cut_energy(&g, &x) == expected;
        exact.push(format!("{name} → {value}"));
    }
    Outcome::new(
        8,
        pass,
        format!(
            "50 random graphs n ≤ 8: max |2·OPTprod(qmc) − MC3| = {worst_qmc:.2e}, max |2·OPTprod(xy) − MC2| = {worst_xy:.2e}; exact Max-Cut {}",
            exact.join(", ")
        ),
    )
}

/// Planned (η, α) for β = 0.9 pull α-approximate assignments back to
/// β-approximate cuts.
fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g) in [
        ("K3", named(NamedGraph::Complete, 3)),
        ("C5", named(NamedGraph::Cycle, 5)),
    ] {
        let (bundle, plan) = ptas::plan_and_build(&g, 0.9, 8, 2.0, 9).unwrap();
        let report = ptas::verify_end_to_end(&bundle, &plan, 20, 9).unwrap();
        pass &= report.all_pass();
        let claim = report.claims.last().unwrap();
        let details = claim.details.as_ref().unwrap();
        // brute force Max-Cut of the source, independently of the library
        let n = g.n();
        let brute = (0u32..1 << n)
            .map(|bits| {
                g.edges()
                    .iter()
                    .filter(|e| (bits >> e.u & 1) != (bits >> e.v & 1))
                    .count()
            })
            .max()
            .unwrap() as f64;
        pass &= details["max_cut"].as_f64() == Some(brute);
        parts.push(format!(
            "{name}: η = {}, α = {:.9}, {} qualifying of {}, worst ratio {:.4}",
            bundle.eta, plan.alpha, details["qualifying"], details["candidates"], claim.lhs
        ));
    }
    Outcome::new(
        9,
        pass,
        format!("{}; {:.2?}", parts.join("; "), start.elapsed()),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut outcomes = Vec::new();
    for run in criteria {
        let o = run();
        println!(
            "criterion {}: {} {}",
            o.criterion,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        outcomes.push(o);
    }
    let mut broken = Vec::new();
    for o in &outcomes {
        match (o.pass, o.corrected_pass) {
            (true, _) => {}
            (false, Some(true)) => println!(
                "criterion {}: literal expectation not met; corrected checks PASS",
                o.criterion
            ),
            _ => broken.push(o.criterion),
        }
    }
    assert!(broken.is_empty(), "criteria failed: {broken:?}");
}

/// The stated value for the K2 cloud at T = 2. Dense diagonalization gives 3,
/// so this stays red; run with `--ignored` to see it.
#[test]
#[ignore = "stated value 2.25 disagrees with the exact optimum 3"]
fn k2_cloud_matches_stated_value() {
    let k2 = qmc_hamiltonian(&named(NamedGraph::Complete, 2));
    let (cloud, _) = cloud::blow_up_hamiltonian(&k2, 2).unwrap();
    let opt = cloud.opt().unwrap();
    assert!((opt - 2.25).abs() <= 1e-9, "OPT(H′) = {opt}");
}
