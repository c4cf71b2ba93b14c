//! Laplacian spectra, spectral certificates and random bipartite expanders.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, LanczosOptions};

/// Largest vertex count handled by the dense eigensolver.
pub const DENSE_SPECTRUM_CAP: usize = 4096;

/// Tolerance for deciding whether two eigenvalues coincide.
pub const SPECTRAL_TOL: f64 = 1e-8;

/// Resamples allowed for a single matching before the attempt is abandoned.
const MATCHING_RESAMPLES: usize = 200_000;

/// Full attempts (fresh matchings) before certification gives up.
pub const EXPANDER_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub lambda_max: f64,
    /// Second-largest Laplacian eigenvalue (an upper estimate when iterative).
    pub second_largest: f64,
    pub gap: f64,
    pub connected: bool,
    /// The two colour classes, when the graph is bipartite.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    /// `"dense"` or `"lanczos"`.
    pub method: String,
}

pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(g.n(), g.n());
    for e in g.edges() {
        l[(e.u, e.u)] += e.w;
        l[(e.v, e.v)] += e.w;
        l[(e.u, e.v)] -= e.w;
        l[(e.v, e.u)] -= e.w;
    }
    l
}

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for e in g.edges() {
        a[(e.u, e.v)] += e.w;
        a[(e.v, e.u)] += e.w;
    }
    a
}

fn check_dense_size(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if g.n() > DENSE_SPECTRUM_CAP {
        return Err(Error::TooLarge {
            what: "dense spectrum",
            size: g.n(),
            cap: DENSE_SPECTRUM_CAP,
        });
    }
    Ok(())
}

/// All Laplacian eigenvalues in ascending order.
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    check_dense_size(g)?;
    Ok(linalg::symmetric_eigenvalues(laplacian_matrix(g)))
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Vec<f64>> {
    check_dense_size(g)?;
    Ok(linalg::symmetric_eigenvalues(adjacency_matrix(g)))
}

/// Whether the adjacency spectrum is symmetric about zero.
///
/// Errors with [`Error::NotBipartite`] when the graph has an odd cycle.
pub fn check_bipartite_symmetry(g: &Graph) -> Result<bool> {
    if g.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let spec = adjacency_spectrum(g)?;
    let n = spec.len();
    Ok((0..n).all(|i| (spec[i] + spec[n - 1 - i]).abs() <= SPECTRAL_TOL))
}

fn laplacian_matvec(g: &Graph) -> impl Fn(&[f64], &mut [f64]) + '_ {
    let deg = g.weighted_degrees();
    move |x: &[f64], y: &mut [f64]| {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = deg[i] * x[i];
        }
        for e in g.edges() {
            y[e.u] -= e.w * x[e.v];
            y[e.v] -= e.w * x[e.u];
        }
    }
}

/// Certifies the top of the Laplacian spectrum.
///
/// Dense for up to [`DENSE_SPECTRUM_CAP`] vertices. Above that the largest
/// eigenpair comes from Lanczos, and the second from Lanczos deflated
/// against it. The reported gap is then `θ₁ − (θ₂ + r₂)`, where `r₂` is the
/// explicit residual of the second Ritz pair.
pub fn certify(g: &Graph) -> Result<SpectralCertificate> {
    if g.m() == 0 {
        return Err(Error::InvalidGraph("graph has no edges".into()));
    }
    let connected = g.is_connected();
    let bipartition = g.bipartition().map(|colour| {
        let a = (0..g.n()).filter(|&i| !colour[i]).collect();
        let b = (0..g.n()).filter(|&i| colour[i]).collect();
        (a, b)
    });
    if g.n() <= DENSE_SPECTRUM_CAP {
        let spec = laplacian_spectrum(g)?;
        let n = spec.len();
        let lambda_max = spec[n - 1];
        let second = if n >= 2 { spec[n - 2] } else { 0.0 };
        return Ok(SpectralCertificate {
            lambda_max,
            second_largest: second,
            gap: (lambda_max - second).max(0.0),
            connected,
            bipartition,
            method: "dense".into(),
        });
    }
    let matvec = laplacian_matvec(g);
    let opts = LanczosOptions::default();
    let top = linalg::lanczos_max(g.n(), &matvec, &[], opts)?;
    let second = linalg::lanczos_max(
        g.n(),
        &matvec,
        std::slice::from_ref(&top.vector),
        LanczosOptions {
            seed: opts.seed ^ 0x9e37_79b9,
            ..opts
        },
    )?;
    let upper_second = second.value + second.residual;
    Ok(SpectralCertificate {
        lambda_max: top.value,
        second_largest: upper_second,
        gap: (top.value - upper_second).max(0.0),
        connected,
        bipartition,
        method: "lanczos".into(),
    })
}

/// Union of `d` uniformly random perfect matchings between `0..half` and
/// `half..2·half`, resampling any matching that repeats an edge.
fn random_regular_bipartite(half: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut used = vec![false; half * half];
    let mut pairs = Vec::with_capacity(half * d);
    let mut perm: Vec<usize> = (0..half).collect();
    for _ in 0..d {
        let mut found = false;
        for _ in 0..MATCHING_RESAMPLES {
            perm.shuffle(rng);
            if perm.iter().enumerate().all(|(i, &j)| !used[i * half + j]) {
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
        for (i, &j) in perm.iter().enumerate() {
            used[i * half + j] = true;
            pairs.push((i, half + j));
        }
    }
    pairs.sort_unstable();
    Some(Graph::unweighted(2 * half, &pairs).expect("matchings are simple"))
}

/// Random `d`-regular bipartite graph on `half + half` vertices whose
/// Laplacian gap is at least `gap_target`.
///
/// Vertices `0..half` form side A and `half..2·half` side B.
pub fn make_bipartite_expander(
    half_size: usize,
    d: usize,
    gap_target: f64,
    seed: u64,
) -> Result<(Graph, SpectralCertificate)> {
    if d < 2 {
        return Err(invalid("d", format!("degree {d} must be at least 2")));
    }
    if half_size < d {
        return Err(invalid(
            "half_size",
            format!("half size {half_size} is smaller than the degree {d}"),
        ));
    }
    if !(gap_target > 0.0 && gap_target.is_finite()) {
        return Err(invalid(
            "gap_target",
            format!("{gap_target} must be positive"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_gap = 0.0f64;
    for _ in 0..EXPANDER_ATTEMPTS {
        let Some(g) = random_regular_bipartite(half_size, d, &mut rng) else {
            continue;
        };
        if !g.is_connected() {
            continue;
        }
        let cert = certify(&g)?;
        best_gap = best_gap.max(cert.gap);
        if cert.connected && cert.gap >= gap_target {
            return Ok((g, cert));
        }
    }
    Err(Error::CertificationFailed {
        attempts: EXPANDER_ATTEMPTS,
        best_gap,
        target: gap_target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn assert_spectrum(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < 1e-9, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn small_laplacian_spectra() {
        let k2 = Graph::named(NamedGraph::Complete, 2).unwrap();
        assert_spectrum(&laplacian_spectrum(&k2).unwrap(), &[0.0, 2.0]);
        let k3 = Graph::named(NamedGraph::Complete, 3).unwrap();
        assert_spectrum(&laplacian_spectrum(&k3).unwrap(), &[0.0, 3.0, 3.0]);
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_spectrum(
            &laplacian_spectrum(&k33).unwrap(),
            &[0.0, 3.0, 3.0, 3.0, 3.0, 6.0],
        );
    }

    #[test]
    fn bipartite_symmetry() {
        assert!(check_bipartite_symmetry(&Graph::complete_bipartite(3, 3).unwrap()).unwrap());
        assert!(check_bipartite_symmetry(&Graph::named(NamedGraph::Cycle, 4).unwrap()).unwrap());
        assert!(matches!(
            check_bipartite_symmetry(&Graph::named(NamedGraph::Complete, 3).unwrap()),
            Err(Error::NotBipartite)
        ));
    }

    #[test]
    fn k33_is_the_only_cubic_bipartite_graph_on_six_vertices() {
        let (g, cert) = make_bipartite_expander(3, 3, 0.1, 1).unwrap();
        assert_eq!(g.m(), 9);
        assert_spectrum(
            &laplacian_spectrum(&g).unwrap(),
            &[0.0, 3.0, 3.0, 3.0, 3.0, 6.0],
        );
        assert!((cert.gap - 3.0).abs() < 1e-9);
        assert!(cert.connected);
    }

    #[test]
    fn expander_preconditions() {
        assert!(make_bipartite_expander(2, 4, 0.5, 0).is_err());
        assert!(make_bipartite_expander(4, 4, 0.0, 0).is_err());
        assert!(matches!(
            make_bipartite_expander(8, 3, 5.0, 0),
            Err(Error::CertificationFailed { .. })
        ));
    }

    #[test]
    fn expander_is_regular_and_reproducible() {
        let (g, cert) = make_bipartite_expander(12, 4, 0.5, 42).unwrap();
        assert_eq!(g.m(), 48);
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!((cert.lambda_max - 8.0).abs() < 1e-8);
        assert!(cert.gap >= 0.5);
        let (h, _) = make_bipartite_expander(12, 4, 0.5, 42).unwrap();
        assert_eq!(g, h);
        let (a, b) = cert.bipartition.unwrap();
        assert_eq!(a, (0..12).collect::<Vec<_>>());
        assert_eq!(b, (12..24).collect::<Vec<_>>());
    }

    #[test]
    fn lanczos_certificate_agrees_with_dense() {
        let (g, dense) = make_bipartite_expander(40, 4, 0.2, 3).unwrap();
        let matvec = laplacian_matvec(&g);
        let top = linalg::lanczos_max(g.n(), &matvec, &[], LanczosOptions::default()).unwrap();
        assert!((top.value - dense.lambda_max).abs() < 1e-8);
        let second = linalg::lanczos_max(
            g.n(),
            &matvec,
            std::slice::from_ref(&top.vector),
            LanczosOptions::default(),
        )
        .unwrap();
        assert!((second.value - dense.second_largest).abs() < 1e-7);
    }
}
