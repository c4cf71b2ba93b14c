//! Reduction from rank-k Max-Cut on `G` to rank-(k+1) Max-Cut on `G′`.
//!
//! `G′` keeps every vertex and edge of `G`. For each vertex `i` of degree
//! `d_i` it adds `η·d_i` triangles `{i, a, c}`, and the `a` vertices are tied
//! together through a `d`-regular bipartite expander against an equally
//! large set of `b` vertices. In a good assignment the expander pins every
//! `a` vector to a common direction `z`, and each triangle then holds the
//! original vector at angle 2π/3 from `z`. Projecting away `z` recovers a
//! rank-k assignment for `G`.
//!
//! All constants are computed from the spectral certificate of the expander
//! that was actually generated:
//!
//! ```text
//! C  = 9/2 + λ_max       c₁ = Δ / 4π²       c₂ = 9 / 16π²
//! c′ = c₁c₂ / (c₁ + c₂)  c  = 1 / (2c′)
//! ```

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, VertexRole};
use crate::rankcut::{self, AscentOptions, UnitAssignment};
use crate::report::{Claim, Provenance, Relation, VerificationReport, WorstCase};
use crate::spectral::{self, SpectralCertificate};

/// Slack tolerance for every inequality checked in this module.
pub const REDUCTION_TOL: f64 = 1e-9;

/// Angular noise scales for the near-witness trials.
pub const ADVERSARIAL_SCALES: [f64; 3] = [0.01, 0.1, 0.5];

/// Norm below which the consensus direction is considered degenerate.
const DEGENERATE_NORM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionConstants {
    #[serde(rename = "C")]
    pub big_c: f64,
    pub c1: f64,
    pub c2: f64,
    pub c_prime: f64,
    pub c: f64,
    /// Certified values the constants were derived from.
    pub lambda_max: f64,
    pub gap: f64,
}

impl ReductionConstants {
    pub fn from_spectrum(lambda_max: f64, gap: f64) -> Result<Self> {
        if !(lambda_max > 0.0) {
            return Err(invalid(
                "lambda_max",
                format!("{lambda_max} must be positive"),
            ));
        }
        if !(gap > 0.0) {
            return Err(invalid("gap", format!("{gap} must be positive")));
        }
        let c1 = gap / (4.0 * PI * PI);
        let c2 = 9.0 / (16.0 * PI * PI);
        let c_prime = c1 * c2 / (c1 + c2);
        Ok(Self {
            big_c: 4.5 + lambda_max,
            c1,
            c2,
            c_prime,
            c: 1.0 / (2.0 * c_prime),
            lambda_max,
            gap,
        })
    }

    fn check_consistent(&self) -> Result<()> {
        let expected = Self::from_spectrum(self.lambda_max, self.gap)?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
        if close(self.big_c, expected.big_c)
            && close(self.c1, expected.c1)
            && close(self.c2, expected.c2)
            && close(self.c_prime, expected.c_prime)
            && close(self.c, expected.c)
        {
            Ok(())
        } else {
            Err(Error::Precondition(
                "stored constants disagree with the certified spectrum".into(),
            ))
        }
    }
}

/// The three gadget vertices attached to one original vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionBundle {
    pub source: Graph,
    pub g_prime: Graph,
    pub eta: usize,
    pub d: usize,
    pub seed: u64,
    /// `vertex_maps[i][α]` for `α < η·d_i`.
    pub vertex_maps: Vec<Vec<Gadget>>,
    pub expander_cert: SpectralCertificate,
    pub constants: ReductionConstants,
}

/// Builds `G′` from an unweighted graph without isolated vertices.
pub fn build_reduction(
    g: &Graph,
    eta: usize,
    d: usize,
    gap_target: f64,
    seed: u64,
) -> Result<ReductionBundle> {
    if eta < 1 {
        return Err(invalid("eta", "must be a positive integer"));
    }
    if !g.is_unweighted() {
        return Err(Error::Precondition(
            "the source graph must be unweighted".into(),
        ));
    }
    let n = g.n();
    let m = g.m();
    let degrees = g.degrees();
    if m == 0 || degrees.contains(&0) {
        return Err(Error::Precondition(
            "the source graph must have no isolated vertices".into(),
        ));
    }
    let half = 2 * eta * m;
    let (expander, cert) = spectral::make_bipartite_expander(half, d, gap_target, seed)?;
    let constants = ReductionConstants::from_spectrum(cert.lambda_max, cert.gap)?;

    let total = n + 6 * eta * m;
    let mut labels: Vec<VertexRole> = (0..n).map(|i| VertexRole::Original { i }).collect();
    let mut vertex_maps = Vec::with_capacity(n);
    let mut a_set = Vec::with_capacity(half);
    let mut b_set = Vec::with_capacity(half);
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let mut next = n;
    for (i, &deg) in degrees.iter().enumerate() {
        let mut gadgets = Vec::with_capacity(eta * deg);
        for alpha in 0..eta * deg {
            let gadget = Gadget {
                a: next,
                b: next + 1,
                c: next + 2,
            };
            next += 3;
            labels.push(VertexRole::A { i, alpha });
            labels.push(VertexRole::B { i, alpha });
            labels.push(VertexRole::C { i, alpha });
            for (u, v) in [(i, gadget.a), (gadget.a, gadget.c), (i, gadget.c)] {
                edges.push(Edge { u, v, w: 1.0 });
            }
            a_set.push(gadget.a);
            b_set.push(gadget.b);
            gadgets.push(gadget);
        }
        vertex_maps.push(gadgets);
    }
    debug_assert_eq!(next, total);
    for e in expander.edges() {
        let map = |v: usize| if v < half { a_set[v] } else { b_set[v - half] };
        edges.push(Edge {
            u: map(e.u),
            v: map(e.v),
            w: 1.0,
        });
    }
    let g_prime = Graph::new(total, edges)?.with_labels(labels)?;
    let bundle = ReductionBundle {
        source: g.clone(),
        g_prime,
        eta,
        d,
        seed,
        vertex_maps,
        expander_cert: cert,
        constants,
    };
    bundle.validate()?;
    Ok(bundle)
}

impl ReductionBundle {
    pub fn a_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertex_maps.iter().flatten().map(|g| g.a)
    }

    pub fn b_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertex_maps.iter().flatten().map(|g| g.b)
    }

    pub fn triangle_count(&self) -> usize {
        self.vertex_maps.iter().map(Vec::len).sum()
    }

    /// `C·η·m`, the part of the optimum contributed by the gadgets.
    pub fn gadget_value(&self) -> f64 {
        self.constants.big_c * (self.eta * self.source.m()) as f64
    }

    /// `c·m/η`, the additive loss in the pullback bound.
    pub fn pullback_loss(&self) -> f64 {
        self.constants.c * self.source.m() as f64 / self.eta as f64
    }

    /// Checks the structural counts and the constants.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.n();
        let m = self.source.m();
        let eta = self.eta;
        let check = |what: &str, actual: usize, expected: usize| {
            if actual == expected {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "{what}: expected {expected}, found {actual}"
                )))
            }
        };
        check("vertex count", self.g_prime.n(), n + 6 * eta * m)?;
        check("triangle count", self.triangle_count(), 2 * eta * m)?;
        check("|A|", self.a_vertices().count(), 2 * eta * m)?;
        check("|B|", self.b_vertices().count(), 2 * eta * m)?;
        check(
            "edge count",
            self.g_prime.m(),
            m + 6 * eta * m + self.d * 2 * eta * m,
        )?;
        check("vertex map length", self.vertex_maps.len(), n)?;
        let degrees = self.source.degrees();
        for (i, gadgets) in self.vertex_maps.iter().enumerate() {
            check("gadgets per vertex", gadgets.len(), eta * degrees[i])?;
        }
        if !self.g_prime.is_unweighted() {
            return Err(Error::Precondition("G′ must be unweighted".into()));
        }
        self.constants.check_consistent()?;
        if (self.constants.lambda_max - self.expander_cert.lambda_max).abs() > 1e-12
            || (self.constants.gap - self.expander_cert.gap).abs() > 1e-12
        {
            return Err(Error::Precondition(
                "constants were not derived from the stored certificate".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let bundle: ReductionBundle = serde_json::from_str(text).map_err(|e| Error::Format {
            field: crate::graph::json_field_hint(&e, "bundle"),
            reason: e.to_string(),
        })?;
        bundle.validate()?;
        Ok(bundle)
    }
}

/// The assignment on `G′` built from a rank-k assignment on `G`.
///
/// With `x′_i = (x_i, 0)` and `z = e_{k+1}`:
/// `y_i = cos(2π/3) z + sin(2π/3) x′_i`, `y_c = cos(4π/3) z + sin(4π/3) x′_i`,
/// `y_a = z`, `y_b = −z`.
pub fn witness_assignment(bundle: &ReductionBundle, x: &UnitAssignment) -> Result<UnitAssignment> {
    let n = bundle.source.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let k = x.k();
    let dim = k + 1;
    let mut data = vec![0.0; bundle.g_prime.n() * dim];
    let (c1, s1) = ((2.0 * PI / 3.0).cos(), (2.0 * PI / 3.0).sin());
    let (c2, s2) = ((4.0 * PI / 3.0).cos(), (4.0 * PI / 3.0).sin());
    let mut put = |v: usize, along_z: f64, scale: f64, xi: &[f64]| {
        let row = &mut data[v * dim..(v + 1) * dim];
        for (r, c) in row.iter_mut().zip(xi) {
            *r = scale * c;
        }
        row[k] = along_z;
    };
    let zero = vec![0.0; k];
    for i in 0..n {
        let xi = x.vector(i);
        put(i, c1, s1, xi);
        for g in &bundle.vertex_maps[i] {
            put(g.c, c2, s2, xi);
            put(g.a, 1.0, 0.0, &zero);
            put(g.b, -1.0, 0.0, &zero);
        }
    }
    Ok(UnitAssignment::from_raw(dim, data))
}

/// Orthonormal basis of the complement of unit vector `z`, obtained by
/// Gram-Schmidt on the canonical basis in order.
pub fn complement_basis(z: &[f64]) -> Vec<Vec<f64>> {
    let dim = z.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    for axis in 0..dim {
        if basis.len() == dim - 1 {
            break;
        }
        let mut v = vec![0.0; dim];
        v[axis] = 1.0;
        for _ in 0..2 {
            let proj: f64 = v.iter().zip(z).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(z).for_each(|(a, b)| *a -= proj * b);
            for q in &basis {
                let proj: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(a, b)| *a -= proj * b);
            }
        }
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|c| *c /= norm);
            basis.push(v);
        }
    }
    basis
}

/// Consensus direction `z ∝ Σ_A y_a − Σ_B y_b`, or `e_{k+1}` when that sum
/// vanishes.
pub fn consensus_direction(bundle: &ReductionBundle, y: &UnitAssignment) -> Vec<f64> {
    let dim = y.k();
    let mut z = vec![0.0; dim];
    for a in bundle.a_vertices() {
        z.iter_mut().zip(y.vector(a)).for_each(|(s, c)| *s += c);
    }
    for b in bundle.b_vertices() {
        z.iter_mut().zip(y.vector(b)).for_each(|(s, c)| *s -= c);
    }
    let norm = z.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm < DEGENERATE_NORM {
        let mut e = vec![0.0; dim];
        e[dim - 1] = 1.0;
        e
    } else {
        z.into_iter().map(|c| c / norm).collect()
    }
}

/// The pullback map `g`: project original-vertex vectors onto the
/// complement of the consensus direction and renormalize.
///
/// A vector parallel to `z` maps to the first basis vector of the complement.
pub fn pullback(bundle: &ReductionBundle, y: &UnitAssignment) -> Result<UnitAssignment> {
    if y.len() != bundle.g_prime.n() {
        return Err(Error::DimensionMismatch {
            expected: bundle.g_prime.n(),
            found: y.len(),
        });
    }
    if y.k() < 2 {
        return Err(invalid("y", "pullback needs rank at least 2"));
    }
    let z = consensus_direction(bundle, y);
    let basis = complement_basis(&z);
    let k = y.k() - 1;
    let mut data = Vec::with_capacity(bundle.source.n() * k);
    for i in 0..bundle.source.n() {
        let yi = y.vector(i);
        let coords: Vec<f64> = basis
            .iter()
            .map(|q| q.iter().zip(yi).map(|(a, b)| a * b).sum())
            .collect();
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < DEGENERATE_NORM {
            data.push(1.0);
            data.extend(std::iter::repeat_n(0.0, k - 1));
        } else if k == 1 {
            data.push(coords[0].signum());
        } else {
            data.extend(coords.iter().map(|c| c / norm));
        }
    }
    Ok(UnitAssignment::from_raw(k, data))
}

/// Perturbs each vector by a random tangent rotation of angle `scale·|N(0,1)|`.
pub fn angular_noise<R: Rng + ?Sized>(
    y: &UnitAssignment,
    scale: f64,
    rng: &mut R,
) -> UnitAssignment {
    let dim = y.k();
    let mut data = Vec::with_capacity(y.len() * dim);
    for v in y.vectors() {
        let mut t: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let proj: f64 = t.iter().zip(v).map(|(a, b)| a * b).sum();
        t.iter_mut().zip(v).for_each(|(a, b)| *a -= proj * b);
        let tn = t.iter().map(|c| c * c).sum::<f64>().sqrt();
        let g: f64 = rng.sample(StandardNormal);
        let phi = scale * g.abs();
        if tn < 1e-12 {
            data.extend_from_slice(v);
            continue;
        }
        let (c, s) = (phi.cos(), phi.sin());
        let mut w: Vec<f64> = v.iter().zip(&t).map(|(a, b)| c * a + s * b / tn).collect();
        let wn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= wn);
        data.extend(w);
    }
    UnitAssignment::from_raw(dim, data)
}

fn assignment_json(y: &UnitAssignment) -> serde_json::Value {
    serde_json::to_value(y).expect("assignment serializes")
}

/// Best known `Max-Cut_k(G)`: exhaustive for `k = 1`, multi-start otherwise.
pub fn best_known_rankk(
    g: &Graph,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<(f64, UnitAssignment, Provenance)> {
    if k == 1 && g.n() <= rankcut::EXACT_RANK1_CAP {
        let (value, x) = rankcut::solve_exact_rank1(g)?;
        return Ok((value, x, Provenance::BruteForce));
    }
    let r = rankcut::solve_rankk(g, k, restarts, seed, AscentOptions::default())?;
    Ok((r.value, r.assignment, Provenance::AscentLowerBound))
}

/// Checks the witness and pullback bounds of the reduction on sampled assignments.
///
/// Part 1 builds the witness for the best known rank-k assignment and checks
/// `F(witness) = Cηm + ¾ F_k(x)`. Part 2 checks
/// `F_{k+1}(y) ≤ Cηm + cm/η + ¾ F_k(g(y))` for `trials` assignments of each
/// kind: uniform random, locally ascended, and noisy copies of the witness at
/// each of [`ADVERSARIAL_SCALES`] (half of these are ascended afterwards).
/// Sampling can only falsify part 2, never prove it.
pub fn verify_reduction(
    bundle: &ReductionBundle,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(invalid("trials", "verification needs at least one trial"));
    }
    if k == 0 {
        return Err(invalid("k", "rank must be at least 1"));
    }
    let mut report =
        VerificationReport::new(format!("verify ptas k={k} trials={trials}"), Some(seed));
    report.note(format!(
        "constants bound to this instance: lambda_max={}, gap={}, C={}, c={}",
        bundle.constants.lambda_max,
        bundle.constants.gap,
        bundle.constants.big_c,
        bundle.constants.c
    ));
    let g = &bundle.source;
    let gp = &bundle.g_prime;
    let base = bundle.gadget_value();
    let loss = bundle.pullback_loss();

    let (best, x_best, provenance) = best_known_rankk(g, k, 32, seed)?;
    let witness = witness_assignment(bundle, &x_best)?;
    let witness_energy = rankcut::energy(gp, &witness)?;
    let predicted = base + 0.75 * rankcut::energy(g, &x_best)?;
    report.push(Claim::new(
        "reduction-witness-equality",
        "reduction-witness",
        "energy of the witness on G′ equals Cηm + ¾ F_k(x)",
        witness_energy,
        Relation::Eq,
        predicted,
        REDUCTION_TOL,
        Provenance::Exact,
    ));
    report.push(Claim::new(
        "reduction-lower-bound",
        "reduction-witness",
        "Max-Cut_{k+1}(G′) ≥ Cηm + ¾·(best known Max-Cut_k(G))",
        witness_energy,
        Relation::Ge,
        base + 0.75 * best,
        REDUCTION_TOL,
        provenance,
    ));

    let bound = |y: &UnitAssignment| -> Result<(f64, f64)> {
        let lhs = rankcut::energy(gp, y)?;
        let x = pullback(bundle, y)?;
        Ok((lhs, base + loss + 0.75 * rankcut::energy(g, &x)?))
    };

    let (lhs, rhs) = bound(&witness)?;
    report.push(
        Claim::new(
            "reduction-witness-slack",
            "reduction-pullback-bound",
            "the witness leaves slack of at least cm/η in the pullback bound",
            rhs - lhs,
            Relation::Ge,
            loss,
            REDUCTION_TOL,
            Provenance::Exact,
        )
        .with_details(json!({ "energy": lhs, "bound": rhs })),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_ffee);
    let dim = k + 1;
    let ascent = AscentOptions {
        tol: 1e-10,
        max_sweeps: Some(200),
    };
    let mut check = |name: &str,
                     make: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<UnitAssignment>|
     -> Result<Claim> {
        let mut worst = WorstCase::default();
        for _ in 0..trials {
            let y = make(&mut rng)?;
            let (lhs, rhs) = bound(&y)?;
            worst.observe_le(lhs, rhs, REDUCTION_TOL, || assignment_json(&y));
        }
        Ok(worst.into_claim(
            format!("reduction-pullback-{name}"),
            "reduction-pullback-bound",
            format!("F_(k+1)(y) ≤ Cηm + cm/η + ¾ F_k(g(y)) over {name} assignments"),
            REDUCTION_TOL,
            Provenance::Exact,
        ))
    };

    report.push(check("random", &mut |rng| {
        Ok(UnitAssignment::random(gp.n(), dim, rng))
    })?);
    report.push(check("ascended", &mut |rng| {
        let y0 = UnitAssignment::random(gp.n(), dim, rng);
        Ok(rankcut::ascend(gp, y0, ascent)?.assignment)
    })?);
    for scale in ADVERSARIAL_SCALES {
        let mut flip = false;
        report.push(check(&format!("near-witness-{scale}"), &mut |rng| {
            let y = angular_noise(&witness, scale, rng);
            flip = !flip;
            if flip {
                Ok(y)
            } else {
                Ok(rankcut::ascend(gp, y, ascent)?.assignment)
            }
        })?);
    }
    Ok(report)
}

/// Both sides of the bipartite energy bound for one assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteBound {
    pub energy: f64,
    /// `λ_max·n/4 − (Δ/4π²) Σ_{i∈A} ε_i²`
    pub bound: f64,
    /// `Σ_{i∈A} ε_i²`
    pub penalty: f64,
}

/// Evaluates the bipartite bound, with `z = (Σ_A x − Σ_B x)/n` and `ε_i` the
/// angle between `z` and `x_i` for `i ∈ A`.
///
/// When `z = 0` every `ε_i` is taken to be π.
pub fn bipartite_bound(
    g: &Graph,
    cert: &SpectralCertificate,
    y: &UnitAssignment,
) -> Result<BipartiteBound> {
    let (a_side, b_side) = cert.bipartition.as_ref().ok_or(Error::NotBipartite)?;
    let energy = rankcut::energy(g, y)?;
    let dim = y.k();
    let n = g.n() as f64;
    let mut z = vec![0.0; dim];
    for &a in a_side {
        z.iter_mut().zip(y.vector(a)).for_each(|(s, c)| *s += c / n);
    }
    for &b in b_side {
        z.iter_mut().zip(y.vector(b)).for_each(|(s, c)| *s -= c / n);
    }
    let zn = z.iter().map(|c| c * c).sum::<f64>().sqrt();
    let penalty: f64 = a_side
        .iter()
        .map(|&a| {
            let eps = if zn == 0.0 {
                PI
            } else {
                let cos = y.vector(a).iter().zip(&z).map(|(p, q)| p * q).sum::<f64>() / zn;
                cos.clamp(-1.0, 1.0).acos()
            };
            eps * eps
        })
        .sum();
    let bound = cert.lambda_max * n / 4.0 - cert.gap / (4.0 * PI * PI) * penalty;
    Ok(BipartiteBound {
        energy,
        bound,
        penalty,
    })
}

/// Checks the bipartite bound on `random` uniform and `ascended` locally
/// optimal rank-`k` assignments, plus tightness of the all-`±z` assignment.
pub fn verify_bipartite_bound(
    g: &Graph,
    cert: &SpectralCertificate,
    k: usize,
    random: usize,
    ascended: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let (a_side, _) = cert.bipartition.as_ref().ok_or(Error::NotBipartite)?;
    if random + ascended == 0 {
        return Err(invalid("trials", "verification needs at least one trial"));
    }
    let mut report = VerificationReport::new(
        format!("verify bipartite k={k} random={random} ascended={ascended}"),
        Some(seed),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut on_a = vec![false; g.n()];
    for &a in a_side {
        on_a[a] = true;
    }
    let mut z0 = vec![0.0; k];
    z0[0] = 1.0;
    let aligned = UnitAssignment::from_raw(
        k,
        (0..g.n())
            .flat_map(|v| {
                let s = if on_a[v] { 1.0 } else { -1.0 };
                z0.iter().map(move |c| s * c)
            })
            .collect(),
    );
    let tight = bipartite_bound(g, cert, &aligned)?;
    report.push(
        Claim::new(
            "bipartite-bound-tight",
            "bipartite-bound",
            "the all-±z assignment attains λ_max·n/4",
            tight.energy,
            Relation::Eq,
            cert.lambda_max * g.n() as f64 / 4.0,
            REDUCTION_TOL,
            Provenance::Exact,
        )
        .with_details(json!({ "penalty": tight.penalty })),
    );

    let sample = |count: usize, ascend: bool, rng: &mut ChaCha8Rng| -> Result<WorstCase> {
        let mut worst = WorstCase::default();
        for _ in 0..count {
            let mut y = UnitAssignment::random(g.n(), k, rng);
            if ascend {
                y = rankcut::ascend(g, y, AscentOptions::default())?.assignment;
            }
            let b = bipartite_bound(g, cert, &y)?;
            worst.observe_le(b.energy, b.bound, REDUCTION_TOL, || assignment_json(&y));
        }
        Ok(worst)
    };
    if random > 0 {
        let worst = sample(random, false, &mut rng)?;
        report.push(worst.into_claim(
            "bipartite-bound-random",
            "bipartite-bound",
            "F ≤ λ_max·n/4 − (Δ/4π²) Σ ε² over uniform random assignments",
            REDUCTION_TOL,
            Provenance::Exact,
        ));
    }
    if ascended > 0 {
        let worst = sample(ascended, true, &mut rng)?;
        report.push(worst.into_claim(
            "bipartite-bound-ascended",
            "bipartite-bound",
            "F ≤ λ_max·n/4 − (Δ/4π²) Σ ε² over locally ascended assignments",
            REDUCTION_TOL,
            Provenance::Exact,
        ));
    }
    Ok(report)
}

/// Compares the triangle closed form with a numerical maximization on
/// `samples` evenly spaced angles in `[0, π)`, and checks the quadratic
/// upper bound.
pub fn verify_triangle(samples: usize, tol: f64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(invalid("samples", "need at least one sample"));
    }
    let mut report = VerificationReport::new(format!("verify triangle samples={samples}"), None);
    for s in 0..samples {
        let theta = PI * s as f64 / samples as f64;
        let closed = rankcut::triangle_max(theta)?;
        let numeric = rankcut::triangle_search(theta)?;
        report.push(
            Claim::new(
                format!("triangle-closed-form-{s}"),
                "triangle-gadget",
                format!("numerical triangle maximum at θ = {theta:.6} matches the closed form"),
                numeric,
                Relation::Eq,
                closed.value,
                tol,
                Provenance::Exact,
            )
            .with_details(json!({ "theta": theta })),
        );
        report.push(
            Claim::new(
                format!("triangle-quadratic-bound-{s}"),
                "triangle-gadget",
                format!("closed form is below the quadratic bound at θ = {theta:.6}"),
                closed.value,
                Relation::Le,
                closed.quadratic_bound,
                1e-9,
                Provenance::Exact,
            )
            .with_details(json!({ "theta": theta })),
        );
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannedParameters {
    pub beta: f64,
    /// Smallest integer `η ≥ 16c / (3(1 − β))`.
    pub eta: usize,
    /// `((1+β)/2 + 8Cη/3) / (1 + 8Cη/3)` at the planned `η`.
    pub alpha: f64,
    /// The same expression with the `η` factor dropped. Not sufficient for
    /// the guarantee once `η > 1`; kept for comparison.
    pub alpha_eta_free: f64,
}

/// `((1+β)/2 + 8Cη/3) / (1 + 8Cη/3)`.
pub fn alpha_for(beta: f64, big_c: f64, eta: usize) -> f64 {
    let weight = 8.0 * big_c * eta as f64 / 3.0;
    ((1.0 + beta) / 2.0 + weight) / (1.0 + weight)
}

/// Chooses `(η, α)` so that an `α`-approximate assignment of `G′` pulls back
/// to a `β`-approximate assignment of `G`.
pub fn plan_parameters(beta: f64, constants: &ReductionConstants) -> Result<PlannedParameters> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(invalid("beta", format!("{beta} is outside (0, 1)")));
    }
    let required = 16.0 * constants.c / (3.0 * (1.0 - beta));
    let eta = required.ceil().max(1.0) as usize;
    Ok(PlannedParameters {
        beta,
        eta,
        alpha: alpha_for(beta, constants.big_c, eta),
        alpha_eta_free: alpha_for(beta, constants.big_c, 1),
    })
}

/// Builds a bundle whose `η` satisfies the plan computed from its own
/// certificate. Since `c` depends on the expander, which depends on `η`, this
/// rebuilds until the instance is self-consistent.
pub fn plan_and_build(
    g: &Graph,
    beta: f64,
    d: usize,
    gap_target: f64,
    seed: u64,
) -> Result<(ReductionBundle, PlannedParameters)> {
    let m = g.m().max(1);
    // a certified gap of at least gap_target can only shrink the required η,
    // so planning against the target usually makes the first build final
    let optimistic = ReductionConstants::from_spectrum(2.0 * d as f64, gap_target)?;
    let mut eta = plan_parameters(beta, &optimistic)?
        .eta
        .max(d.div_ceil(2 * m))
        .max(1);
    for round in 0..8 {
        let bundle = build_reduction(g, eta, d, gap_target, seed.wrapping_add(round))?;
        let plan = plan_parameters(beta, &bundle.constants)?;
        if bundle.eta >= plan.eta {
            let plan = PlannedParameters {
                eta: bundle.eta,
                alpha: alpha_for(beta, bundle.constants.big_c, bundle.eta),
                ..plan
            };
            return Ok((bundle, plan));
        }
        eta = plan.eta;
    }
    Err(Error::Precondition(
        "planning did not reach a self-consistent η".into(),
    ))
}

/// Checks the approximation guarantee end to end for `k = 1`.
///
/// Candidates are witnesses of every sign pattern, noisy copies of the
/// optimal witness and ascended copies of those. Every candidate with
/// `F(y) ≥ α·W`, where `W` is the witness value of an exact optimum, must
/// pull back to a cut of value at least `β·Max-Cut(G)`.
pub fn verify_end_to_end(
    bundle: &ReductionBundle,
    plan: &PlannedParameters,
    noisy_per_scale: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let g = &bundle.source;
    let gp = &bundle.g_prime;
    let mut report = VerificationReport::new(
        format!(
            "verify ptas-end-to-end beta={} eta={}",
            plan.beta, bundle.eta
        ),
        Some(seed),
    );
    let required = 16.0 * bundle.constants.c / (3.0 * (1.0 - plan.beta));
    report.push(Claim::new(
        "plan-eta-sufficient",
        "ptas-parameters",
        "η ≥ 16c/(3(1−β)) for the certified constants",
        bundle.eta as f64,
        Relation::Ge,
        required,
        0.0,
        Provenance::Exact,
    ));
    let (opt, x_opt) = rankcut::solve_exact_rank1(g)?;
    let witness = witness_assignment(bundle, &x_opt)?;
    let w = rankcut::energy(gp, &witness)?;
    let threshold = plan.alpha * w;

    let mut candidates: Vec<UnitAssignment> = Vec::new();
    let n = g.n();
    if n <= 16 {
        for bits in 0u32..(1 << (n - 1)) {
            let signs: Vec<f64> = (0..n)
                .map(|i| {
                    if i > 0 && bits >> (i - 1) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect();
            candidates.push(witness_assignment(
                bundle,
                &UnitAssignment::from_signs(&signs)?,
            )?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ascent = AscentOptions {
        tol: 1e-9,
        max_sweeps: Some(50),
    };
    for scale in [1e-4, 1e-3, 1e-2, 1e-1] {
        for t in 0..noisy_per_scale {
            let y = angular_noise(&witness, scale, &mut rng);
            if t % 2 == 1 {
                candidates.push(rankcut::ascend(gp, y, ascent)?.assignment);
            } else {
                candidates.push(y);
            }
        }
    }

    let mut qualifying = 0;
    let mut worst_ratio = f64::INFINITY;
    let mut offender = None;
    for y in &candidates {
        let value = rankcut::energy(gp, y)?;
        if value < threshold {
            continue;
        }
        qualifying += 1;
        let x = pullback(bundle, y)?;
        let cut = rankcut::energy(g, &x)?;
        let ratio = cut / opt;
        if ratio < worst_ratio {
            worst_ratio = ratio;
            if ratio < plan.beta - REDUCTION_TOL {
                offender = Some(assignment_json(&x));
            }
        }
    }
    let mut claim = Claim::new(
        "ptas-threshold-implies-beta",
        "ptas-parameters",
        "every y with F(y) ≥ α·W pulls back to a β-approximate cut",
        worst_ratio,
        Relation::Ge,
        plan.beta,
        REDUCTION_TOL,
        Provenance::BruteForce,
    )
    .with_samples(qualifying)
    .with_details(json!({
        "candidates": candidates.len(),
        "qualifying": qualifying,
        "alpha": plan.alpha,
        "witness_value": w,
        "max_cut": opt,
        "offender": offender,
    }));
    if qualifying == 0 {
        claim.pass = false;
    }
    report.push(claim);
    Ok(report)
}
