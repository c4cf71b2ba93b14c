//! Rank-k constrained Max-Cut.
//!
//! Every vertex carries a unit vector `x_i ∈ R^k` and the objective is
//!
//! ```text
//! F_k(x) = Σ_{ij ∈ E} w_ij · ½ (1 − x_i · x_j)
//! ```
//!
//! `k = 1` is classical Max-Cut, `k = 3` is twice the product-state value of
//! the Heisenberg model and `k = 2` twice the product-state value of the XY
//! model.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Tolerance on `‖x_i‖ = 1`.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Largest vertex count accepted by [`solve_exact_rank1`].
pub const EXACT_RANK1_CAP: usize = 26;

/// Below this field norm the vertex update is skipped.
const FIELD_EPS: f64 = 1e-14;

/// One unit vector in `R^k` per vertex, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitAssignment {
    k: usize,
    data: Vec<f64>,
}

impl UnitAssignment {
    pub fn new(k: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k", "rank must be at least 1"));
        }
        let mut data = Vec::with_capacity(vectors.len() * k);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: v.len(),
                });
            }
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::Format {
                    field: format!("vectors[{i}]"),
                    reason: format!("norm {norm} is not 1"),
                });
            }
            data.extend_from_slice(v);
        }
        Ok(Self { k, data })
    }

    /// Normalizes each row; rows of zero norm are rejected.
    pub fn normalized(k: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = vectors
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm == 0.0 {
                    Err(Error::Format {
                        field: format!("vectors[{i}]"),
                        reason: "zero vector".into(),
                    })
                } else {
                    Ok(v.into_iter().map(|c| c / norm).collect())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, vectors)
    }

    pub fn from_signs(signs: &[f64]) -> Result<Self> {
        Self::new(1, signs.iter().map(|&s| vec![s]).collect())
    }

    /// Independent normalized Gaussian vectors, i.e. uniform on the sphere.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let mut data = Vec::with_capacity(n * k);
        for _ in 0..n {
            loop {
                let v: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    data.extend(v.iter().map(|c| c / norm));
                    break;
                }
            }
        }
        Self { k, data }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.k)
    }

    pub(crate) fn vector_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.k..(i + 1) * self.k]
    }

    /// Builds an assignment without re-validating norms.
    pub(crate) fn from_raw(k: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len() % k, 0);
        Self { k, data }
    }

    /// Applies `x_i ← Q x_i` for a row-major `k × k` matrix `Q`.
    pub fn transformed(&self, q: &[f64]) -> Self {
        let k = self.k;
        assert_eq!(q.len(), k * k);
        let data = self
            .vectors()
            .flat_map(|v| (0..k).map(move |r| (0..k).map(|c| q[r * k + c] * v[c]).sum::<f64>()))
            .collect();
        Self { k, data }
    }
}

#[derive(Serialize, Deserialize)]
struct AssignmentFile {
    k: usize,
    vectors: Vec<Vec<f64>>,
}

impl Serialize for UnitAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AssignmentFile {
            k: self.k,
            vectors: self.vectors().map(<[f64]>::to_vec).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = AssignmentFile::deserialize(d)?;
        UnitAssignment::new(file.k, file.vectors).map_err(serde::de::Error::custom)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_shape(g: &Graph, x: &UnitAssignment) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `F_k^G(x)`.
pub fn energy(g: &Graph, x: &UnitAssignment) -> Result<f64> {
    check_shape(g, x)?;
    Ok(g.edges()
        .iter()
        .map(|e| e.w * 0.5 * (1.0 - dot(x.vector(e.u), x.vector(e.v))))
        .sum())
}

/// Exact Max-Cut by enumerating sign patterns with vertex 0 fixed to `+1`.
pub fn solve_exact_rank1(g: &Graph) -> Result<(f64, UnitAssignment)> {
    let n = g.n();
    if n > EXACT_RANK1_CAP {
        return Err(Error::TooLarge {
            what: "exhaustive Max-Cut instance",
            size: n,
            cap: EXACT_RANK1_CAP,
        });
    }
    if n <= 1 {
        return Ok((0.0, UnitAssignment::from_raw(1, vec![1.0; n])));
    }
    let adj = g.adjacency();
    // Gray-code walk over vertices 1..n; bit set means sign −1.
    let mut signs = vec![1.0f64; n];
    let mut cut = 0.0;
    let mut best = (0.0, signs.clone());
    let free = n - 1;
    for step in 1u64..(1u64 << free) {
        let vertex = step.trailing_zeros() as usize + 1;
        let s = signs[vertex];
        // flipping `vertex` toggles every incident edge between cut and uncut
        let delta: f64 = adj[vertex]
            .iter()
            .map(|&(j, w)| if signs[j] == s { w } else { -w })
            .sum();
        cut += delta;
        signs[vertex] = -s;
        if cut > best.0 + 1e-12 {
            best = (cut, signs.clone());
        }
    }
    let x = UnitAssignment::from_raw(1, best.1);
    Ok((energy(g, &x)?, x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    /// Stop once a full sweep improves the energy by less than this.
    pub tol: f64,
    /// `None` means `1000 + 10 · n · k`.
    pub max_sweeps: Option<usize>,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_sweeps: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AscentResult {
    pub value: f64,
    pub assignment: UnitAssignment,
    pub converged: bool,
    pub sweeps: usize,
}

/// Local field `s = Σ_{j~i} w_ij x_j`.
fn local_field(adj: &[(usize, f64)], x: &UnitAssignment, out: &mut [f64]) {
    out.iter_mut().for_each(|c| *c = 0.0);
    for &(j, w) in adj {
        for (o, c) in out.iter_mut().zip(x.vector(j)) {
            *o += w * c;
        }
    }
}

/// Sets `x_i ← −s/‖s‖`, the exact maximizer of vertex `i`'s contribution.
///
/// Returns the energy gain `½ (s·x_old + ‖s‖)`, which is never negative.
fn update_vertex(x: &mut UnitAssignment, i: usize, field: &[f64]) -> f64 {
    let norm = field.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm < FIELD_EPS {
        return 0.0;
    }
    let xi = x.vector_mut(i);
    let before = dot(xi, field);
    if xi.len() == 1 {
        xi[0] = if field[0] > 0.0 { -1.0 } else { 1.0 };
    } else {
        for (c, s) in xi.iter_mut().zip(field) {
            *c = -s / norm;
        }
    }
    0.5 * (before - dot(xi, field))
}

/// Block-coordinate ascent from `x0`.
pub fn ascend(g: &Graph, x0: UnitAssignment, opts: AscentOptions) -> Result<AscentResult> {
    check_shape(g, &x0)?;
    let k = x0.k();
    let max_sweeps = opts.max_sweeps.unwrap_or(1000 + 10 * g.n() * k);
    let adj = g.adjacency();
    let mut x = x0;
    let mut field = vec![0.0; k];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut gain = 0.0;
        for (i, nbrs) in adj.iter().enumerate() {
            local_field(nbrs, &x, &mut field);
            gain += update_vertex(&mut x, i, &field);
        }
        if gain < opts.tol {
            converged = true;
            break;
        }
    }
    Ok(AscentResult {
        value: energy(g, &x)?,
        assignment: x,
        converged,
        sweeps,
    })
}

/// Best of `restarts` ascents from uniformly random starts.
pub fn solve_rankk(
    g: &Graph,
    k: usize,
    restarts: usize,
    seed: u64,
    opts: AscentOptions,
) -> Result<AscentResult> {
    if k == 0 {
        return Err(invalid("k", "rank must be at least 1"));
    }
    if restarts == 0 {
        return Err(invalid("restarts", "need at least one restart"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<AscentResult> = None;
    for _ in 0..restarts {
        let x0 = UnitAssignment::random(g.n(), k, &mut rng);
        let result = ascend(g, x0, opts)?;
        if best.as_ref().is_none_or(|b| result.value > b.value) {
            best = Some(result);
        }
    }
    Ok(best.unwrap())
}

/// Closed form for the best triangle energy given one fixed angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleValue {
    /// `9/4 − ¼ (2 cos(θ/2) − 1)²`
    pub value: f64,
    /// `9/4 − (9 / 16π²) (θ − 2π/3)²`
    pub quadratic_bound: f64,
}

/// Maximum triangle energy when two of its vectors meet at angle `theta`.
pub fn triangle_max(theta: f64) -> Result<TriangleValue> {
    if !(0.0..PI).contains(&theta) {
        return Err(invalid("theta", format!("{theta} is outside [0, π)")));
    }
    let penalty = 2.0 * (theta / 2.0).cos() - 1.0;
    let offset = theta - 2.0 * PI / 3.0;
    Ok(TriangleValue {
        value: 2.25 - 0.25 * penalty * penalty,
        quadratic_bound: 2.25 - 9.0 / (16.0 * PI * PI) * offset * offset,
    })
}

/// Triangle energy with `x₀·x₁ = cos θ`, maximized over the third vector
/// by a grid over its planar angle followed by golden-section refinement.
///
/// The best third vector lies in the plane of the other two, so a 1-D
/// search covers it.
pub fn triangle_search(theta: f64) -> Result<f64> {
    if !(0.0..PI).contains(&theta) {
        return Err(invalid("theta", format!("{theta} is outside [0, π)")));
    }
    let fixed = 0.5 * (1.0 - theta.cos());
    let value = |phi: f64| fixed + 0.5 * (1.0 - phi.cos()) + 0.5 * (1.0 - (phi - theta).cos());
    const GRID: usize = 2048;
    let step = 2.0 * PI / GRID as f64;
    let best = (0..GRID)
        .map(|i| i as f64 * step)
        .max_by(|a, b| value(*a).total_cmp(&value(*b)))
        .unwrap();
    let (mut lo, mut hi) = (best - step, best + step);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let a = hi - ratio * (hi - lo);
        let b = lo + ratio * (hi - lo);
        if value(a) < value(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    Ok(value(0.5 * (lo + hi)).max(value(best)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn k(n: usize) -> Graph {
        Graph::named(NamedGraph::Complete, n).unwrap()
    }

    #[test]
    fn energy_of_simple_pairs() {
        let g = k(2);
        let anti = UnitAssignment::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(energy(&g, &anti).unwrap(), 1.0);
        let same = UnitAssignment::new(2, vec![vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(energy(&g, &same).unwrap(), 0.0);
    }

    #[test]
    fn equiangular_triangle_reaches_nine_quarters() {
        let x = UnitAssignment::new(
            2,
            (0..3)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / 3.0;
                    vec![a.cos(), a.sin()]
                })
                .collect(),
        )
        .unwrap();
        assert!((energy(&k(3), &x).unwrap() - 2.25).abs() < 1e-12);
    }

    #[test]
    fn energy_rejects_wrong_length() {
        let x = UnitAssignment::from_signs(&[1.0]).unwrap();
        assert!(matches!(
            energy(&k(2), &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_unit_vectors() {
        assert!(UnitAssignment::new(2, vec![vec![1.0, 1.0]]).is_err());
        assert!(UnitAssignment::new(2, vec![vec![1.0]]).is_err());
    }

    #[test]
    fn exact_rank1_small_graphs() {
        assert_eq!(solve_exact_rank1(&k(2)).unwrap().0, 1.0);
        assert_eq!(solve_exact_rank1(&k(3)).unwrap().0, 2.0);
        let c5 = Graph::named(NamedGraph::Cycle, 5).unwrap();
        assert_eq!(solve_exact_rank1(&c5).unwrap().0, 4.0);
        let big = Graph::named(NamedGraph::Path, 27).unwrap();
        assert!(matches!(
            solve_exact_rank1(&big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn vertex_update_is_negative_normalized_field() {
        let mut x = UnitAssignment::new(2, vec![vec![1.0, 0.0]]).unwrap();
        let gain = update_vertex(&mut x, 0, &[1.0, 1.0]);
        let r = 1.0 / 2f64.sqrt();
        assert!((x.vector(0)[0] + r).abs() < 1e-15 && (x.vector(0)[1] + r).abs() < 1e-15);
        assert!(gain > 0.0);
    }

    #[test]
    fn degenerate_field_keeps_vector() {
        let mut x = UnitAssignment::new(2, vec![vec![0.0, 1.0]]).unwrap();
        assert_eq!(update_vertex(&mut x, 0, &[0.0, 0.0]), 0.0);
        assert_eq!(x.vector(0), &[0.0, 1.0]);
    }

    #[test]
    fn ascent_solves_an_edge_in_one_sweep() {
        let x0 = UnitAssignment::normalized(2, vec![vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap();
        let r = ascend(&k(2), x0, AscentOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn multistart_triangle() {
        let r = solve_rankk(&k(3), 2, 16, 1, AscentOptions::default()).unwrap();
        assert!((r.value - 2.25).abs() < 1e-6);
        let r = solve_rankk(&k(3), 3, 16, 1, AscentOptions::default()).unwrap();
        assert!((r.value - 2.25).abs() < 1e-6);
        let r = solve_rankk(&k(2), 3, 4, 1, AscentOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rank1_ascent_is_bounded_by_the_exact_cut() {
        let c5 = Graph::named(NamedGraph::Cycle, 5).unwrap();
        let r = solve_rankk(&c5, 1, 8, 3, AscentOptions::default()).unwrap();
        assert!(r.value <= 4.0 + 1e-12);
        assert!(r.assignment.vectors().all(|v| v[0].abs() == 1.0));
    }

    #[test]
    fn triangle_closed_form_values() {
        let at_opt = triangle_max(2.0 * PI / 3.0).unwrap();
        assert!((at_opt.value - 2.25).abs() < 1e-15);
        assert!((at_opt.quadratic_bound - 2.25).abs() < 1e-15);
        assert!((triangle_max(0.0).unwrap().value - 2.0).abs() < 1e-15);
        assert!((triangle_max(PI - 1e-12).unwrap().value - 2.0).abs() < 1e-10);
        assert!(triangle_max(PI).is_err());
        assert!(triangle_max(-0.1).is_err());
    }

    #[test]
    fn solver_preconditions() {
        assert!(solve_rankk(&k(3), 0, 1, 0, AscentOptions::default()).is_err());
        assert!(solve_rankk(&k(3), 2, 0, 0, AscentOptions::default()).is_err());
    }
}
