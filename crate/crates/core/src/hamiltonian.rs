//! Local qubit Hamiltonians written in the Pauli basis.
//!
//! A term on support `(i₁, …, i_k)` stores `4^k` real coefficients
//! `M[a₁…a_k]` of `σ^(a₁)_{i₁} ⋯ σ^(a_k)_{i_k}`, with `σ⁰ = I, σ¹ = X, σ² = Y,
//! σ³ = Z` and `a₁` the most significant digit of the flat index.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};
use crate::operator::{self, kron, SiteOp, SparseHermitian, TensorTerm};

/// Largest qubit count for exact diagonalization.
pub const EXACT_QUBIT_CAP: usize = 12;

/// Largest locality accepted for a single term.
pub const MAX_LOCALITY: usize = 6;

/// Minimum eigenvalue accepted for a term declared positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;

/// Largest Bloch vector norm accepted.
pub const BLOCH_NORM_TOL: f64 = 1e-12;

/// Largest qubit count for which [`LocalHamiltonian::qubit_symmetries`]
/// enumerates permutations.
pub const SYMMETRY_SEARCH_CAP: usize = 6;

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn pauli(a: usize) -> DMatrix<Complex64> {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match a {
        0 => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        1 => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        2 => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("Pauli label {a} out of range"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub support: Vec<usize>,
    pub coeffs: Vec<f64>,
}

impl PauliTerm {
    pub fn new(support: Vec<usize>, coeffs: Vec<f64>) -> Result<Self> {
        let k = support.len();
        if k == 0 || k > MAX_LOCALITY {
            return Err(Error::InvalidHamiltonian(format!(
                "term locality {k} outside 1..={MAX_LOCALITY}"
            )));
        }
        if coeffs.len() != 1 << (2 * k) {
            return Err(Error::DimensionMismatch {
                expected: 1 << (2 * k),
                found: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidHamiltonian(format!(
                "coefficient {c} is not finite"
            )));
        }
        Ok(Self { support, coeffs })
    }

    pub fn locality(&self) -> usize {
        self.support.len()
    }

    /// Pauli labels of flat index `idx`, most significant first.
    pub fn labels(&self, idx: usize) -> Vec<usize> {
        let k = self.locality();
        (0..k).map(|l| (idx >> (2 * (k - 1 - l))) & 3).collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            support: self.support.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Dense local matrix of the term with each `σ^(a)` replaced by
    /// `site_ops[l][a]` for leg `l`.
    pub fn local_matrix(&self, site_ops: &[&[DMatrix<Complex64>; 4]]) -> DMatrix<Complex64> {
        let dim: usize = site_ops.iter().map(|ops| ops[0].nrows()).product();
        let mut out = DMatrix::zeros(dim, dim);
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let labels = self.labels(idx);
            let mut m = site_ops[0][labels[0]].clone();
            for (l, &a) in labels.iter().enumerate().skip(1) {
                m = kron(&m, &site_ops[l][a]);
            }
            out += m * Complex64::new(c, 0.0);
        }
        out
    }

    /// The term as a `2^k × 2^k` matrix.
    pub fn qubit_matrix(&self) -> DMatrix<Complex64> {
        let ops = pauli_ops();
        let legs: Vec<&[DMatrix<Complex64>; 4]> = vec![&ops; self.locality()];
        self.local_matrix(&legs)
    }

    /// `Σ_a M[a] Π_l x_{i_l}[a_l]` with `x[0] = 1`.
    fn product_value(&self, bloch: &[[f64; 4]]) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(idx, &c)| {
                let k = self.locality();
                let mut p = c;
                for l in 0..k {
                    let a = (idx >> (2 * (k - 1 - l))) & 3;
                    p *= bloch[self.support[l]][a];
                }
                p
            })
            .sum()
    }
}

pub fn pauli_ops() -> [DMatrix<Complex64>; 4] {
    [pauli(0), pauli(1), pauli(2), pauli(3)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalHamiltonian {
    n: usize,
    terms: Vec<PauliTerm>,
    psd_terms: bool,
}

impl LocalHamiltonian {
    pub fn new(n: usize, terms: Vec<PauliTerm>, psd_terms: bool) -> Result<Self> {
        for t in &terms {
            let mut seen = t.support.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != t.support.len() {
                return Err(Error::InvalidHamiltonian(format!(
                    "support {:?} repeats a qubit",
                    t.support
                )));
            }
            if let Some(&q) = t.support.iter().find(|&&q| q >= n) {
                return Err(Error::InvalidHamiltonian(format!(
                    "qubit {q} out of range for n = {n}"
                )));
            }
        }
        let h = Self {
            n,
            terms,
            psd_terms,
        };
        if psd_terms {
            h.check_psd()?;
        }
        Ok(h)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
            psd_terms: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn psd_terms(&self) -> bool {
        self.psd_terms
    }

    /// Largest term locality (0 for the zero Hamiltonian).
    pub fn locality(&self) -> usize {
        self.terms
            .iter()
            .map(PauliTerm::locality)
            .max()
            .unwrap_or(0)
    }

    fn check_psd(&self) -> Result<()> {
        for (idx, t) in self.terms.iter().enumerate() {
            let ev = crate::linalg::hermitian_eigenvalues(t.qubit_matrix());
            if ev[0] < -PSD_TOL {
                return Err(Error::InvalidHamiltonian(format!(
                    "term {idx} has eigenvalue {} below zero",
                    ev[0]
                )));
            }
        }
        Ok(())
    }

    /// Requires every term to be positive semidefinite.
    pub fn require_psd(&self) -> Result<()> {
        if !self.psd_terms {
            return Err(Error::Precondition(
                "Hamiltonian is not declared to have positive semidefinite terms".into(),
            ));
        }
        self.check_psd()
    }

    /// The graph whose QMC Hamiltonian this is, if any.
    pub fn as_qmc_graph(&self) -> Option<Graph> {
        self.as_two_body_graph(true)
    }

    /// The graph whose XY Hamiltonian this is, if any.
    pub fn as_xy_graph(&self) -> Option<Graph> {
        self.as_two_body_graph(false)
    }

    fn as_two_body_graph(&self, with_zz: bool) -> Option<Graph> {
        let mut edges = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.locality() != 2 {
                return None;
            }
            let w = 4.0 * t.coeffs[0];
            let template = two_body_coeffs(w, with_zz);
            let close = t
                .coeffs
                .iter()
                .zip(&template)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * w.abs().max(1.0));
            if !close || w < 0.0 {
                return None;
            }
            edges.push(Edge {
                u: t.support[0],
                v: t.support[1],
                w,
            });
        }
        Graph::new(self.n, edges).ok()
    }

    pub fn to_sparse(&self) -> Result<SparseHermitian> {
        if self.n > EXACT_QUBIT_CAP {
            return Err(Error::TooLarge {
                what: "qubits for exact diagonalization",
                size: self.n,
                cap: EXACT_QUBIT_CAP,
            });
        }
        let ops = pauli_ops().map(|m| SiteOp::from_dense(&m));
        let legs: Vec<&[SiteOp; 4]> = vec![&ops; self.n];
        operator::assemble(&vec![2; self.n], &self.tensor_terms(&legs))
    }

    /// Expands every term into tensor products, using `site_ops[q][a]` for
    /// `σ^(a)` on site `q`. Labels whose factor is zero are skipped.
    pub fn tensor_terms<'a>(&self, site_ops: &[&'a [SiteOp; 4]]) -> Vec<TensorTerm<'a>> {
        let mut out = Vec::new();
        for t in &self.terms {
            for (idx, &c) in t.coeffs.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let factors: Vec<(usize, &SiteOp)> = t
                    .labels(idx)
                    .into_iter()
                    .zip(&t.support)
                    .map(|(a, &q)| (q, &site_ops[q][a]))
                    .collect();
                if factors.iter().any(|(_, op)| op.is_zero()) {
                    continue;
                }
                out.push(TensorTerm { coeff: c, factors });
            }
        }
        out
    }

    pub fn to_dense(&self) -> Result<DenseHermitian> {
        let sparse = self.to_sparse()?;
        DenseHermitian::new(sparse.to_dense())
    }

    /// `OPT(H)`, the largest eigenvalue.
    pub fn opt(&self) -> Result<f64> {
        if self.terms.is_empty() {
            return Ok(0.0);
        }
        self.to_sparse()?.max_eigenvalue()
    }

    /// Energy of a product state given by Bloch vectors.
    pub fn product_energy(&self, x: &BlochProduct) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let homog = x.homogeneous();
        Ok(self.terms.iter().map(|t| t.product_value(&homog)).sum())
    }

    /// Replaces every term `h` by `scale(term)·h`.
    pub fn map_scaled(&self, mut scale: impl FnMut(&PauliTerm) -> f64) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|t| t.scaled(scale(t))).collect(),
            psd_terms: self.psd_terms,
        }
    }

    /// The same Hamiltonian with qubit `q` renamed to `perm[q]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid("perm", "not a permutation"));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                PauliTerm::new(
                    t.support.iter().map(|&q| perm[q]).collect(),
                    t.coeffs.clone(),
                )
            })
            .collect::<Result<_>>()?;
        Self::new(self.n, terms, self.psd_terms)
    }

    /// Qubit permutations that leave the operator unchanged, identity
    /// first. Only searched for up to [`SYMMETRY_SEARCH_CAP`] qubits; above
    /// that just the identity is returned.
    pub fn qubit_symmetries(&self) -> Result<Vec<Vec<usize>>> {
        let identity: Vec<usize> = (0..self.n).collect();
        if self.n > SYMMETRY_SEARCH_CAP || self.terms.is_empty() {
            return Ok(vec![identity]);
        }
        let reference = self.to_sparse()?.to_dense();
        let scale = operator::max_abs(&reference).max(1.0);
        let mut found = Vec::new();
        for perm in permutations(self.n) {
            let other = self.relabeled(&perm)?.to_sparse()?.to_dense();
            if operator::max_abs(&(&other - &reference)) <= PSD_TOL * scale {
                found.push(perm);
            }
        }
        Ok(found)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: HamiltonianFile = serde_json::from_str(text).map_err(|e| Error::Format {
            field: crate::graph::json_field_hint(&e, "hamiltonian"),
            reason: e.to_string(),
        })?;
        file.into_hamiltonian()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HamiltonianFile::from(self)).expect("hamiltonian serializes")
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

fn two_body_coeffs(w: f64, with_zz: bool) -> Vec<f64> {
    let mut m = vec![0.0; 16];
    m[0] = w / 4.0;
    m[5] = -w / 4.0;
    m[10] = -w / 4.0;
    if with_zz {
        m[15] = -w / 4.0;
    }
    m
}

/// `Σ w_ij ¼(I − X_iX_j − Y_iY_j − Z_iZ_j)`.
pub fn qmc_hamiltonian(g: &Graph) -> LocalHamiltonian {
    two_body_hamiltonian(g, true, true)
}

/// `Σ w_ij ¼(I − X_iX_j − Y_iY_j)`. Its terms are not PSD.
pub fn xy_hamiltonian(g: &Graph) -> LocalHamiltonian {
    two_body_hamiltonian(g, false, false)
}

fn two_body_hamiltonian(g: &Graph, with_zz: bool, psd: bool) -> LocalHamiltonian {
    LocalHamiltonian {
        n: g.n(),
        terms: g
            .edges()
            .iter()
            .map(|e| PauliTerm {
                support: vec![e.u, e.v],
                coeffs: two_body_coeffs(e.w, with_zz),
            })
            .collect(),
        psd_terms: psd,
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    support: Vec<usize>,
    coeffs: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianFile {
    n: usize,
    terms: Vec<TermFile>,
    #[serde(default)]
    psd_terms: bool,
}

impl From<&LocalHamiltonian> for HamiltonianFile {
    fn from(h: &LocalHamiltonian) -> Self {
        let terms = h
            .terms
            .iter()
            .map(|t| TermFile {
                support: t.support.clone(),
                coeffs: t
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(idx, &c)| {
                        let label: String = t
                            .labels(idx)
                            .iter()
                            .map(|a| char::from(b'0' + *a as u8))
                            .collect();
                        (label, c)
                    })
                    .collect(),
            })
            .collect();
        Self {
            n: h.n,
            terms,
            psd_terms: h.psd_terms,
        }
    }
}

impl HamiltonianFile {
    fn into_hamiltonian(self) -> Result<LocalHamiltonian> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (ti, t) in self.terms.into_iter().enumerate() {
            let k = t.support.len();
            if k == 0 || k > MAX_LOCALITY {
                return Err(Error::Format {
                    field: format!("terms[{ti}].support"),
                    reason: format!("locality {k} outside 1..={MAX_LOCALITY}"),
                });
            }
            let mut coeffs = vec![0.0; 1 << (2 * k)];
            for (label, value) in t.coeffs {
                let digits: Option<Vec<usize>> = label
                    .chars()
                    .map(|ch| ch.to_digit(4).map(|d| d as usize))
                    .collect();
                let digits = match digits {
                    Some(d) if d.len() == k => d,
                    _ => {
                        return Err(Error::Format {
                            field: format!("terms[{ti}].coeffs.{label}"),
                            reason: format!("expected {k} Pauli labels from 0123"),
                        })
                    }
                };
                let idx = digits.iter().fold(0, |acc, d| acc * 4 + d);
                coeffs[idx] += value;
            }
            terms.push(PauliTerm::new(t.support, coeffs)?);
        }
        LocalHamiltonian::new(self.n, terms, self.psd_terms)
    }
}

/// Exact matrix of a small Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    pub matrix: DMatrix<Complex64>,
}

impl DenseHermitian {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.ncols(),
            });
        }
        if dim > 1 << EXACT_QUBIT_CAP {
            return Err(Error::TooLarge {
                what: "dense dimension",
                size: dim,
                cap: 1 << EXACT_QUBIT_CAP,
            });
        }
        let skew = operator::max_abs(&(&matrix - matrix.adjoint()));
        if skew > operator::HERMITIAN_TOL * operator::max_abs(&matrix).max(1.0) {
            return Err(Error::InvalidHamiltonian(format!(
                "matrix is not Hermitian (skew {skew:e})"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        crate::linalg::hermitian_eigenvalues(self.matrix.clone())
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap_or(&0.0)
    }
}

/// One Bloch vector per qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochProduct {
    pub vectors: Vec<[f64; 3]>,
}

impl BlochProduct {
    pub fn new(vectors: Vec<[f64; 3]>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if !(norm <= 1.0 + BLOCH_NORM_TOL) {
                return Err(invalid("bloch", format!("vector {i} has norm {norm}")));
            }
        }
        Ok(Self { vectors })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let vectors = (0..n)
            .map(|_| loop {
                let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    break v.map(|c| c / norm);
                }
            })
            .collect();
        Self { vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn homogeneous(&self) -> Vec<[f64; 4]> {
        self.vectors
            .iter()
            .map(|v| [1.0, v[0], v[1], v[2]])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductResult {
    pub value: f64,
    pub state: BlochProduct,
    pub sweeps: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ProductOptions {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for ProductOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_sweeps: 10_000,
        }
    }
}

/// Coordinate ascent over Bloch vectors from a given start.
///
/// The energy is affine in each qubit's Bloch vector, so the best unit
/// vector for one qubit points along its effective field. Each update can
/// only raise the energy.
pub fn ascend_product(
    h: &LocalHamiltonian,
    start: BlochProduct,
    opts: ProductOptions,
) -> Result<ProductResult> {
    if start.len() != h.n {
        return Err(Error::DimensionMismatch {
            expected: h.n,
            found: start.len(),
        });
    }
    let mut touching: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h.n];
    for (ti, t) in h.terms.iter().enumerate() {
        for (l, &q) in t.support.iter().enumerate() {
            touching[q].push((ti, l));
        }
    }
    let mut x = start.homogeneous();
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let mut gain = 0.0;
        for q in 0..h.n {
            let mut field = [0.0; 3];
            for &(ti, leg) in &touching[q] {
                let t = &h.terms[ti];
                let k = t.locality();
                for (idx, &c) in t.coeffs.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    let a_leg = (idx >> (2 * (k - 1 - leg))) & 3;
                    if a_leg == 0 {
                        continue;
                    }
                    let mut p = c;
                    for l in (0..k).filter(|&l| l != leg) {
                        p *= x[t.support[l]][(idx >> (2 * (k - 1 - l))) & 3];
                    }
                    field[a_leg - 1] += p;
                }
            }
            let norm = field.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-14 {
                continue;
            }
            let old: f64 = (0..3).map(|a| field[a] * x[q][a + 1]).sum();
            gain += norm - old;
            for a in 0..3 {
                x[q][a + 1] = field[a] / norm;
            }
        }
        if gain < opts.tol {
            converged = true;
            break;
        }
    }
    let state = BlochProduct {
        vectors: x.iter().map(|v| [v[1], v[2], v[3]]).collect(),
    };
    Ok(ProductResult {
        value: h.product_energy(&state)?,
        state,
        sweeps,
        converged,
    })
}

/// Best product energy over `restarts` random starts; a lower bound on
/// `OPTprod(H)`.
pub fn opt_prod(h: &LocalHamiltonian, restarts: usize, seed: u64) -> Result<ProductResult> {
    if restarts == 0 {
        return Err(invalid("restarts", "need at least one restart"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<ProductResult> = None;
    for _ in 0..restarts {
        let start = BlochProduct::random(h.n, &mut rng);
        let r = ascend_product(h, start, ProductOptions::default())?;
        if best.as_ref().is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    Ok(best.unwrap())
}
