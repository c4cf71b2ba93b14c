//! Spin-J representations and the spin-sector form of cloud Hamiltonians.
//!
//! Representations are normalized as `R_J = 2·S_J`, so `R_{1/2}` is the
//! Pauli matrices and `Ŝ = Σ_t σ_t` on `T` qubits decomposes into copies of
//! `R_J` for `J ∈ {T/2, T/2 − 1, …}`. Basis order is `m = J, J − 1, …, −J`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{self, DenseHermitian, LocalHamiltonian};
use crate::operator::{self, SiteOp, SparseHermitian};
use crate::report::{Claim, Provenance, Relation, VerificationReport, WorstCase};

/// Largest total dimension `Π (2J_i + 1)` for spin operators.
pub const SPIN_DIM_CAP: usize = 4096;

/// Largest cloud size for the explicit block decomposition check.
pub const BLOCK_CHECK_CAP: usize = 8;

/// Tolerance for spectra and commutators of representation matrices.
pub const REP_TOL: f64 = 1e-10;

/// Tolerance for eigenvalue identities between spin and qubit operators.
pub const SECTOR_TOL: f64 = 1e-8;

/// A non-negative half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HalfInt(u32);

impl HalfInt {
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_twice(twice: u32) -> Self {
        Self(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `2J + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `J + 1`.
    pub fn raised(self) -> Self {
        Self(self.0 + 2)
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = String;

    fn try_from(v: f64) -> std::result::Result<Self, String> {
        let twice = 2.0 * v;
        if v >= 0.0 && twice.fract() == 0.0 && twice <= u32::MAX as f64 {
            Ok(Self(twice as u32))
        } else {
            Err(format!("{v} is not a non-negative half-integer"))
        }
    }
}

impl From<HalfInt> for f64 {
    fn from(j: HalfInt) -> f64 {
        j.value()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

fn format_spins(jbar: &[HalfInt]) -> String {
    let parts: Vec<String> = jbar.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinRep {
    pub j: HalfInt,
    /// `R_J(σ^(a))` for `a = 0..4`.
    pub matrices: [DMatrix<Complex64>; 4],
}

/// `R_J(σ^(a)) = 2·S^(a)` built from the ladder operators.
pub fn spin_matrices(j: HalfInt) -> Result<SpinRep> {
    if j.twice() == 0 {
        return Err(invalid("J", "spin must be at least 1/2"));
    }
    Ok(SpinRep {
        j,
        matrices: rep_matrices(j),
    })
}

/// Like [`spin_matrices`] but also accepts `J = 0`, the one-dimensional
/// representation where every non-identity Pauli maps to zero.
pub fn rep_matrices(j: HalfInt) -> [DMatrix<Complex64>; 4] {
    let d = j.dim();
    let jv = j.value();
    let zero = Complex64::new(0.0, 0.0);
    // S⁺|m⟩ = √(J(J+1) − m(m+1)) |m+1⟩; m at row r is J − r
    let mut raise = DMatrix::from_element(d, d, zero);
    for r in 1..d {
        let m = jv - r as f64;
        raise[(r - 1, r)] = Complex64::new((jv * (jv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let x = &raise + &lower;
    let y = (&raise - &lower) * Complex64::new(0.0, -1.0);
    let z = DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            Complex64::new(2.0 * (jv - r as f64), 0.0)
        } else {
            zero
        }
    });
    [DMatrix::identity(d, d), x, y, z]
}

/// Largest entry of `[R(X), R(Y)] − 2i R(Z)` and its cyclic versions.
pub fn commutator_residual(rep: &SpinRep) -> f64 {
    let m = &rep.matrices;
    let two_i = Complex64::new(0.0, 2.0);
    [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
        .iter()
        .map(|&(a, b, c)| operator::max_abs(&(&m[a] * &m[b] - &m[b] * &m[a] - &m[c] * two_i)))
        .fold(0.0, f64::max)
}

/// `n` choose `k` (zero when `k` is out of range).
pub fn binomial(n: u64, k: i64) -> u128 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The spins occurring in `T` qubits: `T/2, T/2 − 1, …` down to 0 or 1/2.
pub fn cloud_spins(t: usize) -> Vec<HalfInt> {
    (0..=t / 2)
        .map(|s| HalfInt::from_twice((t - 2 * s) as u32))
        .collect()
}

/// Multiplicity `g_J = C(T, T/2 − J) − C(T, T/2 − J − 1)` of each spin in
/// `T` qubits, from the largest spin down.
pub fn multiplicities(t: usize) -> Result<Vec<(HalfInt, u128)>> {
    if t == 0 {
        return Err(invalid("T", "cloud size must be at least 1"));
    }
    Ok(cloud_spins(t)
        .into_iter()
        .map(|j| {
            let lower = (t as i64 - j.twice() as i64) / 2;
            (j, binomial(t as u64, lower) - binomial(t as u64, lower - 1))
        })
        .collect())
}

// Sparse version of `rep_matrices`, identity scaled by `identity_weight`.
fn site_ops(j: HalfInt, identity_weight: f64) -> [SiteOp; 4] {
    let d = j.dim();
    let jv = j.value();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // coefficient of |m+1⟩⟨m| with m = J − r
    let ladder = |r: usize| {
        let m = jv - r as f64;
        (jv * (jv + 1.0) - m * (m + 1.0)).sqrt()
    };
    let mut rows: [Vec<Vec<(usize, Complex64)>>; 4] = Default::default();
    for r in 0..d {
        rows[0].push(vec![(r, c(identity_weight, 0.0))]);
        let (mut x, mut y) = (Vec::new(), Vec::new());
        if r > 0 {
            let v = ladder(r);
            x.push((r - 1, c(v, 0.0)));
            y.push((r - 1, c(0.0, v)));
        }
        if r + 1 < d {
            let v = ladder(r + 1);
            x.push((r + 1, c(v, 0.0)));
            y.push((r + 1, c(0.0, -v)));
        }
        rows[1].push(x);
        rows[2].push(y);
        let z = 2.0 * (jv - r as f64);
        rows[3].push(if z == 0.0 {
            Vec::new()
        } else {
            vec![(r, c(z, 0.0))]
        });
    }
    rows.map(SiteOp::from_rows)
}

fn check_spins(h: &LocalHamiltonian, jbar: &[HalfInt]) -> Result<usize> {
    if jbar.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: jbar.len(),
        });
    }
    let mut dim = 1usize;
    for j in jbar {
        dim = dim.saturating_mul(j.dim());
    }
    if dim > SPIN_DIM_CAP {
        return Err(Error::TooLarge {
            what: "spin operator dimension",
            size: dim,
            cap: SPIN_DIM_CAP,
        });
    }
    Ok(dim)
}

fn spin_operator(
    h: &LocalHamiltonian,
    jbar: &[HalfInt],
    identity_weight: f64,
) -> Result<SparseHermitian> {
    check_spins(h, jbar)?;
    let ops: Vec<[SiteOp; 4]> = jbar.iter().map(|&j| site_ops(j, identity_weight)).collect();
    let legs: Vec<&[SiteOp; 4]> = ops.iter().collect();
    let dims: Vec<usize> = jbar.iter().map(|j| j.dim()).collect();
    operator::assemble(&dims, &h.tensor_terms(&legs))
}

/// `H(J̄)`: every `σ^(a)_i` replaced by `R_{J_i}(σ^(a))`, identity by identity.
pub fn build_hj(h: &LocalHamiltonian, jbar: &[HalfInt]) -> Result<SparseHermitian> {
    spin_operator(h, jbar, 1.0)
}

pub fn build_hj_dense(h: &LocalHamiltonian, jbar: &[HalfInt]) -> Result<DenseHermitian> {
    DenseHermitian::new(build_hj(h, jbar)?.to_dense())
}

/// The block of the `T`-cloud Hamiltonian on spin sector `J̄`.
///
/// Same as [`build_hj`] except that a `σ⁰` leg becomes `T·I`, because the
/// sum of `T` identities restricted to any sector is `T` times the identity.
/// For terms with an identity component (such as QMC) this differs from
/// `H(J̄)`.
pub fn cloud_block(h: &LocalHamiltonian, jbar: &[HalfInt], t: usize) -> Result<SparseHermitian> {
    if t == 0 {
        return Err(invalid("T", "cloud size must be at least 1"));
    }
    if let Some(j) = jbar
        .iter()
        .find(|j| j.twice() as usize > t || (t - j.twice() as usize) % 2 == 1)
    {
        return Err(invalid(
            "J",
            format!("spin {j} does not occur in a cloud of {t} qubits"),
        ));
    }
    spin_operator(h, jbar, t as f64)
}

/// Largest qubit count for which [`is_su2_invariant`] runs its dense check.
pub const SU2_CHECK_CAP: usize = 8;

/// Whether `H` commutes with the total spin `Σ_q σ^(a)_q` for a = 1, 2, 3.
/// Returns false above [`SU2_CHECK_CAP`] qubits.
pub fn is_su2_invariant(h: &LocalHamiltonian) -> Result<bool> {
    if h.n() > SU2_CHECK_CAP || h.n() == 0 {
        return Ok(false);
    }
    let m = h.to_sparse()?.to_dense();
    let scale = operator::max_abs(&m).max(1.0);
    for a in 1..4 {
        let s = total_pauli(h.n(), a)?.to_dense();
        if operator::max_abs(&(&m * &s - &s * &m)) > REP_TOL * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `OPT(H(J̄))`.
///
/// With `su2` set (see [`is_su2_invariant`]), `H(J̄)` commutes with the
/// total spin too, so every multiplet has a member in the sector of
/// smallest `|M|` and only that sector is diagonalized.
pub fn spin_opt(h: &LocalHamiltonian, jbar: &[HalfInt], su2: bool) -> Result<f64> {
    let op = build_hj(h, jbar)?;
    if !su2 {
        return op.max_eigenvalue();
    }
    let dims: Vec<usize> = jbar.iter().map(|j| j.dim()).collect();
    let total: usize = jbar.iter().map(|j| j.twice() as usize).sum();
    // 2M of basis state r is total − 2·(sum of digits)
    op.max_eigenvalue_over(|mut r| {
        let mut lowered = 0;
        for &d in dims.iter().rev() {
            lowered += r % d;
            r /= d;
        }
        (total as isize - 2 * lowered as isize).unsigned_abs() == total % 2
    })
}

/// `H̃(J̄) = Σ (Π_l 2J_{i_l}) h_ī`: each whole term, identity part included,
/// scaled by the product of `2J` over its support.
pub fn build_tilde_hj(h: &LocalHamiltonian, jbar: &[HalfInt]) -> Result<LocalHamiltonian> {
    if jbar.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: jbar.len(),
        });
    }
    Ok(h.map_scaled(|t| t.support.iter().map(|&q| jbar[q].twice() as f64).product()))
}

/// `Ŝ^(a) = Σ_t σ^(a)_t` on `t` qubits.
pub fn total_pauli(t: usize, a: usize) -> Result<SparseHermitian> {
    let p = SiteOp::from_dense(&hamiltonian::pauli(a));
    let terms: Vec<operator::TensorTerm<'_>> = (0..t)
        .map(|q| operator::TensorTerm {
            coeff: 1.0,
            factors: vec![(q, &p)],
        })
        .collect();
    operator::assemble(&vec![2; t], &terms)
}

fn sorted_close(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Checks that `Ŝ^(a)` on `T` qubits has the same spectrum, with
/// multiplicity, as `⊕_J R_J(σ^(a)) ⊗ I_{g_J}`, plus the dimension and
/// weight-counting identities.
pub fn verify_block_decomposition(t: usize) -> Result<VerificationReport> {
    if t == 0 || t > BLOCK_CHECK_CAP {
        return Err(Error::TooLarge {
            what: "cloud size for the block check",
            size: t,
            cap: BLOCK_CHECK_CAP,
        });
    }
    let mut report = VerificationReport::new(format!("verify blocks T={t}"), None);
    let mult = multiplicities(t)?;
    let dim_sum: u128 = mult.iter().map(|(j, g)| j.dim() as u128 * g).sum();
    report.push(Claim::new(
        format!("block-dimension-identity-T{t}"),
        "tensor-power-decomposition",
        "Σ_J (2J+1)·g_J = 2^T",
        dim_sum as f64,
        Relation::Eq,
        (1u128 << t) as f64,
        0.0,
        Provenance::Exact,
    ));
    for a in 1..4 {
        let lhs = total_pauli(t, a)?.eigenvalues()?;
        let mut rhs = Vec::with_capacity(1 << t);
        for &(j, g) in &mult {
            let ev = crate::linalg::hermitian_eigenvalues(rep_matrices(j)[a].clone());
            for _ in 0..g {
                rhs.extend_from_slice(&ev);
            }
        }
        rhs.sort_by(f64::total_cmp);
        report.push(
            Claim::new(
                format!("block-spectrum-T{t}-a{a}"),
                "tensor-power-decomposition",
                format!("spectrum of Σ_t σ^({a})_t equals that of ⊕_J R_J ⊗ I_g"),
                sorted_close(&lhs, &rhs),
                Relation::Le,
                0.0,
                REP_TOL,
                Provenance::Exact,
            )
            .with_samples(lhs.len()),
        );
    }
    // weight counting: eigenvalue 2m of Ŝ(Z) has multiplicity C(T, T/2 + m)
    let z = total_pauli(t, 3)?.eigenvalues()?;
    let mut worst = 0.0f64;
    for up in 0..=t {
        let target = 2.0 * up as f64 - t as f64;
        let count = z.iter().filter(|v| (*v - target).abs() < 1e-6).count();
        let expected = binomial(t as u64, up as i64) as f64;
        worst = worst.max((count as f64 - expected).abs());
    }
    report.push(Claim::new(
        format!("block-weight-counting-T{t}"),
        "tensor-power-decomposition",
        "multiplicity of eigenvalue 2m of Σ_t Z_t is C(T, T/2+m)",
        worst,
        Relation::Eq,
        0.0,
        0.0,
        Provenance::Exact,
    ));
    Ok(report)
}

/// All `J̄ ∈ 𝒯ⁿ`.
pub fn cloud_sectors(n: usize, t: usize) -> Vec<Vec<HalfInt>> {
    let spins = cloud_spins(t);
    let mut out: Vec<Vec<HalfInt>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                spins.iter().map(move |&j| {
                    let mut v = prefix.clone();
                    v.push(j);
                    v
                })
            })
            .collect();
    }
    out
}

/// Checks `OPT(H′) = max over sectors J̄ ∈ 𝒯ⁿ of the top of the sector block`.
///
/// `H′` is the `T`-cloud blowup, diagonalized directly. The sector blocks
/// use [`cloud_block`]. Maximizing the unweighted `H(J̄)` instead is
/// reported as a note, since it differs whenever terms have an identity
/// component and `T > 1`.
pub fn verify_opt_max_j(h: &LocalHamiltonian, t: usize) -> Result<VerificationReport> {
    if h.n() * t > hamiltonian::EXACT_QUBIT_CAP {
        return Err(Error::TooLarge {
            what: "qubits in the cloud Hamiltonian",
            size: h.n() * t,
            cap: hamiltonian::EXACT_QUBIT_CAP,
        });
    }
    let mut report = VerificationReport::new(format!("verify opt-max-j T={t}"), None);
    let (blown, _) = crate::cloud::blow_up_hamiltonian(h, t)?;
    let direct = blown.opt()?;
    let mut best = f64::NEG_INFINITY;
    let mut best_sector = Vec::new();
    let mut literal_best = f64::NEG_INFINITY;
    for jbar in cloud_sectors(h.n(), t) {
        let value = if h.terms().is_empty() {
            0.0
        } else {
            cloud_block(h, &jbar, t)?.max_eigenvalue()?
        };
        // ties prefer the earlier sector, which has the larger spins
        if value > best + SECTOR_TOL {
            best = value;
            best_sector = jbar.clone();
        }
        let literal = if h.terms().is_empty() {
            0.0
        } else {
            build_hj(h, &jbar)?.max_eigenvalue()?
        };
        literal_best = literal_best.max(literal);
    }
    let top = vec![HalfInt::from_twice(t as u32); h.n()];
    report.push(
        Claim::new(
            format!("opt-equals-max-over-sectors-T{t}"),
            "cloud-sector-maximum",
            "OPT(H′) equals the largest sector optimum over J̄ ∈ 𝒯ⁿ",
            direct,
            Relation::Eq,
            best,
            SECTOR_TOL,
            Provenance::Exact,
        )
        .with_details(json!({
            "maximizer": format_spins(&best_sector),
            "maximizer_is_top_spin": best_sector == top,
            "literal_hj_max": literal_best,
        })),
    );
    if t > 1 && (literal_best - best).abs() > SECTOR_TOL {
        report.note(format!(
            "max over J̄ of OPT(H(J̄)) with identity legs left as I is {literal_best}, not OPT(H′) = {direct}; \
             identity legs must carry weight T inside a sector"
        ));
    }
    if h.n() > 0 && best_sector.contains(&HalfInt::from_twice(0)) {
        report.note(
            "maximizing sector contains J = 0 legs (one-dimensional, non-identity Paulis act as 0)",
        );
    }
    Ok(report)
}

/// Best available product value of `H`: multi-start ascent, plus the rank-3
/// cut bridge when `H` is a QMC Hamiltonian. Always a lower bound.
pub fn best_product_value(h: &LocalHamiltonian, restarts: usize, seed: u64) -> Result<f64> {
    let mut best = hamiltonian::opt_prod(h, restarts, seed)?.value;
    if let Some(g) = h.as_qmc_graph() {
        let r = crate::rankcut::solve_rankk(&g, 3, restarts, seed, Default::default())?;
        best = best.max(0.5 * r.value);
    }
    Ok(best)
}

fn lieb_values(
    h: &LocalHamiltonian,
    jbar: &[HalfInt],
    su2: bool,
    restarts: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if jbar.iter().any(|j| j.twice() == 0) {
        return Err(invalid("J", "every spin must be at least 1/2"));
    }
    let lhs = if h.terms().is_empty() {
        0.0
    } else {
        spin_opt(h, jbar, su2)?
    };
    let raised: Vec<HalfInt> = jbar.iter().map(|j| j.raised()).collect();
    let rhs = best_product_value(&build_tilde_hj(h, &raised)?, restarts, seed)?;
    Ok((lhs, rhs))
}

/// Checks `OPT(H(J̄)) ≤ OPTprod(H̃(J̄ + 1))` for one spin vector.
///
/// The right side comes from ascent, a lower bound on the true product
/// optimum, so a pass is conclusive.
pub fn verify_lieb(
    h: &LocalHamiltonian,
    jbar: &[HalfInt],
    restarts: usize,
    seed: u64,
) -> Result<VerificationReport> {
    h.require_psd()?;
    let (lhs, rhs) = lieb_values(h, jbar, is_su2_invariant(h)?, restarts, seed)?;
    let mut report =
        VerificationReport::new(format!("verify lieb J={}", format_spins(jbar)), Some(seed));
    report.push(Claim::new(
        "lieb-inequality",
        "spin-product-bound",
        format!("OPT(H(J̄)) ≤ OPTprod(H̃(J̄+1)) at J̄ = {}", format_spins(jbar)),
        lhs,
        Relation::Le,
        rhs,
        SECTOR_TOL,
        Provenance::AscentLowerBound,
    ));
    Ok(report)
}

/// Every `J̄` with all `J_i ≥ 1/2` and `Π (2J_i + 1) ≤ max_dim`.
pub fn spin_vectors_up_to(n: usize, max_dim: usize) -> Vec<Vec<HalfInt>> {
    fn rec(n: usize, budget: usize, prefix: &mut Vec<HalfInt>, out: &mut Vec<Vec<HalfInt>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let mut d = 2;
        while d <= budget {
            prefix.push(HalfInt::from_twice(d as u32 - 1));
            rec(n, budget / d, prefix, out);
            prefix.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, max_dim, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// [`verify_lieb`] over every spin vector with total dimension at most
/// `max_dim`, aggregated into one worst-case claim.
///
/// Both sides are unchanged when `J̄` is permuted by a qubit symmetry of
/// `H`, so only the lexicographically smallest vector of each orbit is
/// evaluated.
pub fn verify_lieb_sweep(
    h: &LocalHamiltonian,
    max_dim: usize,
    restarts: usize,
    seed: u64,
) -> Result<VerificationReport> {
    h.require_psd()?;
    if max_dim > SPIN_DIM_CAP {
        return Err(Error::TooLarge {
            what: "spin operator dimension",
            size: max_dim,
            cap: SPIN_DIM_CAP,
        });
    }
    let symmetries = h.qubit_symmetries()?;
    let su2 = is_su2_invariant(h)?;
    let mut report =
        VerificationReport::new(format!("verify lieb sweep max_dim={max_dim}"), Some(seed));
    let mut worst = WorstCase::default();
    let (mut total, mut evaluated) = (0usize, 0usize);
    for jbar in spin_vectors_up_to(h.n(), max_dim) {
        total += 1;
        let representative = symmetries.iter().all(|perm| {
            let mut image = jbar.clone();
            for (q, &p) in perm.iter().enumerate() {
                image[p] = jbar[q];
            }
            image >= jbar
        });
        if !representative {
            continue;
        }
        evaluated += 1;
        let (lhs, rhs) = lieb_values(h, &jbar, su2, restarts, seed)?;
        worst.observe_le(lhs, rhs, SECTOR_TOL, || json!(format_spins(&jbar)));
    }
    let mut claim = worst.into_claim(
        "lieb-inequality-sweep",
        "spin-product-bound",
        format!("OPT(H(J̄)) ≤ OPTprod(H̃(J̄+1)) for every J̄ with dimension ≤ {max_dim}"),
        SECTOR_TOL,
        Provenance::AscentLowerBound,
    );
    claim.details = Some(json!({
        "spin_vectors": total,
        "evaluated": evaluated,
        "qubit_symmetries": symmetries.len(),
        "violating_spins": claim.details.take(),
    }));
    report.push(claim);
    report.note(format!(
        "{evaluated} of {total} spin vectors evaluated; the rest are images under {} qubit symmetries of H",
        symmetries.len()
    ));
    if su2 {
        report.note("H commutes with total spin; OPT(H(J̄)) taken from the smallest |M| sector");
    }
    Ok(report)
}
