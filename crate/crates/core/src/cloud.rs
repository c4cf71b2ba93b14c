//! Cloud blowup: replace every qubit (or vertex) by `T` copies and repeat
//! each term over all choices of copies.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};
use crate::hamiltonian::{self, BlochProduct, LocalHamiltonian, PauliTerm};
use crate::report::{Claim, Provenance, Relation, VerificationReport};

/// Tolerance for the sandwich inequalities.
pub const SANDWICH_TOL: f64 = 1e-8;

/// Copy `t` of original site `i` is site `i·T + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloudMap {
    pub n: usize,
    pub t: usize,
}

impl CloudMap {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(invalid("T", "cloud size must be at least 1"));
        }
        Ok(Self { n, t })
    }

    pub fn index(&self, i: usize, t: usize) -> usize {
        debug_assert!(i < self.n && t < self.t);
        i * self.t + t
    }

    /// Inverse of [`CloudMap::index`].
    pub fn origin(&self, q: usize) -> (usize, usize) {
        (q / self.t, q % self.t)
    }

    pub fn total(&self) -> usize {
        self.n * self.t
    }
}

/// Every tuple in `[T]^k`, last position fastest.
fn copy_tuples(k: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = t.pow(k as u32);
    (0..count).map(move |mut idx| {
        let mut tuple = vec![0; k];
        for slot in tuple.iter_mut().rev() {
            *slot = idx % t;
            idx /= t;
        }
        tuple
    })
}

/// `H′`: each term repeated on every choice of one copy per support site,
/// with its coefficients unchanged.
pub fn blow_up_hamiltonian(h: &LocalHamiltonian, t: usize) -> Result<(LocalHamiltonian, CloudMap)> {
    let map = CloudMap::new(h.n(), t)?;
    let mut terms = Vec::new();
    for term in h.terms() {
        for copies in copy_tuples(term.locality(), t) {
            let support = term
                .support
                .iter()
                .zip(&copies)
                .map(|(&i, &c)| map.index(i, c))
                .collect();
            terms.push(PauliTerm::new(support, term.coeffs.clone())?);
        }
    }
    Ok((
        LocalHamiltonian::new(map.total(), terms, h.psd_terms())?,
        map,
    ))
}

/// Each vertex becomes `T` vertices and each edge a complete bipartite
/// graph between the two clouds.
pub fn blow_up_graph(g: &Graph, t: usize) -> Result<(Graph, CloudMap)> {
    if !g.is_unweighted() {
        return Err(Error::Precondition(
            "cloud blowup expects an unweighted graph".into(),
        ));
    }
    let map = CloudMap::new(g.n(), t)?;
    let mut edges = Vec::with_capacity(g.m() * t * t);
    for e in g.edges() {
        for a in 0..t {
            for b in 0..t {
                edges.push(Edge {
                    u: map.index(e.u, a),
                    v: map.index(e.v, b),
                    w: e.w,
                });
            }
        }
    }
    Ok((Graph::new(map.total(), edges)?, map))
}

/// Energy on `H′` of the product state that gives every copy of qubit `i`
/// the Bloch vector of `i`.
pub fn product_lift_energy(h: &LocalHamiltonian, t: usize, x: &BlochProduct) -> Result<f64> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: x.len(),
        });
    }
    let (blown, map) = blow_up_hamiltonian(h, t)?;
    let lifted = BlochProduct::new(
        (0..map.total())
            .map(|q| x.vectors[map.origin(q).0])
            .collect(),
    )?;
    blown.product_energy(&lifted)
}

/// Checks `T^k·OPTprod(H) ≤ OPT(H′) ≤ (T+2)^k·OPTprod(H)` for a
/// Hamiltonian whose terms are PSD and all `k`-local.
///
/// `OPTprod` comes from multi-start ascent (plus the rank-3 bridge for QMC
/// instances). Being a lower bound, it makes the left inequality conclusive
/// and the right one conditional on the ascent having found the optimum.
pub fn verify_sandwich(
    h: &LocalHamiltonian,
    t: usize,
    restarts: usize,
    seed: u64,
) -> Result<VerificationReport> {
    h.require_psd()?;
    let k = h.locality();
    if h.terms().iter().any(|term| term.locality() != k) {
        return Err(Error::Precondition(
            "sandwich bounds need every term to have the same locality".into(),
        ));
    }
    if h.n() * t > hamiltonian::EXACT_QUBIT_CAP {
        return Err(Error::TooLarge {
            what: "qubits in the cloud Hamiltonian",
            size: h.n() * t,
            cap: hamiltonian::EXACT_QUBIT_CAP,
        });
    }
    let mut report = VerificationReport::new(
        format!("verify sandwich T={t} restarts={restarts}"),
        Some(seed),
    );
    let prod = crate::spin::best_product_value(h, restarts, seed)?;
    let (blown, _) = blow_up_hamiltonian(h, t)?;
    let opt = blown.opt()?;
    let low = (t as f64).powi(k as i32) * prod;
    let high = ((t + 2) as f64).powi(k as i32) * prod;
    report.push(
        Claim::new(
            format!("sandwich-lower-T{t}"),
            "cloud-sandwich",
            "T^k·OPTprod(H) ≤ OPT(H′)",
            low,
            Relation::Le,
            opt,
            SANDWICH_TOL,
            Provenance::AscentLowerBound,
        )
        .with_details(json!({ "opt_prod": prod, "k": k })),
    );
    report.push(
        Claim::new(
            format!("sandwich-upper-T{t}"),
            "cloud-sandwich",
            "OPT(H′) ≤ (T+2)^k·OPTprod(H), conditional on ascent optimality",
            opt,
            Relation::Le,
            high,
            SANDWICH_TOL,
            Provenance::AscentLowerBound,
        )
        .with_details(json!({ "opt_prod": prod, "k": k, "conditional": true })),
    );
    report.note("upper sandwich bound uses an ascent value for OPTprod and is conditional on its optimality");
    Ok(report)
}
