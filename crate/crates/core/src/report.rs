//! Machine-readable verification reports.
//!
//! A report is a list of claims. Each claim compares two real numbers under a
//! relation with an explicit tolerance, records the signed slack (positive
//! means room to spare) and says which kind of oracle produced the numbers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// Where the numbers in a claim come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Closed forms, exact diagonalization, direct evaluation.
    Exact,
    /// Exhaustive enumeration.
    BruteForce,
    /// Best value found by multi-start local ascent; a lower bound on the
    /// true optimum.
    AscentLowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Stable name of the statement being checked, e.g. `"triangle-gadget"`.
    pub anchor: String,
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub tol: f64,
    pub slack: f64,
    pub pass: bool,
    pub provenance: Provenance,
    /// Number of samples aggregated into this claim (1 for a single check).
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Claim {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        description: impl Into<String>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: f64,
        provenance: Provenance,
    ) -> Self {
        let (slack, pass) = match relation {
            Relation::Le => (rhs - lhs, rhs - lhs >= -tol),
            Relation::Ge => (lhs - rhs, lhs - rhs >= -tol),
            Relation::Eq => (-(lhs - rhs).abs(), (lhs - rhs).abs() <= tol),
        };
        Self {
            id: id.into(),
            anchor: anchor.into(),
            description: description.into(),
            lhs,
            rhs,
            relation,
            tol,
            slack,
            // NaN never passes
            pass: pass && slack.is_finite(),
            provenance,
            samples: 1,
            details: None,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = Some(details);
        self
    }
}

/// Running minimum of slack across many evaluations of the same inequality.
#[derive(Debug, Clone)]
pub struct WorstCase {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub samples: usize,
    pub violations: usize,
    pub offender: Option<serde_json::Value>,
}

impl Default for WorstCase {
    fn default() -> Self {
        Self {
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::INFINITY,
            samples: 0,
            violations: 0,
            offender: None,
        }
    }
}

impl WorstCase {
    /// Records `lhs <= rhs`; `witness` is only serialized for violations.
    pub fn observe_le<F>(&mut self, lhs: f64, rhs: f64, tol: f64, witness: F)
    where
        F: FnOnce() -> serde_json::Value,
    {
        let slack = rhs - lhs;
        self.samples += 1;
        let violated = !(slack >= -tol);
        if violated {
            self.violations += 1;
        }
        if slack < self.slack || slack.is_nan() {
            self.lhs = lhs;
            self.rhs = rhs;
            self.slack = slack;
            if violated {
                self.offender = Some(witness());
            }
        }
    }

    pub fn into_claim(
        self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        description: impl Into<String>,
        tol: f64,
        provenance: Provenance,
    ) -> Claim {
        let mut claim = Claim::new(
            id,
            anchor,
            description,
            self.lhs,
            Relation::Le,
            self.rhs,
            tol,
            provenance,
        )
        .with_samples(self.samples);
        if self.samples == 0 || self.violations > 0 {
            claim.pass = false;
        }
        if let Some(offender) = self.offender {
            claim.details = Some(offender);
        }
        claim
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time_seconds: f64,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            tool: "cutlift".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            claims: Vec::new(),
            notes: Vec::new(),
            wall_time_seconds: 0.0,
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.claims.extend(other.claims);
        self.notes.extend(other.notes);
    }

    /// Re-judges every claim against a single tolerance. A claim with no
    /// samples stays failed.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        for c in &mut self.claims {
            c.tol = tol;
            c.pass = c.samples > 0 && c.slack.is_finite() && c.slack >= -tol;
        }
        self
    }

    pub fn all_pass(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    /// The claim with the least slack.
    pub fn worst(&self) -> Option<&Claim> {
        self.claims
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
    }

    /// One line per claim, for terminals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "[{}] {:<40} {:.10e} {} {:.10e}  slack {:+.3e}  ({} samples, {:?})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.lhs,
                c.relation,
                c.rhs,
                c.slack,
                c.samples,
                c.provenance,
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}
