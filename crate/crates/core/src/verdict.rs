//! Three-valued verdicts: validity with a certificate, invalidity with a
//! counterexample, or an honest "unknown" carrying the exhausted bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical::Valuation;
use crate::kripke::{model_to_json, KripkeModel, SearchBounds};
use crate::proof::{proof_to_json, Proof};

/// The logics the toolkit decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Logic {
    Cl,
    Il,
    Minimal,
    S4,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Cl => "CL",
            Logic::Il => "IL",
            Logic::Minimal => "Minimal",
            Logic::S4 => "S4",
        })
    }
}

impl std::str::FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cl" => Ok(Logic::Cl),
            "il" => Ok(Logic::Il),
            "minimal" | "min" => Ok(Logic::Minimal),
            "s4" => Ok(Logic::S4),
            other => Err(format!("unknown logic `{other}`")),
        }
    }
}

/// Evidence behind a `Valid` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A sequent derivation that `check_proof` accepts.
    Proof(Proof),
    /// Exhaustive truth-table enumeration over the listed atoms.
    TruthTable { atoms: Vec<String>, valuations: u64 },
    /// Exhaustive check over all finite domains up to the cap. `exact` is
    /// true when the cap reaches the monadic decidability bound `2^k`.
    DomainCheck { max_domain: usize, exact: bool },
}

/// Evidence behind an `Invalid` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounterExample {
    Valuation(Valuation),
    Model(KripkeModel),
}

/// What was exhausted before giving up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub bounds: SearchBounds,
    pub depth: usize,
    pub note: String,
}

/// Outcome of a decision: a certificate, a counterexample, or the bounds
/// that were exhausted without either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid(Certificate),
    Invalid(CounterExample),
    Unknown(Exhaustion),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            Verdict::Valid(_) => "Valid",
            Verdict::Invalid(_) => "Invalid",
            Verdict::Unknown(_) => "Unknown",
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Verdict::Valid(Certificate::Proof(p)) => Some(p),
            _ => None,
        }
    }

    pub fn countermodel(&self) -> Option<&KripkeModel> {
        match self {
            Verdict::Invalid(CounterExample::Model(m)) => Some(m),
            _ => None,
        }
    }

    pub fn witness_valuation(&self) -> Option<&Valuation> {
        match self {
            Verdict::Invalid(CounterExample::Valuation(v)) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.outcome())
    }
}

/// Machine-readable rendering of a verdict.
pub fn verdict_to_json(v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Valid(cert) => {
            let certificate = match cert {
                Certificate::Proof(p) => serde_json::json!({
                    "kind": "proof",
                    "proof": proof_to_json(p),
                }),
                Certificate::TruthTable { atoms, valuations } => serde_json::json!({
                    "kind": "truth-table",
                    "atoms": atoms,
                    "valuations": valuations,
                }),
                Certificate::DomainCheck { max_domain, exact } => serde_json::json!({
                    "kind": "domain-check",
                    "max_domain": max_domain,
                    "exact": exact,
                }),
            };
            serde_json::json!({ "outcome": "valid", "certificate": certificate })
        }
        Verdict::Invalid(ce) => {
            let counterexample = match ce {
                CounterExample::Valuation(v) => serde_json::json!({
                    "kind": "valuation",
                    "valuation": v.to_json(),
                }),
                CounterExample::Model(m) => serde_json::json!({
                    "kind": "model",
                    "model": model_to_json(m),
                }),
            };
            serde_json::json!({ "outcome": "invalid", "counterexample": counterexample })
        }
        Verdict::Unknown(ex) => serde_json::json!({
            "outcome": "unknown",
            "bounds": { "max_worlds": ex.bounds.max_worlds, "max_domain": ex.bounds.max_domain },
            "depth": ex.depth,
            "note": ex.note,
        }),
    }
}
