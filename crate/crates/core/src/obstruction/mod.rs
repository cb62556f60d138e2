//! Case analysis deciding whether the quotient singularity of a primitive
//! group is exceptional, recorded as a checkable certificate.
//!
//! A group with a semi-invariant of degree at most `ambient + 1` is not
//! exceptional. Otherwise every possible minimal center `S` of a non-klt pair
//! must be ruled out: hypersurfaces by the semi-invariant degree, unions of
//! several conjugates by the simplicity of the projective image, points by
//! irreducibility, and curves, surfaces and threefolds by comparing their
//! Hilbert polynomials against the values `h_n` that the symmetric powers of
//! the representation allow.

mod cases;
mod certificate;
pub mod riemann_roch;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chartable::{CharacterTable, TableError};
use crate::exactnum::Rational;
use crate::invariants::InvariantsError;
use crate::linsolve::SolveError;
use crate::sympow::{self, Decomposition, SympowError};

pub use cases::{
    curve_case, dim0_case, dim4_case, dim4_case_from, hj_impossibility, r_analysis, surface_case, threefold_case,
};
pub use certificate::{
    check_exceptionality, check_exceptionality_with, CheckOptions, ExceptionalityCertificate, ReferenceValues,
    SemiInvariantSummary, Verdict,
};

/// The only ambient dimension for which the geometric cases are wired.
pub const WIRED_AMBIENT_DIM: u64 = 5;

#[derive(Debug, thiserror::Error)]
pub enum ObstructionError {
    #[error("degree bound undefined: r = {0} is negative")]
    NegativeR(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("table is not flagged primitive")]
    NotPrimitive,
    #[error("distinguished representation has degree {0}; expected 6 or 7")]
    UnsupportedDegree(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Sympow(#[from] SympowError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `r` for an attained value of `mu`: `ceil(mu - s - 1) + 1` if `mu` is an
/// integer and `ceil(mu - s - 1)` otherwise.
pub fn exponent_at(s: i64, mu: &Rational) -> i64 {
    let shifted = mu - Rational::from_integer(BigInt::from(s + 1));
    let c = shifted.ceil().to_integer().to_i64().expect("small exponent");
    if mu.is_integer() {
        c + 1
    } else {
        c
    }
}

/// Exponent `r` of the degree bound. For a strict bound the maximum over all
/// `mu < mu_sup` is taken; `r` is nondecreasing in `mu`, so it is attained at
/// the largest integer below `mu_sup` or just above it.
pub fn degree_exponent(
    n: u64,
    dim_y: u64,
    mu_sup: &Rational,
    mu_attained: bool,
) -> Result<(u64, u64), ObstructionError> {
    if dim_y > n {
        return Err(ObstructionError::InvalidArgument(format!(
            "dimY = {dim_y} exceeds n = {n}"
        )));
    }
    if !mu_sup.is_positive() {
        return Err(ObstructionError::InvalidArgument(format!(
            "mu = {mu_sup} is not positive"
        )));
    }
    let s = (n - dim_y) as i64;
    let r = if mu_attained {
        exponent_at(s, mu_sup)
    } else {
        let below = mu_sup.ceil() - Rational::from_integer(BigInt::from(1));
        let between = (&below + mu_sup) / Rational::from_integer(BigInt::from(2));
        let mut r = exponent_at(s, &between);
        if below.is_positive() {
            r = r.max(exponent_at(s, &below));
        }
        r
    };
    if r < 0 {
        return Err(ObstructionError::NegativeR(r));
    }
    Ok((s as u64, r as u64))
}

/// `C(s + r, r)` with `s = n - dimY`: the largest degree of a minimal center
/// of dimension `dimY` in `P^n` for a pair of multiplicity `mu`.
pub fn degree_bound(n: u64, dim_y: u64, mu_sup: &Rational, mu_attained: bool) -> Result<u64, ObstructionError> {
    let (s, r) = degree_exponent(n, dim_y, mu_sup, mu_attained)?;
    Ok(binomial(s + r, r))
}

/// `mu = (ambient + 1) lambda` with `lambda < (ambient + 2) / (ambient + 1)`,
/// which is `lambda < 7/6` on `P^5`.
pub fn mu_bound(ambient_dim: u64) -> Rational {
    Rational::from_integer(BigInt::from(ambient_dim + 2))
}

/// Allowed values of `h_n = h^0(O_Z(n))` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HLevel {
    pub n: u32,
    /// `h^0(O_P(n))`.
    pub total: u64,
    pub values: BTreeSet<u64>,
    /// Decomposition of `Sym^n` the values were derived from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HValueSets {
    pub ambient_dim: u64,
    pub levels: Vec<HLevel>,
}

impl HValueSets {
    pub const MAX_N: u32 = 5;

    pub fn compute(t: &CharacterTable, ambient_dim: u64) -> Result<Self, ObstructionError> {
        let chi = t.distinguished()?;
        if chi.degree() != Some(ambient_dim + 1) {
            return Err(ObstructionError::UnsupportedDegree(chi.degree_value().to_string()));
        }
        let series = sympow::sym_power_series(&chi, Self::MAX_N)?;
        let levels = (1..=Self::MAX_N)
            .map(|n| {
                let d = sympow::decompose(&series[n as usize])?;
                Ok(HLevel {
                    n,
                    total: binomial(ambient_dim + n as u64, n as u64),
                    values: sympow::h_values_from(&d, ambient_dim, n),
                    decomposition: Some(d),
                })
            })
            .collect::<Result<_, ObstructionError>>()?;
        Ok(HValueSets { ambient_dim, levels })
    }

    /// Sets given directly, `sets[0]` being `H_1`.
    pub fn from_sets(ambient_dim: u64, sets: Vec<BTreeSet<u64>>) -> Self {
        let levels = sets
            .into_iter()
            .enumerate()
            .map(|(i, values)| {
                let n = i as u32 + 1;
                HLevel {
                    n,
                    total: binomial(ambient_dim + n as u64, n as u64),
                    values,
                    decomposition: None,
                }
            })
            .collect();
        HValueSets { ambient_dim, levels }
    }

    pub fn get(&self, n: u32) -> &BTreeSet<u64> {
        &self.levels[n as usize - 1].values
    }

    pub fn all_singletons(&self) -> bool {
        self.levels.iter().all(|l| l.values.len() == 1)
    }
}

/// Facts about the group used by the representation-theoretic cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: u64,
    /// Order of the image in `PGL`.
    pub projective_order: u64,
    pub simple_modulo_center: bool,
    pub primitive: bool,
    pub representation: String,
    pub degree: u64,
}

impl GroupSummary {
    pub fn from_table(t: &CharacterTable) -> Result<Self, ObstructionError> {
        let chi = t.distinguished()?;
        let degree = chi
            .degree()
            .ok_or_else(|| ObstructionError::UnsupportedDegree(chi.degree_value().to_string()))?;
        Ok(GroupSummary {
            name: t.group_name.clone(),
            order: t.order,
            projective_order: t.projective_image_order(&chi),
            simple_modulo_center: t.is_simple_modulo_center,
            primitive: t.primitive,
            representation: t.distinguished_rep.clone(),
            degree,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    Dim4,
    RAnalysis,
    Dim0,
    PolynomialFit,
    Curve,
    Surface,
    Threefold,
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseId::Dim4 => "dim-4",
            CaseId::RAnalysis => "r-analysis",
            CaseId::Dim0 => "dim-0",
            CaseId::PolynomialFit => "polynomial-fit",
            CaseId::Curve => "curve",
            CaseId::Surface => "surface",
            CaseId::Threefold => "threefold",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Closed,
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub condition: String,
    pub holds: bool,
}

/// One parameter assignment. It survives iff every recorded check holds and,
/// when it has refinements, at least one of them survives. Checks stop at the
/// first failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub label: String,
    /// Exact values, written as integers or fractions.
    pub values: indexmap::IndexMap<String, String>,
    pub checks: Vec<Check>,
    /// Recorded for information; never used to eliminate.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub supplementary: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub children: Option<Vec<Candidate>>,
}

impl Candidate {
    pub(crate) fn new(label: impl Into<String>) -> Self {
        Candidate {
            label: label.into(),
            values: indexmap::IndexMap::new(),
            checks: Vec::new(),
            supplementary: Vec::new(),
            children: None,
        }
    }

    pub(crate) fn value(&mut self, name: &str, v: impl ToString) {
        self.values.insert(name.to_string(), v.to_string());
    }

    pub(crate) fn alive(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Records a check unless an earlier one already failed.
    pub(crate) fn require(&mut self, condition: impl Into<String>, holds: bool) {
        if self.alive() {
            self.checks.push(Check {
                condition: condition.into(),
                holds,
            });
        }
    }

    pub fn survives(&self) -> bool {
        self.alive()
            && self
                .children
                .as_ref()
                .is_none_or(|children| children.iter().any(Candidate::survives))
    }

    fn survivor_labels(&self, prefix: &str, out: &mut Vec<String>) {
        if !self.survives() {
            return;
        }
        let label = if prefix.is_empty() {
            self.label.clone()
        } else {
            format!("{prefix}, {}", self.label)
        };
        match &self.children {
            Some(children) => children.iter().for_each(|c| c.survivor_labels(&label, out)),
            None => out.push(label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub case: CaseId,
    pub status: CaseStatus,
    pub reason: String,
    /// Facts the case relies on; a failed precondition leaves it open.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub preconditions: Vec<Check>,
    pub candidates: Vec<Candidate>,
    /// Surviving parameter assignments of an open case.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub survivors: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseRecord {
    pub(crate) fn assemble(
        case: CaseId,
        preconditions: Vec<Check>,
        candidates: Vec<Candidate>,
        closed_reason: &str,
    ) -> Self {
        let mut record = CaseRecord {
            case,
            status: CaseStatus::Open,
            reason: String::new(),
            preconditions,
            candidates,
            survivors: Vec::new(),
            notes: Vec::new(),
        };
        record.refresh();
        if record.status == CaseStatus::Closed {
            record.reason = closed_reason.to_string();
        }
        record
    }

    /// Status as determined by the recorded checks alone.
    pub fn derived_status(&self) -> CaseStatus {
        if self.preconditions.iter().all(|c| c.holds) && !self.candidates.iter().any(Candidate::survives) {
            CaseStatus::Closed
        } else {
            CaseStatus::Open
        }
    }

    pub fn surviving_assignments(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.candidates {
            c.survivor_labels("", &mut out);
        }
        out
    }

    fn refresh(&mut self) {
        self.status = self.derived_status();
        self.survivors = self.surviving_assignments();
        if self.status == CaseStatus::Open {
            self.reason = match self.preconditions.iter().find(|c| !c.holds) {
                Some(p) => format!("precondition fails: {}", p.condition),
                None => format!("{} surviving assignment(s)", self.survivors.len()),
            };
        }
    }

    pub fn is_closed(&self) -> bool {
        self.status == CaseStatus::Closed
    }
}
