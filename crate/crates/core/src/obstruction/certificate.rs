use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cases::{curve_case, dim0_case, dim4_case_from, hj_impossibility, r_analysis, surface_case, threefold_case};
use super::{CaseId, CaseRecord, CaseStatus, GroupSummary, HValueSets, ObstructionError, WIRED_AMBIENT_DIM};
use crate::chartable::CharacterTable;
use crate::invariants::{self, MolienRow, DEFAULT_MAX_DEGREE};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    CriterionVerified,
    NotExceptional { witness_degree: u32 },
    Inconclusive { open_cases: Vec<CaseId>, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiInvariantSummary {
    pub max_degree: u32,
    /// A semi-invariant of degree at most this rules exceptionality out.
    pub threshold: u64,
    pub min_semiinvariant_degree: Option<u32>,
    pub min_invariant_degree: Option<u32>,
    pub rows: Vec<MolienRow>,
}

impl SemiInvariantSummary {
    pub fn compute(t: &CharacterTable, max_degree: u32, ambient_dim: u64) -> Result<Self, ObstructionError> {
        let rows = invariants::molien_rows(t, max_degree)?;
        Ok(SemiInvariantSummary {
            max_degree,
            threshold: ambient_dim + 1,
            min_semiinvariant_degree: rows.iter().skip(1).find(|r| r.has_semi_invariant()).map(|r| r.degree),
            min_invariant_degree: rows.iter().skip(1).find(|r| r.invariants > 0).map(|r| r.degree),
            rows,
        })
    }
}

/// Values stated elsewhere that the certificate should be compared against.
/// Differences are reported in the notes and never affect the verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
pub struct ReferenceValues {
    /// `(deg, g)` of candidate curves.
    #[serde(default)]
    pub curves: Vec<(i64, i64)>,
    /// `(d, HK, chi)` of candidate surfaces.
    #[serde(default)]
    pub surface_triples: Vec<(i64, i64, i64)>,
    #[serde(default)]
    pub threefolds: Vec<ThreefoldReference>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ThreefoldReference {
    pub h3: u64,
    pub h4: u64,
    #[serde(default)]
    pub hhh: Option<i64>,
    #[serde(default)]
    pub h5: Option<i64>,
}

impl ReferenceValues {
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, String> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub max_degree: u32,
    /// Close curves, surfaces and threefolds with one finite difference when
    /// every `H_n` is a singleton.
    pub polynomial_fit: bool,
    pub reference: Option<ReferenceValues>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            polynomial_fit: true,
            reference: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalityCertificate {
    pub schema: u32,
    pub group: GroupSummary,
    pub ambient_dim: u64,
    pub verdict: Verdict,
    pub semiinvariants: SemiInvariantSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_values: Option<HValueSets>,
    pub cases: Vec<CaseRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn check_exceptionality(t: &CharacterTable) -> Result<ExceptionalityCertificate, ObstructionError> {
    check_exceptionality_with(t, &CheckOptions::default())
}

pub fn check_exceptionality_with(
    t: &CharacterTable,
    options: &CheckOptions,
) -> Result<ExceptionalityCertificate, ObstructionError> {
    if !t.primitive {
        return Err(ObstructionError::NotPrimitive);
    }
    let group = GroupSummary::from_table(t)?;
    if !matches!(group.degree, 6 | 7) {
        return Err(ObstructionError::UnsupportedDegree(group.degree.to_string()));
    }
    let ambient_dim = group.degree - 1;
    let semiinvariants = SemiInvariantSummary::compute(t, options.max_degree, ambient_dim)?;
    let mut cert = ExceptionalityCertificate {
        schema: CERTIFICATE_SCHEMA,
        group,
        ambient_dim,
        verdict: Verdict::CriterionVerified,
        semiinvariants,
        h_values: None,
        cases: Vec::new(),
        notes: Vec::new(),
    };
    let decided = cert
        .semiinvariants
        .min_semiinvariant_degree
        .is_some_and(|d| d as u64 <= cert.semiinvariants.threshold);
    if !decided {
        if ambient_dim == WIRED_AMBIENT_DIM {
            let h = HValueSets::compute(t, ambient_dim)?;
            cert.cases = build_cases(&cert.group, &cert.semiinvariants, &h, options.polynomial_fit)?;
            cert.h_values = Some(h);
        } else {
            cert.notes.push(format!(
                "the geometric cases are implemented for ambient dimension {WIRED_AMBIENT_DIM} only"
            ));
        }
    }
    cert.verdict = cert.derive_verdict();
    if let Some(reference) = &options.reference {
        cert.notes.extend(cert.compare_with(reference));
    }
    Ok(cert)
}

fn build_cases(
    group: &GroupSummary,
    semi: &SemiInvariantSummary,
    h: &HValueSets,
    polynomial_fit: bool,
) -> Result<Vec<CaseRecord>, ObstructionError> {
    let dim4 = dim4_case_from(semi.min_semiinvariant_degree, semi.max_degree, h.ambient_dim)?;
    let r = r_analysis(group, h);
    let dim0 = dim0_case(&r, h);
    let mut cases = vec![dim4, r, dim0];
    match hj_impossibility(h).filter(|_| polynomial_fit) {
        Some(fit) => cases.push(fit),
        None => {
            cases.push(curve_case(h)?);
            cases.push(surface_case(h)?);
            cases.push(threefold_case(h)?);
        }
    }
    Ok(cases)
}

impl ExceptionalityCertificate {
    /// The verdict implied by the recorded semi-invariant data and by the
    /// check outcomes in the case records, ignoring their stored status.
    pub fn derive_verdict(&self) -> Verdict {
        let semi = &self.semiinvariants;
        if let Some(d) = semi.min_semiinvariant_degree {
            if d as u64 <= semi.threshold {
                return Verdict::NotExceptional { witness_degree: d };
            }
        }
        let open: Vec<CaseId> = self
            .cases
            .iter()
            .filter(|c| c.derived_status() == CaseStatus::Open)
            .map(|c| c.case)
            .collect();
        let present: BTreeSet<CaseId> = self.cases.iter().map(|c| c.case).collect();
        let geometric = present.contains(&CaseId::PolynomialFit)
            || [CaseId::Curve, CaseId::Surface, CaseId::Threefold]
                .iter()
                .all(|c| present.contains(c));
        let complete = self.h_values.is_some()
            && [CaseId::Dim4, CaseId::RAnalysis, CaseId::Dim0]
                .iter()
                .all(|c| present.contains(c))
            && geometric
            && (semi.max_degree as u64) >= semi.threshold;
        if !complete {
            return Verdict::Inconclusive {
                open_cases: open,
                reason: "case analysis is incomplete".to_string(),
            };
        }
        if open.is_empty() {
            Verdict::CriterionVerified
        } else {
            let names: Vec<String> = open.iter().map(CaseId::to_string).collect();
            Verdict::Inconclusive {
                reason: format!("open cases: {}", names.join(", ")),
                open_cases: open,
            }
        }
    }

    /// Recomputes every case record from the stored H-sets and group data and
    /// checks that status, verdict and trail agree.
    pub fn verify(&self) -> Result<(), Vec<String>> {
        let mut problems = Vec::new();
        for c in &self.cases {
            if c.status != c.derived_status() {
                problems.push(format!("{}: stored status disagrees with its checks", c.case));
            }
        }
        if let Some(h) = &self.h_values {
            let fit = self.cases.iter().any(|c| c.case == CaseId::PolynomialFit);
            match build_cases(&self.group, &self.semiinvariants, h, fit) {
                Ok(fresh) => {
                    if fresh.len() != self.cases.len() {
                        problems.push("case list differs from recomputation".to_string());
                    }
                    for (stored, fresh) in self.cases.iter().zip(&fresh) {
                        if stored != fresh {
                            problems.push(format!("{}: trail differs from recomputation", stored.case));
                        }
                    }
                }
                Err(e) => problems.push(format!("recomputation failed: {e}")),
            }
        } else if !self.cases.is_empty() {
            problems.push("case records without H-sets".to_string());
        }
        if self.verdict != self.derive_verdict() {
            problems.push("stored verdict disagrees with the case records".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    /// As [`verify`](Self::verify), also recomputing the semi-invariant data,
    /// the group summary and the H-sets from the table.
    pub fn verify_against(&self, t: &CharacterTable) -> Result<(), Vec<String>> {
        let mut problems = self.verify().err().unwrap_or_default();
        match GroupSummary::from_table(t) {
            Ok(g) if g == self.group => {}
            _ => problems.push("group summary differs from the table".to_string()),
        }
        match SemiInvariantSummary::compute(t, self.semiinvariants.max_degree, self.ambient_dim) {
            Ok(s) if s == self.semiinvariants => {}
            _ => problems.push("semi-invariant summary differs from the table".to_string()),
        }
        if let Some(h) = &self.h_values {
            match HValueSets::compute(t, self.ambient_dim) {
                Ok(fresh) if &fresh == h => {}
                _ => problems.push("H-sets differ from the table".to_string()),
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    pub fn case(&self, id: CaseId) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.case == id)
    }

    fn compare_with(&self, reference: &ReferenceValues) -> Vec<String> {
        let mut notes = Vec::new();
        let leaves = |id: CaseId| -> Vec<&super::Candidate> {
            self.case(id).map(|c| c.candidates.iter().collect()).unwrap_or_default()
        };
        let curves = leaves(CaseId::Curve);
        for &(deg, g) in &reference.curves {
            let found = curves
                .iter()
                .any(|c| c.values.get("deg") == Some(&deg.to_string()) && c.values.get("g") == Some(&g.to_string()));
            if !found {
                notes.push(format!(
                    "reference curve (deg, g) = ({deg}, {g}) is not among the derived solutions"
                ));
            }
        }
        let surfaces = leaves(CaseId::Surface);
        let derived: Vec<String> = surfaces
            .iter()
            .map(|c| format!("({}, {}, {})", c.values["d"], c.values["HK"], c.values["chi"]))
            .collect();
        for &(d, hk, chi) in &reference.surface_triples {
            let triple = format!("({d}, {hk}, {chi})");
            if !derived.contains(&triple) {
                notes.push(format!(
                    "reference surface triple (d, HK, chi) = {triple} solves the system for no admissible (h1, h2, h3); derived: {}",
                    derived.join(", ")
                ));
            }
        }
        let threefolds = leaves(CaseId::Threefold);
        for r in &reference.threefolds {
            let prefix = format!("h3={}", r.h3);
            let child = threefolds
                .iter()
                .filter(|p| p.label.ends_with(&prefix))
                .flat_map(|p| p.children.iter().flatten())
                .find(|c| c.label == format!("h4={}", r.h4));
            let Some(child) = child else {
                notes.push(format!(
                    "reference threefold (h3, h4) = ({}, {}) was not examined",
                    r.h3, r.h4
                ));
                continue;
            };
            for (name, stated) in [("HHH", r.hhh), ("h5", r.h5)] {
                if let Some(stated) = stated {
                    let derived = &child.values[name];
                    if *derived != stated.to_string() {
                        notes.push(format!(
                            "reference {name} = {stated} for (h3, h4) = ({}, {}) differs from the recomputed {derived}",
                            r.h3, r.h4
                        ));
                    }
                }
            }
        }
        notes
    }
}
