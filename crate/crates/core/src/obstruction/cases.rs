use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::riemann_roch::{self as rr, CubicModel, SurfaceModel};
use super::{degree_bound, mu_bound, Candidate, CaseId, CaseRecord, Check, GroupSummary, HValueSets, ObstructionError};
use crate::chartable::CharacterTable;
use crate::exactnum::{rat, Rational};
use crate::invariants;

fn q(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn member(x: &Rational, set: &BTreeSet<u64>) -> bool {
    x.is_integer() && !x.is_negative() && x.to_integer().to_u64().is_some_and(|v| set.contains(&v))
}

fn is_in(name: &str, x: &Rational, set_name: &str) -> String {
    format!("{name} = {x} in {set_name}")
}

fn set_string(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Hypersurface centers: a hypersurface of degree at most the degree bound
/// would be cut out by a semi-invariant of that degree.
pub fn dim4_case_from(
    min_semiinvariant: Option<u32>,
    max_degree: u32,
    ambient_dim: u64,
) -> Result<CaseRecord, ObstructionError> {
    let bound = degree_bound(ambient_dim, ambient_dim - 1, &mu_bound(ambient_dim), false)?;
    let preconditions = vec![Check {
        condition: format!("semi-invariants searched up to degree {max_degree} >= {bound}"),
        holds: max_degree as u64 >= bound,
    }];
    let mut c = Candidate::new(format!("hypersurface of degree <= {bound}"));
    c.value("degree_bound", bound);
    match min_semiinvariant {
        Some(d) => c.value("min_semiinvariant_degree", d),
        None => c.value("min_semiinvariant_degree", format!("> {max_degree}")),
    }
    c.require(
        format!("a semi-invariant of degree <= {bound} exists"),
        min_semiinvariant.is_some_and(|d| d as u64 <= bound),
    );
    Ok(CaseRecord::assemble(
        CaseId::Dim4,
        preconditions,
        vec![c],
        &format!("no semi-invariant of degree <= {bound}"),
    ))
}

pub fn dim4_case(t: &CharacterTable, max_degree: u32) -> Result<CaseRecord, ObstructionError> {
    let rows = invariants::molien_rows(t, max_degree)?;
    let min = rows.iter().skip(1).find(|r| r.has_semi_invariant()).map(|r| r.degree);
    let chi = t.distinguished()?;
    let ambient = chi.degree().unwrap_or(1).saturating_sub(1);
    dim4_case_from(min, max_degree, ambient)
}

fn factorial(r: u64) -> u64 {
    (1..=r).product()
}

/// The center is a union of `r` conjugate components permuted transitively.
pub fn r_analysis(group: &GroupSummary, h: &HValueSets) -> CaseRecord {
    let full = h.ambient_dim + 1;
    let preconditions = vec![Check {
        condition: format!("H1 = {{{full}}}"),
        holds: *h.get(1) == BTreeSet::from([full]),
    }];
    let candidates = (2..=full)
        .map(|r| {
            let mut c = Candidate::new(format!("r={r}"));
            c.value("r", r);
            c.value("r!", factorial(r));
            c.value("projective_order", group.projective_order);
            c.value("simple", group.simple_modulo_center);
            c.require(
                format!("the projective image maps nontrivially to S_{r}"),
                !(group.simple_modulo_center && group.projective_order > factorial(r)),
            );
            c
        })
        .collect();
    CaseRecord::assemble(
        CaseId::RAnalysis,
        preconditions,
        candidates,
        &format!(
            "r = 1: a simple group of order {} embeds in no S_r with r <= {full}",
            group.projective_order
        ),
    )
}

/// A center that is a single point is a fixed point, spanning a line in the
/// dual representation.
pub fn dim0_case(r_record: &CaseRecord, h: &HValueSets) -> CaseRecord {
    let preconditions = vec![Check {
        condition: "r = 1 established".to_string(),
        holds: r_record.case == CaseId::RAnalysis && r_record.is_closed(),
    }];
    let mut c = Candidate::new("fixed point");
    c.value("h1", 1);
    c.require("h1 = 1 in H1", h.get(1).contains(&1));
    CaseRecord::assemble(
        CaseId::Dim0,
        preconditions,
        vec![c],
        &format!("1 not in H1 = {}: no fixed point", set_string(h.get(1))),
    )
}

pub fn curve_case(h: &HValueSets) -> Result<CaseRecord, ObstructionError> {
    let bound = degree_bound(h.ambient_dim, 1, &mu_bound(h.ambient_dim), false)?;
    let mut candidates = Vec::new();
    for &h1 in h.get(1) {
        for &h2 in h.get(2) {
            let (deg, genus) = rr::curve_from(&q(h1), &q(h2));
            let predicted: Vec<Rational> = (3..=5).map(|n| rr::curve_h(&deg, &genus, n)).collect();
            let mut c = Candidate::new(format!("h1={h1}, h2={h2}"));
            c.value("deg", &deg);
            c.value("g", &genus);
            c.value("degree_bound", bound);
            for (n, p) in (3..=5).zip(&predicted) {
                c.value(&format!("h{n}"), p);
            }
            c.require(format!("deg = {deg} >= 1"), deg >= rat(1));
            c.require(
                format!("g = {genus} is a nonnegative integer"),
                genus.is_integer() && !genus.is_negative(),
            );
            c.require(format!("deg = {deg} <= {bound}"), deg <= q(bound));
            for (n, p) in (3..=5).zip(&predicted) {
                c.require(is_in(&format!("h{n}"), p, &format!("H{n}")), member(p, h.get(n as u32)));
            }
            let canonical = rat(2) * &genus - rat(2);
            c.supplementary.push(Check {
                condition: format!("deg = {deg} > 2g - 2 = {canonical}"),
                holds: deg > canonical,
            });
            candidates.push(c);
        }
    }
    let mut record = CaseRecord::assemble(
        CaseId::Curve,
        Vec::new(),
        candidates,
        "every (deg, g) fitted to (h1, h2) is eliminated",
    );
    let failing: Vec<&str> = record
        .candidates
        .iter()
        .filter(|c| c.survives() && c.supplementary.iter().any(|s| !s.holds))
        .map(|c| c.label.as_str())
        .collect();
    if !failing.is_empty() {
        record.notes.push(format!(
            "surviving curves violate deg > 2g - 2 (not used for elimination): {}",
            failing.join("; ")
        ));
    }
    Ok(record)
}

pub fn surface_case(h: &HValueSets) -> Result<CaseRecord, ObstructionError> {
    let mut candidates = Vec::new();
    for &h1 in h.get(1) {
        for &h2 in h.get(2) {
            for &h3 in h.get(3) {
                let s = SurfaceModel::fit([&q(h1), &q(h2), &q(h3)])?;
                let (h4, h5) = (s.h(4), s.h(5));
                let mut c = Candidate::new(format!("h1={h1}, h2={h2}, h3={h3}"));
                c.value("d", &s.degree);
                c.value("HK", &s.hk);
                c.value("chi", &s.chi);
                c.value("h4", &h4);
                c.value("h5", &h5);
                c.require(format!("d = {} > 0", s.degree), s.degree.is_positive());
                c.require(is_in("h4", &h4, "H4"), member(&h4, h.get(4)));
                c.require(is_in("h5", &h5, "H5"), member(&h5, h.get(5)));
                candidates.push(c);
            }
        }
    }
    Ok(CaseRecord::assemble(
        CaseId::Surface,
        Vec::new(),
        candidates,
        "every (d, HK, chi) fitted to (h1, h2, h3) is eliminated",
    ))
}

pub fn threefold_case(h: &HValueSets) -> Result<CaseRecord, ObstructionError> {
    let mut candidates = Vec::new();
    for &h1 in h.get(1) {
        for &h2 in h.get(2) {
            for &h3 in h.get(3) {
                let (a, b, c3) = (q(h1), q(h2), q(h3));
                let lower = rr::h4_lower(&a, &b, &c3);
                let upper = rr::h4_upper(&a, &b, &c3);
                let mut parent = Candidate::new(format!("h1={h1}, h2={h2}, h3={h3}"));
                parent.value("h4_lower", &lower);
                parent.value("h4_upper", &upper);
                parent.require(format!("window {lower} <= h4 <= {upper} is nonempty"), lower <= upper);
                if parent.alive() {
                    let mut children = Vec::new();
                    for &h4 in h.get(4) {
                        let d = q(h4);
                        let hhh = rr::rr1(&a, &b, &c3, &d);
                        let hhk = rr::hhk_from(&rr::rr2(&a, &b, &c3), &hhh);
                        let model = CubicModel::fit([&a, &b, &c3, &d])?;
                        // RR-5 and the fitted cubic must agree on h5
                        let h5 = &hhh + rat(3) * &d - rat(3) * &c3 + &b;
                        debug_assert_eq!(model.h(5), h5);
                        debug_assert_eq!(rr::rr5(&b, &c3, &d, &h5), hhh);
                        let mut c = Candidate::new(format!("h4={h4}"));
                        c.value("HHH", &hhh);
                        c.value("HHK", &hhk);
                        c.value("gamma", &model.gamma);
                        c.value("chi", &model.chi);
                        c.value("g(C)", model.section_genus());
                        c.value("h5", &h5);
                        c.require(format!("h4 = {h4} >= {lower} (HHH = {hhh} >= 3)"), d >= lower);
                        c.require(format!("h4 = {h4} <= {upper} (HHK = {hhk} >= -2 - 2 HHH)"), d <= upper);
                        c.require(is_in("h5", &h5, "H5"), member(&h5, h.get(5)));
                        children.push(c);
                    }
                    parent.children = Some(children);
                }
                candidates.push(parent);
            }
        }
    }
    Ok(CaseRecord::assemble(
        CaseId::Threefold,
        Vec::new(),
        candidates,
        "every (h1, h2, h3, h4) is eliminated",
    ))
}

/// When every `H_n` is a single value the whole sequence `h_1..h_5` is
/// forced, and centers of dimension 1 to 3 would make it a polynomial of
/// degree at most 3. `None` if some `H_n` has several values.
pub fn hj_impossibility(h: &HValueSets) -> Option<CaseRecord> {
    if !h.all_singletons() || h.levels.len() < 5 {
        return None;
    }
    let seq: Vec<Rational> = (1..=5).map(|n| q(*h.get(n).first().expect("singleton"))).collect();
    let delta = rr::fourth_difference([&seq[0], &seq[1], &seq[2], &seq[3], &seq[4]]);
    let label: Vec<String> = seq.iter().map(Rational::to_string).collect();
    let mut c = Candidate::new(format!("h = ({})", label.join(", ")));
    c.value("fourth_difference", &delta);
    c.require(format!("fourth difference {delta} = 0"), delta == rat(0));
    let mut record = CaseRecord::assemble(
        CaseId::PolynomialFit,
        Vec::new(),
        vec![c],
        "no polynomial of degree <= 3 fits h1..h5",
    );
    record
        .notes
        .push("covers centers of dimension 1, 2 and 3 at once".to_string());
    Some(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[u64]]) -> HValueSets {
        HValueSets::from_sets(5, v.iter().map(|s| s.iter().copied().collect()).collect())
    }

    fn summary(order: u64, simple: bool) -> GroupSummary {
        GroupSummary {
            name: "G".into(),
            order,
            projective_order: order,
            simple_modulo_center: simple,
            primitive: true,
            representation: "6a".into(),
            degree: 6,
        }
    }

    #[test]
    fn degenerate_curve_is_discarded() {
        let h = sets(&[&[6], &[6], &[6], &[6], &[6]]);
        let r = curve_case(&h).unwrap();
        assert!(r.is_closed());
        assert_eq!(r.candidates[0].checks.last().unwrap().condition, "deg = 0 >= 1");
    }

    #[test]
    fn genuine_cubic_keeps_the_fit_open() {
        // h_n = n^3 gives a zero fourth difference
        let h = sets(&[&[1], &[8], &[27], &[64], &[125]]);
        assert!(!hj_impossibility(&h).unwrap().is_closed());
        assert!(hj_impossibility(&sets(&[&[6], &[21, 20], &[56], &[126], &[252]])).is_none());
    }

    #[test]
    fn r_analysis_needs_a_large_simple_image() {
        let h = sets(&[&[6], &[21], &[56], &[126], &[252]]);
        assert!(r_analysis(&summary(2520, true), &h).is_closed());
        let open = r_analysis(&summary(2520, false), &h);
        assert!(!open.is_closed());
        assert_eq!(open.survivors.len(), 5);
        // 360 < 6! leaves r = 6
        assert_eq!(r_analysis(&summary(360, true), &h).survivors, vec!["r=6"]);
        let d0 = dim0_case(&open, &h);
        assert!(!d0.is_closed());
        assert!(d0.reason.starts_with("precondition fails"));
    }

    #[test]
    fn surface_discards_nonpositive_degree() {
        let h = sets(&[&[6], &[21], &[20, 36, 56], &[111], &[186]]);
        let r = surface_case(&h).unwrap();
        assert_eq!(r.survivors, vec!["h1=6, h2=21, h3=56"]);
        assert_eq!(r.candidates[0].values["d"], "-16");
        assert_eq!(r.candidates[1].checks[0].condition, "d = 0 > 0");
    }

    #[test]
    fn dim4_uses_the_degree_bound() {
        assert!(!dim4_case_from(Some(4), 12, 5).unwrap().is_closed());
        assert!(dim4_case_from(Some(7), 12, 5).unwrap().is_closed());
        assert!(dim4_case_from(None, 12, 5).unwrap().is_closed());
        assert!(!dim4_case_from(None, 5, 5).unwrap().is_closed());
    }
}
