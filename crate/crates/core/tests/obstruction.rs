use std::path::PathBuf;

use exceptcheck::chartable::{self, CharacterTable};
use exceptcheck::exactnum::{rat, ratio, Rational};
use exceptcheck::obstruction::riemann_roch::{rr1, rr2, rr5, CubicModel};
use exceptcheck::obstruction::{
    check_exceptionality, check_exceptionality_with, degree_bound, degree_exponent, CaseId, CheckOptions,
    ExceptionalityCertificate, ObstructionError, ReferenceValues, Verdict,
};
use proptest::prelude::*;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn table(name: &str) -> CharacterTable {
    chartable::load(data().join(name)).unwrap()
}

#[test]
fn degree_bound_examples() {
    assert_eq!(degree_bound(5, 1, &rat(7), false).unwrap(), 15);
    assert_eq!(degree_exponent(5, 1, &rat(7), false).unwrap(), (4, 2));
    // hypersurfaces: s = 1, r = 5
    assert_eq!(degree_bound(5, 4, &rat(7), false).unwrap(), 6);
    // non-integer mu at most s + 1
    assert_eq!(degree_bound(5, 1, &ratio(9, 2), true).unwrap(), 1);
    assert_eq!(degree_bound(5, 1, &rat(5), true).unwrap(), 5);
    assert_eq!(degree_bound(5, 2, &ratio(15, 4), false).unwrap(), 1);
    assert!(matches!(
        degree_bound(5, 1, &rat(3), true),
        Err(ObstructionError::NegativeR(-1))
    ));
    assert!(matches!(
        degree_bound(5, 6, &rat(7), true),
        Err(ObstructionError::InvalidArgument(_))
    ));
    assert!(matches!(
        degree_bound(5, 1, &rat(0), true),
        Err(ObstructionError::InvalidArgument(_))
    ));
}

fn mutants(cert: &ExceptionalityCertificate) -> Vec<ExceptionalityCertificate> {
    fn flip_candidates(
        base: &ExceptionalityCertificate,
        path: &mut Vec<usize>,
        case: usize,
        out: &mut Vec<ExceptionalityCertificate>,
    ) {
        let mut node = &base.cases[case].candidates[path[0]];
        for &i in &path[1..] {
            node = &node.children.as_ref().unwrap()[i];
        }
        if let Some(k) = node.checks.iter().position(|c| !c.holds) {
            let mut m = base.clone();
            let mut target = &mut m.cases[case].candidates[path[0]];
            for &i in &path[1..] {
                target = &mut target.children.as_mut().unwrap()[i];
            }
            target.checks[k].holds = true;
            out.push(m);
        }
        if let Some(children) = &node.children {
            for i in 0..children.len() {
                path.push(i);
                flip_candidates(base, path, case, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for (ci, case) in cert.cases.iter().enumerate() {
        for pi in 0..case.preconditions.len() {
            let mut m = cert.clone();
            m.cases[ci].preconditions[pi].holds = false;
            out.push(m);
        }
        for i in 0..case.candidates.len() {
            flip_candidates(cert, &mut vec![i], ci, &mut out);
        }
    }
    out
}

fn assert_mutations_flip(cert: &ExceptionalityCertificate) {
    assert_eq!(cert.verdict, Verdict::CriterionVerified);
    let all = mutants(cert);
    assert!(!all.is_empty());
    for m in &all {
        assert!(
            matches!(m.derive_verdict(), Verdict::Inconclusive { .. }),
            "a flipped verdict left the certificate verified"
        );
        assert!(m.verify().is_err());
    }
}

#[test]
fn hall_janko_is_verified() {
    let t = table("2HaJ.json");
    let cert = check_exceptionality(&t).unwrap();
    assert_eq!(cert.verdict, Verdict::CriterionVerified);
    assert_eq!(cert.semiinvariants.min_semiinvariant_degree, Some(12));
    let ids: Vec<CaseId> = cert.cases.iter().map(|c| c.case).collect();
    assert_eq!(
        ids,
        [CaseId::Dim4, CaseId::RAnalysis, CaseId::Dim0, CaseId::PolynomialFit]
    );
    assert!(cert.cases.iter().all(|c| c.is_closed()));
    let fit = cert.case(CaseId::PolynomialFit).unwrap();
    assert_eq!(fit.candidates[0].label, "h = (6, 21, 56, 126, 252)");
    assert_eq!(fit.candidates[0].values["fourth_difference"], "6");
    assert_eq!(cert.group.projective_order, 604800);
    cert.verify_against(&t).unwrap();
    assert_mutations_flip(&cert);
}

#[test]
fn hall_janko_case_by_case() {
    let t = table("2HaJ.json");
    let options = CheckOptions {
        polynomial_fit: false,
        ..CheckOptions::default()
    };
    let cert = check_exceptionality_with(&t, &options).unwrap();
    assert_eq!(cert.verdict, Verdict::CriterionVerified);
    let curve = &cert.case(CaseId::Curve).unwrap().candidates[0];
    assert_eq!((curve.values["deg"].as_str(), curve.values["g"].as_str()), ("15", "10"));
    assert_eq!(curve.checks.last().unwrap().condition, "h3 = 36 in H3");
    let surface = &cert.case(CaseId::Surface).unwrap().candidates[0];
    assert_eq!(surface.values["h4"], "111");
    let threefold = &cert.case(CaseId::Threefold).unwrap().candidates[0];
    let child = &threefold.children.as_ref().unwrap()[0];
    assert_eq!(
        (child.values["HHH"].as_str(), child.values["h5"].as_str()),
        ("15", "246")
    );
    cert.verify_against(&t).unwrap();
    assert_mutations_flip(&cert);
}

#[test]
fn six_a7_is_inconclusive_with_its_survivors() {
    let t = table("6A7.json");
    let reference = ReferenceValues::load(data().join("reference/6A7.json")).unwrap();
    let options = CheckOptions {
        reference: Some(reference),
        ..CheckOptions::default()
    };
    let cert = check_exceptionality_with(&t, &options).unwrap();
    assert_eq!(cert.semiinvariants.min_semiinvariant_degree, Some(12));
    match &cert.verdict {
        Verdict::Inconclusive { open_cases, .. } => {
            assert_eq!(open_cases, &[CaseId::Curve, CaseId::Surface, CaseId::Threefold])
        }
        v => panic!("unexpected verdict {v:?}"),
    }
    for id in [CaseId::Dim4, CaseId::RAnalysis, CaseId::Dim0] {
        assert!(cert.case(id).unwrap().is_closed(), "{id}");
    }
    assert_eq!(cert.case(CaseId::Curve).unwrap().survivors, ["h1=6, h2=21"]);
    assert_eq!(cert.case(CaseId::Surface).unwrap().survivors, ["h1=6, h2=21, h3=56"]);
    assert_eq!(
        cert.case(CaseId::Threefold).unwrap().survivors,
        ["h1=6, h2=21, h3=56, h4=120", "h1=6, h2=21, h3=56, h4=126"]
    );

    let threefold = cert.case(CaseId::Threefold).unwrap();
    let windows: Vec<(&str, &str)> = threefold
        .candidates
        .iter()
        .map(|c| (c.values["h4_lower"].as_str(), c.values["h4_upper"].as_str()))
        .collect();
    assert_eq!(windows, [("6", "-12"), ("54", "52"), ("114", "132")]);
    let children = threefold.candidates[2].children.as_ref().unwrap();
    let pick = |h4: &str| children.iter().find(|c| c.label == format!("h4={h4}")).unwrap();
    let a = pick("120");
    assert_eq!(
        ["HHH", "HHK", "gamma", "chi", "g(C)", "h5"].map(|k| a.values[k].as_str()),
        ["9", "4", "18", "2", "12", "222"]
    );
    let b = pick("126");
    assert_eq!(
        ["HHH", "HHK", "gamma", "chi", "g(C)", "h5"].map(|k| b.values[k].as_str()),
        ["15", "-20", "150", "-4", "6", "246"]
    );

    let surface = cert.case(CaseId::Surface).unwrap();
    let triples: Vec<String> = surface
        .candidates
        .iter()
        .map(|c| format!("({}, {}, {})", c.values["d"], c.values["HK"], c.values["chi"]))
        .collect();
    assert_eq!(triples, ["(-16, -78, -25)", "(0, -30, -9)", "(20, 30, 11)"]);

    let curve = cert.case(CaseId::Curve).unwrap();
    assert!(curve.notes[0].contains("deg > 2g - 2"));
    assert_eq!(curve.candidates[0].values["h5"], "66");

    // reference values: curve reproduced, surfaces and h5 not
    assert_eq!(cert.notes.iter().filter(|n| n.contains("surface triple")).count(), 3);
    assert!(cert.notes.iter().any(|n| n.contains("h5 = 171") && n.contains("222")));
    assert!(cert.notes.iter().any(|n| n.contains("h5 = 179") && n.contains("246")));
    assert!(!cert.notes.iter().any(|n| n.contains("curve")));
    assert!(!cert.notes.iter().any(|n| n.contains("HHH")));
    cert.verify_against(&t).unwrap();
}

#[test]
fn other_groups_are_not_exceptional() {
    let expected = [
        ("2A5.json", 4),
        ("6A6.json", 6),
        ("3A7.json", 3),
        ("SL2F7.json", 4),
        ("SL2F11.json", 4),
        ("SL2F13.json", 4),
        ("SU3F3.json", 6),
        ("6PSL3F4.json", 6),
        ("PSL2F13.json", 2),
        ("PSL2F8.json", 2),
        ("PSU3F3.json", 3),
    ];
    for (name, d) in expected {
        let cert = check_exceptionality(&table(name)).unwrap();
        assert_eq!(cert.verdict, Verdict::NotExceptional { witness_degree: d }, "{name}");
        assert!(cert.cases.is_empty());
        cert.verify().unwrap();
    }
}

#[test]
fn certificates_are_deterministic() {
    let t = table("6A7.json");
    let a = serde_json::to_string(&check_exceptionality(&t).unwrap()).unwrap();
    let b = serde_json::to_string(&check_exceptionality(&t).unwrap()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"]["kind"], "inconclusive");
}

#[test]
fn tampered_status_is_detected() {
    let mut cert = check_exceptionality(&table("6A7.json")).unwrap();
    cert.verify().unwrap();
    let idx = cert.cases.iter().position(|c| c.case == CaseId::Curve).unwrap();
    cert.cases[idx].status = exceptcheck::obstruction::CaseStatus::Closed;
    assert!(cert.verify().is_err());
    // a missing case can never yield a verified certificate
    let mut cert = check_exceptionality(&table("2HaJ.json")).unwrap();
    cert.cases.retain(|c| c.case != CaseId::Dim0);
    assert!(matches!(cert.derive_verdict(), Verdict::Inconclusive { .. }));
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rr_identities_recover_random_cubics(
        hhh in small_rational(),
        hhk in small_rational(),
        gamma in small_rational(),
        chi in small_rational(),
    ) {
        let model = CubicModel { hhh: hhh.clone(), hhk: hhk.clone(), gamma: gamma.clone(), chi: chi.clone() };
        let h: Vec<Rational> = (1..=5).map(|n| model.h(n)).collect();
        prop_assert_eq!(rr1(&h[0], &h[1], &h[2], &h[3]), hhh.clone());
        prop_assert_eq!(rr5(&h[1], &h[2], &h[3], &h[4]), hhh.clone());
        prop_assert_eq!(rr2(&h[0], &h[1], &h[2]), rat(2) * &hhh + &hhk / rat(2));
        let fitted = CubicModel::fit([&h[0], &h[1], &h[2], &h[3]]).unwrap();
        prop_assert_eq!(fitted, model);
    }

    #[test]
    fn degree_bound_is_monotone_in_mu(n in 1u64..8, dim in 0u64..8, a in 1i64..60, b in 1i64..60, den in 1i64..5) {
        prop_assume!(dim <= n);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for attained in [true, false] {
            let x = degree_bound(n, dim, &ratio(lo, den), attained);
            let y = degree_bound(n, dim, &ratio(hi, den), attained);
            if let (Ok(x), Ok(y)) = (&x, &y) {
                prop_assert!(x <= y);
            }
            // a valid smaller mu implies a valid larger one
            if x.is_ok() {
                prop_assert!(y.is_ok());
            }
        }
    }

    #[test]
    fn degree_bound_is_monotone_in_s_at_fixed_r(r in 0i64..6, s in 0i64..6, frac in 0i64..4) {
        // mu chosen so that r stays fixed while s grows by one
        let mu = |s: i64| ratio(4 * (s + r) + frac, 4);
        prop_assume!(s + r + frac > 0);
        let n = 8u64;
        let lower = degree_bound(n, n - s as u64, &mu(s), true).unwrap();
        let upper = degree_bound(n, n - s as u64 - 1, &mu(s + 1), true).unwrap();
        prop_assert!(lower <= upper);
    }
}
