use std::path::PathBuf;

use exceptcheck::chartable::{self, CharacterTable};
use exceptcheck::sympow::{
    achievable_subdims, allowed_h_values, decompose, reconstruct, sym_dimension, sym_power_series,
};

fn table(name: &str) -> CharacterTable {
    chartable::load(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)).unwrap()
}

#[test]
fn a7_symmetric_power_decompositions() {
    let t = table("6A7.json");
    let chi = t.distinguished().unwrap();
    let series = sym_power_series(&chi, 5).unwrap();
    let degrees: Vec<Vec<u64>> = series.iter().map(|f| decompose(f).unwrap().degree_multiset()).collect();
    assert_eq!(degrees[1], vec![6]);
    assert_eq!(degrees[3], vec![20, 36]);
    assert_eq!(degrees[4], vec![6, 15, 15, 21, 21, 24, 24]);
    // a constituent of degree 11 does not exist here; the 252 dimensions
    // split as 2*6 + 2*24 + 2*24 + 4*36
    assert_eq!(degrees[5], vec![6, 6, 24, 24, 24, 24, 36, 36, 36, 36]);
    // the two 15s and the two 24-dimensional pairs are distinct characters
    let d4 = decompose(&series[4]).unwrap();
    assert_eq!(d4.parts.len(), 6);
    let d5 = decompose(&series[5]).unwrap();
    assert_eq!(d5.parts.len(), 4);
    let subs = achievable_subdims(&d5);
    assert!(subs.contains(&186));
    assert!(subs.contains(&30) && subs.contains(&6));
    assert!(!subs.contains(&81) && !subs.contains(&73));
}

#[test]
fn a7_allowed_h_values() {
    let t = table("6A7.json");
    assert_eq!(
        allowed_h_values(&t, 1, 5).unwrap().into_iter().collect::<Vec<_>>(),
        vec![6]
    );
    assert_eq!(
        allowed_h_values(&t, 3, 5).unwrap().into_iter().collect::<Vec<_>>(),
        vec![20, 36, 56]
    );
    let h4 = allowed_h_values(&t, 4, 5).unwrap();
    assert!(h4.contains(&120) && h4.contains(&126));
    for h in [106].into_iter().chain(114..=119).chain(121..=125) {
        assert!(!h4.contains(&h), "{h}");
    }
    let h5 = allowed_h_values(&t, 5, 5).unwrap();
    for h in [171, 179] {
        assert!(!h5.contains(&h), "{h}");
    }
    assert!(h5.contains(&66));
}

#[test]
fn hall_janko_low_powers_are_irreducible() {
    let t = table("2HaJ.json");
    let chi = t.distinguished().unwrap();
    let series = sym_power_series(&chi, 5).unwrap();
    for (n, f) in series.iter().enumerate().skip(1) {
        assert!(decompose(f).unwrap().is_irreducible(), "n = {n}");
        let h = allowed_h_values(&t, n as u32, 5).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![sym_dimension(6, n as u64)]);
    }
}

#[test]
fn degrees_and_reconstruction_on_all_tables() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut names: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    for name in names.iter().filter_map(|n| n.to_str()).filter(|n| n.ends_with(".json")) {
        let t = table(name);
        let chi = t.distinguished().unwrap();
        let dim = chi.degree().unwrap();
        for (n, f) in sym_power_series(&chi, 12).unwrap().iter().enumerate() {
            assert_eq!(f.degree(), Some(sym_dimension(dim, n as u64)), "{name} n = {n}");
            let d = decompose(f).unwrap();
            assert_eq!(&reconstruct(&t, &d), f);
            let subs = achievable_subdims(&d);
            let total = d.degree();
            assert!(subs.iter().all(|q| subs.contains(&(total - q))));
        }
    }
}
