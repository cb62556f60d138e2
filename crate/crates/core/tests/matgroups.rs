use std::path::PathBuf;
use std::time::Instant;

use exceptcheck::chartable;
use exceptcheck::exactnum::{parse_literal, CyclotomicNumber};
use exceptcheck::invariants::molien_coefficients;
use exceptcheck::matgroup::{closure, GeneratorFile};

fn data(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(path)
}

#[test]
fn heisenberg_group() {
    let file = GeneratorFile::load(data("matgroups/H7.json")).unwrap();
    let h = closure(&file.generators, 1000).unwrap();
    assert_eq!(h.order(), 343);
    let character = h.character().unwrap();
    for class in &character.classes {
        if class.size == 1 {
            let k = (0..7)
                .find(|&k| class.trace == CyclotomicNumber::root_of_unity(7, k).scale(&exceptcheck::exactnum::rat(7)));
            assert!(k.is_some(), "{}", class.trace);
        } else {
            assert!(class.trace.is_zero());
        }
    }
    assert_eq!(character.classes.iter().filter(|c| c.size == 1).count(), 7);
}

#[test]
fn g7_order_and_degree_seven_invariant() {
    let file = GeneratorFile::load(data("matgroups/G7.json")).unwrap();
    for g in &file.generators {
        assert_eq!(g.determinant(), CyclotomicNumber::one());
    }
    let start = Instant::now();
    let g7 = closure(&file.generators, 200_000).unwrap();
    eprintln!("closure: {:?}", start.elapsed());
    assert_eq!(g7.order(), 115_248);

    let heisenberg = closure(&file.generators[..2], 1000).unwrap();
    assert!(heisenberg.is_normalized_by(&file.generators));

    let start = Instant::now();
    let coefficients = g7.molien_coefficients(7).unwrap();
    eprintln!("molien: {:?} {:?}", start.elapsed(), coefficients);
    assert_eq!(coefficients[0], 1);
    assert!(coefficients[1..7].iter().all(|&c| c == 0));
    assert!(coefficients[7] >= 1);
}

#[test]
fn binary_icosahedral_calibration() {
    let file = GeneratorFile::load(data("matgroups/2A5_dim2.json")).unwrap();
    let group = closure(&file.generators, 1000).unwrap();
    assert_eq!(group.order(), 120);
    let direct = group.molien_coefficients(12).unwrap();
    assert_eq!(direct.iter().position(|&c| c > 0), Some(0));
    assert_eq!((1..=12).find(|&n| direct[n] > 0), Some(12));

    let table = chartable::load(data("2A5.json")).unwrap();
    let character = group.character().unwrap();
    let golden = parse_literal("z5 + z5^4").unwrap();
    assert!(character
        .classes
        .iter()
        .any(|c| c.trace == golden || c.trace == -golden.clone()));
    let matching: Vec<_> = table
        .irreducibles
        .iter()
        .enumerate()
        .filter(|(i, _)| character.matches(&table.irreducible(*i)))
        .map(|(_, chi)| chi.name.clone())
        .collect();
    // Galois conjugate characters have the same class multiset
    assert_eq!(matching, vec!["2a".to_string(), "2b".to_string()]);
    for name in &matching {
        let chi = table.character(name).unwrap();
        assert_eq!(molien_coefficients(&chi, 12).unwrap(), direct);
    }
}
