//! Consistency checks for ingested character tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CharacterTable, DEFAULT_MAX_POWER_DEGREE};
use crate::exactnum::{CyclotomicNumber, Rational};

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    /// Power maps must exist for every prime up to this bound.
    pub max_power_degree: u32,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            max_power_degree: DEFAULT_MAX_POWER_DEGREE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ClassSizeSum,
    IdentityClass,
    ClassCount,
    PowerMap,
    DegreeMismatch,
    ValueCount,
    DegreeSquareSum,
    TrivialCharacter,
    FirstOrthogonality,
    SecondOrthogonality,
    Distinguished,
    CenterInCommutator,
    SimpleModuloCenter,
    NonRationalSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub group_name: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

pub fn validate(t: &CharacterTable) -> ValidationReport {
    validate_with(t, ValidationOptions::default())
}

pub fn validate_with(t: &CharacterTable, options: ValidationOptions) -> ValidationReport {
    let mut v = Checker { t, out: Vec::new() };
    v.classes(options.max_power_degree);
    let shape_ok = v.characters();
    if shape_ok {
        v.orthogonality();
        v.distinguished();
        v.normal_structure();
    }
    ValidationReport {
        group_name: t.group_name.clone(),
        violations: v.out,
    }
}

struct Checker<'a> {
    t: &'a CharacterTable,
    out: Vec<Violation>,
}

fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

impl Checker<'_> {
    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.out.push(Violation { kind, detail });
    }

    fn classes(&mut self, max_power_degree: u32) {
        let t = self.t;
        let total: u128 = t.classes.iter().map(|c| c.size as u128).sum();
        if total != t.order as u128 {
            self.push(
                ViolationKind::ClassSizeSum,
                format!("class sizes sum to {total}, group order is {}", t.order),
            );
        }
        match t.classes.first() {
            Some(c) if c.size == 1 && c.element_order == 1 => {}
            Some(c) => self.push(
                ViolationKind::IdentityClass,
                format!("class 0 has size {} and element order {}", c.size, c.element_order),
            ),
            None => self.push(ViolationKind::IdentityClass, "table has no classes".into()),
        }
        for c in &t.classes {
            if c.size == 0 || !t.order.is_multiple_of(c.size.max(1)) {
                self.push(
                    ViolationKind::ClassSizeSum,
                    format!("class {} has size {} not dividing the order", c.index, c.size),
                );
            }
        }
        let primes = primes_up_to(max_power_degree);
        for c in &t.classes {
            for &p in &primes {
                let Some(&target) = c.power_maps.get(&p) else {
                    self.push(
                        ViolationKind::PowerMap,
                        format!("class {} lacks the power map for prime {p}", c.index),
                    );
                    continue;
                };
                let Some(image) = t.classes.get(target) else {
                    self.push(
                        ViolationKind::PowerMap,
                        format!("class {} maps under {p} to missing class {target}", c.index),
                    );
                    continue;
                };
                let expected = c.element_order / c.element_order.gcd(&p);
                if image.element_order != expected {
                    self.push(
                        ViolationKind::PowerMap,
                        format!(
                            "class {} (order {}) maps under {p} to class {target} of order {}, expected {expected}",
                            c.index, c.element_order, image.element_order
                        ),
                    );
                }
                if c.index == 0 && target != 0 {
                    self.push(
                        ViolationKind::PowerMap,
                        format!("power map {p} moves the identity class"),
                    );
                }
            }
        }
    }

    /// Returns false when the character list has the wrong shape, in which
    /// case the orthogonality checks are skipped.
    fn characters(&mut self) -> bool {
        let t = self.t;
        let k = t.class_count();
        let mut ok = true;
        if t.irreducibles.len() != k {
            self.push(
                ViolationKind::ClassCount,
                format!("{} irreducibles for {k} classes", t.irreducibles.len()),
            );
            ok = false;
        }
        for chi in &t.irreducibles {
            if chi.values.len() != k {
                self.push(
                    ViolationKind::ValueCount,
                    format!("{} has {} values for {k} classes", chi.name, chi.values.len()),
                );
                ok = false;
                continue;
            }
            if chi.degree == 0 || chi.values[0] != CyclotomicNumber::from(BigInt::from(chi.degree)) {
                self.push(
                    ViolationKind::DegreeMismatch,
                    format!(
                        "{} has degree {} but identity value {}",
                        chi.name, chi.degree, chi.values[0]
                    ),
                );
            }
        }
        let squares: u128 = t
            .irreducibles
            .iter()
            .map(|chi| chi.degree as u128 * chi.degree as u128)
            .sum();
        if squares != t.order as u128 {
            self.push(
                ViolationKind::DegreeSquareSum,
                format!("sum of squared degrees is {squares}, group order is {}", t.order),
            );
        }
        let one = CyclotomicNumber::one();
        let trivial = t
            .irreducibles
            .iter()
            .filter(|chi| chi.values.iter().all(|v| *v == one))
            .count();
        if trivial != 1 {
            self.push(ViolationKind::TrivialCharacter, format!("{trivial} trivial characters"));
        }
        ok
    }

    fn orthogonality(&mut self) {
        let t = self.t;
        let k = t.class_count();
        let conj: Vec<Vec<CyclotomicNumber>> = t
            .irreducibles
            .iter()
            .map(|chi| chi.values.iter().map(|v| v.conjugate()).collect())
            .collect();
        for i in 0..t.irreducibles.len() {
            for j in i..t.irreducibles.len() {
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                match t.inner_product_values(&t.irreducibles[i].values, &t.irreducibles[j].values) {
                    Ok(q) if q == expected => {}
                    Ok(q) => self.push(
                        ViolationKind::FirstOrthogonality,
                        format!(
                            "<{}, {}> = {q}, expected {expected}",
                            t.irreducibles[i].name, t.irreducibles[j].name
                        ),
                    ),
                    Err(e) => self.push(
                        ViolationKind::NonRationalSum,
                        format!("<{}, {}>: {e}", t.irreducibles[i].name, t.irreducibles[j].name),
                    ),
                }
            }
        }
        for g in 0..k {
            for h in g..k {
                let terms: Vec<CyclotomicNumber> = t
                    .irreducibles
                    .iter()
                    .zip(&conj)
                    .map(|(chi, c)| &chi.values[g] * &c[h])
                    .collect();
                let sum = CyclotomicNumber::sum(&terms);
                let expected = if g == h {
                    CyclotomicNumber::from(BigInt::from(t.centralizer_order(g)))
                } else {
                    CyclotomicNumber::zero()
                };
                if sum != expected {
                    self.push(
                        ViolationKind::SecondOrthogonality,
                        format!("columns {g} and {h} sum to {sum}, expected {expected}"),
                    );
                }
            }
        }
    }

    fn distinguished(&mut self) {
        if self.t.character_index(&self.t.distinguished_rep).is_err() {
            self.push(
                ViolationKind::Distinguished,
                format!("no irreducible named `{}`", self.t.distinguished_rep),
            );
        }
    }

    /// Recomputes both metadata flags. The centre is the union of singleton
    /// classes, the derived subgroup is the meet of the kernels of the linear
    /// characters, and normal subgroups are meets of kernels of irreducibles.
    fn normal_structure(&mut self) {
        let t = self.t;
        let k = t.class_count();
        let center: Vec<bool> = (0..k).map(|c| t.classes[c].size == 1).collect();
        let kernel = |chi: &super::IrreducibleCharacter| -> Vec<bool> {
            (0..k).map(|c| chi.values[c] == chi.values[0]).collect()
        };

        let derived: Vec<bool> = t
            .irreducibles
            .iter()
            .filter(|chi| chi.degree == 1)
            .map(kernel)
            .fold(vec![true; k], |acc, ker| {
                acc.iter().zip(&ker).map(|(a, b)| *a && *b).collect()
            });
        let in_commutator = (0..k).all(|c| !center[c] || derived[c]);
        if in_commutator != t.center_in_commutator {
            self.push(
                ViolationKind::CenterInCommutator,
                format!(
                    "metadata says {}, the linear characters say {in_commutator}",
                    t.center_in_commutator
                ),
            );
        }

        let mut normals: Vec<Vec<bool>> = vec![vec![true; k]];
        for chi in &t.irreducibles {
            let ker = kernel(chi);
            for i in 0..normals.len() {
                let meet: Vec<bool> = normals[i].iter().zip(&ker).map(|(a, b)| *a && *b).collect();
                if !normals.contains(&meet) {
                    normals.push(meet);
                }
            }
        }
        let size = |set: &[bool]| -> u64 { (0..k).filter(|&c| set[c]).map(|c| t.classes[c].size).sum() };
        let center_order = size(&center);
        // G/Z is simple iff it is nontrivial and every normal N has |NZ| equal
        // to |Z| or |G|, where |NZ| = |N| |Z| / |N meet Z|.
        let simple = t.order > center_order
            && normals.iter().all(|n| {
                let meet: Vec<bool> = n.iter().zip(&center).map(|(a, b)| *a && *b).collect();
                let nz = size(n) * center_order / size(&meet);
                nz == center_order || nz == t.order
            });
        if simple != t.is_simple_modulo_center {
            self.push(
                ViolationKind::SimpleModuloCenter,
                format!(
                    "metadata says {}, the normal subgroup lattice says {simple}",
                    t.is_simple_modulo_center
                ),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::tests::cyclic3;

    #[test]
    fn cyclic_group_is_consistent() {
        let report = validate(&cyclic3());
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn perturbed_class_size_is_reported() {
        let mut t = cyclic3();
        t.classes[1].size += 1;
        let report = validate(&t);
        assert!(report.has(ViolationKind::ClassSizeSum));
    }

    #[test]
    fn duplicated_irreducible_is_reported() {
        let mut t = cyclic3();
        t.irreducibles[2].values = t.irreducibles[1].values.clone();
        let report = validate(&t);
        assert!(report.has(ViolationKind::FirstOrthogonality));
        assert!(report.has(ViolationKind::SecondOrthogonality));
    }

    #[test]
    fn missing_power_map_is_reported() {
        let mut t = cyclic3();
        t.classes[1].power_maps.remove(&5);
        let report = validate(&t);
        assert!(report.has(ViolationKind::PowerMap));
        assert!(validate_with(&t, ValidationOptions { max_power_degree: 3 }).is_valid());
    }

    #[test]
    fn wrong_metadata_is_reported() {
        let mut t = cyclic3();
        t.is_simple_modulo_center = true;
        t.center_in_commutator = true;
        let report = validate(&t);
        assert!(report.has(ViolationKind::SimpleModuloCenter));
        assert!(report.has(ViolationKind::CenterInCommutator));
    }
}
