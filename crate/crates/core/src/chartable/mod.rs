//! Character tables of finite groups: data model, JSON ingestion, power maps
//! and the character inner product.
//!
//! Tables are read from JSON files (see `data/` at the repository root):
//!
//! ```json
//! {
//!   "group_name": "6.A7", "order": 15120,
//!   "is_simple_modulo_center": true, "center_in_commutator": true,
//!   "primitive": true, "distinguished_rep": "6d",
//!   "classes": [{"size": 1, "element_order": 1, "power_maps": {"2": 0, "3": 0}}, ...],
//!   "irreducibles": [{"name": "1a", "degree": 1, "values": ["1", ...]}, ...]
//! }
//! ```
//!
//! Class 0 must be the identity class; class order is the file order.
//! Character values are cyclotomic literals (see [`crate::exactnum::parse_literal`]).

mod validate;

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactnum::{parse_literal, CyclotomicNumber, ExactError, LiteralError, Rational};

pub use validate::{validate, validate_with, ValidationOptions, ValidationReport, Violation};

/// Power maps are required for every prime up to this degree by default.
pub const DEFAULT_MAX_POWER_DEGREE: u32 = 12;

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error in {field}: {source}")]
    Literal {
        field: String,
        #[source]
        source: LiteralError,
    },
    #[error("unknown conductor in {field} (literal `{literal}`)")]
    UnknownConductor { field: String, literal: String },
    #[error("invalid {field}: {message}")]
    Field { field: String, message: String },
    #[error("no power map for prime {0}")]
    MissingPowerMap(u32),
    #[error("class index {0} out of range")]
    NoSuchClass(usize),
    #[error("no irreducible character named `{0}`")]
    NoSuchCharacter(String),
    #[error("class function has {found} values but the table has {expected} classes")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub index: usize,
    pub size: u64,
    pub element_order: u32,
    /// Prime `p` to the class of `g^p`.
    pub power_maps: BTreeMap<u32, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCharacter {
    pub name: String,
    pub degree: u64,
    pub values: Vec<CyclotomicNumber>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub group_name: String,
    pub order: u64,
    pub is_simple_modulo_center: bool,
    pub center_in_commutator: bool,
    pub primitive: bool,
    pub distinguished_rep: String,
    pub notes: Option<String>,
    pub classes: Vec<ConjugacyClass>,
    pub irreducibles: Vec<IrreducibleCharacter>,
}

/// A function on the conjugacy classes of a fixed table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction<'t> {
    table: &'t CharacterTable,
    values: Vec<CyclotomicNumber>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableFile {
    group_name: String,
    order: u64,
    is_simple_modulo_center: bool,
    center_in_commutator: bool,
    primitive: bool,
    distinguished_rep: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
    classes: Vec<ClassFile>,
    irreducibles: Vec<CharacterFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ClassFile {
    size: u64,
    element_order: u32,
    power_maps: BTreeMap<String, usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CharacterFile {
    name: String,
    degree: u64,
    values: Vec<String>,
}

/// Reads and parses a table file. No consistency checks are made here; run
/// [`validate`] before relying on the data.
pub fn load(path: impl AsRef<Path>) -> Result<CharacterTable, TableError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    CharacterTable::from_json(&text)
}

impl CharacterTable {
    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| TableError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let classes = file
            .classes
            .into_iter()
            .enumerate()
            .map(|(index, class)| {
                let mut power_maps = BTreeMap::new();
                for (key, target) in class.power_maps {
                    let p: u32 = key.trim().parse().map_err(|_| TableError::Field {
                        field: format!("classes[{index}].power_maps"),
                        message: format!("key `{key}` is not an integer"),
                    })?;
                    power_maps.insert(p, target);
                }
                Ok(ConjugacyClass {
                    index,
                    size: class.size,
                    element_order: class.element_order,
                    power_maps,
                })
            })
            .collect::<Result<Vec<_>, TableError>>()?;
        let irreducibles = file
            .irreducibles
            .into_iter()
            .enumerate()
            .map(|(i, chi)| {
                let values = chi
                    .values
                    .iter()
                    .enumerate()
                    .map(|(c, lit)| {
                        let field = format!("irreducibles[{i}] ({}).values[{c}]", chi.name);
                        parse_literal(lit).map_err(|source| match source {
                            LiteralError::UnknownConductor { .. } => TableError::UnknownConductor {
                                field,
                                literal: lit.clone(),
                            },
                            source => TableError::Literal { field, source },
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(IrreducibleCharacter {
                    name: chi.name,
                    degree: chi.degree,
                    values,
                })
            })
            .collect::<Result<Vec<_>, TableError>>()?;
        Ok(CharacterTable {
            group_name: file.group_name,
            order: file.order,
            is_simple_modulo_center: file.is_simple_modulo_center,
            center_in_commutator: file.center_in_commutator,
            primitive: file.primitive,
            distinguished_rep: file.distinguished_rep,
            notes: file.notes,
            classes,
            irreducibles,
        })
    }

    /// Serializes back into the file format, values written as literals.
    pub fn to_json(&self) -> String {
        let file = TableFile {
            group_name: self.group_name.clone(),
            order: self.order,
            is_simple_modulo_center: self.is_simple_modulo_center,
            center_in_commutator: self.center_in_commutator,
            primitive: self.primitive,
            distinguished_rep: self.distinguished_rep.clone(),
            notes: self.notes.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassFile {
                    size: c.size,
                    element_order: c.element_order,
                    power_maps: c.power_maps.iter().map(|(p, t)| (p.to_string(), *t)).collect(),
                })
                .collect(),
            irreducibles: self
                .irreducibles
                .iter()
                .map(|chi| CharacterFile {
                    name: chi.name.clone(),
                    degree: chi.degree,
                    values: chi.values.iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("table serializes")
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn character_index(&self, name: &str) -> Result<usize, TableError> {
        self.irreducibles
            .iter()
            .position(|chi| chi.name == name)
            .ok_or_else(|| TableError::NoSuchCharacter(name.to_string()))
    }

    pub fn character(&self, name: &str) -> Result<ClassFunction<'_>, TableError> {
        let i = self.character_index(name)?;
        Ok(self.irreducible(i))
    }

    pub fn irreducible(&self, index: usize) -> ClassFunction<'_> {
        ClassFunction {
            table: self,
            values: self.irreducibles[index].values.clone(),
        }
    }

    /// The representation under study (`distinguished_rep`).
    pub fn distinguished(&self) -> Result<ClassFunction<'_>, TableError> {
        self.character(&self.distinguished_rep)
    }

    pub fn trivial(&self) -> ClassFunction<'_> {
        self.constant(CyclotomicNumber::one())
    }

    pub fn constant(&self, value: CyclotomicNumber) -> ClassFunction<'_> {
        ClassFunction {
            table: self,
            values: vec![value; self.class_count()],
        }
    }

    /// Character of the regular representation: `|G|` at the identity, 0 elsewhere.
    pub fn regular(&self) -> ClassFunction<'_> {
        let mut values = vec![CyclotomicNumber::zero(); self.class_count()];
        if let Some(v) = values.first_mut() {
            *v = CyclotomicNumber::from(BigInt::from(self.order));
        }
        ClassFunction { table: self, values }
    }

    pub fn class_function(&self, values: Vec<CyclotomicNumber>) -> Result<ClassFunction<'_>, TableError> {
        if values.len() != self.class_count() {
            return Err(TableError::LengthMismatch {
                expected: self.class_count(),
                found: values.len(),
            });
        }
        Ok(ClassFunction { table: self, values })
    }

    /// Indices of the degree-1 irreducibles, trivial character included.
    pub fn linear_characters(&self) -> Vec<usize> {
        self.irreducibles
            .iter()
            .enumerate()
            .filter(|(_, chi)| chi.degree == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// `|C_G(g)| = |G| / |class|`.
    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order / self.classes[class].size
    }

    /// Class of `g^k` for `g` in `class`, composing prime power maps along
    /// the factorization of `k`. `k = 0` gives the identity class.
    pub fn power_class(&self, class: usize, k: u64) -> Result<usize, TableError> {
        if class >= self.class_count() {
            return Err(TableError::NoSuchClass(class));
        }
        if k == 0 {
            return Ok(0);
        }
        let mut current = class;
        let mut rest = k;
        let mut p = 2u64;
        while rest > 1 {
            if p * p > rest {
                p = rest;
            }
            while rest.is_multiple_of(p) {
                current = self.prime_power_class(current, p as u32)?;
                rest /= p;
            }
            p += 1;
        }
        Ok(current)
    }

    /// `power_class` with the prime factors of `k` applied in the given order.
    pub fn power_class_along(&self, class: usize, primes: &[u32]) -> Result<usize, TableError> {
        primes.iter().try_fold(class, |c, &p| self.prime_power_class(c, p))
    }

    fn prime_power_class(&self, class: usize, p: u32) -> Result<usize, TableError> {
        let target = *self.classes[class]
            .power_maps
            .get(&p)
            .ok_or(TableError::MissingPowerMap(p))?;
        if target >= self.class_count() {
            return Err(TableError::NoSuchClass(target));
        }
        Ok(target)
    }

    /// `(1/|G|) sum_classes |class| a(g) conj(b(g))`; must be rational.
    pub fn inner_product(&self, a: &ClassFunction<'_>, b: &ClassFunction<'_>) -> Result<Rational, TableError> {
        self.inner_product_values(&a.values, &b.values)
    }

    pub(crate) fn inner_product_values(
        &self,
        a: &[CyclotomicNumber],
        b: &[CyclotomicNumber],
    ) -> Result<Rational, TableError> {
        for values in [a, b] {
            if values.len() != self.class_count() {
                return Err(TableError::LengthMismatch {
                    expected: self.class_count(),
                    found: values.len(),
                });
            }
        }
        let terms: Vec<CyclotomicNumber> = self
            .classes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(class, (x, y))| (x * &y.conjugate()).scale(&Rational::from_integer(BigInt::from(class.size))))
            .collect();
        let total = CyclotomicNumber::sum(&terms).as_rational()?;
        Ok(total / Rational::from_integer(BigInt::from(self.order)))
    }

    /// Classes acting as scalars in the representation `chi`
    /// (`|chi(g)| = chi(1)`): the kernel of the projective action.
    pub fn projective_kernel_classes(&self, chi: &ClassFunction<'_>) -> Vec<usize> {
        let degree = chi.degree_value();
        let target = &degree * &degree;
        (0..self.class_count())
            .filter(|&c| chi.values[c].norm_squared() == target)
            .collect()
    }

    /// Order of the image of the group in `PGL(chi(1))`.
    pub fn projective_image_order(&self, chi: &ClassFunction<'_>) -> u64 {
        let kernel: u64 = self
            .projective_kernel_classes(chi)
            .into_iter()
            .map(|c| self.classes[c].size)
            .sum();
        self.order / kernel.max(1)
    }
}

impl<'t> ClassFunction<'t> {
    pub fn table(&self) -> &'t CharacterTable {
        self.table
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn into_values(self) -> Vec<CyclotomicNumber> {
        self.values
    }

    pub fn value(&self, class: usize) -> &CyclotomicNumber {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree_value(&self) -> CyclotomicNumber {
        self.values[0].clone()
    }

    /// Value at the identity class as an integer, if it is one.
    pub fn degree(&self) -> Option<u64> {
        self.values[0].as_integer().and_then(|n| u64::try_from(n).ok())
    }

    pub fn add(&self, other: &ClassFunction<'t>) -> ClassFunction<'t> {
        ClassFunction {
            table: self.table,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> ClassFunction<'t> {
        ClassFunction {
            table: self.table,
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactnum::rat;

    /// Cyclic group of order 3, written out by hand.
    pub(crate) const CYCLIC3: &str = r#"{
              "group_name": "C3", "order": 3,
              "is_simple_modulo_center": false, "center_in_commutator": false,
              "primitive": false, "distinguished_rep": "1b",
              "classes": [
                {"size": 1, "element_order": 1, "power_maps": {"2": 0, "3": 0, "5": 0, "7": 0, "11": 0}},
                {"size": 1, "element_order": 3, "power_maps": {"2": 2, "3": 0, "5": 2, "7": 1, "11": 2}},
                {"size": 1, "element_order": 3, "power_maps": {"2": 1, "3": 0, "5": 1, "7": 2, "11": 1}}
              ],
              "irreducibles": [
                {"name": "1a", "degree": 1, "values": ["1", "1", "1"]},
                {"name": "1b", "degree": 1, "values": ["1", "z3", "z3^2"]},
                {"name": "1c", "degree": 1, "values": ["1", "z3^2", "z3"]}
              ]
            }"#;

    pub(crate) fn cyclic3() -> CharacterTable {
        CharacterTable::from_json(CYCLIC3).unwrap()
    }

    #[test]
    fn inner_products_on_cyclic_group() {
        let t = cyclic3();
        assert_eq!(t.inner_product(&t.trivial(), &t.trivial()).unwrap(), rat(1));
        let b = t.character("1b").unwrap();
        let c = t.character("1c").unwrap();
        assert_eq!(t.inner_product(&b, &c).unwrap(), rat(0));
        for i in 0..3 {
            assert_eq!(t.inner_product(&t.regular(), &t.irreducible(i)).unwrap(), rat(1));
        }
    }

    #[test]
    fn non_rational_inner_product_is_reported() {
        let t = cyclic3();
        let bad = t
            .class_function(vec![
                CyclotomicNumber::one(),
                CyclotomicNumber::root_of_unity(3, 1),
                CyclotomicNumber::one(),
            ])
            .unwrap();
        assert!(matches!(
            t.inner_product(&bad, &t.trivial()),
            Err(TableError::Exact(ExactError::NotRational(_)))
        ));
    }

    #[test]
    fn power_class_basics() {
        let t = cyclic3();
        assert_eq!(t.power_class(1, 1).unwrap(), 1);
        assert_eq!(t.power_class(1, 3).unwrap(), 0);
        assert_eq!(t.power_class(1, 2).unwrap(), 2);
        assert_eq!(t.power_class(1, 4).unwrap(), 1);
        assert_eq!(
            t.power_class_along(1, &[2, 3]).unwrap(),
            t.power_class_along(1, &[3, 2]).unwrap()
        );
        assert!(matches!(t.power_class(1, 13), Err(TableError::MissingPowerMap(13))));
    }

    #[test]
    fn malformed_literal_is_a_parse_error() {
        let text = CYCLIC3.replace("\"z3^2\"", "\"z0^2\"");
        let err = CharacterTable::from_json(&text).unwrap_err();
        assert!(matches!(err, TableError::Literal { .. }), "{err}");
        let text = CYCLIC3.replace("\"z3^2\"", "\"z^2\"");
        assert!(matches!(
            CharacterTable::from_json(&text),
            Err(TableError::UnknownConductor { .. })
        ));
        let err = CharacterTable::from_json("{\"group_name\": 3}").unwrap_err();
        assert!(matches!(err, TableError::Json { line: 1, .. }), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let t = cyclic3();
        assert_eq!(CharacterTable::from_json(&t.to_json()).unwrap(), t);
    }
}
