use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{parse_literal, CyclotomicNumber, LiteralError};

/// Square matrix with cyclotomic entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<CyclotomicNumber>,
}

impl ExactMatrix {
    pub fn new(dim: usize, entries: Vec<CyclotomicNumber>) -> Self {
        assert_eq!(entries.len(), dim * dim, "need dim^2 entries");
        ExactMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| CyclotomicNumber::one()).collect())
    }

    pub fn diagonal(diag: Vec<CyclotomicNumber>) -> Self {
        let dim = diag.len();
        let mut entries = vec![CyclotomicNumber::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        ExactMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let terms: Vec<CyclotomicNumber> = (0..n)
                    .filter(|&j| !self.get(i, j).is_zero() && !other.get(j, k).is_zero())
                    .map(|j| self.get(i, j) * other.get(j, k))
                    .collect();
                entries.push(CyclotomicNumber::sum(&terms));
            }
        }
        ExactMatrix { dim: n, entries }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        let diag: Vec<&CyclotomicNumber> = (0..self.dim).map(|i| self.get(i, i)).collect();
        CyclotomicNumber::sum(diag)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> CyclotomicNumber {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = CyclotomicNumber::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return CyclotomicNumber::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let inv = p.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &inv;
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &delta;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut b = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let inv = a[col * n + col].inverse()?;
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] * &inv;
                b[col * n + j] = &b[col * n + j] * &inv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let da = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &da;
                    let db = &factor * &b[col * n + j];
                    b[r * n + j] = &b[r * n + j] - &db;
                }
            }
        }
        Some(ExactMatrix { dim: n, entries: b })
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GeneratorFileError {
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
    #[error("generator {generator}, entry {entry}: {source}")]
    Literal {
        generator: usize,
        entry: usize,
        #[source]
        source: LiteralError,
    },
    #[error("generator {generator} has {found} entries, expected {expected}")]
    Shape {
        generator: usize,
        expected: usize,
        found: usize,
    },
}

/// A generator may be written flat (`dim^2` strings, row-major) or as an
/// array of rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorEntries {
    Flat(Vec<String>),
    Rows(Vec<Vec<String>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GeneratorFileRaw {
    dimension: usize,
    #[serde(default)]
    conductor_hint: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    generators: Vec<GeneratorEntries>,
}

/// Contents of a generator file.
#[derive(Debug, Clone)]
pub struct GeneratorFile {
    pub dimension: usize,
    pub conductor_hint: Option<u32>,
    pub description: Option<String>,
    pub generators: Vec<ExactMatrix>,
}

impl GeneratorFile {
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, GeneratorFileError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| GeneratorFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, GeneratorFileError> {
        let raw: GeneratorFileRaw = serde_json::from_str(text).map_err(|e| GeneratorFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let dim = raw.dimension;
        let generators = raw
            .generators
            .into_iter()
            .enumerate()
            .map(|(g, entries)| {
                let flat = match entries {
                    GeneratorEntries::Flat(v) => v,
                    GeneratorEntries::Rows(rows) => rows.into_iter().flatten().collect(),
                };
                if flat.len() != dim * dim {
                    return Err(GeneratorFileError::Shape {
                        generator: g,
                        expected: dim * dim,
                        found: flat.len(),
                    });
                }
                let values = flat
                    .iter()
                    .enumerate()
                    .map(|(entry, lit)| {
                        parse_literal(lit).map_err(|source| GeneratorFileError::Literal {
                            generator: g,
                            entry,
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExactMatrix::new(dim, values))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorFile {
            dimension: dim,
            conductor_hint: raw.conductor_hint,
            description: raw.description,
            generators,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, k)
    }

    #[test]
    fn determinant_and_inverse() {
        let m = ExactMatrix::new(
            2,
            vec![
                z(5, 1),
                CyclotomicNumber::from(rat(2)),
                CyclotomicNumber::one(),
                z(3, 1),
            ],
        );
        let expected = &(&z(5, 1) * &z(3, 1)) - &CyclotomicNumber::from(rat(2));
        assert_eq!(m.determinant(), expected);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let singular = ExactMatrix::new(2, vec![CyclotomicNumber::one(); 4]);
        assert!(singular.inverse().is_none());
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn generator_file_accepts_flat_and_nested() {
        let flat = GeneratorFile::from_json(
            r#"{"dimension": 2, "conductor_hint": 5, "generators": [["z5", "0", "0", "z5^4"]]}"#,
        )
        .unwrap();
        let nested =
            GeneratorFile::from_json(r#"{"dimension": 2, "generators": [[["z5", "0"], ["0", "z5^4"]]]}"#).unwrap();
        assert_eq!(flat.generators, nested.generators);
        assert!(matches!(
            GeneratorFile::from_json(r#"{"dimension": 2, "generators": [["1", "0", "0"]]}"#),
            Err(GeneratorFileError::Shape { .. })
        ));
    }
}
