//! Symmetric powers of characters, their decomposition into irreducibles and
//! the dimensions of the subrepresentations they admit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chartable::{CharacterTable, ClassFunction, TableError};
use crate::exactnum::{CyclotomicNumber, Rational};

#[derive(Debug, thiserror::Error)]
pub enum SympowError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("not a character: multiplicity of {name} is {multiplicity}")]
    NotACharacter { name: String, multiplicity: String },
    #[error("class function is not spanned by the irreducibles of the table")]
    Unreconstructible,
    #[error("distinguished representation has degree {found}, expected {expected}")]
    DimensionMismatch { expected: u64, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionPart {
    pub index: usize,
    pub name: String,
    pub degree: u64,
    pub multiplicity: u64,
}

/// Irreducible constituents with multiplicities, in table order. Only
/// constituents with positive multiplicity are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<DecompositionPart>,
}

impl Decomposition {
    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|p| p.degree * p.multiplicity).sum()
    }

    /// Degrees repeated by multiplicity, sorted ascending.
    pub fn degree_multiset(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .parts
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.degree, p.multiplicity as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].multiplicity == 1
    }
}

/// `Sym^0 chi, ..., Sym^max chi` through the Newton identity
/// `n s_n(g) = sum_{k=1..n} chi(g^k) s_{n-k}(g)`.
pub fn sym_power_series<'t>(chi: &ClassFunction<'t>, max: u32) -> Result<Vec<ClassFunction<'t>>, TableError> {
    let t = chi.table();
    let k = t.class_count();
    // powers[c][j] = chi(g^j) for g in class c
    let mut powers: Vec<Vec<CyclotomicNumber>> = Vec::with_capacity(k);
    for c in 0..k {
        let mut row = vec![CyclotomicNumber::zero()];
        for j in 1..=max as u64 {
            row.push(chi.value(t.power_class(c, j)?).clone());
        }
        powers.push(row);
    }
    let mut series: Vec<Vec<CyclotomicNumber>> = vec![vec![CyclotomicNumber::one(); k]];
    for n in 1..=max as usize {
        let inv_n = Rational::new(BigInt::from(1), BigInt::from(n));
        let values = (0..k)
            .map(|c| {
                let terms: Vec<CyclotomicNumber> = (1..=n).map(|j| &powers[c][j] * &series[n - j][c]).collect();
                CyclotomicNumber::sum(&terms).scale(&inv_n)
            })
            .collect();
        series.push(values);
    }
    series.into_iter().map(|values| t.class_function(values)).collect()
}

pub fn sym_power_character<'t>(chi: &ClassFunction<'t>, n: u32) -> Result<ClassFunction<'t>, TableError> {
    Ok(sym_power_series(chi, n)?.pop().expect("series is nonempty"))
}

/// Multiplicities `<f, chi_i>`; each must be a nonnegative integer and the
/// constituents must add back up to `f`.
pub fn decompose(f: &ClassFunction<'_>) -> Result<Decomposition, SympowError> {
    let t = f.table();
    let mut parts = Vec::new();
    for (index, chi) in t.irreducibles.iter().enumerate() {
        let m = t.inner_product(f, &t.irreducible(index))?;
        if !m.is_integer() || m.is_negative() {
            return Err(SympowError::NotACharacter {
                name: chi.name.clone(),
                multiplicity: m.to_string(),
            });
        }
        let multiplicity = m.to_integer().to_u64().expect("multiplicity fits u64");
        if multiplicity > 0 {
            parts.push(DecompositionPart {
                index,
                name: chi.name.clone(),
                degree: chi.degree,
                multiplicity,
            });
        }
    }
    let d = Decomposition { parts };
    if reconstruct(t, &d).values() != f.values() {
        return Err(SympowError::Unreconstructible);
    }
    Ok(d)
}

/// `sum m_i chi_i` as a class function.
pub fn reconstruct<'t>(t: &'t CharacterTable, d: &Decomposition) -> ClassFunction<'t> {
    let values = (0..t.class_count())
        .map(|c| {
            let terms: Vec<CyclotomicNumber> = d
                .parts
                .iter()
                .map(|p| t.irreducibles[p.index].values[c].scale(&Rational::from_integer(BigInt::from(p.multiplicity))))
                .collect();
            CyclotomicNumber::sum(&terms)
        })
        .collect();
    t.class_function(values).expect("one value per class")
}

/// Every `sum c_i deg_i` with `0 <= c_i <= m_i`: the dimensions of
/// subrepresentations, 0 and the full degree included.
pub fn achievable_subdims(d: &Decomposition) -> BTreeSet<u64> {
    let mut sums = BTreeSet::from([0u64]);
    for part in &d.parts {
        sums = sums
            .iter()
            .flat_map(|&s| (0..=part.multiplicity).map(move |c| s + c * part.degree))
            .collect();
    }
    sums
}

/// Dimension of `Sym^n` of an `m`-dimensional space.
pub fn sym_dimension(m: u64, n: u64) -> u64 {
    if m == 0 {
        return u64::from(n == 0);
    }
    binomial(m + n - 1, n)
}

/// Possible values of `h = C(ambient + n, n) - q` where `q` runs over
/// subrepresentation dimensions of `Sym^n` of the distinguished character;
/// `h = 0` is excluded.
pub fn allowed_h_values(t: &CharacterTable, n: u32, ambient_dim: u64) -> Result<BTreeSet<u64>, SympowError> {
    let chi = t.distinguished()?;
    if chi.degree() != Some(ambient_dim + 1) {
        return Err(SympowError::DimensionMismatch {
            expected: ambient_dim + 1,
            found: chi.degree_value().to_string(),
        });
    }
    let decomposition = decompose(&sym_power_character(&chi, n)?)?;
    Ok(h_values_from(&decomposition, ambient_dim, n))
}

pub(crate) fn h_values_from(d: &Decomposition, ambient_dim: u64, n: u32) -> BTreeSet<u64> {
    let total = binomial(ambient_dim + n as u64, n as u64);
    achievable_subdims(d)
        .into_iter()
        .filter(|&q| q <= total)
        .map(|q| total - q)
        .filter(|h| !h.is_zero())
        .collect()
}
