//! Molien coefficients from symmetric-power characters: minimal degrees of
//! invariants and semi-invariants.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chartable::{CharacterTable, ClassFunction, TableError};
use crate::sympow::sym_power_series;

pub const DEFAULT_MAX_DEGREE: u32 = 12;

#[derive(Debug, thiserror::Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("no (semi-)invariant of degree at most {0}")]
    NotFound(u32),
    #[error("multiplicity {0} is not a nonnegative integer")]
    NotAnInteger(String),
}

/// Multiplicity of one degree-1 character in a symmetric power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineMultiplicity {
    pub character: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MolienRow {
    pub degree: u32,
    /// Dimension of the degree-`n` invariants.
    pub invariants: u64,
    /// One entry per degree-1 irreducible (trivial character included).
    pub semi_invariants: Vec<LineMultiplicity>,
}

impl MolienRow {
    pub fn has_semi_invariant(&self) -> bool {
        self.semi_invariants.iter().any(|l| l.multiplicity > 0)
    }
}

fn multiplicity(t: &CharacterTable, f: &ClassFunction<'_>, g: &ClassFunction<'_>) -> Result<u64, InvariantsError> {
    let m = t.inner_product(f, g)?;
    if !m.is_integer() || m.is_negative() {
        return Err(InvariantsError::NotAnInteger(m.to_string()));
    }
    Ok(m.to_integer().to_u64().expect("multiplicity fits u64"))
}

/// Rows `0..=max` for an arbitrary character of the table.
pub fn molien_rows_of(chi: &ClassFunction<'_>, max: u32) -> Result<Vec<MolienRow>, InvariantsError> {
    let t = chi.table();
    let lines = t.linear_characters();
    let trivial = t.trivial();
    sym_power_series(chi, max)?
        .iter()
        .enumerate()
        .map(|(n, s)| {
            let semi_invariants = lines
                .iter()
                .map(|&i| {
                    Ok(LineMultiplicity {
                        character: t.irreducibles[i].name.clone(),
                        multiplicity: multiplicity(t, s, &t.irreducible(i))?,
                    })
                })
                .collect::<Result<Vec<_>, InvariantsError>>()?;
            Ok(MolienRow {
                degree: n as u32,
                invariants: multiplicity(t, s, &trivial)?,
                semi_invariants,
            })
        })
        .collect()
}

/// Rows for the distinguished representation.
pub fn molien_rows(t: &CharacterTable, max: u32) -> Result<Vec<MolienRow>, InvariantsError> {
    molien_rows_of(&t.distinguished()?, max)
}

/// Invariant dimensions `a_0, ..., a_max` of an arbitrary character.
pub fn molien_coefficients(chi: &ClassFunction<'_>, max: u32) -> Result<Vec<u64>, InvariantsError> {
    let t = chi.table();
    let trivial = t.trivial();
    sym_power_series(chi, max)?
        .iter()
        .map(|s| multiplicity(t, s, &trivial))
        .collect()
}

pub fn min_invariant_degree(t: &CharacterTable, max_degree: u32) -> Result<u32, InvariantsError> {
    let coefficients = molien_coefficients(&t.distinguished()?, max_degree)?;
    (1..=max_degree)
        .find(|&n| coefficients[n as usize] > 0)
        .ok_or(InvariantsError::NotFound(max_degree))
}

pub fn min_semiinvariant_degree(t: &CharacterTable, max_degree: u32) -> Result<u32, InvariantsError> {
    let rows = molien_rows(t, max_degree)?;
    rows.iter()
        .skip(1)
        .find(|row| row.has_semi_invariant())
        .map(|row| row.degree)
        .ok_or(InvariantsError::NotFound(max_degree))
}

pub fn has_degree2_invariant(t: &CharacterTable) -> Result<bool, InvariantsError> {
    Ok(molien_coefficients(&t.distinguished()?, 2)?[2] > 0)
}
