//! Finite matrix groups over cyclotomic fields: enumeration from generators,
//! conjugacy classes, and Molien coefficients by direct summation.
//!
//! This is an oracle independent of the character tables. Elements are
//! enumerated by breadth-first closure under right multiplication by the
//! generators, and classes come from orbits of conjugation by the generators.
//! Every Molien coefficient is `(1/|G|) sum_g s_n(g)` with `s_n` obtained
//! from the traces of `g, g^2, ..., g^n`; the sum is grouped by class after
//! checking that the trace is constant on each class.

mod matrix;
mod packed;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chartable::ClassFunction;
use crate::exactnum::{CyclotomicNumber, Rational};
pub use matrix::{ExactMatrix, GeneratorFile, GeneratorFileError};
use packed::{ring_for, Escape, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatGroupError {
    #[error("no generators given")]
    NoGenerators,
    #[error("generator {0} has the wrong dimension")]
    DimensionMismatch(usize),
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("group has more than {0} elements")]
    OrderExceeded(usize),
    #[error("entries escape every denominator tried (last {0})")]
    Unrepresentable(i64),
    #[error("Molien coefficient {0} is not a nonnegative integer")]
    NotAnInteger(String),
    #[error("trace is not constant on a conjugacy class")]
    InconsistentClass,
}

#[derive(Debug, Clone)]
pub struct MatrixGroup {
    generators: Vec<ExactMatrix>,
    ring: Ring,
    elements: IndexSet<Box<[i32]>>,
    /// `right[g][x]` is the index of `x * gen_g`.
    right: Vec<Vec<u32>>,
    /// Index of `x^-1`.
    inverse: Vec<u32>,
}

/// One conjugacy class of a [`MatrixGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixClass {
    /// Element index of the first member in enumeration order.
    pub representative: usize,
    pub size: u64,
    pub element_order: u32,
    pub trace: CyclotomicNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCharacter {
    pub order: u64,
    pub classes: Vec<MatrixClass>,
}

const MAX_DENOMINATOR: i64 = 1 << 24;

pub fn closure(generators: &[ExactMatrix], max_order: usize) -> Result<MatrixGroup, MatGroupError> {
    let first = generators.first().ok_or(MatGroupError::NoGenerators)?;
    let dim = first.dim();
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(MatGroupError::DimensionMismatch(i));
        }
        if g.determinant().is_zero() {
            return Err(MatGroupError::Singular(i));
        }
    }
    let (conductor, mut denominator) = ring_for(generators);
    loop {
        let ring = Ring::new(dim, conductor, denominator);
        match enumerate(generators, ring, max_order)? {
            Ok(group) => return Ok(group),
            Err(escape) => {
                let next = if escape.needed > denominator as u64 {
                    escape.needed as i64
                } else {
                    denominator.saturating_mul(denominator)
                };
                if next > MAX_DENOMINATOR || next <= denominator {
                    return Err(MatGroupError::Unrepresentable(denominator));
                }
                denominator = next;
            }
        }
    }
}

fn enumerate(
    generators: &[ExactMatrix],
    ring: Ring,
    max_order: usize,
) -> Result<Result<MatrixGroup, Escape>, MatGroupError> {
    let gens: Vec<Box<[i32]>> = match generators.iter().map(|g| ring.pack(g)).collect() {
        Ok(g) => g,
        Err(e) => return Ok(Err(e)),
    };
    let mut elements: IndexSet<Box<[i32]>> = IndexSet::new();
    elements.insert(ring.identity());
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    // parent[x] = (y, g) with x = y * gen_g, for rebuilding words
    let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
    let mut buffer = vec![0i32; ring.len()];
    let mut next = 0usize;
    while next < elements.len() {
        for (g, gen) in gens.iter().enumerate() {
            let x = &elements[next];
            if let Err(e) = ring.mul(x, gen, &mut buffer) {
                return Ok(Err(e));
            }
            let (index, fresh) = match elements.get_index_of(buffer.as_slice()) {
                Some(i) => (i, false),
                None => (elements.insert_full(buffer.clone().into_boxed_slice()).0, true),
            };
            if fresh {
                parent.push((next as u32, g as u8));
                if elements.len() > max_order {
                    return Err(MatGroupError::OrderExceeded(max_order));
                }
            }
            right[g].push(index as u32);
        }
        next += 1;
    }
    let inverse = inverses(&right, &parent);
    Ok(Ok(MatrixGroup {
        generators: generators.to_vec(),
        ring,
        elements,
        right,
        inverse,
    }))
}

/// `x = gen_{i1} ... gen_{ik}` gives `x^-1 = gen_{ik}^-1 ... gen_{i1}^-1`,
/// evaluated by walking the inverse right-multiplication permutations.
fn inverses(right: &[Vec<u32>], parent: &[(u32, u8)]) -> Vec<u32> {
    let order = parent.len();
    let right_inv: Vec<Vec<u32>> = right
        .iter()
        .map(|perm| {
            let mut inv = vec![0u32; order];
            for (x, &y) in perm.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            inv
        })
        .collect();
    (0..order)
        .map(|x| {
            let mut word = Vec::new();
            let mut cur = x;
            while cur != 0 {
                let (p, g) = parent[cur];
                word.push(g);
                cur = p as usize;
            }
            // word holds i_k, ..., i_1
            word.iter().fold(0u32, |acc, &g| right_inv[g as usize][acc as usize])
        })
        .collect()
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.ring.dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    pub fn element(&self, index: usize) -> ExactMatrix {
        self.ring.unpack(&self.elements[index])
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        m.dim() == self.ring.dim && self.ring.pack(m).is_ok_and(|p| self.elements.contains(&p))
    }

    /// Index of `x * y`, computed exactly.
    pub fn product_index(&self, x: usize, y: usize) -> Option<usize> {
        let mut out = vec![0i32; self.ring.len()];
        self.ring.mul(&self.elements[x], &self.elements[y], &mut out).ok()?;
        self.elements.get_index_of(out.as_slice())
    }

    pub fn inverse_index(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// True if conjugating every generator of `self` by every matrix in
    /// `by` stays inside `self`.
    pub fn is_normalized_by(&self, by: &[ExactMatrix]) -> bool {
        by.iter().all(|g| {
            let Some(g_inv) = g.inverse() else {
                return false;
            };
            self.generators.iter().all(|h| self.contains(&g_inv.mul(h).mul(g)))
        })
    }

    fn conjugate_by_generator(&self, g: usize, x: usize) -> usize {
        // g^-1 x g = ((x g)^-1 g)^-1
        let xg = self.right[g][x] as usize;
        let t = self.right[g][self.inverse[xg] as usize] as usize;
        self.inverse[t] as usize
    }

    /// Conjugacy classes as lists of element indices, ordered by their
    /// smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for g in 0..self.generators.len() {
                    let y = self.conjugate_by_generator(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Traces of `x, x^2, ..., x^max` and the order of `x`.
    fn power_traces(&self, x: usize, max: u32) -> (Vec<CyclotomicNumber>, u32) {
        let ring = &self.ring;
        let base = &self.elements[x];
        let identity = ring.identity();
        let mut current: Box<[i32]> = base.clone();
        let mut buffer = vec![0i32; ring.len()];
        let mut traces = Vec::new();
        let mut order = 0u32;
        let mut k = 1u32;
        loop {
            if k <= max {
                traces.push(ring.trace(&current));
            }
            if order == 0 && *current == *identity {
                order = k;
            }
            if k >= max && order != 0 {
                break;
            }
            ring.mul(&current, base, &mut buffer).expect("powers stay in the group");
            current.copy_from_slice(&buffer);
            k += 1;
        }
        (traces, order)
    }

    /// Classes with sizes, element orders and traces.
    pub fn character(&self) -> Result<MatrixCharacter, MatGroupError> {
        let classes = self
            .conjugacy_classes()
            .into_iter()
            .map(|members| {
                let t0 = self.ring.trace_vector(&self.elements[members[0]]);
                if members.iter().any(|&m| self.ring.trace_vector(&self.elements[m]) != t0) {
                    return Err(MatGroupError::InconsistentClass);
                }
                let (traces, element_order) = self.power_traces(members[0], 1);
                Ok(MatrixClass {
                    representative: members[0],
                    size: members.len() as u64,
                    element_order,
                    trace: traces[0].clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixCharacter {
            order: self.order() as u64,
            classes,
        })
    }

    /// Molien coefficients `a_0, ..., a_max`.
    pub fn molien_coefficients(&self, max: u32) -> Result<Vec<u64>, MatGroupError> {
        let classes = self.conjugacy_classes();
        let mut totals: Vec<Vec<CyclotomicNumber>> = vec![Vec::new(); max as usize + 1];
        for members in &classes {
            let t0 = self.ring.trace_vector(&self.elements[members[0]]);
            if members.iter().any(|&m| self.ring.trace_vector(&self.elements[m]) != t0) {
                return Err(MatGroupError::InconsistentClass);
            }
            let (traces, _) = self.power_traces(members[0], max);
            let size = Rational::from_integer(BigInt::from(members.len()));
            for (n, s) in newton_series(&traces, max).into_iter().enumerate() {
                totals[n].push(s.scale(&size));
            }
        }
        let order = Rational::from_integer(BigInt::from(self.order()));
        totals
            .iter()
            .map(|terms| {
                let value = CyclotomicNumber::sum(terms);
                let q = value
                    .as_rational()
                    .map_err(|_| MatGroupError::NotAnInteger(value.to_string()))?
                    / &order;
                if !q.is_integer() || q.is_negative() {
                    return Err(MatGroupError::NotAnInteger(q.to_string()));
                }
                Ok(q.to_integer().to_u64().expect("fits u64"))
            })
            .collect()
    }

    pub fn molien_coefficient(&self, n: u32) -> Result<u64, MatGroupError> {
        Ok(self.molien_coefficients(n)?[n as usize])
    }
}

/// `s_0, ..., s_max` from power traces `p_1, ..., p_max`.
fn newton_series(power_traces: &[CyclotomicNumber], max: u32) -> Vec<CyclotomicNumber> {
    let mut s = vec![CyclotomicNumber::one()];
    for n in 1..=max as usize {
        let terms: Vec<CyclotomicNumber> = (1..=n).map(|k| &power_traces[k - 1] * &s[n - k]).collect();
        s.push(CyclotomicNumber::sum(&terms).scale(&Rational::new(BigInt::from(1), BigInt::from(n))));
    }
    s
}

impl MatrixCharacter {
    /// True if the class data (size, element order, trace) agrees as a
    /// multiset with a character of a table. Galois conjugate characters
    /// that permute classes of equal size and order both match.
    pub fn matches(&self, chi: &ClassFunction<'_>) -> bool {
        let t = chi.table();
        if t.order != self.order {
            return false;
        }
        let key = |size: u64, order: u32, value: &CyclotomicNumber| (size, order, value.to_string());
        let mut ours: Vec<_> = self
            .classes
            .iter()
            .map(|c| key(c.size, c.element_order, &c.trace))
            .collect();
        let mut theirs: Vec<_> = t
            .classes
            .iter()
            .map(|c| key(c.size, c.element_order, chi.value(c.index)))
            .collect();
        ours.sort();
        theirs.sort();
        ours == theirs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, k)
    }

    #[test]
    fn cyclic_group_of_order_five() {
        let g = ExactMatrix::diagonal(vec![z(5, 1), z(5, -1)]);
        let group = closure(&[g], 100).unwrap();
        assert_eq!(group.order(), 5);
        for x in 0..5 {
            let inv = group.inverse_index(x);
            assert_eq!(group.product_index(x, inv), Some(0));
        }
        // invariants of diag(w, w^-1) are generated by xy, x^5, y^5
        assert_eq!(group.molien_coefficients(5).unwrap(), vec![1, 0, 1, 0, 1, 2]);
    }

    #[test]
    fn cyclic_traces() {
        let g = ExactMatrix::diagonal(vec![z(3, 1), z(3, 2)]);
        let group = closure(&[g], 10).unwrap();
        let character = group.character().unwrap();
        let mut traces: Vec<String> = character.classes.iter().map(|c| c.trace.to_string()).collect();
        traces.sort();
        assert_eq!(traces, vec!["-1", "-1", "2"]);
    }

    #[test]
    fn infinite_group_is_cut_off() {
        let g = ExactMatrix::new(
            2,
            vec![
                CyclotomicNumber::one(),
                CyclotomicNumber::one(),
                CyclotomicNumber::zero(),
                CyclotomicNumber::one(),
            ],
        );
        assert_eq!(closure(&[g], 50).unwrap_err(), MatGroupError::OrderExceeded(50));
    }

    #[test]
    fn singular_generator_is_rejected() {
        let g = ExactMatrix::new(1, vec![CyclotomicNumber::zero()]);
        assert_eq!(closure(&[g], 5).unwrap_err(), MatGroupError::Singular(0));
    }

    #[test]
    fn clifford_group_with_irrational_entries() {
        // H = (1/sqrt 2) [[1, 1], [1, -1]], S = diag(1, i); order 192
        let r = crate::exactnum::parse_literal("(z8 + z8^7)/2").unwrap();
        let h = ExactMatrix::new(2, vec![r.clone(), r.clone(), r.clone(), -r]);
        let s = ExactMatrix::diagonal(vec![CyclotomicNumber::one(), z(4, 1)]);
        let group = closure(&[h, s], 1000).unwrap();
        assert_eq!(group.order(), 192);
        let character = group.character().unwrap();
        assert_eq!(character.classes.iter().map(|c| c.size).sum::<u64>(), 192);
        assert_eq!(group.molien_coefficient(0).unwrap(), 1);
    }
}
