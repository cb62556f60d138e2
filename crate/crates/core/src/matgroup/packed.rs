//! Fixed-conductor integer encoding of matrices used during enumeration.
//!
//! Every entry is `(1/D) sum_p c_p zeta_N^(e_p)` where the `e_p` run over the
//! canonical basis exponents of Q(zeta_N) and `D` is a common denominator.
//! A matrix is the concatenation of its entries' coefficient vectors, which
//! is canonical, so the packed slice itself serves as the hash key.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::ExactMatrix;
use crate::exactnum::{CyclotomicNumber, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Escape {
    /// Smallest denominator that would represent the offending value.
    pub(crate) needed: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct Ring {
    pub(crate) dim: usize,
    pub(crate) conductor: u32,
    pub(crate) denominator: i64,
    /// Basis exponents, in increasing order.
    exps: Vec<u32>,
    /// Expansion of `zeta_N^e` in basis positions, for every `e < N`.
    expansion: Vec<Vec<(usize, i64)>>,
    /// `(e_p + e_q) mod N` for positions `p`, `q`.
    sum_exp: Vec<u32>,
}

impl Ring {
    pub(crate) fn new(dim: usize, conductor: u32, denominator: i64) -> Self {
        let n = conductor;
        // e is a basis exponent iff zeta_N^e is its own canonical form
        let exps: Vec<u32> = (0..n)
            .filter(|&e| {
                let terms = CyclotomicNumber::root_of_unity(n, e as i64).embed(n).unwrap();
                terms.len() == 1 && terms[0].0 == e && terms[0].1.is_one()
            })
            .collect();
        let position = |e: u32| exps.binary_search(&e).expect("basis exponent");
        let expansion = (0..n)
            .map(|e| {
                CyclotomicNumber::root_of_unity(n, e as i64)
                    .embed(n)
                    .unwrap()
                    .into_iter()
                    .map(|(j, c)| (position(j), c.to_integer().to_i64().expect("integral expansion")))
                    .collect()
            })
            .collect();
        let phi = exps.len();
        let mut sum_exp = Vec::with_capacity(phi * phi);
        for p in 0..phi {
            for q in 0..phi {
                sum_exp.push((exps[p] + exps[q]) % n);
            }
        }
        Ring {
            dim,
            conductor,
            denominator,
            exps,
            expansion,
            sum_exp,
        }
    }

    pub(crate) fn phi(&self) -> usize {
        self.exps.len()
    }

    pub(crate) fn len(&self) -> usize {
        self.dim * self.dim * self.phi()
    }

    pub(crate) fn pack(&self, m: &ExactMatrix) -> Result<Box<[i32]>, Escape> {
        let phi = self.phi();
        let mut out = vec![0i32; self.len()];
        let d = Rational::from_integer(BigInt::from(self.denominator));
        for (idx, x) in m.entries().iter().enumerate() {
            let terms = x.embed(self.conductor).map_err(|_| Escape { needed: 0 })?;
            for (e, c) in terms {
                let scaled = &c * &d;
                if !scaled.is_integer() {
                    let needed = c.denom().to_u64().unwrap_or(0);
                    return Err(Escape { needed });
                }
                let v = scaled.to_integer().to_i32().ok_or(Escape { needed: 0 })?;
                let p = self.exps.binary_search(&e).expect("basis exponent");
                out[idx * phi + p] = v;
            }
        }
        Ok(out.into_boxed_slice())
    }

    pub(crate) fn unpack_entry(&self, slice: &[i32]) -> CyclotomicNumber {
        let d = BigInt::from(self.denominator);
        CyclotomicNumber::from_terms(
            self.conductor,
            slice
                .iter()
                .zip(&self.exps)
                .filter(|(c, _)| **c != 0)
                .map(|(c, e)| (*e, Rational::new(BigInt::from(*c), d.clone()))),
        )
    }

    pub(crate) fn unpack(&self, packed: &[i32]) -> ExactMatrix {
        let phi = self.phi();
        let entries = packed.chunks(phi).map(|s| self.unpack_entry(s)).collect();
        ExactMatrix::new(self.dim, entries)
    }

    pub(crate) fn identity(&self) -> Box<[i32]> {
        self.pack(&ExactMatrix::identity(self.dim))
            .expect("identity is representable")
    }

    /// Diagonal sum, still scaled by the denominator.
    pub(crate) fn trace_vector(&self, a: &[i32]) -> Vec<i64> {
        let phi = self.phi();
        let mut out = vec![0i64; phi];
        for i in 0..self.dim {
            let entry = &a[(i * self.dim + i) * phi..][..phi];
            for (o, c) in out.iter_mut().zip(entry) {
                *o += *c as i64;
            }
        }
        out
    }

    pub(crate) fn trace(&self, a: &[i32]) -> CyclotomicNumber {
        let d = BigInt::from(self.denominator);
        CyclotomicNumber::from_terms(
            self.conductor,
            self.trace_vector(a)
                .into_iter()
                .zip(&self.exps)
                .filter(|(c, _)| *c != 0)
                .map(|(c, e)| (*e, Rational::new(BigInt::from(c), d.clone()))),
        )
    }

    pub(crate) fn mul(&self, a: &[i32], b: &[i32], out: &mut [i32]) -> Result<(), Escape> {
        let n = self.dim;
        let phi = self.phi();
        let cond = self.conductor as usize;
        let mut acc = vec![0i128; cond];
        let mut reduced = vec![0i128; phi];
        for i in 0..n {
            for k in 0..n {
                acc.iter_mut().for_each(|x| *x = 0);
                for j in 0..n {
                    let x = &a[(i * n + j) * phi..][..phi];
                    let y = &b[(j * n + k) * phi..][..phi];
                    for (p, &xp) in x.iter().enumerate() {
                        if xp == 0 {
                            continue;
                        }
                        let row = &self.sum_exp[p * phi..][..phi];
                        for (q, &yq) in y.iter().enumerate() {
                            if yq != 0 {
                                acc[row[q] as usize] += xp as i128 * yq as i128;
                            }
                        }
                    }
                }
                reduced.iter_mut().for_each(|x| *x = 0);
                for (e, &v) in acc.iter().enumerate() {
                    if v != 0 {
                        for &(pos, c) in &self.expansion[e] {
                            reduced[pos] += v * c as i128;
                        }
                    }
                }
                let d = self.denominator as i128;
                let slot = &mut out[(i * n + k) * phi..][..phi];
                for (o, &v) in slot.iter_mut().zip(&reduced) {
                    if v % d != 0 {
                        let g = v.gcd(&d);
                        return Err(Escape {
                            needed: (self.denominator as u64) * ((d / g) as u64),
                        });
                    }
                    *o = i32::try_from(v / d).map_err(|_| Escape { needed: 0 })?;
                }
            }
        }
        Ok(())
    }
}

/// Least common conductor and denominator of all entries.
pub(crate) fn ring_for(generators: &[ExactMatrix]) -> (u32, i64) {
    let mut conductor = 1u32;
    let mut denominator = BigInt::one();
    for m in generators {
        for x in m.entries() {
            conductor = conductor.lcm(&x.conductor());
            for (_, c) in x.terms() {
                denominator = denominator.lcm(c.denom());
            }
        }
    }
    (conductor, denominator.to_i64().unwrap_or(i64::MAX))
}
