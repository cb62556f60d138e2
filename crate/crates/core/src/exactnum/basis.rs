//! Canonical basis of Q(zeta_N).
//!
//! Q(zeta_N) is the tensor product of the fields Q(zeta_{p^e}) over the prime
//! powers p^e exactly dividing N. Each factor carries its power basis
//! `1, y, ..., y^(phi(p^e) - 1)` with `y = zeta_N^(N / p^e)`, so every basis
//! element of the product is a single power `zeta_N^j` and is identified by
//! its exponent `j`. Writing `k_p(j)` for the exponent of the `p`-factor, `j`
//! is a basis exponent iff `k_p(j) < (p - 1) p^(e-1)` for every `p`.
//!
//! Two properties make this basis convenient:
//!
//! * the embedding `Q(zeta_M) -> Q(zeta_N)`, `zeta_M -> zeta_N^(N/M)`, maps
//!   basis exponents to basis exponents, so changing conductor upwards never
//!   needs a reduction;
//! * `x` lies in the subfield of conductor `N/p` iff every exponent in its
//!   support has `k_p` divisible by `p` (when `p^2 | N`) or `k_p = 0` (when
//!   `p || N`), so the minimal conductor is read off the support.

use std::ops::SubAssign;

use num_integer::Integer;
use num_traits::Zero;

#[derive(Clone, Copy, Debug)]
struct PrimePart {
    p: u32,
    e: u32,
    pe: u32,
    /// `(N / p^e)^(-1) mod p^e`.
    inv_cofactor: u32,
    /// `(p - 1) p^(e-1)`: exponents at or above this are outside the basis.
    band: u32,
}

/// Prime-power decomposition of a conductor together with the data needed to
/// map exponents to their tensor components.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    n: u32,
    parts: Vec<PrimePart>,
}

pub(crate) fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
pub(crate) fn euler_phi(n: u32) -> u32 {
    factorize(n).into_iter().map(|(p, e)| (p - 1) * p.pow(e - 1)).product()
}

fn mod_inverse(a: u32, m: u32) -> u32 {
    if m == 1 {
        return 0;
    }
    let g = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i64) as u32
}

impl Layout {
    pub(crate) fn new(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let parts = factorize(n)
            .into_iter()
            .map(|(p, e)| {
                let pe = p.pow(e);
                PrimePart {
                    p,
                    e,
                    pe,
                    inv_cofactor: mod_inverse((n / pe) % pe, pe),
                    band: (p - 1) * p.pow(e - 1),
                }
            })
            .collect();
        Layout { n, parts }
    }

    fn component(part: &PrimePart, j: u32) -> u32 {
        ((j % part.pe) as u64 * part.inv_cofactor as u64 % part.pe as u64) as u32
    }

    #[cfg(test)]
    pub(crate) fn is_basis_exponent(&self, j: u32) -> bool {
        self.parts.iter().all(|part| Self::component(part, j) < part.band)
    }

    /// Basis exponents in increasing order; there are `phi(N)` of them.
    #[cfg(test)]
    pub(crate) fn basis(&self) -> Vec<u32> {
        (0..self.n).filter(|&j| self.is_basis_exponent(j)).collect()
    }

    /// Rewrites a dense exponent vector (length `N`, index = exponent) so that
    /// only basis exponents carry nonzero coefficients. Uses the relation
    /// `sum_{t<p} y^(t p^(e-1)) = 0` of each prime-power factor.
    pub(crate) fn reduce<T>(&self, dense: &mut [T])
    where
        T: Zero + Clone + for<'a> SubAssign<&'a T>,
    {
        debug_assert_eq!(dense.len(), self.n as usize);
        let n = self.n as usize;
        for part in &self.parts {
            let step = n / part.p as usize;
            for j in 0..n {
                if dense[j].is_zero() || Self::component(part, j as u32) < part.band {
                    continue;
                }
                let c = std::mem::replace(&mut dense[j], T::zero());
                for t in 1..part.p as usize {
                    let target = (j + n - t * step) % n;
                    dense[target] -= &c;
                }
            }
        }
    }

    /// Largest proper divisor conductor whose field contains every exponent
    /// of `support` (all of which must be basis exponents), together with the
    /// factor by which exponents shrink. `None` if the support already needs
    /// the full conductor.
    pub(crate) fn shrink_step(&self, support: &[u32]) -> Option<(u32, u32)> {
        for part in &self.parts {
            let fits = if part.e >= 2 {
                support.iter().all(|&j| Self::component(part, j) % part.p == 0)
            } else {
                support.iter().all(|&j| Self::component(part, j) == 0)
            };
            if fits {
                return Some((self.n / part.p, part.p));
            }
        }
        None
    }
}

/// Reduces a dense exponent vector at conductor `n`, then lowers the conductor
/// as far as the support allows. Returns the minimal conductor and the sorted
/// sparse basis terms.
pub(crate) fn canonicalize<T>(n: u32, mut dense: Vec<T>) -> (u32, Vec<(u32, T)>)
where
    T: Zero + Clone + for<'a> SubAssign<&'a T>,
{
    let layout = Layout::new(n);
    layout.reduce(&mut dense);
    let mut terms: Vec<(u32, T)> = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as u32, c))
        .collect();
    let mut n = n;
    if terms.is_empty() {
        return (1, terms);
    }
    loop {
        let layout = Layout::new(n);
        let support: Vec<u32> = terms.iter().map(|(j, _)| *j).collect();
        match layout.shrink_step(&support) {
            Some((smaller, p)) => {
                for (j, _) in terms.iter_mut() {
                    debug_assert_eq!(*j % p, 0);
                    *j /= p;
                }
                n = smaller;
            }
            None => break,
        }
    }
    terms.sort_by_key(|(j, _)| *j);
    (n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_match_euler_phi() {
        for n in 1..=120 {
            assert_eq!(Layout::new(n).basis().len() as u32, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn embedding_preserves_basis_exponents() {
        for n in 1..=60u32 {
            for m in (1..=n).filter(|m| n % m == 0) {
                let small = Layout::new(m);
                let big = Layout::new(n);
                for j in small.basis() {
                    assert!(big.is_basis_exponent(j * (n / m)), "{m} -> {n}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn vanishing_sum_of_all_roots_reduces_to_zero() {
        for n in 2..=40u32 {
            let mut dense = vec![1i128; n as usize];
            Layout::new(n).reduce(&mut dense);
            assert!(dense.iter().all(|c| *c == 0), "n = {n}");
        }
    }

    #[test]
    fn conductor_two_collapses_to_rationals() {
        // zeta_2 = -1
        let mut dense = vec![0i128, 1];
        dense[1] = 1;
        let (n, terms) = canonicalize(2, dense);
        assert_eq!(n, 1);
        assert_eq!(terms, vec![(0, -1)]);
    }
}
